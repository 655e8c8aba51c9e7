#include "triage/service.hpp"

#include <algorithm>
#include <charconv>

#include <json.hpp>

#include "triage/recommender.hpp"

namespace triage {

using nlohmann::json;

namespace {

struct ApiError {
    int status;
    std::string code;
    std::string message;
};

HttpResponse reply(int status, const json& body) { return {status, body.dump()}; }

HttpResponse error_reply(const ApiError& e) {
    return reply(e.status, {{"error", {{"code", e.code}, {"message", e.message}}}});
}

ApiError from_session_error(const SessionError& e) {
    switch (e.code()) {
    case SessionError::Code::stale_question: return {409, "stale_question", e.what()};
    case SessionError::Code::session_done: return {409, "session_done", e.what()};
    case SessionError::Code::duplicate_evidence: return {422, "duplicate_evidence", e.what()};
    case SessionError::Code::unknown_symptom: return {422, "unknown_symptom", e.what()};
    case SessionError::Code::answer_mismatch: return {422, "answer_mismatch", e.what()};
    case SessionError::Code::invalid_argument: break;
    }
    return {422, "invalid_argument", e.what()};
}

json parse_body(const std::string& body) {
    if (body.empty()) return json::object();
    try {
        json j = json::parse(body);
        if (!j.is_object()) throw ApiError{400, "bad_request", "request body must be an object"};
        return j;
    } catch (const json::parse_error& e) {
        throw ApiError{400, "bad_request", std::string("malformed request body: ") + e.what()};
    }
}

std::vector<std::string> string_list(const json& body, const char* key, bool required) {
    if (!body.contains(key)) {
        if (required) throw ApiError{422, "validation_failed", std::string("missing field '") + key + "'"};
        return {};
    }
    const auto& v = body.at(key);
    if (!v.is_array()) throw ApiError{422, "validation_failed", std::string("'") + key + "' must be an array"};
    std::vector<std::string> out;
    for (const auto& item : v) {
        if (!item.is_string()) {
            throw ApiError{422, "validation_failed", std::string("'") + key + "' must contain strings"};
        }
        out.push_back(item.get<std::string>());
    }
    return out;
}

Locale locale_field(const json& body) {
    if (!body.contains("locale")) return Locale::en;
    if (!body.at("locale").is_string()) throw ApiError{422, "validation_failed", "'locale' must be a string"};
    auto l = parse_locale(body.at("locale").get<std::string>());
    if (!l) throw ApiError{422, "validation_failed", "unknown locale"};
    return *l;
}

PatientContext parse_patient(const json& body) {
    if (!body.contains("patient") || !body.at("patient").is_object()) {
        throw ApiError{422, "validation_failed", "missing object 'patient'"};
    }
    const auto& p = body.at("patient");
    PatientContext ctx;
    if (!p.contains("age") || !p.at("age").is_number_integer()) {
        throw ApiError{422, "validation_failed", "'patient.age' must be an integer"};
    }
    ctx.age = p.at("age").get<int>();
    if (p.contains("sex")) {
        auto sex = p.at("sex").is_string() ? parse_sex(p.at("sex").get<std::string>()) : std::nullopt;
        if (!sex) throw ApiError{422, "validation_failed", "'patient.sex' must be male, female or other"};
        ctx.sex = *sex;
    }
    ctx.medical_history = string_list(p, "medical_history", false);
    ctx.family_history = string_list(p, "family_history", false);
    ctx.current_medication = string_list(p, "current_medication", false);
    ctx.allergies = string_list(p, "allergies", false);
    if (p.contains("remarks")) {
        if (!p.at("remarks").is_string()) throw ApiError{422, "validation_failed", "'patient.remarks' must be a string"};
        ctx.remarks = p.at("remarks").get<std::string>();
    }
    return ctx;
}

}  // namespace

TriageService::TriageService(std::shared_ptr<const KnowledgeGraph> graph, std::shared_ptr<const SymptomLexicon> lexicon,
                             QuestionTemplates templates, IntentRules intents, SessionStore& store,
                             ServiceOptions options)
    : graph_(std::move(graph)),
      lexicon_(std::move(lexicon)),
      templates_(std::move(templates)),
      intents_(std::move(intents)),
      store_(store),
      options_(std::move(options)) {}

std::shared_ptr<TriageService::Slot> TriageService::find_slot(const std::string& id) {
    std::lock_guard lock(registry_mu_);
    if (auto it = slots_.find(id); it != slots_.end()) return it->second;
    auto stored = store_.load(id);
    if (!stored) return nullptr;
    const json doc = json::parse(stored->document);
    auto slot = std::make_shared<Slot>();
    slot->locale = parse_locale(doc.at("locale").get<std::string>()).value_or(Locale::en);
    slot->session = restore_session(doc.at("session").dump(), graph_);
    slots_[id] = slot;
    return slot;
}

void TriageService::persist(const std::string& id, const Slot& slot) {
    const json doc = {{"locale", to_string(slot.locale)}, {"session", json::parse(serialize_session(*slot.session))}};
    store_.save(id, doc.dump());
}

namespace {

json question_json(const Question& q, const AssessmentSession& s, const SymptomLexicon& lexicon,
                   const QuestionTemplates& templates, Locale locale) {
    json out = {{"id", q.id},
                {"kind", to_string(q.kind)},
                {"symptom_id", q.symptom_id},
                {"label", lexicon.label(q.symptom_id, locale)},
                {"text", templates.render(q, lexicon, locale)}};
    if (q.kind == QuestionKind::presence) {
        out["answer_type"] = "polarity";
        out["choices"] = {"present", "absent", "unknown"};
        return out;
    }
    out["attribute"] = q.attribute_name;
    out["answer_type"] = "text";
    const auto& node = s.graph().symptoms()[*s.graph().symptom_index(q.symptom_id)];
    if (auto it = s.config().subflows.flows.find(node.special_flow); it != s.config().subflows.flows.end()) {
        for (const auto& p : it->second) {
            if (p.name == q.attribute_name && p.type == AttributeType::ordinal) {
                out["answer_type"] = "ordinal";
                out["min"] = 0;
                out["max"] = 10;
            }
        }
    }
    return out;
}

json step_json(const NextStep& step, const AssessmentSession& s, const SymptomLexicon& lexicon,
               const QuestionTemplates& templates, Locale locale) {
    json out = {{"confidence", s.confidence()}, {"phase", to_string(s.phase())}};
    if (const auto* q = std::get_if<Question>(&step)) {
        out["next_question"] = question_json(*q, s, lexicon, templates, locale);
    } else {
        out["done"] = {{"reason", to_string(std::get<Done>(step).reason)}};
    }
    return out;
}

}  // namespace

HttpResponse TriageService::create_session(const std::string& body_text) {
    const json body = parse_body(body_text);
    const Locale locale = locale_field(body);
    PatientContext patient = parse_patient(body);
    const auto complaints = string_list(body, "chief_complaints", true);
    if (complaints.empty()) throw ApiError{422, "validation_failed", "'chief_complaints' must be non-empty"};

    std::vector<std::string> ids;
    for (const auto& c : complaints) {
        std::string id;
        if (graph_->symptom_index(c)) {
            id = c;
        } else {
            const MatchResult m = lexicon_->normalize_term(c, locale);
            if (!m.symptom_id) throw ApiError{422, "unresolved_complaint", "could not map complaint '" + c + "'"};
            id = *m.symptom_id;
        }
        if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    }

    auto slot = std::make_shared<Slot>();
    slot->locale = locale;
    slot->session = AssessmentSession::start(graph_, std::move(patient), ids, options_.engine);
    AssessmentSession& s = *slot->session;

    json suggestions = json::array();
    for (const auto& id : s.suggest_symptoms(options_.suggestions)) {
        suggestions.push_back({{"symptom_id", id}, {"label", lexicon_->label(id, locale)}});
    }
    const NextStep step = s.next_question();

    const std::string id = new_session_id();
    {
        std::lock_guard lock(registry_mu_);
        slots_[id] = slot;
    }
    std::lock_guard lock(slot->mu);
    persist(id, *slot);

    json out = step_json(step, s, *lexicon_, templates_, locale);
    out["session_id"] = id;
    out["suggestions"] = std::move(suggestions);
    out["first_question"] = out.contains("next_question") ? out["next_question"] : json(nullptr);
    out.erase("next_question");
    return reply(201, out);
}

HttpResponse TriageService::with_session(const std::string& id, const std::string& action, const HttpRequest& req,
                                         Scope scope) {
    auto slot = find_slot(id);
    if (!slot) throw ApiError{404, "unknown_session", "no session '" + id + "'"};
    std::lock_guard lock(slot->mu);
    AssessmentSession& s = *slot->session;
    const bool post = req.method == "POST";

    if (action == "recommendation" && !post) {
        const auto spec = recommend_specialty(s);
        json out = {{"specialty", spec.specialty}, {"confidence", spec.confidence}, {"phase", to_string(s.phase())}};
        if (scope == Scope::clinician) {
            if (spec.runner_up) {
                out["runner_up"] = {{"specialty", spec.runner_up->label}, {"confidence", spec.runner_up->confidence}};
            }
            json diagnoses = json::array();
            for (const auto& d : diagnose(s, options_.diagnoses).diagnoses) {
                diagnoses.push_back({{"disease_id", d.disease_id}, {"name", d.name}, {"confidence", d.confidence}});
            }
            out["diagnoses"] = std::move(diagnoses);
        }
        return reply(200, out);
    }
    if (action == "soap" && !post) {
        if (scope != Scope::clinician) throw ApiError{403, "forbidden", "the SOAP note requires clinician scope"};
        const auto note = build_soap_note(s, diagnose(s, options_.diagnoses), options_.plan_items);
        return {200, render_soap(note, SoapFormat::structured_document)};
    }
    if (!post) throw ApiError{405, "method_not_allowed", "unsupported method for '" + action + "'"};

    const json body = parse_body(req.body);
    NextStep step;
    if (action == "answers") {
        if (!body.contains("question_id") || !body.at("question_id").is_string()) {
            throw ApiError{422, "validation_failed", "missing string 'question_id'"};
        }
        if (!body.contains("answer")) throw ApiError{422, "validation_failed", "missing field 'answer'"};
        const auto& a = body.at("answer");
        const auto qid = body.at("question_id").get<std::string>();
        // Stale ids are reported before the answer shape is checked.
        if (s.phase() != Phase::done && (!s.outstanding() || s.outstanding()->id != qid)) {
            throw ApiError{409, "stale_question", "question '" + qid + "' is not the outstanding question"};
        }
        Answer answer;
        if (s.outstanding() && s.outstanding()->kind == QuestionKind::presence) {
            auto p = a.is_string() ? parse_polarity(a.get<std::string>()) : std::nullopt;
            if (!p) throw ApiError{422, "answer_mismatch", "answer must be present, absent or unknown"};
            answer = *p;
        } else if (a.is_number_integer()) {
            answer = std::to_string(a.get<long long>());
        } else if (a.is_string()) {
            answer = a.get<std::string>();
        } else {
            throw ApiError{422, "answer_mismatch", "attribute answers must be strings or integers"};
        }
        s.record_answer(qid, answer);
        step = s.next_question();
    } else if (action == "suggestions") {
        const auto accepted = string_list(body, "accepted", true);
        s.accept_suggestions(accepted);
        step = s.next_question();
    } else if (action == "evidence") {
        if (scope != Scope::clinician) throw ApiError{403, "forbidden", "evidence updates require clinician scope"};
        if (!body.contains("symptom_id") || !body.at("symptom_id").is_string() || !body.contains("polarity") ||
            !body.at("polarity").is_string()) {
            throw ApiError{422, "validation_failed", "expected string fields 'symptom_id' and 'polarity'"};
        }
        auto p = parse_polarity(body.at("polarity").get<std::string>());
        if (!p) throw ApiError{422, "validation_failed", "polarity must be present, absent or unknown"};
        s.clinician_update(body.at("symptom_id").get<std::string>(), *p);
        persist(id, *slot);
        return reply(200, {{"confidence", s.confidence()}, {"phase", to_string(s.phase())}});
    } else if (action == "terminate") {
        s.user_terminate();
        step = Done{StopReason::user_terminated};
    } else {
        throw ApiError{404, "not_found", "unknown session action '" + action + "'"};
    }
    persist(id, *slot);
    return reply(200, step_json(step, s, *lexicon_, templates_, slot->locale));
}

HttpResponse TriageService::handle(const HttpRequest& req) {
    try {
        Scope scope;
        constexpr std::string_view kBearer = "Bearer ";
        const std::string token =
            req.authorization.starts_with(kBearer) ? req.authorization.substr(kBearer.size()) : std::string();
        if (!token.empty() && token == options_.clinician_token) {
            scope = Scope::clinician;
        } else if (!token.empty() && token == options_.patient_token) {
            scope = Scope::patient;
        } else {
            throw ApiError{401, "unauthorized", "missing or unknown bearer token"};
        }

        std::vector<std::string> parts;
        for (std::size_t pos = 0; pos < req.path.size();) {
            const std::size_t next = std::min(req.path.find('/', pos), req.path.size());
            if (next > pos) parts.push_back(req.path.substr(pos, next - pos));
            pos = next + 1;
        }
        if (parts.size() < 2 || parts[0] != "v1") throw ApiError{404, "not_found", "no route " + req.path};

        if (parts[1] == "sessions") {
            if (parts.size() == 2) {
                if (req.method != "POST") throw ApiError{405, "method_not_allowed", "use POST to create a session"};
                return create_session(req.body);
            }
            if (parts.size() == 4) return with_session(parts[2], parts[3], req, scope);
        } else if (parts.size() == 2 && parts[1] == "intent") {
            if (req.method != "POST") throw ApiError{405, "method_not_allowed", "use POST"};
            const json body = parse_body(req.body);
            if (!body.contains("utterance") || !body.at("utterance").is_string() ||
                body.at("utterance").get<std::string>().empty()) {
                throw ApiError{422, "validation_failed", "'utterance' must be a non-empty string"};
            }
            const auto match = classify_intent(intents_, body.at("utterance").get<std::string>(), locale_field(body));
            if (!match) return reply(200, {{"intent", nullptr}, {"score", 0.0}});
            return reply(200, {{"intent", match->intent}, {"score", match->score}});
        } else if (parts.size() == 2 && parts[1] == "symptoms") {
            if (req.method != "GET") throw ApiError{405, "method_not_allowed", "use GET"};
            Locale locale = Locale::en;
            if (auto it = req.query.find("locale"); it != req.query.end()) {
                auto l = parse_locale(it->second);
                if (!l) throw ApiError{422, "validation_failed", "unknown locale"};
                locale = *l;
            }
            std::size_t n = 10;
            if (auto it = req.query.find("n"); it != req.query.end()) {
                auto [ptr, ec] = std::from_chars(it->second.data(), it->second.data() + it->second.size(), n);
                if (ec != std::errc() || ptr != it->second.data() + it->second.size() || n == 0 || n > 100) {
                    throw ApiError{422, "validation_failed", "'n' must be an integer in 1..100"};
                }
            }
            const auto prefix = req.query.contains("prefix") ? req.query.at("prefix") : std::string();
            json items = json::array();
            for (const auto& v : lexicon_->autocomplete(prefix, locale, n)) {
                items.push_back({{"symptom_id", v.symptom_id}, {"surface", v.surface}});
            }
            return reply(200, {{"symptoms", std::move(items)}});
        }
        throw ApiError{404, "not_found", "no route " + req.path};
    } catch (const ApiError& e) {
        return error_reply(e);
    } catch (const SessionError& e) {
        return error_reply(from_session_error(e));
    } catch (const IntentError& e) {
        return error_reply({422, "validation_failed", e.what()});
    } catch (const StoreError& e) {
        return error_reply({500, "storage_failure", e.what()});
    } catch (const std::exception& e) {
        return error_reply({500, "internal_error", e.what()});
    }
}

}  // namespace triage
