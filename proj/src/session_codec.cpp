#include <json.hpp>

#include "triage/inference.hpp"

namespace triage {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "triage-session/1";

template <typename Enum, std::size_t N>
Enum parse_enum(const json& v, const Enum (&options)[N], const char* what) {
    const auto s = v.get<std::string>();
    for (Enum o : options) {
        if (to_string(o) == s) return o;
    }
    throw SessionError(SessionError::Code::invalid_argument, std::string("session document: bad ") + what + " '" + s + "'");
}

constexpr SpecialFlow kFlows[] = {SpecialFlow::none, SpecialFlow::pain, SpecialFlow::fever, SpecialFlow::cough};
constexpr Polarity kPolarities[] = {Polarity::present, Polarity::absent, Polarity::unknown};
constexpr EvidenceSource kSources[] = {EvidenceSource::chief_complaint, EvidenceSource::suggested,
                                       EvidenceSource::asked, EvidenceSource::clinician_added};
constexpr Phase kPhases[] = {Phase::collecting, Phase::suggesting, Phase::questioning, Phase::done};
constexpr StopReason kReasons[] = {StopReason::confidence_reached, StopReason::pool_exhausted,
                                   StopReason::user_terminated, StopReason::max_iterations};
constexpr QuestionKind kKinds[] = {QuestionKind::presence, QuestionKind::attribute};
constexpr Sex kSexes[] = {Sex::male, Sex::female, Sex::other};

json prompt_json(const AttributePrompt& p) {
    return {{"name", p.name},
            {"type", p.type == AttributeType::ordinal ? "ordinal" : "text"},
            {"default_answer", p.default_answer}};
}

AttributePrompt prompt_from(const json& j) {
    AttributePrompt p;
    p.name = j.at("name").get<std::string>();
    p.type = j.at("type").get<std::string>() == "ordinal" ? AttributeType::ordinal : AttributeType::text;
    p.default_answer = j.at("default_answer").get<std::string>();
    return p;
}

json question_json(const Question& q) {
    return {{"id", q.id},
            {"symptom_id", q.symptom_id},
            {"kind", to_string(q.kind)},
            {"attribute_name", q.attribute_name},
            {"render_slots", q.render_slots}};
}

Question question_from(const json& j) {
    Question q;
    q.id = j.at("id").get<std::string>();
    q.symptom_id = j.at("symptom_id").get<std::string>();
    q.kind = parse_enum(j.at("kind"), kKinds, "question kind");
    q.attribute_name = j.at("attribute_name").get<std::string>();
    q.render_slots = j.at("render_slots").get<std::map<std::string, std::string>>();
    return q;
}

}  // namespace

std::string serialize_session(const AssessmentSession& s) {
    json patient = {{"age", s.patient_.age},
                    {"sex", to_string(s.patient_.sex)},
                    {"medical_history", s.patient_.medical_history},
                    {"family_history", s.patient_.family_history},
                    {"current_medication", s.patient_.current_medication},
                    {"allergies", s.patient_.allergies},
                    {"remarks", s.patient_.remarks}};

    json flows = json::object();
    for (const auto& [flow, prompts] : s.config_.subflows.flows) {
        json arr = json::array();
        for (const auto& p : prompts) arr.push_back(prompt_json(p));
        flows[std::string(to_string(flow))] = std::move(arr);
    }
    json config = {{"leak", s.config_.leak},
                   {"confidence_threshold", s.config_.confidence_threshold},
                   {"min_questions", s.config_.min_questions},
                   {"max_questions", s.config_.max_questions},
                   {"top_k", s.config_.top_k},
                   {"subflows", std::move(flows)}};

    json evidence = json::array();
    for (const auto& e : s.evidence_) {
        evidence.push_back({{"symptom_id", e.symptom_id},
                            {"polarity", to_string(e.polarity)},
                            {"attributes", e.attributes},
                            {"source", to_string(e.source)}});
    }
    json pending = json::array();
    for (const auto& p : s.pending_) pending.push_back({{"symptom_id", p.symptom_id}, {"prompt", prompt_json(p.prompt)}});

    json doc = {{"format", kFormat},
                {"graph", {{"name", s.graph_->meta().name}, {"version", s.graph_->meta().version}}},
                {"patient", std::move(patient)},
                {"config", std::move(config)},
                {"evidence", std::move(evidence)},
                {"phase", to_string(s.phase_)},
                {"dynamic_question_count", s.dynamic_question_count_},
                {"pending_subflow", std::move(pending)},
                {"outstanding", s.outstanding_ ? question_json(*s.outstanding_) : json(nullptr)},
                {"stop_reason", s.stop_reason_ ? json(to_string(*s.stop_reason_)) : json(nullptr)},
                {"question_seq", s.question_seq_},
                {"posterior", s.posterior_}};
    return doc.dump();
}

AssessmentSession restore_session(std::string_view document, std::shared_ptr<const KnowledgeGraph> graph) {
    if (!graph) throw SessionError(SessionError::Code::invalid_argument, "restore requires a knowledge graph");
    AssessmentSession s;
    try {
        const json doc = json::parse(document);
        if (doc.at("format") != kFormat) {
            throw SessionError(SessionError::Code::invalid_argument, "session document: unsupported format");
        }
        const auto& meta = doc.at("graph");
        if (meta.at("name") != graph->meta().name || meta.at("version") != graph->meta().version) {
            throw SessionError(SessionError::Code::invalid_argument,
                               "session document was saved against a different knowledge graph");
        }
        s.graph_ = std::move(graph);

        const auto& p = doc.at("patient");
        s.patient_.age = p.at("age").get<int>();
        s.patient_.sex = parse_enum(p.at("sex"), kSexes, "sex");
        s.patient_.medical_history = p.at("medical_history").get<std::vector<std::string>>();
        s.patient_.family_history = p.at("family_history").get<std::vector<std::string>>();
        s.patient_.current_medication = p.at("current_medication").get<std::vector<std::string>>();
        s.patient_.allergies = p.at("allergies").get<std::vector<std::string>>();
        s.patient_.remarks = p.at("remarks").get<std::string>();

        const auto& c = doc.at("config");
        s.config_.leak = c.at("leak").get<double>();
        s.config_.confidence_threshold = c.at("confidence_threshold").get<double>();
        s.config_.min_questions = c.at("min_questions").get<std::size_t>();
        s.config_.max_questions = c.at("max_questions").get<std::size_t>();
        s.config_.top_k = c.at("top_k").get<std::size_t>();
        s.config_.subflows.flows.clear();
        for (const auto& [flow, prompts] : c.at("subflows").items()) {
            auto& list = s.config_.subflows.flows[parse_enum(json(flow), kFlows, "special flow")];
            for (const auto& pj : prompts) list.push_back(prompt_from(pj));
        }

        for (const auto& e : doc.at("evidence")) {
            Evidence ev;
            ev.symptom_id = e.at("symptom_id").get<std::string>();
            if (!s.graph_->symptom_index(ev.symptom_id)) {
                throw SessionError(SessionError::Code::unknown_symptom,
                                   "session document: unknown symptom '" + ev.symptom_id + "'");
            }
            ev.polarity = parse_enum(e.at("polarity"), kPolarities, "polarity");
            ev.attributes = e.at("attributes").get<std::map<std::string, std::string>>();
            ev.source = parse_enum(e.at("source"), kSources, "evidence source");
            s.evidence_.push_back(std::move(ev));
        }
        s.phase_ = parse_enum(doc.at("phase"), kPhases, "phase");
        s.dynamic_question_count_ = doc.at("dynamic_question_count").get<std::size_t>();
        for (const auto& pj : doc.at("pending_subflow")) {
            s.pending_.push_back({pj.at("symptom_id").get<std::string>(), prompt_from(pj.at("prompt"))});
        }
        if (!doc.at("outstanding").is_null()) s.outstanding_ = question_from(doc.at("outstanding"));
        if (!doc.at("stop_reason").is_null()) s.stop_reason_ = parse_enum(doc.at("stop_reason"), kReasons, "stop reason");
        s.question_seq_ = doc.at("question_seq").get<std::size_t>();
        s.posterior_ = doc.at("posterior").get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw SessionError(SessionError::Code::invalid_argument, std::string("malformed session document: ") + e.what());
    }

    if (s.posterior_ != compute_posterior(*s.graph_, s.evidence_, s.config_.leak)) {
        throw SessionError(SessionError::Code::invalid_argument,
                           "session document posterior does not match its evidence");
    }
    return s;
}

}  // namespace triage
