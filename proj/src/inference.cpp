#include "triage/inference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace triage {

std::string_view to_string(Sex v) {
    switch (v) {
        case Sex::male: return "male";
        case Sex::female: return "female";
        case Sex::other: return "other";
    }
    return "?";
}

std::string_view to_string(Polarity v) {
    switch (v) {
        case Polarity::present: return "present";
        case Polarity::absent: return "absent";
        case Polarity::unknown: return "unknown";
    }
    return "?";
}

std::string_view to_string(EvidenceSource v) {
    switch (v) {
        case EvidenceSource::chief_complaint: return "chief_complaint";
        case EvidenceSource::suggested: return "suggested";
        case EvidenceSource::asked: return "asked";
        case EvidenceSource::clinician_added: return "clinician_added";
    }
    return "?";
}

std::string_view to_string(Phase v) {
    switch (v) {
        case Phase::collecting: return "collecting";
        case Phase::suggesting: return "suggesting";
        case Phase::questioning: return "questioning";
        case Phase::done: return "done";
    }
    return "?";
}

std::string_view to_string(StopReason v) {
    switch (v) {
        case StopReason::confidence_reached: return "confidence_reached";
        case StopReason::pool_exhausted: return "pool_exhausted";
        case StopReason::user_terminated: return "user_terminated";
        case StopReason::max_iterations: return "max_iterations";
    }
    return "?";
}

std::string_view to_string(QuestionKind v) {
    return v == QuestionKind::presence ? "presence" : "attribute";
}

std::optional<Sex> parse_sex(std::string_view s) {
    if (s == "male" || s == "Male" || s == "M" || s == "m") return Sex::male;
    if (s == "female" || s == "Female" || s == "F" || s == "f") return Sex::female;
    if (s == "other" || s == "Other") return Sex::other;
    return std::nullopt;
}

std::optional<Polarity> parse_polarity(std::string_view s) {
    for (auto p : {Polarity::present, Polarity::absent, Polarity::unknown}) {
        if (s == to_string(p)) return p;
    }
    return std::nullopt;
}

SubflowTable SubflowTable::defaults() {
    SubflowTable t;
    t.flows[SpecialFlow::pain] = {
        {"site_radiation", AttributeType::text, "not specified"},
        {"onset", AttributeType::text, "gradual"},
        {"character", AttributeType::text, "dull"},
        {"associated_symptoms", AttributeType::text, "none"},
        {"time_course", AttributeType::text, "intermittent"},
        {"exacerbating_relieving", AttributeType::text, "none"},
        {"severity", AttributeType::ordinal, "5"},
    };
    t.flows[SpecialFlow::fever] = {
        {"duration", AttributeType::text, "3 days"},
        {"severity", AttributeType::ordinal, "5"},
        {"pattern", AttributeType::text, "continuous"},
    };
    t.flows[SpecialFlow::cough] = {
        {"duration", AttributeType::text, "1 week"},
        {"severity", AttributeType::ordinal, "5"},
        {"pattern", AttributeType::text, "dry"},
    };
    return t;
}

// ---------------------------------------------------------------------------

double symptom_likelihood(const KnowledgeGraph& g, std::size_t disease, std::size_t symptom, double leak) {
    if (auto w = g.symptom_weight(disease, symptom)) return std::min(*w, 1.0 - leak);
    return leak;
}

std::vector<double> compute_posterior(const KnowledgeGraph& g, std::span<const Evidence> evidence, double leak) {
    const std::size_t n = g.diseases().size();
    std::vector<double> log_joint(n);
    for (std::size_t d = 0; d < n; ++d) log_joint[d] = std::log(g.diseases()[d].prior);

    for (const auto& e : evidence) {
        if (e.polarity == Polarity::unknown) continue;
        const auto s = g.symptom_index(e.symptom_id);
        if (!s) continue;
        for (std::size_t d = 0; d < n; ++d) {
            const double l = symptom_likelihood(g, d, *s, leak);
            log_joint[d] += std::log(e.polarity == Polarity::present ? l : 1.0 - l);
        }
    }

    std::vector<double> p(n, 0.0);
    if (n == 0) return p;
    const double peak = *std::max_element(log_joint.begin(), log_joint.end());
    double total = 0.0;
    for (std::size_t d = 0; d < n; ++d) {
        p[d] = std::exp(log_joint[d] - peak);
        total += p[d];
    }
    for (double& v : p) v /= total;
    return p;
}

double entropy_bits(std::span<const double> distribution) {
    double h = 0.0;
    for (double p : distribution) {
        if (p > 0.0) h -= p * std::log2(p);
    }
    return h;
}

double information_gain(std::span<const double> posterior, std::span<const double> likelihoods) {
    const std::size_t n = posterior.size();
    double p_present = 0.0;
    double p_absent = 0.0;
    for (std::size_t d = 0; d < n; ++d) {
        p_present += posterior[d] * likelihoods[d];
        p_absent += posterior[d] * (1.0 - likelihoods[d]);
    }
    const double prior_entropy = entropy_bits(posterior);
    std::vector<double> conditional(n);
    double expected = 0.0;
    for (auto [mass, present] : {std::pair{p_present, true}, std::pair{p_absent, false}}) {
        if (mass <= 0.0) continue;
        for (std::size_t d = 0; d < n; ++d) {
            conditional[d] = posterior[d] * (present ? likelihoods[d] : 1.0 - likelihoods[d]) / mass;
        }
        expected += mass * entropy_bits(conditional);
    }
    return std::clamp(prior_entropy - expected, 0.0, prior_entropy);
}

// ---------------------------------------------------------------------------

AssessmentSession AssessmentSession::start(std::shared_ptr<const KnowledgeGraph> graph, PatientContext patient,
                                           std::span<const std::string> chief_complaints, EngineConfig config) {
    if (!graph) throw SessionError(SessionError::Code::invalid_argument, "session requires a knowledge graph");
    if (chief_complaints.empty()) {
        throw SessionError(SessionError::Code::invalid_argument, "at least one chief complaint is required");
    }
    if (patient.age < 0 || patient.age > 130) {
        throw SessionError(SessionError::Code::invalid_argument,
                           "patient age " + std::to_string(patient.age) + " outside [0, 130]");
    }
    if (!(config.leak > 0.0 && config.leak < 0.5)) {
        throw SessionError(SessionError::Code::invalid_argument, "leak must lie in (0, 0.5)");
    }
    if (config.top_k == 0) throw SessionError(SessionError::Code::invalid_argument, "top_k must be positive");

    AssessmentSession s;
    s.graph_ = std::move(graph);
    s.patient_ = std::move(patient);
    s.config_ = std::move(config);
    for (const auto& id : chief_complaints) {
        s.require_symptom(id);
        if (s.find_evidence(id)) {
            throw SessionError(SessionError::Code::duplicate_evidence, "duplicate chief complaint '" + id + "'");
        }
        s.add_evidence({id, Polarity::present, {}, EvidenceSource::chief_complaint});
        s.enqueue_subflow(id);
    }
    s.phase_ = Phase::suggesting;
    s.refresh_posterior();
    return s;
}

double AssessmentSession::confidence() const {
    return posterior_.empty() ? 0.0 : *std::max_element(posterior_.begin(), posterior_.end());
}

std::vector<std::size_t> AssessmentSession::ranked_diseases() const {
    std::vector<std::size_t> order(posterior_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto& diseases = graph_->diseases();
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (posterior_[a] != posterior_[b]) return posterior_[a] > posterior_[b];
        return diseases[a].id < diseases[b].id;
    });
    return order;
}

const Evidence* AssessmentSession::find_evidence(std::string_view symptom_id) const {
    for (const auto& e : evidence_) {
        if (e.symptom_id == symptom_id) return &e;
    }
    return nullptr;
}

void AssessmentSession::require_symptom(std::string_view id) const {
    if (!graph_->symptom_index(id)) {
        throw SessionError(SessionError::Code::unknown_symptom, "unknown symptom id '" + std::string(id) + "'");
    }
}

void AssessmentSession::enqueue_subflow(const std::string& symptom_id) {
    const auto& node = graph_->symptoms()[*graph_->symptom_index(symptom_id)];
    if (node.special_flow == SpecialFlow::none) return;
    auto it = config_.subflows.flows.find(node.special_flow);
    if (it == config_.subflows.flows.end()) return;
    for (const auto& prompt : it->second) pending_.push_back({symptom_id, prompt});
}

void AssessmentSession::add_evidence(Evidence e) {
    evidence_.push_back(std::move(e));
}

void AssessmentSession::refresh_posterior() {
    posterior_ = compute_posterior(*graph_, evidence_, config_.leak);
}

std::vector<std::string> AssessmentSession::suggest_symptoms(std::size_t n) const {
    if (phase_ != Phase::suggesting && phase_ != Phase::questioning) {
        throw SessionError(SessionError::Code::session_done, "suggestions are only available while collecting");
    }
    std::map<std::size_t, double> scores;
    for (const auto& e : evidence_) {
        if (e.polarity != Polarity::present) continue;
        const auto r = graph_->symptom_index(e.symptom_id);
        for (const Link& l : graph_->links(EdgeKind::symptom_symptom, *r)) scores[l.target] += l.weight;
    }
    std::vector<std::pair<double, const std::string*>> ranked;
    for (const auto& [target, score] : scores) {
        const std::string& id = graph_->symptoms()[target].id;
        if (find_evidence(id)) continue;
        ranked.emplace_back(score, &id);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return *a.second < *b.second;
    });
    std::vector<std::string> out;
    for (std::size_t i = 0; i < ranked.size() && i < n; ++i) out.push_back(*ranked[i].second);
    return out;
}

void AssessmentSession::accept_suggestions(std::span<const std::string> symptom_ids) {
    if (phase_ != Phase::suggesting && phase_ != Phase::questioning) {
        throw SessionError(SessionError::Code::session_done, "session is done");
    }
    for (const auto& id : symptom_ids) {
        require_symptom(id);
        if (find_evidence(id)) {
            throw SessionError(SessionError::Code::duplicate_evidence, "symptom '" + id + "' already recorded");
        }
    }
    for (const auto& id : symptom_ids) {
        add_evidence({id, Polarity::present, {}, EvidenceSource::suggested});
        enqueue_subflow(id);
    }
    // A pending presence question may no longer be the best one.
    if (outstanding_ && outstanding_->kind == QuestionKind::presence) outstanding_.reset();
    refresh_posterior();
}

void AssessmentSession::clinician_update(std::string_view symptom_id, Polarity polarity) {
    require_symptom(symptom_id);
    auto it = std::find_if(evidence_.begin(), evidence_.end(),
                           [&](const Evidence& e) { return e.symptom_id == symptom_id; });
    if (it == evidence_.end()) {
        add_evidence({std::string(symptom_id), polarity, {}, EvidenceSource::clinician_added});
    } else {
        it->polarity = polarity;
        it->source = EvidenceSource::clinician_added;
        if (polarity != Polarity::present) it->attributes.clear();
    }
    if (outstanding_ && outstanding_->symptom_id == symptom_id) outstanding_.reset();
    if (polarity != Polarity::present) {
        std::erase_if(pending_, [&](const PendingAttribute& p) { return p.symptom_id == symptom_id; });
    }
    refresh_posterior();
}

double AssessmentSession::expected_information_gain(std::string_view candidate) const {
    require_symptom(candidate);
    if (find_evidence(candidate)) {
        throw SessionError(SessionError::Code::duplicate_evidence,
                           "candidate '" + std::string(candidate) + "' already answered");
    }
    const std::size_t s = *graph_->symptom_index(candidate);
    std::vector<double> likelihoods(posterior_.size());
    for (std::size_t d = 0; d < likelihoods.size(); ++d) {
        likelihoods[d] = symptom_likelihood(*graph_, d, s, config_.leak);
    }
    return information_gain(posterior_, likelihoods);
}

std::vector<std::size_t> AssessmentSession::candidate_pool() const {
    const auto ranked = ranked_diseases();
    std::vector<bool> answered(graph_->symptoms().size(), false);
    for (const auto& e : evidence_) answered[*graph_->symptom_index(e.symptom_id)] = true;
    std::vector<bool> in_pool(answered.size(), false);
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < ranked.size() && i < config_.top_k; ++i) {
        for (const Link& l : graph_->links(EdgeKind::disease_symptom, ranked[i])) {
            if (answered[l.target] || in_pool[l.target]) continue;
            in_pool[l.target] = true;
            pool.push_back(l.target);
        }
    }
    return pool;
}

NextStep AssessmentSession::next_question() {
    if (phase_ == Phase::done) throw SessionError(SessionError::Code::session_done, "session done");
    if (outstanding_) return *outstanding_;

    if (!pending_.empty()) {
        PendingAttribute next = std::move(pending_.front());
        pending_.pop_front();
        Question q;
        q.id = "q" + std::to_string(++question_seq_);
        q.symptom_id = next.symptom_id;
        q.kind = QuestionKind::attribute;
        q.attribute_name = next.prompt.name;
        q.render_slots["attribute"] = next.prompt.name;
        phase_ = Phase::questioning;
        outstanding_ = q;
        return q;
    }

    auto finish = [this](StopReason reason) {
        phase_ = Phase::done;
        stop_reason_ = reason;
        return Done{reason};
    };
    if (dynamic_question_count_ >= config_.min_questions && confidence() >= config_.confidence_threshold) {
        return finish(StopReason::confidence_reached);
    }
    if (dynamic_question_count_ >= config_.max_questions) return finish(StopReason::max_iterations);

    const auto pool = candidate_pool();
    if (pool.empty()) return finish(StopReason::pool_exhausted);

    const auto& symptoms = graph_->symptoms();
    std::vector<double> likelihoods(posterior_.size());
    std::size_t best = pool.front();
    double best_gain = -1.0;
    for (std::size_t s : pool) {
        for (std::size_t d = 0; d < likelihoods.size(); ++d) {
            likelihoods[d] = symptom_likelihood(*graph_, d, s, config_.leak);
        }
        const double gain = information_gain(posterior_, likelihoods);
        if (gain > best_gain || (gain == best_gain && symptoms[s].id < symptoms[best].id)) {
            best = s;
            best_gain = gain;
        }
    }

    Question q;
    q.id = "q" + std::to_string(++question_seq_);
    q.symptom_id = symptoms[best].id;
    q.kind = QuestionKind::presence;
    phase_ = Phase::questioning;
    outstanding_ = q;
    return q;
}

void AssessmentSession::record_answer(std::string_view question_id, const Answer& answer) {
    if (phase_ == Phase::done) throw SessionError(SessionError::Code::session_done, "session done");
    if (!outstanding_ || outstanding_->id != question_id) {
        throw SessionError(SessionError::Code::stale_question,
                           "question '" + std::string(question_id) + "' is not the outstanding question");
    }
    const Question q = *outstanding_;

    if (q.kind == QuestionKind::presence) {
        const auto* polarity = std::get_if<Polarity>(&answer);
        if (polarity == nullptr) {
            throw SessionError(SessionError::Code::answer_mismatch, "presence question expects a polarity answer");
        }
        add_evidence({q.symptom_id, *polarity, {}, EvidenceSource::asked});
        ++dynamic_question_count_;
        if (*polarity == Polarity::present) enqueue_subflow(q.symptom_id);
        refresh_posterior();
    } else {
        const auto* value = std::get_if<std::string>(&answer);
        if (value == nullptr || value->empty()) {
            throw SessionError(SessionError::Code::answer_mismatch, "attribute question expects a non-empty value");
        }
        const auto& node = graph_->symptoms()[*graph_->symptom_index(q.symptom_id)];
        const auto& prompts = config_.subflows.flows.at(node.special_flow);
        auto prompt = std::find_if(prompts.begin(), prompts.end(),
                                   [&](const AttributePrompt& p) { return p.name == q.attribute_name; });
        if (prompt != prompts.end() && prompt->type == AttributeType::ordinal) {
            std::size_t used = 0;
            int level = -1;
            try {
                level = std::stoi(*value, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != value->size() || level < 0 || level > 10) {
                throw SessionError(SessionError::Code::answer_mismatch,
                                   "attribute '" + q.attribute_name + "' expects an integer 0-10");
            }
        }
        auto it = std::find_if(evidence_.begin(), evidence_.end(),
                               [&](const Evidence& e) { return e.symptom_id == q.symptom_id; });
        if (it != evidence_.end() && it->polarity == Polarity::present) it->attributes[q.attribute_name] = *value;
    }
    outstanding_.reset();
}

void AssessmentSession::user_terminate() {
    if (phase_ == Phase::done) throw SessionError(SessionError::Code::session_done, "session done");
    phase_ = Phase::done;
    stop_reason_ = StopReason::user_terminated;
    outstanding_.reset();
}

}  // namespace triage
