#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "triage/knowledge_graph.hpp"

namespace triage {

enum class Sex { male, female, other };
enum class Polarity { present, absent, unknown };
enum class EvidenceSource { chief_complaint, suggested, asked, clinician_added };
enum class Phase { collecting, suggesting, questioning, done };
enum class StopReason { confidence_reached, pool_exhausted, user_terminated, max_iterations };
enum class QuestionKind { presence, attribute };
enum class AttributeType { text, ordinal };

std::string_view to_string(Sex v);
std::string_view to_string(Polarity v);
std::string_view to_string(EvidenceSource v);
std::string_view to_string(Phase v);
std::string_view to_string(StopReason v);
std::string_view to_string(QuestionKind v);
std::optional<Sex> parse_sex(std::string_view s);
std::optional<Polarity> parse_polarity(std::string_view s);

struct PatientContext {
    int age = 0;
    Sex sex = Sex::other;
    std::vector<std::string> medical_history;
    std::vector<std::string> family_history;
    std::vector<std::string> current_medication;
    std::vector<std::string> allergies;
    std::string remarks;

    bool operator==(const PatientContext&) const = default;
};

struct Evidence {
    std::string symptom_id;
    Polarity polarity = Polarity::present;
    std::map<std::string, std::string> attributes;
    EvidenceSource source = EvidenceSource::asked;

    bool operator==(const Evidence&) const = default;
};

struct AttributePrompt {
    std::string name;
    AttributeType type = AttributeType::text;
    /// Answer used by scripted patients when no better value is known.
    std::string default_answer;

    bool operator==(const AttributePrompt&) const = default;
};

/// Attribute prompts asked after a special symptom is reported present.
struct SubflowTable {
    std::map<SpecialFlow, std::vector<AttributePrompt>> flows;

    /// Pain: seven SOCRATES prompts (site and radiation share one prompt).
    /// Fever and cough: duration, severity, pattern.
    static SubflowTable defaults();
    bool operator==(const SubflowTable&) const = default;
};

struct EngineConfig {
    /// Likelihood of a symptom under a disease lacking an edge to it; edge
    /// likelihoods are capped at 1 - leak.
    double leak = 0.01;
    double confidence_threshold = 0.85;
    std::size_t min_questions = 6;
    std::size_t max_questions = 25;
    std::size_t top_k = 10;
    SubflowTable subflows = SubflowTable::defaults();

    bool operator==(const EngineConfig&) const = default;
};

struct Question {
    std::string id;
    std::string symptom_id;
    QuestionKind kind = QuestionKind::presence;
    std::string attribute_name;
    std::map<std::string, std::string> render_slots;

    bool operator==(const Question&) const = default;
};

struct Done {
    StopReason reason;
    bool operator==(const Done&) const = default;
};

using NextStep = std::variant<Question, Done>;
using Answer = std::variant<Polarity, std::string>;

struct PendingAttribute {
    std::string symptom_id;
    AttributePrompt prompt;

    bool operator==(const PendingAttribute&) const = default;
};

class SessionError : public std::runtime_error {
public:
    enum class Code { invalid_argument, unknown_symptom, duplicate_evidence, session_done, stale_question, answer_mismatch };

    SessionError(Code code, const std::string& message) : std::runtime_error(message), code_(code) {}
    Code code() const { return code_; }

private:
    Code code_;
};

// ---------------------------------------------------------------------------
// Evidence model

/// L(s|d): min(w(d,s), 1 - leak) when the edge exists, else leak.
double symptom_likelihood(const KnowledgeGraph& g, std::size_t disease, std::size_t symptom, double leak);

/// P(d | evidence) over disease indices. Present evidence contributes L,
/// absent 1 - L, unknown nothing. Computed in log space.
std::vector<double> compute_posterior(const KnowledgeGraph& g, std::span<const Evidence> evidence, double leak);

double entropy_bits(std::span<const double> distribution);

/// H(p) - sum_a P(a) H(p | a) for a yes/no symptom with per-disease
/// likelihoods; clamped to [0, H(p)].
double information_gain(std::span<const double> posterior, std::span<const double> likelihoods);

// ---------------------------------------------------------------------------

/// Dynamic Q&A state for one patient. Not thread-safe; callers serialize
/// access per session.
class AssessmentSession {
public:
    static AssessmentSession start(std::shared_ptr<const KnowledgeGraph> graph, PatientContext patient,
                                   std::span<const std::string> chief_complaints, EngineConfig config = {});

    const KnowledgeGraph& graph() const { return *graph_; }
    const std::shared_ptr<const KnowledgeGraph>& graph_ptr() const { return graph_; }
    const PatientContext& patient() const { return patient_; }
    const EngineConfig& config() const { return config_; }
    const std::vector<Evidence>& evidence() const { return evidence_; }
    Phase phase() const { return phase_; }
    std::size_t dynamic_question_count() const { return dynamic_question_count_; }
    const std::deque<PendingAttribute>& pending_subflow() const { return pending_; }
    const std::optional<Question>& outstanding() const { return outstanding_; }
    std::optional<StopReason> stop_reason() const { return stop_reason_; }

    /// Indexed like graph().diseases().
    const std::vector<double>& posterior() const { return posterior_; }
    double confidence() const;
    /// Disease indices by descending posterior, ascending id on ties.
    std::vector<std::size_t> ranked_diseases() const;

    const Evidence* find_evidence(std::string_view symptom_id) const;

    std::vector<std::string> suggest_symptoms(std::size_t n) const;
    void accept_suggestions(std::span<const std::string> symptom_ids);
    void clinician_update(std::string_view symptom_id, Polarity polarity);

    double expected_information_gain(std::string_view candidate) const;

    /// Re-issues the outstanding question if one exists.
    NextStep next_question();
    void record_answer(std::string_view question_id, const Answer& answer);
    void user_terminate();

private:
    friend std::string serialize_session(const AssessmentSession& s);
    friend AssessmentSession restore_session(std::string_view document, std::shared_ptr<const KnowledgeGraph> graph);

    AssessmentSession() = default;

    void require_symptom(std::string_view id) const;
    void enqueue_subflow(const std::string& symptom_id);
    void add_evidence(Evidence e);
    void refresh_posterior();
    std::vector<std::size_t> candidate_pool() const;

    std::shared_ptr<const KnowledgeGraph> graph_;
    PatientContext patient_;
    EngineConfig config_;
    std::vector<Evidence> evidence_;
    Phase phase_ = Phase::collecting;
    std::size_t dynamic_question_count_ = 0;
    std::deque<PendingAttribute> pending_;
    std::optional<Question> outstanding_;
    std::optional<StopReason> stop_reason_;
    std::size_t question_seq_ = 0;
    std::vector<double> posterior_;
};

/// Self-contained session document (graph referenced by meta name/version).
std::string serialize_session(const AssessmentSession& s);
AssessmentSession restore_session(std::string_view document, std::shared_ptr<const KnowledgeGraph> graph);

}  // namespace triage
