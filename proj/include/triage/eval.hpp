#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "triage/inference.hpp"
#include "triage/lexicon.hpp"

namespace triage::eval {

class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Vignette {
    std::string patient_id;
    Sex sex = Sex::other;
    int age = 0;
    std::vector<std::string> family_history;
    std::vector<std::string> medical_history;
    std::vector<std::string> current_medication;
    std::vector<std::string> allergies;
    std::string remarks;
    std::vector<std::string> primary_complaints;
    std::vector<std::string> additional_symptoms;
    std::vector<std::string> gold_diagnoses;  // [0] is the main diagnosis
    std::vector<std::string> gold_medications;
    std::vector<std::string> gold_tests;
    std::string advice;
    /// Usually one label; some cases accept alternatives.
    std::vector<std::string> gold_specialization;
};

struct PanelAnswer {
    std::string physician_id;
    std::string patient_id;
    std::vector<std::string> diagnoses;  // ordered, at most 3
    std::string specialization;
    std::string advice;
    std::string rationale;
};

/// Tab-separated with a header row; multi-valued cells use `|`.
std::vector<Vignette> load_vignettes(std::istream& in);
std::vector<Vignette> load_vignettes_file(const std::filesystem::path& path);
std::vector<PanelAnswer> load_panel(std::istream& in);
std::vector<PanelAnswer> load_panel_file(const std::filesystem::path& path);

/// Surface strings of `v` that the lexicon cannot map.
std::vector<std::string> unresolved_symptoms(const Vignette& v, const SymptomLexicon& lexicon);

struct TranscriptEntry {
    std::string question_id;
    std::string symptom_id;
    QuestionKind kind = QuestionKind::presence;
    std::string attribute;
    std::string answer;
};

struct EngineResult {
    std::string patient_id;
    bool skipped = false;
    std::string skip_reason;
    /// Display names of the top-3 diagnoses.
    std::vector<std::string> diagnoses;
    std::vector<double> confidences;
    /// Top-3 specialties by posterior mass.
    std::vector<std::string> specialties;
    double specialty_confidence = 0.0;
    std::optional<StopReason> stop_reason;
    std::size_t presence_questions = 0;
    std::vector<TranscriptEntry> transcript;
};

/// Runs one vignette against the engine: complaints start the session, no
/// suggestions are accepted, presence questions are answered present iff the
/// symptom is among the vignette's symptoms, attribute questions get the
/// configured defaults.
EngineResult simulate_patient(const Vignette& v, const std::shared_ptr<const KnowledgeGraph>& graph,
                              const SymptomLexicon& lexicon, const EngineConfig& config = {});

std::vector<EngineResult> simulate_all(const std::vector<Vignette>& vignettes,
                                       const std::shared_ptr<const KnowledgeGraph>& graph,
                                       const SymptomLexicon& lexicon, const EngineConfig& config = {},
                                       unsigned threads = 1);

/// Term -> parent term, compared on normalized text. Unknown terms are their
/// own parent.
class ParentMap {
public:
    static ParentMap from_graph(const KnowledgeGraph& g);

    void add(const std::string& term, const std::string& parent);
    /// Normalized parent key.
    std::string parent(const std::string& term) const;
    /// Parent term as written when added; the term itself when unknown.
    std::string display(const std::string& term) const;
    bool same(const std::string& a, const std::string& b) const { return parent(a) == parent(b); }

private:
    std::map<std::string, std::string> parents_;  // key -> parent as written
};

struct MetricCounts {
    std::size_t n = 0;
    std::size_t m1 = 0;
    std::size_t m3 = 0;
    std::size_t specialty_m1 = 0;
    std::size_t specialty_m3 = 0;
};

/// 100 * matches / n rounded to two decimals.
double percent(std::size_t matches, std::size_t n);

struct CaseOutcome {
    std::string patient_id;
    bool skipped = false;
    bool m1 = false;
    bool m3 = false;
    bool specialty_m1 = false;
    bool specialty_m3 = false;
};

struct PhysicianScore {
    std::string physician_id;
    MetricCounts counts;
};

struct TermAgreement {
    std::string term;
    std::size_t physicians = 0;
};

struct ConcordanceRow {
    std::string patient_id;
    std::string gold;
    /// One entry per physician (ascending id); diagnoses or a single specialty.
    std::vector<std::vector<std::string>> physician_answers;
    std::vector<TermAgreement> engine;
    bool m1 = false;
    bool m3 = false;
    /// Some engine term equals some physician's first answer.
    bool physician_match = false;
    /// Some engine term is shared by at least three physicians.
    bool strong_consensus = false;
};

/// "Asthma 4/5"
std::string agreement_label(const TermAgreement& t, std::size_t panel_size);

struct Demographics {
    std::size_t male = 0;
    std::size_t female = 0;
    std::size_t other = 0;
};

struct EvalReport {
    MetricCounts engine;
    std::vector<CaseOutcome> cases;
    std::vector<PhysicianScore> physicians;
    std::size_t panel_size = 0;
    std::vector<ConcordanceRow> diagnosis_failures;
    std::vector<ConcordanceRow> specialty_failures;
    Demographics demographics;
    std::size_t skipped = 0;
};

/// Engine counts at parent-term level. Results are matched to vignettes by
/// patient id; a missing or extra result is an error.
EvalReport compute_metrics(const std::vector<EngineResult>& results, const std::vector<Vignette>& vignettes,
                           const ParentMap& parents);

/// Adds physician scores and concordance rows for every M3 failure
/// (diagnosis) and specialty M3 failure.
void concordance_analysis(EvalReport& report, const std::vector<EngineResult>& results,
                          const std::vector<PanelAnswer>& panel, const std::vector<Vignette>& vignettes,
                          const ParentMap& parents);

std::string render_summary(const EvalReport& report);
std::string render_metrics_tsv(const EvalReport& report);
std::string render_failures_tsv(const EvalReport& report);
std::string render_report_json(const EvalReport& report);

/// Writes report.json, metrics.tsv, failures.tsv and summary.txt into `dir`.
void emit_report(const EvalReport& report, const std::filesystem::path& dir);

}  // namespace triage::eval
