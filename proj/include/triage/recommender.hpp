#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "triage/inference.hpp"

namespace triage {

struct RankedDiagnosis {
    std::string disease_id;
    std::string name;
    double confidence = 0.0;

    bool operator==(const RankedDiagnosis&) const = default;
};

struct DiagnosisRecommendation {
    std::vector<RankedDiagnosis> diagnoses;
    std::size_t k = 0;

    bool operator==(const DiagnosisRecommendation&) const = default;
};

struct SpecialtyScore {
    std::string label;
    double confidence = 0.0;

    bool operator==(const SpecialtyScore&) const = default;
};

struct SpecialtyRecommendation {
    std::string specialty;
    double confidence = 0.0;
    std::optional<SpecialtyScore> runner_up;
};

struct SubjectiveEntry {
    std::string symptom_id;
    std::string name;
    EvidenceSource source = EvidenceSource::asked;
    std::map<std::string, std::string> attributes;

    bool operator==(const SubjectiveEntry&) const = default;
};

struct PlanItem {
    std::string therapy_id;
    std::string name;
    double weight = 0.0;

    bool operator==(const PlanItem&) const = default;
};

struct DiagnosisPlan {
    std::string disease_id;
    std::string disease_name;
    std::vector<PlanItem> drugs;
    std::vector<PlanItem> procedures;

    bool operator==(const DiagnosisPlan&) const = default;
};

struct SoapNote {
    PatientContext patient;
    std::vector<SubjectiveEntry> symptoms;
    std::map<std::string, std::string> objective;
    DiagnosisRecommendation assessment;
    std::vector<DiagnosisPlan> plan;

    bool operator==(const SoapNote&) const = default;
};

/// Top-k of the posterior; ties in ascending disease id.
DiagnosisRecommendation diagnose(const AssessmentSession& s, std::size_t k);

/// Posterior mass per registry specialty, descending, ascending label on ties.
std::vector<SpecialtyScore> rank_specialties(const AssessmentSession& s);

SpecialtyRecommendation recommend_specialty(const AssessmentSession& s);

SoapNote build_soap_note(const AssessmentSession& s, const DiagnosisRecommendation& diag, std::size_t plan_k);

enum class SoapFormat { plain_text, structured_document };

std::string render_soap(const SoapNote& note, SoapFormat format);
/// Inverse of render_soap(note, structured_document).
SoapNote parse_soap(std::string_view document);

}  // namespace triage
