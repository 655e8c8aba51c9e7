#include "triage/recommender.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include <json.hpp>

namespace triage {

using nlohmann::json;

namespace {

void require_evidence(const AssessmentSession& s) {
    if (s.evidence().empty()) {
        throw SessionError(SessionError::Code::invalid_argument, "recommendations need at least one evidence item");
    }
}

std::string percent(double p) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, p * 100.0, std::chars_format::fixed, 1);
    return std::string(buf, end) + "%";
}

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& item : items) {
        if (!out.empty()) out += ", ";
        out += item;
    }
    return out.empty() ? "none recorded" : out;
}

std::vector<PlanItem> top_therapies(const AssessmentSession& s, EdgeKind kind, std::size_t disease,
                                    std::size_t plan_k) {
    const auto& g = s.graph();
    const NodeKind tk = target_kind(kind);
    std::vector<PlanItem> out;
    for (const Link& l : g.links(kind, disease)) {
        if (out.size() == plan_k) break;
        out.push_back({g.node_id(tk, l.target), g.node_name(tk, l.target), l.weight});
    }
    return out;
}

}  // namespace

DiagnosisRecommendation diagnose(const AssessmentSession& s, std::size_t k) {
    require_evidence(s);
    DiagnosisRecommendation rec;
    rec.k = k;
    const auto& diseases = s.graph().diseases();
    for (std::size_t d : s.ranked_diseases()) {
        if (rec.diagnoses.size() == k) break;
        rec.diagnoses.push_back({diseases[d].id, diseases[d].name, s.posterior()[d]});
    }
    return rec;
}

std::vector<SpecialtyScore> rank_specialties(const AssessmentSession& s) {
    require_evidence(s);
    std::map<std::string, double> mass;
    for (const auto& label : s.graph().specialties()) mass[label] = 0.0;
    const auto& diseases = s.graph().diseases();
    for (std::size_t d = 0; d < diseases.size(); ++d) mass[diseases[d].specialty] += s.posterior()[d];

    std::vector<SpecialtyScore> ranked;
    for (const auto& [label, m] : mass) ranked.push_back({label, m});
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const SpecialtyScore& a, const SpecialtyScore& b) { return a.confidence > b.confidence; });
    return ranked;
}

SpecialtyRecommendation recommend_specialty(const AssessmentSession& s) {
    const auto ranked = rank_specialties(s);
    SpecialtyRecommendation rec;
    rec.specialty = ranked.front().label;
    rec.confidence = ranked.front().confidence;
    if (ranked.size() > 1) rec.runner_up = ranked[1];
    return rec;
}

SoapNote build_soap_note(const AssessmentSession& s, const DiagnosisRecommendation& diag, std::size_t plan_k) {
    SoapNote note;
    note.patient = s.patient();
    const auto& g = s.graph();

    auto add_present = [&](bool chief) {
        for (const auto& e : s.evidence()) {
            if (e.polarity != Polarity::present) continue;
            if ((e.source == EvidenceSource::chief_complaint) != chief) continue;
            const auto idx = *g.symptom_index(e.symptom_id);
            note.symptoms.push_back({e.symptom_id, g.symptoms()[idx].name, e.source, e.attributes});
        }
    };
    add_present(true);
    add_present(false);

    note.assessment = diag;
    for (const auto& d : diag.diagnoses) {
        const auto idx = g.disease_index(d.disease_id);
        if (!idx) throw GraphError("assessment disease '" + d.disease_id + "' not in graph");
        note.plan.push_back({d.disease_id, d.name, top_therapies(s, EdgeKind::disease_drug, *idx, plan_k),
                             top_therapies(s, EdgeKind::disease_procedure, *idx, plan_k)});
    }
    return note;
}

// ---------------------------------------------------------------------------

namespace {

json items_json(const std::vector<PlanItem>& items) {
    json arr = json::array();
    for (const auto& i : items) arr.push_back({{"id", i.therapy_id}, {"name", i.name}, {"weight", i.weight}});
    return arr;
}

std::vector<PlanItem> items_from(const json& arr) {
    std::vector<PlanItem> out;
    for (const auto& i : arr) {
        out.push_back({i.at("id").get<std::string>(), i.at("name").get<std::string>(), i.at("weight").get<double>()});
    }
    return out;
}

std::string render_text(const SoapNote& note) {
    std::ostringstream os;
    const auto& p = note.patient;
    os << "SUBJECTIVE\n";
    os << "  Patient: " << p.age << " years, " << to_string(p.sex) << "\n";
    os << "  Medical history: " << join(p.medical_history) << "\n";
    os << "  Family history: " << join(p.family_history) << "\n";
    os << "  Current medication: " << join(p.current_medication) << "\n";
    os << "  Allergies: " << join(p.allergies) << "\n";
    if (!p.remarks.empty()) os << "  Remarks: " << p.remarks << "\n";
    os << "  Reported symptoms:\n";
    if (note.symptoms.empty()) os << "    none recorded\n";
    for (const auto& s : note.symptoms) {
        os << "    - " << s.name;
        if (s.source == EvidenceSource::chief_complaint) os << " (chief complaint)";
        os << "\n";
        for (const auto& [k, v] : s.attributes) os << "        " << k << ": " << v << "\n";
    }

    os << "OBJECTIVE\n";
    if (note.objective.empty()) os << "  none recorded\n";
    for (const auto& [k, v] : note.objective) os << "  " << k << ": " << v << "\n";

    os << "ASSESSMENT\n";
    if (note.assessment.diagnoses.empty()) os << "  none recorded\n";
    for (std::size_t i = 0; i < note.assessment.diagnoses.size(); ++i) {
        const auto& d = note.assessment.diagnoses[i];
        os << "  " << i + 1 << ". " << d.name << " (confidence " << percent(d.confidence) << ")\n";
    }

    os << "PLAN\n";
    if (note.plan.empty()) os << "  none recorded\n";
    for (const auto& plan : note.plan) {
        os << "  " << plan.disease_name << ":\n";
        os << "    Medication:";
        if (plan.drugs.empty()) os << " none recorded";
        os << "\n";
        for (const auto& i : plan.drugs) os << "      - " << i.name << "\n";
        os << "    Investigations:";
        if (plan.procedures.empty()) os << " none recorded";
        os << "\n";
        for (const auto& i : plan.procedures) os << "      - " << i.name << "\n";
    }
    return os.str();
}

}  // namespace

std::string render_soap(const SoapNote& note, SoapFormat format) {
    if (format == SoapFormat::plain_text) return render_text(note);

    const auto& p = note.patient;
    json symptoms = json::array();
    for (const auto& s : note.symptoms) {
        symptoms.push_back({{"symptom_id", s.symptom_id},
                            {"name", s.name},
                            {"source", to_string(s.source)},
                            {"attributes", s.attributes}});
    }
    json diagnoses = json::array();
    for (const auto& d : note.assessment.diagnoses) {
        diagnoses.push_back({{"disease_id", d.disease_id}, {"name", d.name}, {"confidence", d.confidence}});
    }
    json plan = json::array();
    for (const auto& entry : note.plan) {
        plan.push_back({{"disease_id", entry.disease_id},
                        {"disease_name", entry.disease_name},
                        {"drugs", items_json(entry.drugs)},
                        {"procedures", items_json(entry.procedures)}});
    }
    json doc = {
        {"subjective",
         {{"patient",
           {{"age", p.age},
            {"sex", to_string(p.sex)},
            {"medical_history", p.medical_history},
            {"family_history", p.family_history},
            {"current_medication", p.current_medication},
            {"allergies", p.allergies},
            {"remarks", p.remarks}}},
          {"symptoms", std::move(symptoms)}}},
        {"objective", note.objective},
        {"assessment", {{"k", note.assessment.k}, {"diagnoses", std::move(diagnoses)}}},
        {"plan", std::move(plan)},
    };
    return doc.dump(2) + "\n";
}

SoapNote parse_soap(std::string_view document) {
    static constexpr EvidenceSource kSources[] = {EvidenceSource::chief_complaint, EvidenceSource::suggested,
                                                  EvidenceSource::asked, EvidenceSource::clinician_added};
    const json doc = json::parse(document);
    SoapNote note;
    const auto& subj = doc.at("subjective");
    const auto& p = subj.at("patient");
    note.patient.age = p.at("age").get<int>();
    note.patient.sex = parse_sex(p.at("sex").get<std::string>()).value_or(Sex::other);
    note.patient.medical_history = p.at("medical_history").get<std::vector<std::string>>();
    note.patient.family_history = p.at("family_history").get<std::vector<std::string>>();
    note.patient.current_medication = p.at("current_medication").get<std::vector<std::string>>();
    note.patient.allergies = p.at("allergies").get<std::vector<std::string>>();
    note.patient.remarks = p.at("remarks").get<std::string>();
    for (const auto& s : subj.at("symptoms")) {
        SubjectiveEntry e;
        e.symptom_id = s.at("symptom_id").get<std::string>();
        e.name = s.at("name").get<std::string>();
        const auto source = s.at("source").get<std::string>();
        for (auto candidate : kSources) {
            if (to_string(candidate) == source) e.source = candidate;
        }
        e.attributes = s.at("attributes").get<std::map<std::string, std::string>>();
        note.symptoms.push_back(std::move(e));
    }
    note.objective = doc.at("objective").get<std::map<std::string, std::string>>();
    note.assessment.k = doc.at("assessment").at("k").get<std::size_t>();
    for (const auto& d : doc.at("assessment").at("diagnoses")) {
        note.assessment.diagnoses.push_back(
            {d.at("disease_id").get<std::string>(), d.at("name").get<std::string>(), d.at("confidence").get<double>()});
    }
    for (const auto& entry : doc.at("plan")) {
        note.plan.push_back({entry.at("disease_id").get<std::string>(), entry.at("disease_name").get<std::string>(),
                             items_from(entry.at("drugs")), items_from(entry.at("procedures"))});
    }
    return note;
}

}  // namespace triage
