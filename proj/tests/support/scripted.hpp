#pragma once

// Scripted patient sessions run either directly against the library or
// through the service API, for comparing the two.

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "triage/inference.hpp"
#include "triage/service.hpp"

namespace triage::testing {

struct ScriptStep {
    std::string question_id;
    std::string symptom_id;
    std::string kind;
    std::string attribute;
    double confidence = 0.0;

    bool operator==(const ScriptStep&) const = default;
};

struct ScriptRun {
    std::vector<ScriptStep> steps;
    std::string stop_reason;
    std::vector<double> posterior;  // direct runs only
    double confidence = 0.0;
};

/// Present iff in `truth`; ordinal prompts get 5, text prompts "gradual".
struct ScriptedPatient {
    std::set<std::string> truth;

    Polarity polarity(const std::string& symptom_id) const {
        return truth.contains(symptom_id) ? Polarity::present : Polarity::absent;
    }
    static std::string attribute_answer(const std::string& attribute) {
        return attribute == "severity" ? "5" : "gradual";
    }
};

inline ScriptRun run_direct(const std::shared_ptr<const KnowledgeGraph>& g, const PatientContext& patient,
                            const std::vector<std::string>& complaints, const ScriptedPatient& script,
                            const EngineConfig& config = {}) {
    auto s = AssessmentSession::start(g, patient, complaints, config);
    ScriptRun run;
    while (true) {
        const auto step = s.next_question();
        if (const auto* d = std::get_if<Done>(&step)) {
            run.stop_reason = std::string(to_string(d->reason));
            break;
        }
        const auto& q = std::get<Question>(step);
        if (q.kind == QuestionKind::presence) {
            s.record_answer(q.id, script.polarity(q.symptom_id));
        } else {
            s.record_answer(q.id, ScriptedPatient::attribute_answer(q.attribute_name));
        }
        run.steps.push_back(
            {q.id, q.symptom_id, std::string(to_string(q.kind)), q.attribute_name, s.confidence()});
    }
    run.posterior = s.posterior();
    run.confidence = s.confidence();
    return run;
}

/// Symptoms of disease `d` with weight at least `min_weight`.
inline ScriptedPatient patient_with(const KnowledgeGraph& g, std::size_t d, double min_weight = 0.5) {
    ScriptedPatient p;
    for (const auto& l : g.links(EdgeKind::disease_symptom, d)) {
        if (l.weight >= min_weight) p.truth.insert(g.symptoms()[l.target].id);
    }
    return p;
}

using Handler = std::function<HttpResponse(const HttpRequest&)>;

inline ScriptRun run_service(const Handler& call, const std::string& token, const nlohmann::json& create_body,
                             const ScriptedPatient& script, std::string* session_id = nullptr) {
    using nlohmann::json;
    auto res = call({"POST", "/v1/sessions", "Bearer " + token, create_body.dump(), {}});
    if (res.status != 201) throw std::runtime_error("create failed: " + res.body);
    json body = json::parse(res.body);
    const std::string id = body.at("session_id");
    if (session_id) *session_id = id;
    json q = body.at("first_question");
    ScriptRun run;
    while (!q.is_null()) {
        json answer;
        if (q.at("kind") == "presence") {
            answer = std::string(to_string(script.polarity(q.at("symptom_id"))));
        } else {
            answer = ScriptedPatient::attribute_answer(q.at("attribute"));
        }
        res = call({"POST", "/v1/sessions/" + id + "/answers", "Bearer " + token,
                    json{{"question_id", q.at("id")}, {"answer", answer}}.dump(),
                    {}});
        if (res.status != 200) throw std::runtime_error("answer failed: " + res.body);
        body = json::parse(res.body);
        run.steps.push_back({q.at("id"), q.at("symptom_id"), q.at("kind"), q.value("attribute", std::string()),
                             body.at("confidence")});
        q = body.contains("next_question") ? body.at("next_question") : json(nullptr);
        if (q.is_null()) run.stop_reason = body.at("done").at("reason");
    }
    if (run.stop_reason.empty()) run.stop_reason = body.at("done").at("reason");
    run.confidence = body.at("confidence");
    return run;
}

/// Disease names found as whole words (case-insensitive) in `text`.
inline std::vector<std::string> leaked_disease_names(const KnowledgeGraph& g, const std::string& text) {
    auto lower = [](std::string s) {
        std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
        return s;
    };
    const std::string hay = lower(text);
    auto word_char = [](unsigned char c) { return std::isalnum(c) != 0; };
    std::vector<std::string> found;
    for (const auto& d : g.diseases()) {
        for (const auto& needle : {lower(d.name), lower(d.id)}) {
            for (std::size_t pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) {
                const bool left = pos == 0 || !word_char(hay[pos - 1]);
                const std::size_t end = pos + needle.size();
                const bool right = end == hay.size() || !word_char(hay[end]);
                if (left && right) {
                    found.push_back(d.name);
                    break;
                }
            }
        }
    }
    return found;
}

}  // namespace triage::testing
