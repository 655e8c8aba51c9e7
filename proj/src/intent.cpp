#include "triage/intent.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "triage/text.hpp"

namespace triage {

IntentRules IntentRules::build(std::vector<IntentRule> rules, double threshold) {
    if (!(threshold > 0.0 && threshold <= 1.0)) throw IntentError("intent threshold must lie in (0, 1]");
    std::set<std::pair<std::string, Locale>> seen;
    for (auto& rule : rules) {
        if (rule.intent.empty()) throw IntentError("intent rule with empty name");
        if (rule.patterns.empty()) throw IntentError("intent '" + rule.intent + "' has no patterns");
        if (!seen.emplace(rule.intent, rule.locale).second) {
            throw IntentError("duplicate intent '" + rule.intent + "' for locale " + std::string(to_string(rule.locale)));
        }
        for (auto& p : rule.patterns) {
            p.keyword = text::normalize(p.keyword);
            if (p.keyword.empty()) throw IntentError("intent '" + rule.intent + "' has an empty keyword");
            if (!(p.weight > 0.0)) throw IntentError("intent '" + rule.intent + "' has a non-positive weight");
        }
    }
    IntentRules out;
    out.rules_ = std::move(rules);
    out.threshold_ = threshold;
    return out;
}

std::vector<std::string> IntentRules::intents() const {
    std::set<std::string> names;
    for (const auto& r : rules_) names.insert(r.intent);
    return {names.begin(), names.end()};
}

IntentRules IntentRules::defaults() {
    using L = Locale;
    std::vector<IntentRule> rules = {
        {"book_doctor", {{"book", 0.5}, {"doctor", 0.4}, {"appointment", 0.4}, {"consultation", 0.4}, {"consult", 0.4}},
         L::en},
        {"find_hospital", {{"hospital", 0.6}, {"nearest", 0.4}, {"nearby", 0.4}, {"clinic", 0.5}}, L::en},
        {"medicine_info", {{"medicine", 0.6}, {"drug", 0.5}, {"tablet", 0.4}, {"dose", 0.4}, {"side effect", 0.5}},
         L::en},
        {"symptom_check", {{"symptom", 0.5}, {"symptoms", 0.5}, {"feel", 0.3}, {"sick", 0.3}, {"check", 0.2}}, L::en},
        {"lab_test", {{"test", 0.4}, {"lab", 0.5}, {"report", 0.3}, {"blood test", 0.6}, {"x ray", 0.6}}, L::en},
        {"view_prescription", {{"prescription", 0.8}}, L::en},
        {"emergency", {{"emergency", 0.8}, {"ambulance", 0.8}, {"urgent", 0.5}}, L::en},
        {"health_records", {{"record", 0.5}, {"records", 0.5}, {"history", 0.4}}, L::en},
        {"payment", {{"pay", 0.5}, {"payment", 0.6}, {"bill", 0.5}, {"refund", 0.6}}, L::en},
        {"reschedule_appointment", {{"reschedule", 0.8}, {"change", 0.3}, {"postpone", 0.6}}, L::en},
        {"cancel_appointment", {{"cancel", 0.8}}, L::en},
        {"talk_to_support", {{"support", 0.6}, {"help", 0.3}, {"agent", 0.5}, {"complaint", 0.4}}, L::en},
        {"change_language", {{"language", 0.7}, {"bangla", 0.5}, {"bengali", 0.5}, {"english", 0.4}}, L::en},
        {"greeting", {{"hello", 0.5}, {"hi", 0.4}, {"good morning", 0.5}, {"thanks", 0.4}}, L::en},

        {"book_doctor", {{"ডাক্তার", 0.5}, {"ডাক্তারের", 0.5}, {"অ্যাপয়েন্টমেন্ট", 0.5}, {"দেখাতে", 0.3}}, L::bn_standard},
        {"find_hospital", {{"হাসপাতাল", 0.6}, {"কাছের", 0.4}, {"ক্লিনিক", 0.5}}, L::bn_standard},
        {"medicine_info", {{"ওষুধ", 0.6}, {"ওষুধের", 0.6}, {"ট্যাবলেট", 0.4}}, L::bn_standard},
        {"symptom_check", {{"লক্ষণ", 0.5}, {"অসুস্থ", 0.3}}, L::bn_standard},
        {"emergency", {{"জরুরি", 0.8}, {"অ্যাম্বুলেন্স", 0.8}}, L::bn_standard},
        {"greeting", {{"আসসালামু আলাইকুম", 0.5}, {"নমস্কার", 0.5}, {"ধন্যবাদ", 0.4}}, L::bn_standard},
    };
    return build(std::move(rules));
}

std::optional<IntentMatch> classify_intent(const IntentRules& rules, std::string_view utterance, Locale locale) {
    if (utterance.empty()) throw IntentError("utterance must be non-empty");
    const std::string padded = " " + text::normalize(utterance) + " ";

    std::map<std::string, double> scores;
    for (const auto& rule : rules.rules()) {
        const bool applies =
            rule.locale == locale || (is_bengali(locale) && rule.locale == Locale::bn_standard);
        if (!applies) continue;
        double sum = 0.0;
        for (const auto& p : rule.patterns) {
            if (padded.find(" " + p.keyword + " ") != std::string::npos) sum += p.weight;
        }
        auto& s = scores[rule.intent];
        s = std::min(1.0, s + sum);
    }

    std::optional<IntentMatch> best;
    for (const auto& [name, score] : scores) {  // ascending name, so strict > keeps the first on ties
        if (score < rules.threshold()) continue;
        if (!best || score > best->score) best = IntentMatch{name, score};
    }
    return best;
}

}  // namespace triage
