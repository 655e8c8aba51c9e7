#include "triage/question_text.hpp"

#include <json.hpp>

namespace triage {

QuestionTemplates QuestionTemplates::defaults() {
    QuestionTemplates t;
    t.table_[Locale::en] = {
        {"presence", "Do you have {severity} {character} {symptom} {duration}?"},
        {"attribute.site_radiation", "Where exactly do you feel the {symptom}, and does it spread anywhere?"},
        {"attribute.onset", "Did the {symptom} start suddenly or gradually?"},
        {"attribute.character", "How would you describe the {symptom} (for example sharp, dull, burning)?"},
        {"attribute.associated_symptoms", "Do you notice anything else together with the {symptom}?"},
        {"attribute.time_course", "Is the {symptom} constant, or does it come and go?"},
        {"attribute.exacerbating_relieving", "Does anything make the {symptom} better or worse?"},
        {"attribute.severity", "On a scale from 0 to 10, how severe is the {symptom}?"},
        {"attribute.duration", "How long have you had the {symptom}?"},
        {"attribute.pattern", "How would you describe the pattern of the {symptom}?"},
    };
    t.table_[Locale::bn_standard] = {
        {"presence", "আপনার কি {symptom} আছে?"},
        {"attribute.site_radiation", "{symptom} ঠিক কোথায় হচ্ছে, এবং এটি কি অন্য কোথাও ছড়িয়ে যায়?"},
        {"attribute.onset", "{symptom} কি হঠাৎ শুরু হয়েছে নাকি ধীরে ধীরে?"},
        {"attribute.character", "{symptom} কেমন ধরনের (যেমন তীক্ষ্ণ, চাপা, জ্বালাপোড়া)?"},
        {"attribute.associated_symptoms", "{symptom} এর সাথে আর কোনো সমস্যা হচ্ছে কি?"},
        {"attribute.time_course", "{symptom} কি সবসময় থাকে, নাকি আসে আর যায়?"},
        {"attribute.exacerbating_relieving", "কিছু করলে কি {symptom} বাড়ে বা কমে?"},
        {"attribute.severity", "০ থেকে ১০ এর মধ্যে {symptom} কতটা তীব্র?"},
        {"attribute.duration", "কতদিন ধরে {symptom} হচ্ছে?"},
        {"attribute.pattern", "{symptom} কেমন ধরনের?"},
    };
    return t;
}

QuestionTemplates QuestionTemplates::from_json(std::string_view document) {
    QuestionTemplates t;
    const auto doc = nlohmann::json::parse(document);
    for (const auto& [locale_name, entries] : doc.items()) {
        auto locale = parse_locale(locale_name);
        if (!locale) throw std::invalid_argument("question templates: unknown locale '" + locale_name + "'");
        t.table_[*locale] = entries.get<std::map<std::string, std::string>>();
    }
    if (!t.table_.contains(Locale::en) || !t.table_.at(Locale::en).contains("presence")) {
        throw std::invalid_argument("question templates: an English presence template is required");
    }
    return t;
}

const std::string* QuestionTemplates::lookup(Locale locale, const std::string& key) const {
    for (Locale l : {locale, Locale::bn_standard, Locale::en}) {
        if (l == Locale::bn_standard && !is_bengali(locale)) continue;
        auto it = table_.find(l);
        if (it == table_.end()) continue;
        auto entry = it->second.find(key);
        if (entry != it->second.end()) return &entry->second;
    }
    return nullptr;
}

std::string QuestionTemplates::render(const Question& q, const SymptomLexicon& lexicon, Locale locale) const {
    auto slots = q.render_slots;
    slots["symptom"] = lexicon.label(q.symptom_id, locale);
    const std::string key = q.kind == QuestionKind::presence ? "presence" : "attribute." + q.attribute_name;
    if (const std::string* pattern = lookup(locale, key)) return fill_template(*pattern, slots);
    return fill_template("{symptom}: {attribute}?", slots);
}

std::string fill_template(std::string_view pattern, const std::map<std::string, std::string>& slots) {
    std::string out;
    for (std::size_t i = 0; i < pattern.size();) {
        if (pattern[i] == '{') {
            const std::size_t close = pattern.find('}', i);
            if (close != std::string_view::npos) {
                auto it = slots.find(std::string(pattern.substr(i + 1, close - i - 1)));
                if (it != slots.end()) out += it->second;
                i = close + 1;
                continue;
            }
        }
        out += pattern[i++];
    }
    // Empty slots leave doubled or dangling spaces behind.
    std::string collapsed;
    for (char c : out) {
        if (c == ' ' && (collapsed.empty() || collapsed.back() == ' ')) continue;
        collapsed += c;
    }
    while (!collapsed.empty() && collapsed.back() == ' ') collapsed.pop_back();
    for (std::size_t pos; (pos = collapsed.find(" ?")) != std::string::npos;) collapsed.erase(pos, 1);
    return collapsed;
}

}  // namespace triage
