#pragma once

#include <map>
#include <string>
#include <string_view>

#include "triage/inference.hpp"
#include "triage/lexicon.hpp"

namespace triage {

/// Locale-keyed question templates with `{slot}` substitution. Keys are
/// `presence` and `attribute.<name>`. Bengali dialects fall back to
/// bn_standard, everything falls back to en.
class QuestionTemplates {
public:
    static QuestionTemplates defaults();
    /// `{"en": {"presence": "Do you have {symptom}?", ...}, "bn_standard": {...}}`
    static QuestionTemplates from_json(std::string_view document);

    std::string render(const Question& q, const SymptomLexicon& lexicon, Locale locale) const;

private:
    const std::string* lookup(Locale locale, const std::string& key) const;

    std::map<Locale, std::map<std::string, std::string>> table_;
};

/// Replaces `{name}` with slots[name]; unknown slots become empty and runs of
/// spaces collapse.
std::string fill_template(std::string_view pattern, const std::map<std::string, std::string>& slots);

}  // namespace triage
