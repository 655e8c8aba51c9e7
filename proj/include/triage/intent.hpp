#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "triage/lexicon.hpp"

namespace triage {

struct IntentPattern {
    std::string keyword;
    double weight = 0.0;
};

struct IntentRule {
    std::string intent;
    std::vector<IntentPattern> patterns;
    Locale locale = Locale::en;
};

struct IntentMatch {
    std::string intent;
    double score = 0.0;
};

class IntentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr double kIntentThreshold = 0.3;

/// Validated rule set. Intent names are unique within a locale.
class IntentRules {
public:
    static IntentRules build(std::vector<IntentRule> rules, double threshold = kIntentThreshold);
    static IntentRules defaults();

    const std::vector<IntentRule>& rules() const { return rules_; }
    double threshold() const { return threshold_; }
    /// Distinct intent names across all locales, ascending.
    std::vector<std::string> intents() const;

private:
    std::vector<IntentRule> rules_;
    double threshold_ = kIntentThreshold;
};

/// Score is the capped sum of weights of keywords found as whole words in
/// the normalized utterance. Bengali dialects also use bn_standard rules.
std::optional<IntentMatch> classify_intent(const IntentRules& rules, std::string_view utterance, Locale locale);

}  // namespace triage
