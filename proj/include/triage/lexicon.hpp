#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "triage/knowledge_graph.hpp"
#include "triage/text.hpp"

namespace triage {

enum class Locale { en, bn_standard, bn_colloquial, bn_sylheti, bn_chittagonian };

inline constexpr std::array<Locale, 5> all_locales = {Locale::en, Locale::bn_standard, Locale::bn_colloquial,
                                                      Locale::bn_sylheti, Locale::bn_chittagonian};

std::string_view to_string(Locale l);
std::optional<Locale> parse_locale(std::string_view s);
inline bool is_bengali(Locale l) { return l != Locale::en; }

struct LexVariant {
    std::string surface;
    Locale locale = Locale::en;
    std::string symptom_id;
    /// 0 for variants synthesized from graph symptom names.
    std::size_t source_line = 0;
};

enum class MatchMethod { exact, fuzzy, semantic, none };
std::string_view to_string(MatchMethod m);

struct MatchResult {
    std::optional<std::string> symptom_id;
    MatchMethod method = MatchMethod::none;
    double score = 0.0;
};

struct LexiconConfig {
    double fuzzy_threshold = 0.80;
    double semantic_threshold = 0.60;
};

class LexiconError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CoverageReport {
    std::map<Locale, std::size_t> variants_by_locale;
    std::size_t bengali_variants = 0;
    std::size_t symptoms = 0;
    std::size_t symptoms_with_bengali = 0;
    std::vector<std::string> symptoms_without_bengali;
};

/// Immutable registry of symptom surface forms across English and the
/// Bengali dialect family. Every graph symptom carries its English name as a
/// variant even when the table omits it.
class SymptomLexicon {
public:
    static SymptomLexicon build(std::vector<LexVariant> rows, const KnowledgeGraph& graph, LexiconConfig config = {});

    /// exact -> fuzzy (normalized edit similarity) -> semantic (trigram
    /// cosine) -> none. Ties go to the higher score, then the smaller id.
    MatchResult normalize_term(std::string_view text, std::optional<Locale> locale_hint = std::nullopt) const;

    /// Variants of `locale` whose normalized surface starts with the
    /// normalized prefix, ordered by (common symptom first, surface).
    std::vector<LexVariant> autocomplete(std::string_view prefix, Locale locale, std::size_t n) const;

    /// Best fuzzy similarity of `text` against the whole lexicon (no threshold).
    double best_fuzzy_score(std::string_view text) const;

    /// Display label for a symptom: first variant of `locale`, else the graph name.
    std::string label(std::string_view symptom_id, Locale locale) const;

    CoverageReport coverage() const;

    const std::vector<LexVariant>& variants() const { return variants_; }
    const LexiconConfig& config() const { return config_; }

private:
    struct Entry {
        std::string normalized;
        std::u32string cps;
        text::TrigramProfile trigrams;
        std::size_t variant;  // index into variants_
    };

    SymptomLexicon() = default;

    std::vector<LexVariant> variants_;
    std::vector<Entry> entries_;
    std::unordered_map<std::string, std::vector<std::size_t>> exact_;  // normalized -> entries_
    std::unordered_map<std::string, std::string> english_names_;
    std::unordered_map<std::string, bool> common_;
    LexiconConfig config_;
};

/// Tab-separated `surface<TAB>locale<TAB>symptom_id`; `#` lines are comments.
SymptomLexicon load_lexicon(std::istream& in, const KnowledgeGraph& graph, LexiconConfig config = {});
SymptomLexicon load_lexicon_file(const std::filesystem::path& path, const KnowledgeGraph& graph,
                                 LexiconConfig config = {});

}  // namespace triage
