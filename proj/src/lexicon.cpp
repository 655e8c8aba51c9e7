#include "triage/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <tuple>

namespace triage {

std::string_view to_string(Locale l) {
    switch (l) {
        case Locale::en: return "en";
        case Locale::bn_standard: return "bn_standard";
        case Locale::bn_colloquial: return "bn_colloquial";
        case Locale::bn_sylheti: return "bn_sylheti";
        case Locale::bn_chittagonian: return "bn_chittagonian";
    }
    return "?";
}

std::optional<Locale> parse_locale(std::string_view s) {
    for (Locale l : all_locales) {
        if (s == to_string(l)) return l;
    }
    return std::nullopt;
}

std::string_view to_string(MatchMethod m) {
    switch (m) {
        case MatchMethod::exact: return "exact";
        case MatchMethod::fuzzy: return "fuzzy";
        case MatchMethod::semantic: return "semantic";
        case MatchMethod::none: return "none";
    }
    return "?";
}

namespace {

std::string row_name(std::size_t line) {
    return line == 0 ? std::string("graph symptom name") : "row " + std::to_string(line);
}

// Higher score wins, then the smaller symptom id.
bool better(double score, const std::string& id, double best_score, const std::string* best_id) {
    if (best_id == nullptr) return true;
    if (score != best_score) return score > best_score;
    return id < *best_id;
}

}  // namespace

SymptomLexicon SymptomLexicon::build(std::vector<LexVariant> rows, const KnowledgeGraph& graph, LexiconConfig config) {
    SymptomLexicon lex;
    lex.config_ = config;

    std::map<std::pair<std::string, Locale>, std::size_t> seen;  // -> index into rows
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (!graph.symptom_index(row.symptom_id)) {
            throw LexiconError(row_name(row.source_line) + ": unknown symptom_id '" + row.symptom_id + "'");
        }
        std::string norm = text::normalize(row.surface);
        if (norm.empty()) {
            throw LexiconError(row_name(row.source_line) + ": surface is empty after normalization");
        }
        auto [it, inserted] = seen.emplace(std::make_pair(norm, row.locale), i);
        if (!inserted) {
            throw LexiconError("duplicate (surface, locale) '" + norm + "'/" + std::string(to_string(row.locale)) +
                               " at " + row_name(rows[it->second].source_line) + " and " + row_name(row.source_line));
        }
    }

    for (const auto& s : graph.symptoms()) {
        lex.english_names_[s.id] = s.name;
        lex.common_[s.id] = s.common_flag;
        std::string norm = text::normalize(s.name);
        if (norm.empty()) throw LexiconError("symptom '" + s.id + "': name is empty after normalization");
        auto it = seen.find({norm, Locale::en});
        if (it != seen.end()) {
            if (rows[it->second].symptom_id != s.id) {
                throw LexiconError(row_name(rows[it->second].source_line) + ": English surface '" + norm +
                                   "' maps to '" + rows[it->second].symptom_id + "' but is the name of symptom '" +
                                   s.id + "'");
            }
            continue;
        }
        seen.emplace(std::make_pair(norm, Locale::en), rows.size());
        rows.push_back({s.name, Locale::en, s.id, 0});
    }

    lex.variants_ = std::move(rows);
    lex.entries_.reserve(lex.variants_.size());
    for (std::size_t i = 0; i < lex.variants_.size(); ++i) {
        Entry e;
        e.normalized = text::normalize(lex.variants_[i].surface);
        e.cps = text::to_u32(e.normalized);
        e.trigrams = text::TrigramProfile(e.cps);
        e.variant = i;
        lex.exact_[e.normalized].push_back(lex.entries_.size());
        lex.entries_.push_back(std::move(e));
    }
    return lex;
}

MatchResult SymptomLexicon::normalize_term(std::string_view input, std::optional<Locale> locale_hint) const {
    const std::string norm = text::normalize(input);
    if (norm.empty()) return {};

    if (auto it = exact_.find(norm); it != exact_.end()) {
        const std::string* best = nullptr;
        if (locale_hint) {
            for (std::size_t e : it->second) {
                const auto& v = variants_[entries_[e].variant];
                if (v.locale == *locale_hint && (best == nullptr || v.symptom_id < *best)) best = &v.symptom_id;
            }
        }
        if (best == nullptr) {
            for (std::size_t e : it->second) {
                const auto& v = variants_[entries_[e].variant];
                if (best == nullptr || v.symptom_id < *best) best = &v.symptom_id;
            }
        }
        return {*best, MatchMethod::exact, 1.0};
    }

    const std::u32string cps = text::to_u32(norm);
    const std::string* best_id = nullptr;
    double best_score = 0.0;
    for (const auto& e : entries_) {
        const double longest = static_cast<double>(std::max(cps.size(), e.cps.size()));
        const double diff = cps.size() > e.cps.size() ? cps.size() - e.cps.size() : e.cps.size() - cps.size();
        // |la - lb| bounds the distance from below.
        if (1.0 - diff / longest < config_.fuzzy_threshold) continue;
        const double score = text::edit_similarity(cps, e.cps);
        const auto& id = variants_[e.variant].symptom_id;
        if (better(score, id, best_score, best_id)) {
            best_score = score;
            best_id = &id;
        }
    }
    if (best_id != nullptr && best_score >= config_.fuzzy_threshold) {
        return {*best_id, MatchMethod::fuzzy, best_score};
    }

    const text::TrigramProfile query(cps);
    best_id = nullptr;
    best_score = 0.0;
    for (const auto& e : entries_) {
        const double score = query.cosine(e.trigrams);
        const auto& id = variants_[e.variant].symptom_id;
        if (better(score, id, best_score, best_id)) {
            best_score = score;
            best_id = &id;
        }
    }
    if (best_id != nullptr && best_score >= config_.semantic_threshold) {
        return {*best_id, MatchMethod::semantic, best_score};
    }
    return {};
}

double SymptomLexicon::best_fuzzy_score(std::string_view input) const {
    const std::u32string cps = text::to_u32(text::normalize(input));
    double best = 0.0;
    for (const auto& e : entries_) best = std::max(best, text::edit_similarity(cps, e.cps));
    return best;
}

std::vector<LexVariant> SymptomLexicon::autocomplete(std::string_view prefix, Locale locale, std::size_t n) const {
    const std::string norm = text::normalize(prefix);
    std::vector<const Entry*> hits;
    for (const auto& e : entries_) {
        if (variants_[e.variant].locale != locale) continue;
        if (e.normalized.compare(0, norm.size(), norm) == 0) hits.push_back(&e);
    }
    auto key = [this](const Entry* e) {
        const auto& v = variants_[e->variant];
        return std::make_tuple(!common_.at(v.symptom_id), std::cref(e->normalized), std::cref(v.symptom_id));
    };
    std::sort(hits.begin(), hits.end(), [&](const Entry* a, const Entry* b) { return key(a) < key(b); });
    std::vector<LexVariant> out;
    for (std::size_t i = 0; i < hits.size() && i < n; ++i) out.push_back(variants_[hits[i]->variant]);
    return out;
}

std::string SymptomLexicon::label(std::string_view symptom_id, Locale locale) const {
    if (locale != Locale::en) {
        for (const auto& v : variants_) {
            if (v.locale == locale && v.symptom_id == symptom_id) return v.surface;
        }
    }
    auto it = english_names_.find(std::string(symptom_id));
    return it == english_names_.end() ? std::string(symptom_id) : it->second;
}

CoverageReport SymptomLexicon::coverage() const {
    CoverageReport r;
    for (Locale l : all_locales) r.variants_by_locale[l] = 0;
    std::map<std::string, std::size_t> bengali_by_symptom;
    for (const auto& [id, name] : english_names_) bengali_by_symptom[id] = 0;
    for (const auto& v : variants_) {
        ++r.variants_by_locale[v.locale];
        if (is_bengali(v.locale)) {
            ++r.bengali_variants;
            ++bengali_by_symptom[v.symptom_id];
        }
    }
    r.symptoms = bengali_by_symptom.size();
    for (const auto& [id, n] : bengali_by_symptom) {
        if (n > 0) {
            ++r.symptoms_with_bengali;
        } else {
            r.symptoms_without_bengali.push_back(id);
        }
    }
    return r;
}

SymptomLexicon load_lexicon(std::istream& in, const KnowledgeGraph& graph, LexiconConfig config) {
    std::vector<LexVariant> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        std::vector<std::string> cols;
        std::size_t start = 0;
        for (;;) {
            const std::size_t tab = line.find('\t', start);
            cols.push_back(line.substr(start, tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        if (cols.size() != 3) {
            throw LexiconError("row " + std::to_string(line_no) + ": expected 3 tab-separated columns, got " +
                               std::to_string(cols.size()));
        }
        auto locale = parse_locale(cols[1]);
        if (!locale) throw LexiconError("row " + std::to_string(line_no) + ": unknown locale '" + cols[1] + "'");
        rows.push_back({cols[0], *locale, cols[2], line_no});
    }
    return SymptomLexicon::build(std::move(rows), graph, config);
}

SymptomLexicon load_lexicon_file(const std::filesystem::path& path, const KnowledgeGraph& graph,
                                 LexiconConfig config) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LexiconError("cannot open lexicon table '" + path.string() + "'");
    return load_lexicon(in, graph, config);
}

}  // namespace triage
