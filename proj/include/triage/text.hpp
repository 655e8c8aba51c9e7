#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>

namespace triage::text {

/// Canonical matching form of a surface string: NFC, Unicode case fold,
/// punctuation mapped to spaces, whitespace collapsed and trimmed.
/// Invalid UTF-8 sequences are replaced with U+FFFD.
std::string normalize(std::string_view utf8);

std::u32string to_u32(std::string_view utf8);
std::string to_utf8(std::u32string_view cps);

/// Levenshtein distance over code points (unit insert/delete/substitute).
std::size_t levenshtein(std::u32string_view a, std::u32string_view b);

/// 1 - d / max(|a|, |b|); two empty strings are identical (1.0).
double edit_similarity(std::u32string_view a, std::u32string_view b);

/// Character-trigram multiset of a string padded with one space at each end.
class TrigramProfile {
public:
    TrigramProfile() = default;
    explicit TrigramProfile(std::u32string_view cps);

    double cosine(const TrigramProfile& other) const;
    const std::map<std::u32string, int>& counts() const { return counts_; }
    bool empty() const { return counts_.empty(); }

private:
    std::map<std::u32string, int> counts_;
    double norm_ = 0.0;
};

}  // namespace triage::text
