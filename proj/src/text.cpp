#include "triage/text.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

namespace triage::text {

namespace {

const icu::Normalizer2& nfc() {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status) || n == nullptr) {
        throw std::runtime_error("ICU NFC normalizer unavailable");
    }
    return *n;
}

}  // namespace

std::string normalize(std::string_view utf8) {
    icu::UnicodeString s = icu::UnicodeString::fromUTF8(
        icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
    UErrorCode status = U_ZERO_ERROR;
    icu::UnicodeString folded = nfc().normalize(s, status);
    folded.foldCase(U_FOLD_CASE_DEFAULT);
    // Case folding can produce denormalized sequences.
    icu::UnicodeString composed = nfc().normalize(folded, status);
    if (U_FAILURE(status)) {
        throw std::runtime_error("ICU normalization failed");
    }

    std::u32string out;
    out.reserve(static_cast<std::size_t>(composed.length()));
    bool pending_space = false;
    for (int32_t i = 0; i < composed.length();) {
        UChar32 c = composed.char32At(i);
        i += U16_LENGTH(c);
        if (u_ispunct(c) || u_isUWhiteSpace(c) || u_iscntrl(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(U' ');
            pending_space = false;
        }
        out.push_back(static_cast<char32_t>(c));
    }
    return to_utf8(out);
}

std::u32string to_u32(std::string_view utf8) {
    std::u32string out;
    out.reserve(utf8.size());
    const auto* bytes = reinterpret_cast<const uint8_t*>(utf8.data());
    const auto length = static_cast<int32_t>(utf8.size());
    for (int32_t i = 0; i < length;) {
        UChar32 c;
        U8_NEXT(bytes, i, length, c);
        out.push_back(c < 0 ? U'�' : static_cast<char32_t>(c));
    }
    return out;
}

std::string to_utf8(std::u32string_view cps) {
    std::string out;
    out.reserve(cps.size());
    for (char32_t c : cps) {
        uint8_t buf[U8_MAX_LENGTH];
        int32_t len = 0;
        UBool error = false;
        U8_APPEND(buf, len, U8_MAX_LENGTH, static_cast<UChar32>(c), error);
        if (error) {
            len = 0;
            U8_APPEND_UNSAFE(buf, len, 0xFFFD);
        }
        out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(len));
    }
    return out;
}

std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
    if (a.size() < b.size()) {
        std::swap(a, b);
    }
    std::vector<std::size_t> row(b.size() + 1);
    std::iota(row.begin(), row.end(), std::size_t{0});
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t up = row[j];
            const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + cost});
            diag = up;
        }
    }
    return row[b.size()];
}

double edit_similarity(std::u32string_view a, std::u32string_view b) {
    const std::size_t longest = std::max(a.size(), b.size());
    if (longest == 0) {
        return 1.0;
    }
    return 1.0 - static_cast<double>(levenshtein(a, b)) / static_cast<double>(longest);
}

TrigramProfile::TrigramProfile(std::u32string_view cps) {
    std::u32string padded;
    padded.reserve(cps.size() + 2);
    padded.push_back(U' ');
    padded.append(cps);
    padded.push_back(U' ');
    if (padded.size() < 3) {
        return;
    }
    for (std::size_t i = 0; i + 3 <= padded.size(); ++i) {
        ++counts_[padded.substr(i, 3)];
    }
    double sq = 0.0;
    for (const auto& [gram, n] : counts_) {
        sq += static_cast<double>(n) * n;
    }
    norm_ = std::sqrt(sq);
}

double TrigramProfile::cosine(const TrigramProfile& other) const {
    if (norm_ == 0.0 || other.norm_ == 0.0) {
        return 0.0;
    }
    double dot = 0.0;
    auto it = counts_.begin();
    auto jt = other.counts_.begin();
    while (it != counts_.end() && jt != other.counts_.end()) {
        if (it->first < jt->first) {
            ++it;
        } else if (jt->first < it->first) {
            ++jt;
        } else {
            dot += static_cast<double>(it->second) * jt->second;
            ++it;
            ++jt;
        }
    }
    return std::clamp(dot / (norm_ * other.norm_), 0.0, 1.0);
}

}  // namespace triage::text
