#include <doctest.h>

#include "support.hpp"
#include "triage/text.hpp"

using namespace triage;
using triage::testing::Rng;

TEST_CASE("normalize folds case, punctuation and whitespace") {
    CHECK(text::normalize("  Chest   PAIN!! ") == "chest pain");
    CHECK(text::normalize("pain,\tleft-arm") == "pain left arm");
    CHECK(text::normalize("") == "");
    CHECK(text::normalize("...") == "");
}

TEST_CASE("normalize composes to NFC") {
    // e + combining acute vs precomposed
    CHECK(text::normalize("caf\x65\xcc\x81") == text::normalize("caf\xc3\xa9"));
}

TEST_CASE("normalize keeps Bengali text intact") {
    CHECK(text::normalize("বুকে ব্যথা") == "বুকে ব্যথা");
    CHECK(text::normalize(" জ্বর ") == "জ্বর");
}

TEST_CASE("invalid UTF-8 becomes the replacement character") {
    CHECK(text::normalize("a\xff") == "a\xef\xbf\xbd");
}

TEST_CASE("levenshtein examples") {
    CHECK(text::levenshtein(U"feverr", U"fever") == 1);
    CHECK(text::levenshtein(U"kitten", U"sitting") == 3);
    CHECK(text::levenshtein(U"", U"abc") == 3);
    CHECK(text::levenshtein(U"same", U"same") == 0);
}

TEST_CASE("edit similarity") {
    CHECK(text::edit_similarity(U"feverr", U"fever") == doctest::Approx(1.0 - 1.0 / 6.0).epsilon(1e-12));
    CHECK(text::edit_similarity(U"", U"") == 1.0);
    CHECK(text::edit_similarity(U"abc", U"xyz") == 0.0);
}

TEST_CASE("property: levenshtein agrees with the recursive definition") {
    Rng rng(11);
    const std::u32string alphabet = U"abcজ্ব";
    for (int i = 0; i < 400; ++i) {
        std::u32string a, b;
        for (int n = rng.integer(0, 6); n > 0; --n) a += alphabet[rng.index(alphabet.size())];
        for (int n = rng.integer(0, 6); n > 0; --n) b += alphabet[rng.index(alphabet.size())];
        const auto d = text::levenshtein(a, b);
        REQUIRE(d == triage::testing::naive_levenshtein(a, b));
        REQUIRE(d == text::levenshtein(b, a));
    }
}

TEST_CASE("UTF-8 round trip") {
    const std::string s = "ধড়ফড় fever";
    CHECK(text::to_utf8(text::to_u32(s)) == s);
    CHECK(text::to_u32("জ্বর").size() == 4);
}

TEST_CASE("trigram cosine") {
    const text::TrigramProfile a(U"fever"), b(U"fever"), c(U"qqqq");
    CHECK(a.cosine(b) == doctest::Approx(1.0));
    CHECK(a.cosine(c) == 0.0);
    CHECK(text::TrigramProfile().cosine(a) == 0.0);
    // " ab" "ab " -> two trigrams, each once
    CHECK(text::TrigramProfile(U"ab").counts().size() == 2);
}

TEST_CASE("property: trigram cosine is symmetric and bounded") {
    Rng rng(5);
    const std::u32string alphabet = U"abcde ";
    for (int i = 0; i < 300; ++i) {
        std::u32string a, b;
        for (int n = rng.integer(1, 10); n > 0; --n) a += alphabet[rng.index(alphabet.size())];
        for (int n = rng.integer(1, 10); n > 0; --n) b += alphabet[rng.index(alphabet.size())];
        const text::TrigramProfile pa(a), pb(b);
        const double ab = pa.cosine(pb);
        REQUIRE(ab == doctest::Approx(pb.cosine(pa)).epsilon(1e-12));
        REQUIRE(ab >= 0.0);
        REQUIRE(ab <= 1.0 + 1e-12);
    }
}
