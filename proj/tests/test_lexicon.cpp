#include <doctest.h>

#include <sstream>

#include "support.hpp"
#include "triage/lexicon.hpp"

using namespace triage;
using triage::testing::GraphBuilder;
using triage::testing::Rng;

namespace {

KnowledgeGraph small_graph() {
    return GraphBuilder()
        .disease("D1", "ENT")
        .symptom("fever", SpecialFlow::fever, true, "fever")
        .symptom("blister", SpecialFlow::none, false, "fever blister")
        .symptom("cough", SpecialFlow::cough, true, "cough")
        .link("D1", "fever", 0.5)
        .link("D1", "blister", 0.5)
        .link("D1", "cough", 0.5)
        .graph();
}

SymptomLexicon lexicon_from(const std::string& table, const KnowledgeGraph& g) {
    std::istringstream in(table);
    return load_lexicon(in, g);
}

std::string load_error(const std::string& table, const KnowledgeGraph& g) {
    try {
        lexicon_from(table, g);
    } catch (const LexiconError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("exact, fuzzy and none") {
    const auto g = small_graph();
    const auto lex = lexicon_from("জ্বর\tbn_standard\tfever\n", g);

    auto m = lex.normalize_term("Fever");
    CHECK(m.symptom_id == "fever");
    CHECK(m.method == MatchMethod::exact);
    CHECK(m.score == 1.0);

    m = lex.normalize_term("feverr");
    CHECK(m.symptom_id == "fever");
    CHECK(m.method == MatchMethod::fuzzy);
    CHECK(m.score == doctest::Approx(0.833).epsilon(0.001 / 0.833));

    CHECK(lex.normalize_term("জ্বর", Locale::bn_standard).symptom_id == "fever");
    CHECK(lex.normalize_term("zzzzzz").method == MatchMethod::none);
    CHECK(lex.normalize_term("   ").method == MatchMethod::none);
}

TEST_CASE("locale hint breaks exact ties") {
    const auto g = small_graph();
    const auto lex = lexicon_from("kash\tbn_colloquial\tcough\nkash\tbn_sylheti\tfever\n", g);
    CHECK(lex.normalize_term("kash", Locale::bn_colloquial).symptom_id == "cough");
    CHECK(lex.normalize_term("kash", Locale::bn_sylheti).symptom_id == "fever");
    // No hint: smallest id.
    CHECK(lex.normalize_term("kash").symptom_id == "cough");
}

TEST_CASE("semantic tier catches reordered words") {
    const auto g = GraphBuilder()
                       .disease("D1", "ENT")
                       .symptom("S1", SpecialFlow::none, false, "pain in lower back")
                       .link("D1", "S1", 0.5)
                       .graph();
    const auto lex = lexicon_from("", g);
    const auto m = lex.normalize_term("lower back pain in");
    CHECK(m.method == MatchMethod::semantic);
    CHECK(m.symptom_id == "S1");
    CHECK(m.score >= 0.60);
}

TEST_CASE("autocomplete") {
    const auto g = small_graph();
    const auto lex = lexicon_from("", g);

    auto out = lex.autocomplete("fev", Locale::en, 2);
    REQUIRE(out.size() == 2);
    CHECK(out[0].surface == "fever");
    CHECK(out[1].surface == "fever blister");

    out = lex.autocomplete("fever blister", Locale::en, 5);
    REQUIRE(out.size() == 1);
    CHECK(out[0].symptom_id == "blister");

    // Empty prefix: common first, then by surface.
    out = lex.autocomplete("", Locale::en, 3);
    REQUIRE(out.size() == 3);
    CHECK(out[0].surface == "cough");
    CHECK(out[1].surface == "fever");
    CHECK(out[2].surface == "fever blister");

    CHECK(lex.autocomplete("", Locale::bn_sylheti, 3).empty());
}

TEST_CASE("load errors") {
    const auto g = small_graph();
    CHECK(load_error("x\ten\tmissing\n", g).find("unknown symptom_id") != std::string::npos);
    const auto dup = load_error("# header\nhot\ten\tfever\nHot!\ten\tfever\n", g);
    CHECK(dup.find("row 2") != std::string::npos);
    CHECK(dup.find("row 3") != std::string::npos);
    CHECK(load_error("fever blister\ten\tfever\n", g).find("name of symptom") != std::string::npos);
    CHECK(load_error("x\txx\tfever\n", g).find("unknown locale") != std::string::npos);
    CHECK(load_error("x\ten\n", g).find("3 tab-separated") != std::string::npos);
    // Same surface in different locales is fine.
    CHECK(load_error("jor\tbn_standard\tfever\njor\tbn_sylheti\tfever\n", g).empty());
}

TEST_CASE("labels and coverage") {
    const auto g = small_graph();
    const auto lex = lexicon_from("জ্বর\tbn_standard\tfever\nজর\tbn_sylheti\tfever\n", g);
    CHECK(lex.label("fever", Locale::bn_standard) == "জ্বর");
    CHECK(lex.label("fever", Locale::bn_colloquial) == "fever");
    CHECK(lex.label("cough", Locale::en) == "cough");

    const auto c = lex.coverage();
    CHECK(c.bengali_variants == 2);
    CHECK(c.symptoms == 3);
    CHECK(c.symptoms_with_bengali == 1);
    CHECK(c.variants_by_locale.at(Locale::en) == 3);
}

TEST_CASE("demo lexicon: every variant is recalled exactly") {
    const auto lex = triage::testing::demo_lexicon();
    std::size_t bengali = 0;
    for (const auto& v : lex->variants()) {
        const auto m = lex->normalize_term(v.surface, v.locale);
        REQUIRE(m.method == MatchMethod::exact);
        REQUIRE(m.symptom_id == v.symptom_id);
        bengali += is_bengali(v.locale);
    }
    CHECK(bengali > 100);
    for (Locale l : all_locales) CHECK(lex->coverage().variants_by_locale.at(l) > 0);
}

TEST_CASE("demo lexicon: zzzzzz reaches no tier by exhaustive scan") {
    const auto lex = triage::testing::demo_lexicon();
    const auto q = text::to_u32("zzzzzz");
    const text::TrigramProfile tq(q);
    for (const auto& v : lex->variants()) {
        const auto cps = text::to_u32(text::normalize(v.surface));
        REQUIRE(text::edit_similarity(q, cps) < 0.80);
        REQUIRE(tq.cosine(text::TrigramProfile(cps)) < 0.60);
    }
    CHECK(lex->normalize_term("zzzzzz").method == MatchMethod::none);
}

TEST_CASE("property: cascade precedence against an exhaustive scan") {
    const auto lex = triage::testing::demo_lexicon();
    const auto& variants = lex->variants();
    std::vector<std::u32string> norms;
    for (const auto& v : variants) norms.push_back(text::to_u32(text::normalize(v.surface)));

    Rng rng(77);
    const std::u32string noise = U"abcdefgijklmnoprstuvwyz ব্যথা";
    for (int i = 0; i < 2000; ++i) {
        std::u32string s = norms[rng.index(norms.size())];
        for (int edits = rng.integer(0, 3); edits > 0; --edits) {
            const int op = rng.integer(0, 2);
            const char32_t c = noise[rng.index(noise.size())];
            if (op == 0 || s.empty()) {
                s.insert(s.begin() + static_cast<long>(rng.index(s.size() + 1)), c);
            } else if (op == 1) {
                s.erase(s.begin() + static_cast<long>(rng.index(s.size())));
            } else {
                s[rng.index(s.size())] = c;
            }
        }
        const std::string input = text::to_utf8(s);
        const auto q = text::to_u32(text::normalize(input));
        if (q.empty()) continue;

        bool exact = false;
        double fuzzy = 0.0, cosine = 0.0;
        const text::TrigramProfile tq(q);
        for (const auto& n : norms) {
            exact = exact || n == q;
            fuzzy = std::max(fuzzy, text::edit_similarity(q, n));
            cosine = std::max(cosine, tq.cosine(text::TrigramProfile(n)));
        }
        const auto m = lex->normalize_term(input);
        if (exact) {
            REQUIRE(m.method == MatchMethod::exact);
        } else if (fuzzy >= 0.80) {
            REQUIRE(m.method == MatchMethod::fuzzy);
            REQUIRE(m.score == doctest::Approx(fuzzy).epsilon(1e-12));
        } else if (cosine >= 0.60) {
            REQUIRE(m.method == MatchMethod::semantic);
            REQUIRE(m.score == doctest::Approx(cosine).epsilon(1e-12));
        } else {
            REQUIRE(m.method == MatchMethod::none);
            REQUIRE(!m.symptom_id);
        }
    }
}
