#include <doctest.h>

#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <unistd.h>

#include "triage/session_store.hpp"

using namespace triage;
namespace fs = std::filesystem;

namespace {

fs::path temp_journal(const std::string& tag) {
    const auto p = fs::temp_directory_path() / ("triage_store_" + tag + "_" + std::to_string(::getpid()) + ".jsonl");
    fs::remove(p);
    return p;
}

}  // namespace

TEST_CASE("session ids") {
    std::set<std::string> seen;
    for (int i = 0; i < 200; ++i) {
        const auto id = new_session_id();
        REQUIRE(id.size() == 32);
        for (char c : id) REQUIRE((std::isdigit(static_cast<unsigned char>(c)) || (c >= 'a' && c <= 'f')));
        REQUIRE(seen.insert(id).second);
    }
}

TEST_CASE("in-memory store") {
    SessionStore store;
    CHECK(!store.load("x"));
    const auto a = store.save("x", "{\"v\":1}");
    const auto b = store.save("x", "{\"v\":2}");
    CHECK(b.updated_ms > a.updated_ms);
    CHECK(b.created_ms == a.created_ms);
    CHECK(store.load("x")->document == "{\"v\":2}");
    CHECK(store.size() == 1);
    CHECK(store.contains("x"));
    CHECK(!store.contains("y"));
}

TEST_CASE("journal replay keeps the last record per id") {
    const auto path = temp_journal("replay");
    {
        SessionStore store(path);
        store.save("a", "{\"v\":1}");
        store.save("b", "{\"v\":10}");
        store.save("a", "{\"v\":2}");
    }
    SessionStore again(path);
    CHECK(again.size() == 2);
    CHECK(again.load("a")->document == "{\"v\":2}");
    CHECK(again.load("b")->document == "{\"v\":10}");
    const auto before = again.load("a")->updated_ms;
    CHECK(again.save("a", "{\"v\":3}").updated_ms > before);
    fs::remove(path);
}

TEST_CASE("a torn final line is dropped") {
    const auto path = temp_journal("torn");
    {
        SessionStore store(path);
        store.save("a", "{\"v\":1}");
    }
    {
        std::ofstream out(path, std::ios::app);
        out << "{\"id\":\"a\",\"document\":\"{\\\"v\\\":";
    }
    SessionStore again(path);
    CHECK(again.load("a")->document == "{\"v\":1}");
    // New records after a torn tail are still readable.
    again.save("b", "{}");
    SessionStore third(path);
    CHECK(third.contains("b"));
    CHECK(third.load("a")->document == "{\"v\":1}");
    fs::remove(path);
}

TEST_CASE("a corrupt line in the middle is an error") {
    const auto path = temp_journal("corrupt");
    {
        std::ofstream out(path);
        out << "not json\n{\"id\":\"a\",\"document\":\"{}\",\"created_ms\":1,\"updated_ms\":1}\n";
    }
    CHECK_THROWS_AS(SessionStore{path}, StoreError);
    fs::remove(path);
}
