#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>

namespace triage {

struct StoredSession {
    std::string document;
    std::int64_t created_ms = 0;
    std::int64_t updated_ms = 0;
};

class StoreError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// 128 random bits as 32 lowercase hex digits.
std::string new_session_id();

/// Session documents keyed by id, backed by an append-only journal of JSON
/// lines. Each save is flushed to disk before it returns; replay keeps the
/// last record per id. An empty path keeps everything in memory.
class SessionStore {
public:
    explicit SessionStore(std::filesystem::path journal = {});
    ~SessionStore();
    SessionStore(const SessionStore&) = delete;
    SessionStore& operator=(const SessionStore&) = delete;

    /// updated_ms is strictly increasing per id.
    StoredSession save(const std::string& id, const std::string& document);
    std::optional<StoredSession> load(const std::string& id) const;
    bool contains(const std::string& id) const;
    std::size_t size() const;

private:
    /// True when the last record lacks a trailing newline.
    bool replay();

    std::filesystem::path path_;
    int fd_ = -1;
    mutable std::mutex mu_;
    std::map<std::string, StoredSession> sessions_;
};

}  // namespace triage
