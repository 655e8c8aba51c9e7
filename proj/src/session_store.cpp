#include "triage/session_store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <fstream>
#include <random>

#include <json.hpp>

namespace triage {

std::string new_session_id() {
    static std::mutex mu;
    static std::random_device device;
    std::lock_guard lock(mu);
    static constexpr char kHex[] = "0123456789abcdef";
    std::string id;
    for (int word = 0; word < 4; ++word) {
        std::uint32_t bits = device();
        for (int nibble = 0; nibble < 8; ++nibble, bits >>= 4) id += kHex[bits & 0xF];
    }
    return id;
}

namespace {

std::int64_t now_ms() {
    using namespace std::chrono;
    return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

}  // namespace

SessionStore::SessionStore(std::filesystem::path journal) : path_(std::move(journal)) {
    if (path_.empty()) return;
    const bool needs_newline = replay();
    fd_ = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0600);
    if (fd_ < 0) throw StoreError("cannot open session journal " + path_.string() + ": " + std::strerror(errno));
    // Later appends must start on a fresh line.
    if (needs_newline && ::write(fd_, "\n", 1) != 1) {
        throw StoreError("session journal write failed: " + std::string(std::strerror(errno)));
    }
}

SessionStore::~SessionStore() {
    if (fd_ >= 0) ::close(fd_);
}

bool SessionStore::replay() {
    std::ifstream in(path_);
    if (!in) return false;
    bool unterminated = false;
    std::string line;
    std::size_t line_no = 0;
    std::uintmax_t good_bytes = 0;
    bool torn = false;
    while (std::getline(in, line)) {
        ++line_no;
        const bool terminated = !in.eof();
        if (line.empty()) {
            good_bytes += terminated;
            continue;
        }
        try {
            const auto rec = nlohmann::json::parse(line);
            sessions_[rec.at("id").get<std::string>()] = {rec.at("document").get<std::string>(),
                                                          rec.at("created_ms").get<std::int64_t>(),
                                                          rec.at("updated_ms").get<std::int64_t>()};
        } catch (const nlohmann::json::exception&) {
            // A torn final write is dropped; corruption elsewhere is fatal.
            if (in.eof() || in.peek() == std::ifstream::traits_type::eof()) {
                torn = true;
                break;
            }
            throw StoreError(path_.string() + ":" + std::to_string(line_no) + ": corrupt journal record");
        }
        good_bytes += line.size() + terminated;
        unterminated = !terminated;
    }
    in.close();
    if (torn) {
        std::error_code ec;
        std::filesystem::resize_file(path_, good_bytes, ec);
        if (ec) throw StoreError("cannot truncate session journal " + path_.string() + ": " + ec.message());
        return false;
    }
    return unterminated;
}

StoredSession SessionStore::save(const std::string& id, const std::string& document) {
    std::lock_guard lock(mu_);
    StoredSession rec{document, now_ms(), now_ms()};
    if (auto it = sessions_.find(id); it != sessions_.end()) {
        rec.created_ms = it->second.created_ms;
        rec.updated_ms = std::max(rec.updated_ms, it->second.updated_ms + 1);
    }

    if (fd_ >= 0) {
        const std::string line = nlohmann::json{{"id", id},
                                                {"created_ms", rec.created_ms},
                                                {"updated_ms", rec.updated_ms},
                                                {"document", document}}
                                     .dump() +
                                 "\n";
        for (std::size_t written = 0; written < line.size();) {
            const ssize_t n = ::write(fd_, line.data() + written, line.size() - written);
            if (n < 0) {
                if (errno == EINTR) continue;
                throw StoreError("session journal write failed: " + std::string(std::strerror(errno)));
            }
            written += static_cast<std::size_t>(n);
        }
        if (::fsync(fd_) != 0) throw StoreError("session journal fsync failed: " + std::string(std::strerror(errno)));
    }
    sessions_[id] = rec;
    return rec;
}

std::optional<StoredSession> SessionStore::load(const std::string& id) const {
    std::lock_guard lock(mu_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) return std::nullopt;
    return it->second;
}

bool SessionStore::contains(const std::string& id) const {
    std::lock_guard lock(mu_);
    return sessions_.contains(id);
}

std::size_t SessionStore::size() const {
    std::lock_guard lock(mu_);
    return sessions_.size();
}

}  // namespace triage
