#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace mono {

inline constexpr const char* kVersionTag = "0.1.0";

// One completed command.  Records are append-only; re-running a
// command with identical parameters and version must reproduce the
// payload bit-for-bit (wall time and timestamp are bookkeeping, not
// part of the reproducible payload).
struct RunRecord {
    std::string command;
    std::map<std::string, std::string> params;  // canonical (sorted) order
    nlohmann::json payload;
    double wall_seconds = 0.0;
    std::string version = kVersionTag;
    std::string timestamp;  // UTC, ISO-8601

    nlohmann::json to_json() const;
    static RunRecord from_json(const nlohmann::json& j);
};

// Newline-delimited JSON file, appended under an exclusive file lock.
class Ledger {
public:
    explicit Ledger(std::string path) : path_(std::move(path)) {}

    void append(const RunRecord& record) const;
    std::vector<RunRecord> read_all() const;

    const std::string& path() const { return path_; }

private:
    std::string path_;
};

std::string utc_timestamp();

}  // namespace mono
