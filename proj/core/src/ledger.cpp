#include "mono/ledger.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <ctime>
#include <fstream>

#include "mono/errors.hpp"

namespace mono {

nlohmann::json RunRecord::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["params"] = params;
    j["payload"] = payload;
    j["wall_seconds"] = wall_seconds;
    j["version"] = version;
    j["timestamp"] = timestamp;
    return j;
}

RunRecord RunRecord::from_json(const nlohmann::json& j) {
    RunRecord r;
    r.command = j.at("command").get<std::string>();
    r.params = j.at("params").get<std::map<std::string, std::string>>();
    r.payload = j.at("payload");
    r.wall_seconds = j.at("wall_seconds").get<double>();
    r.version = j.at("version").get<std::string>();
    r.timestamp = j.at("timestamp").get<std::string>();
    return r;
}

void Ledger::append(const RunRecord& record) const {
    std::string line = record.to_json().dump() + "\n";
    int fd = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
    if (fd < 0)
        throw std::runtime_error("ledger: cannot open '" + path_ + "': " +
                                 std::strerror(errno));
    if (::flock(fd, LOCK_EX) != 0) {
        ::close(fd);
        throw std::runtime_error("ledger: cannot lock '" + path_ + "'");
    }
    ssize_t written = ::write(fd, line.data(), line.size());
    ::flock(fd, LOCK_UN);
    ::close(fd);
    if (written != static_cast<ssize_t>(line.size()))
        throw std::runtime_error("ledger: short write to '" + path_ + "'");
}

std::vector<RunRecord> Ledger::read_all() const {
    std::ifstream in(path_);
    if (!in) throw std::runtime_error("ledger: cannot open '" + path_ + "'");
    std::vector<RunRecord> records;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            records.push_back(RunRecord::from_json(nlohmann::json::parse(line)));
        } catch (const nlohmann::json::exception& e) {
            throw parse_error(std::string("ledger: ") + e.what(), lineno);
        }
    }
    return records;
}

std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace mono
