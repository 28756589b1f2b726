#include "ltfsk/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>

#include "ltfsk/csv.hpp"

namespace ltfsk {

void RunManifest::add(const std::string& key, double value) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    params.emplace_back(key, buf);
}

void RunManifest::add(const std::string& key, long long value) {
    params.emplace_back(key, std::to_string(value));
}

std::string RunManifest::render() const {
    std::ostringstream os;
    os << "tool_version=" << tool_version << '\n';
    os << "command_line=" << command_line << '\n';
    os << "seed=" << seed << '\n';
    os << "started_utc=" << started_utc << '\n';
    os << "finished_utc=" << finished_utc << '\n';
    os << "[params]\n";
    for (const auto& [k, v] : params) os << k << '=' << v << '\n';
    return os.str();
}

std::string utc_timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_manifest(const std::string& csv_path, const RunManifest& manifest) {
    write_file_atomic(csv_path + ".manifest", manifest.render());
}

} // namespace ltfsk
