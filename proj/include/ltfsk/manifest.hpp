#ifndef LTFSK_MANIFEST_HPP
#define LTFSK_MANIFEST_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ltfsk {

inline constexpr const char* kToolVersion = "ltfsk 1.0.0";

// Sidecar written next to every CSV: enough to replay the run byte-for-byte
// (same params + seed -> same CSV; only the timestamps differ).
struct RunManifest {
    std::string command_line;
    std::vector<std::pair<std::string, std::string>> params; // resolved, in emit order
    std::uint64_t seed = 0;
    std::string tool_version = kToolVersion;
    std::string started_utc;
    std::string finished_utc;

    void add(const std::string& key, const std::string& value) { params.emplace_back(key, value); }
    void add(const std::string& key, double value);
    void add(const std::string& key, long long value);

    std::string render() const;
};

std::string utc_timestamp_now();

// Writes `<csv_path>.manifest` atomically.
void write_manifest(const std::string& csv_path, const RunManifest& manifest);

} // namespace ltfsk

#endif
