#pragma once

#include <chrono>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hdc/error.hpp"

namespace hdc {

inline constexpr const char* kToolName = "hdcb";
inline constexpr const char* kToolVersion = "0.1.0";

// Sidecar record written next to every result file. Replaying the stored
// argv reproduces the result bytes exactly; timing fields are informational
// and excluded from that guarantee.
struct RunManifest {
  std::string subcommand;
  std::vector<std::string> argv;  // resolved arguments, replayable
  nlohmann::json config;          // resolved configuration, for humans
  std::vector<std::string> outputs;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;
  std::string created_utc;

  nlohmann::json to_json() const {
    return nlohmann::json{
        {"tool", kToolName},       {"version", kToolVersion},
        {"subcommand", subcommand}, {"argv", argv},
        {"config", config},        {"outputs", outputs},
        {"seed", seed},            {"wall_ms", wall_ms},
        {"created_utc", created_utc}};
  }

  static RunManifest from_json(const nlohmann::json& j) {
    RunManifest m;
    m.subcommand = j.at("subcommand").get<std::string>();
    m.argv = j.at("argv").get<std::vector<std::string>>();
    if (j.contains("config")) m.config = j.at("config");
    if (j.contains("outputs")) {
      m.outputs = j.at("outputs").get<std::vector<std::string>>();
    }
    if (j.contains("seed")) m.seed = j.at("seed").get<std::uint64_t>();
    return m;
  }

  void save(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw DataError("cannot open " + path + " for writing");
    os << to_json().dump(2) << '\n';
  }

  static RunManifest load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw DataError("cannot open " + path);
    nlohmann::json j;
    try {
      is >> j;
    } catch (const nlohmann::json::exception& e) {
      throw DataError("malformed manifest " + path + ": " + e.what());
    }
    return from_json(j);
  }
};

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const auto t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace hdc
