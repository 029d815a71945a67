#pragma once

// Single run configuration: keyword roster, category rules, correlation
// threshold, quartile convention and default pin date. Defaults are frozen;
// a JSON file can override any field. Reports embed the config hash.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "beliefbench/core.hpp"
#include "beliefbench/corpus.hpp"
#include "beliefbench/labeler.hpp"
#include "beliefbench/stats.hpp"

namespace beliefbench::config {

struct RunConfig {
  labeler::KeywordSet keywords = labeler::KeywordSet::defaults();
  labeler::CategoryRules rules = labeler::CategoryRules::defaults();
  double strong_rho = stats::kStrongRho;
  std::string quartile_convention = "tukey";
  std::optional<std::int64_t> pin_until = corpus::default_pin_until();

  void validate() const {
    keywords.validate();
    rules.validate();
    if (strong_rho <= -1.0 || strong_rho >= 1.0)
      throw InputError("strong_rho must lie in (-1, 1)");
    if (quartile_convention != "tukey")
      throw InputError("unsupported quartile convention: " + quartile_convention);
    if (pin_until && *pin_until <= 0)
      throw InputError("pin_until must be positive");
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["keywords"] = keywords.stems;
    j["test_marker"] = rules.test_marker;
    j["config_extensions"] = rules.config_extensions;
    j["source_extensions"] = rules.source_extensions;
    j["strong_rho"] = strong_rho;
    j["quartile_convention"] = quartile_convention;
    if (pin_until)
      j["pin_until"] = *pin_until;
    else
      j["pin_until"] = nullptr;
    return j;
  }

  // FNV-1a over the canonical serialization; embedded in every report.
  std::string hash() const {
    const std::string canon = to_json().dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canon) {
      h ^= c;
      h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }
};

// Strict loader: unknown keys are rejected so typos cannot silently fall
// back to defaults.
inline RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read config: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  if (!j.is_object()) throw ParseError(path.string() + ": expected an object");

  RunConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "keywords") {
        cfg.keywords.stems = value.get<std::vector<std::string>>();
      } else if (key == "test_marker") {
        cfg.rules.test_marker = value.get<std::string>();
      } else if (key == "config_extensions") {
        cfg.rules.config_extensions = value.get<std::vector<std::string>>();
      } else if (key == "source_extensions") {
        cfg.rules.source_extensions = value.get<std::vector<std::string>>();
      } else if (key == "strong_rho") {
        cfg.strong_rho = value.get<double>();
      } else if (key == "quartile_convention") {
        cfg.quartile_convention = value.get<std::string>();
      } else if (key == "pin_until") {
        if (value.is_null())
          cfg.pin_until.reset();
        else if (value.is_string())
          cfg.pin_until = parse_timestamp(value.get<std::string>());
        else
          cfg.pin_until = value.get<std::int64_t>();
      } else {
        throw InputError("unknown config key: " + key);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  cfg.validate();
  return cfg;
}

}  // namespace beliefbench::config
