#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "geoctl/json_io.hpp"
#include "geoctl/orbits.hpp"

namespace geoctl::io {

inline constexpr int kReportSchemaVersion = 1;

/// Machine-readable outcome of one CLI command: a list of named checks plus free-form data.
/// Readers ignore fields they do not know, so new fields can be added without a version bump.
struct Report {
  std::string command;
  std::vector<ConditionResult> checks;
  Json data = Json::object();

  void add(ConditionResult c) { checks.push_back(std::move(c)); }
  void add(const IcsReport& r);

  /// True iff every check passed (an empty report passes).
  bool passed() const;

  Json to_json() const;
  static Report from_json(const Json& j);

  /// Pretty-printed JSON with a trailing newline; Error(kIo) on failure.
  void write(const std::filesystem::path& path) const;
};

}  // namespace geoctl::io
