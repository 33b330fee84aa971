#include "geoctl/report.hpp"

#include <algorithm>

#include "geoctl/csv_io.hpp"
#include "geoctl/errors.hpp"

namespace geoctl::io {

void Report::add(const IcsReport& r) {
  for (const ConditionResult* c : r.conditions()) checks.push_back(*c);
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const ConditionResult& c) { return c.passed; });
}

Json Report::to_json() const {
  Json list = Json::array();
  for (const auto& c : checks) list.push_back(io::to_json(c));
  return {{"schema_version", kReportSchemaVersion},
          {"command", command},
          {"passed", passed()},
          {"checks", list},
          {"data", data}};
}

Report Report::from_json(const Json& j) {
  if (!j.is_object() || !j.contains("schema_version") || !j.at("schema_version").is_number_integer()) {
    throw Error(ErrorCode::kArgument, "report without an integer schema_version");
  }
  Report r;
  r.command = j.value("command", "");
  if (j.contains("data")) r.data = j.at("data");
  for (const auto& c : j.value("checks", Json::array())) {
    ConditionResult cr;
    cr.name = c.value("name", "");
    cr.passed = c.value("passed", false);
    // Non-finite numbers are serialized as null.
    cr.worst = c.contains("worst") && c.at("worst").is_number() ? c.at("worst").get<double>() : 0.0;
    cr.tolerance = c.value("tolerance", 0.0);
    cr.checked = c.value("checked", 0);
    cr.failures = c.value("failures", std::vector<std::string>{});
    r.checks.push_back(std::move(cr));
  }
  return r;
}

void Report::write(const std::filesystem::path& path) const { write_text(path, to_json().dump(2) + "\n"); }

}  // namespace geoctl::io
