#include "geoctl/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "geoctl/errors.hpp"

namespace geoctl::io {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void CsvTable::add_row(std::span<const double> row) {
  if (row.size() != header_.size()) {
    throw Error(ErrorCode::kArgument, "CSV row width differs from the header");
  }
  rows_.emplace_back(row.begin(), row.end());
}

std::string CsvTable::str() const {
  std::string out;
  for (std::size_t c = 0; c < header_.size(); ++c) {
    if (c) out += ',';
    out += header_[c];
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_double(row[c]);
    }
    out += '\n';
  }
  return out;
}

void CsvTable::write(const std::filesystem::path& path) const { write_text(path, str()); }

CsvTable trajectory_table(const Trajectory& traj) {
  CsvTable t({"t", "w", "x", "y", "z"});
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const Quaternion& p = traj.points[k].value();
    const double row[] = {traj.times[k], p.w, p.x, p.y, p.z};
    t.add_row(row);
  }
  return t;
}

CsvTable points_table(std::span<const UnitQuaternion> points) {
  CsvTable t({"w", "x", "y", "z"});
  for (const auto& u : points) {
    const Quaternion& p = u.value();
    const double row[] = {p.w, p.x, p.y, p.z};
    t.add_row(row);
  }
  return t;
}

CsvTable vectors_table(std::span<const Eigen::VectorXd> vectors,
                       std::span<const std::vector<double>> controls) {
  const std::size_t n = vectors.empty() ? 0 : static_cast<std::size_t>(vectors.front().size());
  const std::size_t m = controls.empty() ? 0 : controls.front().size();
  std::vector<std::string> header;
  for (std::size_t a = 0; a < m; ++a) header.push_back("u" + std::to_string(a + 1));
  for (std::size_t a = 0; a < n; ++a) header.push_back("v" + std::to_string(a + 1));
  CsvTable t(std::move(header));
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    std::vector<double> row;
    if (m) row = controls[k];
    row.insert(row.end(), vectors[k].data(), vectors[k].data() + vectors[k].size());
    t.add_row(row);
  }
  return t;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text) || !out.flush()) {
    throw Error(ErrorCode::kIo, "cannot write " + path.string());
  }
}

}  // namespace geoctl::io
