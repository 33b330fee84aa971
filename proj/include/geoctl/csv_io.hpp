#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "geoctl/flow.hpp"
#include "geoctl/quaternion.hpp"

namespace geoctl::io {

/// Shortest decimal text that parses back to exactly `v` ("nan" / "inf" / "-inf" otherwise).
std::string format_double(double v);

/// Header row plus one row per entry, comma separated, '\n' line ends.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  /// Error(kArgument) when the row width differs from the header.
  void add_row(std::span<const double> row);

  std::string str() const;

  /// Error(kIo) when the file cannot be written.
  void write(const std::filesystem::path& path) const;

  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
};

/// t,w,x,y,z
CsvTable trajectory_table(const Trajectory& traj);

/// w,x,y,z
CsvTable points_table(std::span<const UnitQuaternion> points);

/// v1..vn for projective representatives, prefixed by u1..um when controls are given.
CsvTable vectors_table(std::span<const Eigen::VectorXd> vectors,
                       std::span<const std::vector<double>> controls = {});

/// Writes `text` to `path`, creating parent directories. Error(kIo) on failure.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace geoctl::io
