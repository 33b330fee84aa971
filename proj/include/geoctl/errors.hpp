#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace geoctl {

enum class ErrorCode {
  kDomain,            // non-unit point, zero inverse, non-finite input
  kDegeneratePoint,   // projection of a near-zero vector
  kInvalidElement,    // matrix outside so(1,4)
  kNotSymmetric,      // extract_symmetric on a matrix with a nonzero k-part
  kArgument,          // malformed argument list (empty generators, n < 2, ...)
  kDegenerateField,   // singularities requested for the zero field
  kControlRange,      // control value outside U
  kConfiguration,     // malformed system / region / range
  kNonUniqueGeodesic, // antipodal segment endpoints
  kFixture,           // degenerate case-study configuration
  kIo,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace geoctl
