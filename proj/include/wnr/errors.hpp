#pragma once

#include <stdexcept>
#include <string>

namespace wnr {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct NonConvergence : Error { using Error::Error; };
struct DegenerateEigenvalue : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct NotNormal : Error { using Error::Error; };
struct DimensionTooLarge : Error { using Error::Error; };
struct DegreeTooLarge : Error { using Error::Error; };
struct WeightCountExceedsDimension : Error { using Error::Error; };
struct DegenerateConfiguration : Error { using Error::Error; };
struct DegenerateRegion : Error { using Error::Error; };

// The support gap never straddled zero on the admissible arc; carries the
// angle where |gap| was smallest so callers can inspect the near-miss.
struct NoSignChange : Error {
  double nearest_angle;
  double nearest_gap;
  NoSignChange(const std::string& msg, double angle, double gap)
      : Error(msg), nearest_angle(angle), nearest_gap(gap) {}
};

struct ParseError : Error {
  int line = -1;
  int column = -1;
  explicit ParseError(const std::string& msg, int l = -1, int c = -1)
      : Error(msg), line(l), column(c) {}
};

}  // namespace wnr
