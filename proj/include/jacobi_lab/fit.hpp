#pragma once

#include <cstddef>
#include <span>

namespace jacobi {

/// Ordinary least squares y = slope x + intercept.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double slope_stderr = 0.0;
  std::size_t points = 0;
};

LinearFit least_squares(std::span<const double> x, std::span<const double> y);

/// Inclusive index range [first, last].
struct IndexWindow {
  std::size_t first = 0;
  std::size_t last = 0;
  std::size_t length() const noexcept { return last >= first ? last - first + 1 : 0; }
};

/// Log-log regression result over an index window.
struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double slope_stderr = 0.0;
  IndexWindow window{};
};

}  // namespace jacobi
