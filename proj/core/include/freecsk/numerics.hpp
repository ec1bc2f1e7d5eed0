#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>

namespace freecsk {

/// Open interval (lo, hi); either end may be infinite.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double x) const noexcept { return x > lo && x < hi; }
  bool contains_closed(double x) const noexcept { return x >= lo && x <= hi; }
  double width() const noexcept { return hi - lo; }
};

struct RootOptions {
  double rel_tol = 1e-12;
  std::uintmax_t max_iter = 200;
};

/// Root of f on [lo, hi] where f(lo) and f(hi) have opposite signs
/// (NumericError otherwise, or if the iteration cap is hit).
double solve_bracketed(const std::function<double(double)>& f, double lo, double hi,
                       const RootOptions& options = {});

struct EdgeLimitOptions {
  int first_exponent = 2;  ///< h = 10^-2 ...
  int last_exponent = 8;   ///< ... 10^-8
  double agreement = 1e-6;
};

/// lim_{h -> 0+} g(h), sampled at h = 10^-k and extrapolated with a Richardson
/// table in powers of sqrt(h) (square-root edges of free-probability densities
/// and atoms both fit that expansion). NumericError when the last two
/// extrapolants disagree by more than `agreement`.
double edge_limit(const std::function<double(double)>& g, const EdgeLimitOptions& options = {});

}  // namespace freecsk
