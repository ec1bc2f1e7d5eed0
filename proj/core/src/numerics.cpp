#include "freecsk/numerics.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "freecsk/errors.hpp"

namespace freecsk {

namespace {

struct RelativeTolerance {
  double rel;
  bool operator()(double a, double b) const noexcept {
    const double gap = std::abs(b - a);
    return gap <= rel * std::min(std::abs(a), std::abs(b)) || gap <= 4.0 * std::numeric_limits<double>::denorm_min();
  }
};

}  // namespace

double solve_bracketed(const std::function<double(double)>& f, double lo, double hi,
                       const RootOptions& options) {
  if (lo > hi) std::swap(lo, hi);
  const double flo = f(lo);
  if (flo == 0.0) return lo;
  const double fhi = f(hi);
  if (fhi == 0.0) return hi;
  if (!std::isfinite(flo) || !std::isfinite(fhi) || (flo > 0.0) == (fhi > 0.0)) {
    throw NumericError("root is not bracketed on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  std::uintmax_t iterations = options.max_iter;
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi,
                                                        RelativeTolerance{options.rel_tol}, iterations);
  if (iterations >= options.max_iter) {
    throw NumericError("root finding hit the iteration cap");
  }
  return 0.5 * (a + b);
}

double edge_limit(const std::function<double(double)>& g, const EdgeLimitOptions& options) {
  const int count = options.last_exponent - options.first_exponent + 1;
  if (count < 2) throw NumericError("edge_limit needs at least two sample points");
  const double ratio = std::sqrt(10.0);  // consecutive sqrt(h) ratio

  std::vector<std::vector<double>> table(count);
  std::vector<double> diagonal;
  for (int k = 0; k < count; ++k) {
    const double h = std::pow(10.0, -(options.first_exponent + k));
    table[k].push_back(g(h));
    double factor = 1.0;
    for (int j = 1; j <= k; ++j) {
      factor *= ratio;
      const double prev = table[k][j - 1];
      table[k].push_back(prev + (prev - table[k - 1][j - 1]) / (factor - 1.0));
    }
    diagonal.push_back(table[k].back());
  }
  const double last = diagonal[count - 1];
  const double before = diagonal[count - 2];
  if (!std::isfinite(last) || std::abs(last - before) > options.agreement * std::max(1.0, std::abs(last))) {
    throw NumericError("edge limit did not settle (successive estimates " + std::to_string(before) +
                       " and " + std::to_string(last) + ")");
  }
  return last;
}

}  // namespace freecsk
