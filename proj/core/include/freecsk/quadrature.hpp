#pragma once

#include <complex>
#include <functional>
#include <optional>

#include "freecsk/measure.hpp"

namespace freecsk {

struct QuadratureOptions {
  /// Accept when the error estimate is below max(abs_tol, rel_tol * L1).
  double abs_tol = 1e-10;
  double rel_tol = 1e-12;
  /// Point of the real line where f is nearly singular (e.g. Re z for
  /// 1/(z - x) with z close to the support). When it falls inside the
  /// support the range is split there, so the peak sits at a node cluster.
  std::optional<double> near_point;
};

/// A node of the support together with its distances to both ends of the
/// support, computed without cancellation (so 1/(z - x) stays accurate for z
/// a few ulps off an edge).
struct SupportPoint {
  double x;
  double from_lo;  ///< x - support_lo, >= 0
  double from_hi;  ///< support_hi - x, >= 0
};

/// a - b x at p, given at_lo = a - b lo and at_hi = a - b hi (lo, hi the
/// support ends). Taken from the nearer end, so no digits are lost where
/// a - b x nearly vanishes there.
template <class T>
T affine_at(const SupportPoint& p, T at_lo, T at_hi, T b) {
  return p.from_lo <= p.from_hi ? at_lo - b * p.from_lo : at_hi + b * p.from_hi;
}

/// Integral of f against nu: exact weighted sum for atomic measures,
/// tanh-sinh on the smoothed angle variable for densities.
/// f must be finite on the support; singular integrands are the caller's
/// job. Throws UnsupportedError for moment sequences and AccuracyError when
/// the tolerance is not met.
double quadrature_integrate(const Measure& nu, const std::function<double(double)>& f,
                            const QuadratureOptions& options = {});

std::complex<double> quadrature_integrate_complex(
    const Measure& nu, const std::function<std::complex<double>(double)>& f,
    const QuadratureOptions& options = {});

double quadrature_integrate(const Measure& nu, const std::function<double(const SupportPoint&)>& f,
                            const QuadratureOptions& options = {});

std::complex<double> quadrature_integrate_complex(
    const Measure& nu, const std::function<std::complex<double>(const SupportPoint&)>& f,
    const QuadratureOptions& options = {});

}  // namespace freecsk
