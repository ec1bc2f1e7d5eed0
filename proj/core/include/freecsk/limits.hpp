#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "freecsk/csk.hpp"
#include "freecsk/measure.hpp"
#include "freecsk/series.hpp"

namespace freecsk {

/// eta_gamma has S(w) = exp(-gamma w); sigma_gamma has Sigma(z) = exp(-gamma z).
enum class LimitKind { eta, sigma };
/// Which additive convolution follows the multiplicative power.
enum class ScalingKind { boxplus, uplus };

std::string to_string(LimitKind kind);
std::string to_string(ScalingKind kind);
/// boxplus -> eta, uplus -> sigma.
LimitKind limit_of(ScalingKind kind);

struct LimitLaw {
  LimitKind kind;
  double gamma;
  /// S-series for eta, Sigma-series for sigma: exp(-gamma z) either way.
  TruncatedSeries defining_series;
  MomentSeq moments;

  double variance(double m) const;
  double pseudo_variance(double m) const;
  VarianceProfile variance_profile() const;
};

/// The limit law with its first K moments (K >= 1).
LimitLaw make_limit_law(LimitKind kind, double gamma, std::size_t K);
MomentSeq limit_law_moments(LimitKind kind, double gamma, std::size_t K);

/// gamma m (m - 1) / ln m on (0, 1], with value gamma at m = 1.
double limit_variance_eta(double gamma, double m);
/// limit_variance_eta + m (1 - m).
double limit_variance_sigma(double gamma, double m);
/// gamma m^2 / ln m  and  gamma m^2 / ln m - m^2 on (0, 1).
double limit_pseudo_variance_eta(double gamma, double m);
double limit_pseudo_variance_sigma(double gamma, double m);

/// First K moments of D_{1/(n m0^n)}(nu^{boxtimes n})^{boxplus n} (or uplus n).
/// nu must be positive with m0 > 0.
MomentSeq scaled_sequence_moments(const Measure& nu, std::size_t n, ScalingKind kind, std::size_t K);

struct ConvergenceRow {
  std::size_t n;
  std::size_t order;
  double value;
  double limit;
  double abs_error;
};

struct VarianceRow {
  std::size_t n;
  double m;
  double value;  ///< NaN when the reconstruction failed
  double limit;
  double abs_error;
  std::string error;  ///< empty on success
};

struct ConvergenceReport {
  std::string measure;
  ScalingKind kind;
  LimitKind limit;
  double gamma;
  std::size_t series_order;
  std::size_t reported_orders;
  std::vector<ConvergenceRow> rows;
  std::vector<VarianceRow> variance_rows;

  /// Absolute moment error at (n, order); std::out_of_range if absent.
  double error(std::size_t n, std::size_t order) const;
  /// Variance-function row at (n, m); std::out_of_range if absent.
  const VarianceRow& variance_at(std::size_t n, double m) const;
};

struct ConvergenceOptions {
  std::vector<std::size_t> n_schedule{1, 2, 4, 8, 16, 32, 64};
  std::size_t reported_orders = 6;
  std::size_t series_order = 40;
  std::vector<double> variance_grid{0.6, 0.8, 0.9};
};

/// Moment and variance-function errors of the scaled sequence against its
/// limit law, with gamma = Var(nu) / m0^2. n_schedule must be strictly increasing.
ConvergenceReport convergence_report(const Measure& nu, ScalingKind kind,
                                     const ConvergenceOptions& options = {});

struct BpIdentityReport {
  double gamma;
  std::size_t order;
  MomentSeq lhs;  ///< B_1(sigma_gamma)
  MomentSeq rhs;  ///< eta_gamma
  double max_abs_error;
  bool passed;
};

/// Compares B_1(sigma_gamma) with eta_gamma moment by moment up to order K.
BpIdentityReport verify_bp_identity(double gamma, std::size_t K, double threshold = 1e-9);

}  // namespace freecsk
