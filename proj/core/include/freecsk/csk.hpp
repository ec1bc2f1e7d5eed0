#pragma once

#include <functional>
#include <string>
#include <vector>

#include "freecsk/measure.hpp"
#include "freecsk/numerics.hpp"

namespace freecsk {

/// Which half of the family: theta in (0, theta_+), (theta_-, 0), or both.
enum class Side { plus, minus, two_sided };

std::string to_string(Side side);

/// Generator plus the parameter ranges of its family, restricted to `side`.
struct CskDescriptor {
  Side side = Side::two_sided;
  Interval theta_range;
  Interval mean_domain;
  double mean = 0.0;      ///< m0
  double variance = 0.0;  ///< Var(nu) = V(m0)
};

/// The Cauchy-Stieltjes kernel family generated by an atomic measure or a
/// named density (moment sequences do not determine the family and are
/// rejected with UnsupportedError; see variance_from_moments instead).
///
/// Members are P_theta(dx) = nu(dx) / (M(theta) (1 - theta x)); the mean
/// k(theta) is strictly increasing and psi is its inverse.
class CskFamily {
 public:
  explicit CskFamily(Measure generator, Side side = Side::two_sided);

  const Measure& generator() const noexcept { return generator_; }
  const CskDescriptor& descriptor() const noexcept { return descriptor_; }
  double mean() const noexcept { return descriptor_.mean; }
  const Interval& mean_domain() const noexcept { return descriptor_.mean_domain; }

  /// k(theta) = (M - 1)/(theta M), with k(0) = m0.
  double k_mean(double theta) const;
  /// theta with k(theta) = m, for m in the mean domain.
  double psi(double m) const;
  /// Pseudo-variance PV(m) = m (1/psi(m) - m). SingularityError at m = m0 != 0,
  /// where it has a pole.
  double pseudo_variance(double m) const;
  /// V(m) = (m - m0)(1/psi(m) - m), with V(m0) = Var(nu).
  double variance(double m) const;
  /// Density of Q_m against nu:  PV/(PV + m(m - x)), with the m = 0 branches
  /// 1 (when PV(0) != 0) and PV'(0)/(PV'(0) - x) (when PV(0) = 0).
  double density_weight(double x, double m) const;

 private:
  void require_mean(double m) const;
  /// (k(theta) - m0)/theta, equal to Var(nu) at theta = 0.
  double spread(double theta) const;

  Measure generator_;
  CskDescriptor descriptor_;
};

/// Mean domain of the family on the given side: (m_-, m_+) with
/// m_+ = B - lim_{z -> B+} 1/G(z) and m_- = b - lim_{z -> b-} 1/G(z).
Interval mean_domain(const Measure& nu, Side side = Side::two_sided);

double k_mean(const Measure& nu, double theta);
double psi_mean_inverse(const Measure& nu, double m);
double pseudo_variance(const Measure& nu, double m);
double variance(const Measure& nu, double m);
double csk_density_weight(const Measure& nu, double x, double m);

/// Pseudo-variance of the image of nu under x -> (x - lambda)/beta:
/// m / (beta (beta m + lambda)) * PV_nu(beta m + lambda).
double affine_pseudo_variance(const Measure& nu, double beta, double lambda, double m);

// ---------------------------------------------------------------- variance functions

using VarianceFn = std::function<double(double)>;

/// A variance or pseudo-variance function over a mean interval: either a
/// closed form or an interpolated table of samples.
class VarianceProfile {
 public:
  enum class Kind { pseudo, variance };

  static VarianceProfile closed_form(Kind kind, std::string tag, VarianceFn fn, Interval domain);
  /// Barycentric rational interpolation through (means[i], values[i]); means
  /// strictly increasing, at least two points.
  static VarianceProfile sampled(Kind kind, std::vector<double> means, std::vector<double> values);
  /// Samples `family` at n equally spaced means of `interval`.
  static VarianceProfile sample(const CskFamily& family, Kind kind, Interval interval, std::size_t n);

  Kind kind() const noexcept { return kind_; }
  const std::string& tag() const noexcept { return tag_; }
  const Interval& domain() const noexcept { return domain_; }
  bool is_sampled() const noexcept { return !means_.empty(); }

  /// DomainError outside the domain (closed forms: the open interval;
  /// tables: the sampled range).
  double operator()(double m) const;

 private:
  VarianceProfile() = default;

  Kind kind_ = Kind::variance;
  std::string tag_;
  VarianceFn fn_;
  Interval domain_;
  std::vector<double> means_;
};

/// [m0 - (1 - eps)(m0 - lo), m0 + (1 - eps)(hi - m0)]: the part of a mean
/// domain where sampled variance functions are trusted.
Interval compact_subinterval(const Interval& domain, double m0, double eps = 0.05);

// ---------------------------------------------------------------- transformation laws

/// alpha V(m / alpha)
double law_boxplus_power_V(const VarianceFn& V, double m0, double alpha, double m);
/// alpha V(m / alpha) + m (m - alpha m0)(1/alpha - 1)
double law_uplus_power_V(const VarianceFn& V, double m0, double alpha, double m);
/// m^(2 - 2/alpha) PV(m^(1/alpha)), m > 0
double law_boxtimes_power_pseudo(const VarianceFn& pseudo, double alpha, double m);
/// (m - m0^alpha)/(m^(1/alpha) - m0) m^(1 - 1/alpha) V(m^(1/alpha)), m > 0;
/// at m = m0^alpha the quotient is replaced by its limit alpha m0^(alpha - 1).
double law_boxtimes_power_V(const VarianceFn& V, double m0, double alpha, double m);
/// PV(m) + t m^2
double law_bt_pseudo(const VarianceFn& pseudo, double t, double m);
/// V(m) + t m (m - m0)
double law_bt_V(const VarianceFn& V, double m0, double t, double m);

// ---------------------------------------------------------------- from moments

/// Pseudo-variance and variance at mean m of the law with moments `m`
/// (flagged positive, m1 > 0), reconstructed from its S-series: S(w) = 1/m is
/// solved for w near 0, and then PV(m) = m^2 / w and V(m) = m (m - m0) / w.
/// DomainError when the series cannot be trusted at the needed w.
double pseudo_variance_from_moments(const MomentSeq& moments, double m);
double variance_from_moments(const MomentSeq& moments, double m);

}  // namespace freecsk
