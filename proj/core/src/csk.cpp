#include "freecsk/csk.hpp"

#include <cmath>
#include <complex>
#include <memory>
#include <sstream>
#include <utility>

#include <boost/math/interpolators/barycentric_rational.hpp>

#include "freecsk/errors.hpp"
#include "freecsk/quadrature.hpp"
#include "freecsk/series.hpp"
#include "freecsk/transforms.hpp"

namespace freecsk {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string interval_text(const Interval& i) { return "(" + num(i.lo) + ", " + num(i.hi) + ")"; }

Interval restrict_to_side(const Interval& full, double center, Side side) {
  switch (side) {
    case Side::plus: return {center, full.hi};
    case Side::minus: return {full.lo, center};
    case Side::two_sided: return full;
  }
  return full;
}

}  // namespace

std::string to_string(Side side) {
  switch (side) {
    case Side::plus: return "plus";
    case Side::minus: return "minus";
    case Side::two_sided: return "two_sided";
  }
  return "unknown";
}

// ---------------------------------------------------------------- mean domain

Interval mean_domain(const Measure& nu, Side side) {
  if (!nu.integrable()) {
    throw UnsupportedError("the mean domain needs the measure itself, not a moment sequence");
  }
  const double m0 = moments(nu, 1).mean();
  double lo = m0;
  double hi = m0;
  if (side != Side::minus) {
    const double B = nu.upper_bound();
    hi = B - edge_limit([&](double h) { return 1.0 / cauchy_G(nu, B + h); });
  }
  if (side != Side::plus) {
    const double b = nu.lower_bound();
    lo = b - edge_limit([&](double h) { return 1.0 / cauchy_G(nu, b - h); });
  }
  return {lo, hi};
}

// ---------------------------------------------------------------- family

CskFamily::CskFamily(Measure generator, Side side) : generator_(std::move(generator)) {
  if (!generator_.integrable()) {
    throw UnsupportedError("a moment sequence does not determine a CSK family");
  }
  const MomentSeq m = moments(generator_, 2);
  descriptor_.side = side;
  descriptor_.mean = m.mean();
  descriptor_.variance = m.variance();
  descriptor_.theta_range = restrict_to_side(theta_range(generator_), 0.0, side);
  descriptor_.mean_domain = freecsk::mean_domain(generator_, side);
}

void CskFamily::require_mean(double m) const {
  if (m != mean() && !mean_domain().contains(m)) {
    throw DomainError("m = " + num(m) + " is outside the mean domain " + interval_text(mean_domain()));
  }
}

double CskFamily::spread(double theta) const {
  if (theta == 0.0) return descriptor_.variance;
  // Real part M(theta), imaginary part int x (x - m0)/(1 - theta x), in one pass.
  const double m0 = mean();
  const double lo = std::fma(-theta, generator_.support_inf(), 1.0);
  const double hi = std::fma(-theta, generator_.support_sup(), 1.0);
  const std::complex<double> both = quadrature_integrate_complex(generator_, [=](const SupportPoint& p) {
    const double d = 1.0 / affine_at(p, lo, hi, theta);
    return std::complex<double>(d, p.x * (p.x - m0) * d);
  });
  return both.imag() / both.real();
}

double CskFamily::k_mean(double theta) const {
  if (theta == 0.0) return mean();
  if (!descriptor_.theta_range.contains(theta)) {
    throw DomainError("theta = " + num(theta) + " is outside " + interval_text(descriptor_.theta_range));
  }
  return mean() + theta * spread(theta);
}

double CskFamily::psi(double m) const {
  require_mean(m);
  if (m == mean()) return 0.0;
  auto f = [&](double theta) { return (mean() - m) + theta * spread(theta); };
  const Interval& range = descriptor_.theta_range;
  const double edge = m > mean() ? range.hi : range.lo;
  double far = 0.0;
  bool bracketed = false;
  if (std::isfinite(edge)) {
    for (int j = 1; j <= 60 && !bracketed; ++j) {
      far = edge * (1.0 - std::ldexp(1.0, -j));
      bracketed = m > mean() ? f(far) > 0.0 : f(far) < 0.0;
    }
  } else {
    far = m > mean() ? 1.0 : -1.0;
    for (int j = 0; j < 1000 && !bracketed; ++j, far *= 2.0) {
      bracketed = m > mean() ? f(far) > 0.0 : f(far) < 0.0;
      if (bracketed) break;
    }
  }
  if (!bracketed) throw NumericError("psi: no bracket found for m = " + num(m));
  return solve_bracketed(f, 0.0, far);
}

double CskFamily::pseudo_variance(double m) const {
  require_mean(m);
  if (m == mean()) {
    if (mean() == 0.0) return descriptor_.variance;
    throw SingularityError("the pseudo-variance has a pole at m0 = " + num(mean()));
  }
  return m * (1.0 / psi(m) - m);
}

double CskFamily::variance(double m) const {
  require_mean(m);
  // (m - m0)/psi(m) = spread(psi(m)), which stays accurate as m -> m0.
  return spread(psi(m)) - m * (m - mean());
}

double CskFamily::density_weight(double x, double m) const {
  require_mean(m);
  if (m == 0.0) {
    if (mean() == 0.0) return 1.0;
    const double slope = 1.0 / psi(0.0);  // derivative of the pseudo-variance at 0
    if (slope == x) throw SingularityError("density weight is singular at x = " + num(x));
    return slope / (slope - x);
  }
  if (m == mean()) return 1.0;
  const double pv = pseudo_variance(m);
  const double denom = pv + m * (m - x);
  if (denom == 0.0) throw SingularityError("density weight is singular at x = " + num(x));
  return pv / denom;
}

double k_mean(const Measure& nu, double theta) { return CskFamily(nu).k_mean(theta); }
double psi_mean_inverse(const Measure& nu, double m) { return CskFamily(nu).psi(m); }
double pseudo_variance(const Measure& nu, double m) { return CskFamily(nu).pseudo_variance(m); }
double variance(const Measure& nu, double m) { return CskFamily(nu).variance(m); }
double csk_density_weight(const Measure& nu, double x, double m) {
  return CskFamily(nu).density_weight(x, m);
}

double affine_pseudo_variance(const Measure& nu, double beta, double lambda, double m) {
  if (beta == 0.0) throw DomainError("affine map needs beta != 0");
  const double u = beta * m + lambda;
  if (m == 0.0 || u == 0.0) throw DomainError("affine pseudo-variance needs m != 0 and beta m + lambda != 0");
  return m / (beta * u) * pseudo_variance(nu, u);
}

// ---------------------------------------------------------------- profiles

VarianceProfile VarianceProfile::closed_form(Kind kind, std::string tag, VarianceFn fn, Interval domain) {
  VarianceProfile p;
  p.kind_ = kind;
  p.tag_ = std::move(tag);
  p.fn_ = std::move(fn);
  p.domain_ = domain;
  return p;
}

VarianceProfile VarianceProfile::sampled(Kind kind, std::vector<double> means, std::vector<double> values) {
  if (means.size() < 2 || means.size() != values.size()) {
    throw DomainError("a sampled variance function needs at least two (mean, value) pairs");
  }
  for (std::size_t i = 1; i < means.size(); ++i) {
    if (!(means[i] > means[i - 1])) throw DomainError("sample means must be strictly increasing");
  }
  VarianceProfile p;
  p.kind_ = kind;
  p.tag_ = "sampled";
  p.domain_ = {means.front(), means.back()};
  const std::size_t order = std::min<std::size_t>(3, means.size() - 1);
  auto interp = std::make_shared<boost::math::barycentric_rational<double>>(
      means.begin(), means.end(), values.begin(), order);
  p.fn_ = [interp](double m) { return (*interp)(m); };
  p.means_ = std::move(means);
  return p;
}

VarianceProfile VarianceProfile::sample(const CskFamily& family, Kind kind, Interval interval, std::size_t n) {
  if (n < 2) throw DomainError("sampling needs at least two points");
  std::vector<double> means(n);
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    means[i] = interval.lo + interval.width() * static_cast<double>(i) / static_cast<double>(n - 1);
    values[i] = kind == Kind::pseudo ? family.pseudo_variance(means[i]) : family.variance(means[i]);
  }
  return sampled(kind, std::move(means), std::move(values));
}

double VarianceProfile::operator()(double m) const {
  if (!domain_.contains_closed(m)) {
    throw DomainError("m = " + num(m) + " is outside the profile domain " + interval_text(domain_));
  }
  return fn_(m);
}

Interval compact_subinterval(const Interval& domain, double m0, double eps) {
  return {m0 - (1.0 - eps) * (m0 - domain.lo), m0 + (1.0 - eps) * (domain.hi - m0)};
}

// ---------------------------------------------------------------- laws

double law_boxplus_power_V(const VarianceFn& V, double /*m0*/, double alpha, double m) {
  if (!(alpha > 0.0)) throw DomainError("power needs alpha > 0");
  return alpha * V(m / alpha);
}

double law_uplus_power_V(const VarianceFn& V, double m0, double alpha, double m) {
  if (!(alpha > 0.0)) throw DomainError("power needs alpha > 0");
  return alpha * V(m / alpha) + m * (m - alpha * m0) * (1.0 / alpha - 1.0);
}

double law_boxtimes_power_pseudo(const VarianceFn& pseudo, double alpha, double m) {
  if (!(alpha > 0.0)) throw DomainError("power needs alpha > 0");
  if (!(m > 0.0)) throw DomainError("the boxtimes-power law needs m > 0");
  return std::pow(m, 2.0 - 2.0 / alpha) * pseudo(std::pow(m, 1.0 / alpha));
}

double law_boxtimes_power_V(const VarianceFn& V, double m0, double alpha, double m) {
  if (!(alpha > 0.0)) throw DomainError("power needs alpha > 0");
  if (!(m > 0.0)) throw DomainError("the boxtimes-power law needs m > 0");
  const double u = std::pow(m, 1.0 / alpha);
  const double quotient = u == m0 ? alpha * std::pow(m0, alpha - 1.0) : (m - std::pow(m0, alpha)) / (u - m0);
  return quotient * std::pow(m, 1.0 - 1.0 / alpha) * V(u);
}

double law_bt_pseudo(const VarianceFn& pseudo, double t, double m) {
  if (!(t >= 0.0)) throw DomainError("B_t needs t >= 0");
  return pseudo(m) + t * m * m;
}

double law_bt_V(const VarianceFn& V, double m0, double t, double m) {
  if (!(t >= 0.0)) throw DomainError("B_t needs t >= 0");
  return V(m) + t * m * (m - m0);
}

// ---------------------------------------------------------------- from moments

namespace {

// Relative error estimate up to which a partial sum of the S-series is used.
constexpr double kMomentReach = 1e-8;

// The w with S(w) = 1/m, from the truncated S-series.
double w_for_mean(const MomentSeq& mom, double m) {
  if (!mom.positive()) throw DomainError("variance from moments needs a sequence flagged positive");
  if (!(m > 0.0)) throw DomainError("variance from moments needs m > 0");
  const double m0 = mom.mean();
  if (m == m0) return 0.0;
  const TruncatedSeries s = s_series(mom);
  const double target = 1.0 / m;
  auto trusted = [&](double w) {
    const PartialSum sum = s.optimal_sum(w);
    return sum.error <= kMomentReach * std::max(1.0, std::abs(sum.value));
  };
  // S decreases through 1/m0 at w = 0; walk outward until the sign changes
  // or the series stops being trustworthy.
  const double direction = m < m0 ? -1.0 : 1.0;
  const double limit = m < m0 ? 1.0 - 1e-12 : 1e3;
  double far = 0.0;
  bool bracketed = false;
  auto crosses = [&](double w) {
    const double value = s.optimal_sum(w).value - target;
    return m < m0 ? value > 0.0 : value < 0.0;
  };
  for (double step = 1e-3; !bracketed; step *= 1.5) {
    double w = direction * std::min(step, limit);
    if (!trusted(w)) {
      // Close in on the edge of the trusted range before giving up.
      for (int i = 0; i < 30 && !bracketed; ++i) {
        const double mid = 0.5 * (far + w);
        if (trusted(mid)) {
          far = mid;
          bracketed = crosses(mid);
        } else {
          w = mid;
        }
      }
      break;
    }
    far = w;
    bracketed = crosses(w);
    if (step >= limit) break;
  }
  if (!bracketed) {
    throw DomainError("m = " + num(m) + " is out of reach of the truncated S-series");
  }
  // One truncation for the whole bracket keeps the function continuous; the
  // terms only shrink towards w = 0.
  const TruncatedSeries kept = s.truncated(s.optimal_sum(far).order);
  return solve_bracketed([&](double w) { return kept.evaluate(w) - target; }, far, 0.0);
}

}  // namespace

double pseudo_variance_from_moments(const MomentSeq& moments, double m) {
  const double w = w_for_mean(moments, m);
  if (w == 0.0) throw SingularityError("the pseudo-variance has a pole at m0 = " + num(m));
  return m * m / w;
}

double variance_from_moments(const MomentSeq& moments, double m) {
  const double w = w_for_mean(moments, m);
  if (w == 0.0) return moments.variance();
  return m * (m - moments.mean()) / w;
}

}  // namespace freecsk
