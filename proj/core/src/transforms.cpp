#include "freecsk/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "freecsk/errors.hpp"
#include "freecsk/quadrature.hpp"

namespace freecsk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// A partial sum is accepted when its error estimate is this small relative
// to the value.
constexpr double kSeriesGuard = 1e-8;

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string num(std::complex<double> z) {
  if (z.imag() == 0.0) return num(z.real());
  return num(z.real()) + (z.imag() < 0 ? "" : "+") + num(z.imag()) + "i";
}

void require_positive(const Measure& nu, const char* what) {
  if (!nu.positive()) {
    throw DomainError(std::string(what) + " requires a measure supported on [0, inf)");
  }
}

// Rejects z on the support (poles of the integrand 1/(z - x)).
void check_off_support(const Measure& nu, std::complex<double> z) {
  if (z.imag() != 0.0) return;
  const double x = z.real();
  if (const auto* at = nu.atomic()) {
    for (const Atom& a : at->atoms()) {
      if (a.location == x) throw SingularityError("z = " + num(x) + " is an atom of " + nu.describe());
    }
  } else if (const auto* d = nu.density()) {
    const bool inside = x > d->support_lo() && x < d->support_hi();
    const bool bad_edge = (x == d->support_lo() && d->singular_at_lo()) ||
                          (x == d->support_hi() && d->singular_at_hi());
    if (inside || bad_edge) {
      throw SingularityError("z = " + num(x) + " lies on the support of " + nu.describe());
    }
  }
}

double evaluate_guarded(const TruncatedSeries& s, double x, const std::string& what) {
  const PartialSum sum = s.optimal_sum(x);
  if (!(sum.error <= kSeriesGuard * std::max(1.0, std::abs(sum.value)))) {
    throw DomainError(what + " series is not converged at " + num(x));
  }
  return sum.value;
}

double mean_of(const Measure& nu) { return moments(nu, 1).mean(); }

// Psi-series (0, m1, ..., mK).
TruncatedSeries psi_series(const MomentSeq& m) {
  TruncatedSeries psi(m.order());
  for (std::size_t n = 1; n <= m.order(); ++n) psi[n] = m.moment(n);
  return psi;
}

}  // namespace

// ---------------------------------------------------------------- G

double laurent_validity_radius(const MomentSeq& m) {
  double r = 0.0;
  for (std::size_t n = 1; n <= m.order(); ++n) {
    r = std::max(r, std::pow(std::abs(m.moment(n)), 1.0 / static_cast<double>(n)));
  }
  return 2.0 * (1.0 + r);
}

TransformPoint cauchy_transform(const Measure& nu, std::complex<double> z) {
  TransformPoint out{z, {}, false, false};
  if (const auto* seq = nu.moment_seq()) {
    if (z == 0.0) throw SingularityError("Laurent series of G is undefined at z = 0");
    const std::complex<double> u = 1.0 / z;
    std::complex<double> acc = 0.0;
    for (std::size_t n = seq->order() + 1; n-- > 0;) acc = acc * u + seq->moment(n);
    out.value = acc * u;
    out.approximate = true;
    out.outside_validity = std::abs(z) <= laurent_validity_radius(*seq);
    return out;
  }
  check_off_support(nu, z);
  if (z.imag() == 0.0) {
    const double x = z.real();
    const double lo = x - nu.support_inf();
    const double hi = x - nu.support_sup();
    out.value = quadrature_integrate(nu, [=](const SupportPoint& p) { return 1.0 / affine_at(p, lo, hi, 1.0); });
  } else {
    QuadratureOptions options;
    options.near_point = z.real();
    const std::complex<double> lo = z - nu.support_inf();
    const std::complex<double> hi = z - nu.support_sup();
    out.value = quadrature_integrate_complex(
        nu, [=](const SupportPoint& p) { return 1.0 / affine_at(p, lo, hi, std::complex<double>(1.0)); }, options);
  }
  return out;
}

std::complex<double> cauchy_G(const Measure& nu, std::complex<double> z) {
  return cauchy_transform(nu, z).value;
}

double cauchy_G(const Measure& nu, double x) { return cauchy_transform(nu, x).value.real(); }

// ---------------------------------------------------------------- M, Psi

Interval theta_range(const Measure& nu) {
  if (const auto* seq = nu.moment_seq()) {
    const double r = 1.0 / laurent_validity_radius(*seq);
    return {-r, r};
  }
  const double upper = nu.upper_bound();
  const double lower = nu.lower_bound();
  return {lower < 0.0 ? 1.0 / lower : -kInf, upper > 0.0 ? 1.0 / upper : kInf};
}

double m_transform(const Measure& nu, double theta) {
  if (!theta_range(nu).contains(theta)) {
    throw DomainError("theta = " + num(theta) + " is outside the admissible range of " + nu.describe());
  }
  if (theta == 0.0) return 1.0;
  if (const auto* seq = nu.moment_seq()) {
    TruncatedSeries m = psi_series(*seq);
    m[0] = 1.0;
    return evaluate_guarded(m, theta, "M");
  }
  const double lo = std::fma(-theta, nu.support_inf(), 1.0);
  const double hi = std::fma(-theta, nu.support_sup(), 1.0);
  return quadrature_integrate(nu, [=](const SupportPoint& p) { return 1.0 / affine_at(p, lo, hi, theta); });
}

std::complex<double> psi_transform(const Measure& nu, std::complex<double> z) {
  require_positive(nu, "Psi");
  if (z == 0.0) return 0.0;
  if (nu.moment_seq()) {
    if (z.imag() != 0.0) throw UnsupportedError("Psi of a moment sequence is evaluated on the real axis only");
    return psi_transform(nu, z.real());
  }
  check_off_support(nu, 1.0 / z);
  if (z.imag() == 0.0) return psi_transform(nu, z.real());
  QuadratureOptions options;
  options.near_point = (1.0 / z).real();
  const std::complex<double> lo = 1.0 - z * nu.support_inf();
  const std::complex<double> hi = 1.0 - z * nu.support_sup();
  return quadrature_integrate_complex(
      nu, [=](const SupportPoint& p) { return z * p.x / affine_at(p, lo, hi, z); }, options);
}

double psi_transform(const Measure& nu, double z) {
  require_positive(nu, "Psi");
  if (z == 0.0) return 0.0;
  if (const auto* seq = nu.moment_seq()) {
    if (std::abs(z) >= 1.0 / laurent_validity_radius(*seq)) {
      throw DomainError("Psi series of a moment sequence is not trusted at z = " + num(z));
    }
    return evaluate_guarded(psi_series(*seq), z, "Psi");
  }
  check_off_support(nu, 1.0 / z);
  const double lo = std::fma(-z, nu.support_inf(), 1.0);
  const double hi = std::fma(-z, nu.support_sup(), 1.0);
  return quadrature_integrate(nu, [=](const SupportPoint& p) { return z * p.x / affine_at(p, lo, hi, z); });
}

// ---------------------------------------------------------------- chi, S, Sigma

double chi_inverse(const Measure& nu, double w) {
  require_positive(nu, "chi");
  if (const auto* seq = nu.moment_seq()) {
    if (!(w > -1.0 && w < 0.0)) throw DomainError("chi: w = " + num(w) + " must lie in (-1, 0)");
    const double s = evaluate_guarded(s_series(*seq), w, "S");
    return w * s / (1.0 + w);
  }
  const double delta = nu.mass_at_zero();
  if (!(delta < 1.0)) throw DomainError("chi: the measure is concentrated at 0");
  if (!(w > delta - 1.0 && w < 0.0)) {
    throw DomainError("chi: w = " + num(w) + " must lie in (" + num(delta - 1.0) + ", 0)");
  }
  // Psi is increasing on (-inf, 0) with Psi(0) = 0 and Psi(-inf) = delta - 1.
  auto f = [&](double z) { return psi_transform(nu, z) - w; };
  double lo = -1.0;
  for (int i = 0; f(lo) > 0.0; ++i) {
    if (i == 1000) throw NumericError("chi: no bracket found for w = " + num(w));
    lo *= 2.0;
  }
  return solve_bracketed(f, lo, 0.0);
}

double s_transform(const Measure& nu, double w) {
  require_positive(nu, "S");
  if (const auto* seq = nu.moment_seq()) {
    if (!(w > -1.0 && w <= 0.0)) throw DomainError("S: w = " + num(w) + " must lie in (-1, 0]");
    return evaluate_guarded(s_series(*seq), w, "S");
  }
  if (w == 0.0) {
    const double m0 = mean_of(nu);
    if (m0 == 0.0) throw DomainError("S(0) = 1/m0 needs a nonzero mean");
    return 1.0 / m0;
  }
  return chi_inverse(nu, w) * (1.0 + w) / w;
}

double sigma_transform(const Measure& nu, double z) {
  if (!(z < 1.0)) throw DomainError("Sigma: z = " + num(z) + " must be below 1");
  return s_transform(nu, z / (1.0 - z));
}

// ---------------------------------------------------------------- R, K

double r_transform(const Measure& nu, double z) {
  if (z == 0.0) throw DomainError("R is evaluated at z != 0");
  if (const auto* seq = nu.moment_seq()) {
    return evaluate_guarded(r_series(*seq), z, "R");
  }

  // G is decreasing on each real half-line off the support: from +inf (or a
  // finite edge value) down to 0+ right of the support, and from 0- down to
  // -inf (or a finite edge value) left of it.
  const bool right = z > 0.0;
  const double edge = right ? nu.support_sup() : nu.support_inf();
  const double dir = right ? 1.0 : -1.0;
  bool edge_finite = false;
  if (const auto* d = nu.density()) {
    edge_finite = right ? !d->singular_at_hi() : !d->singular_at_lo();
  }
  auto f = [&](double y) { return cauchy_G(nu, y) - z; };

  double near = edge;
  if (edge_finite) {
    const double g_edge = cauchy_G(nu, edge);
    if (right ? z >= g_edge : z <= g_edge) {
      throw DomainError("R: z = " + num(z) + " is not a value of G outside the support");
    }
  } else {
    double gap = 1.0;
    for (int i = 0; dir * f(edge + dir * gap) < 0.0; ++i) {
      if (i == 300) throw DomainError("R: no real preimage of z = " + num(z));
      gap *= 0.1;
    }
    near = edge + dir * gap;
  }
  double gap = std::max(1.0, 2.0 / std::abs(z));
  for (int i = 0; dir * f(edge + dir * gap) > 0.0; ++i) {
    if (i == 1000) throw DomainError("R: no real preimage of z = " + num(z));
    gap *= 2.0;
  }
  const double y = solve_bracketed(f, near, edge + dir * gap);
  return y - 1.0 / z;
}

std::complex<double> k_transform(const Measure& nu, std::complex<double> z) {
  if (const auto* seq = nu.moment_seq()) {
    if (z == 0.0) throw SingularityError("K series is undefined at z = 0");
    const TruncatedSeries k = k_series(*seq);
    const std::complex<double> u = 1.0 / z;
    const std::complex<double> value = k.evaluate(u);
    const double tail = std::abs(k[k.order()]) * std::pow(std::abs(u), static_cast<double>(k.order()));
    if (!(tail <= kSeriesGuard * std::max(1.0, std::abs(value)))) {
      throw DomainError("K series is not converged at z = " + num(z));
    }
    return value;
  }
  const std::complex<double> g = cauchy_G(nu, z);
  if (g == 0.0) throw SingularityError("G vanishes at z = " + num(z));
  return z - 1.0 / g;
}

double k_transform(const Measure& nu, double x) {
  return k_transform(nu, std::complex<double>(x, 0.0)).real();
}

// ---------------------------------------------------------------- series pipelines

TruncatedSeries s_series(const MomentSeq& m) {
  if (m.order() < 1 || m.moment(1) == 0.0) throw DomainError("S-series needs a nonzero first moment");
  const TruncatedSeries chi = series::revert(psi_series(m));
  const TruncatedSeries chi_over_w = series::divide_by_z(chi);
  TruncatedSeries one_plus_w(chi_over_w.order());
  one_plus_w[0] = 1.0;
  if (one_plus_w.order() >= 1) one_plus_w[1] = 1.0;
  return chi_over_w * one_plus_w;
}

MomentSeq moments_from_s_series(const TruncatedSeries& s, bool positive, bool formal) {
  if (s[0] == 0.0) throw DomainError("S-series with zero constant term has no moment sequence");
  const std::size_t n = s.order();
  TruncatedSeries one_plus_w(n);
  one_plus_w[0] = 1.0;
  if (n >= 1) one_plus_w[1] = 1.0;
  const TruncatedSeries q = series::divide(s, one_plus_w);
  // chi = w q(w) is known one order further than q.
  TruncatedSeries chi(n + 1);
  for (std::size_t k = 0; k <= n; ++k) chi[k + 1] = q[k];
  const TruncatedSeries psi = series::revert(chi);
  std::vector<double> values(n + 1);
  for (std::size_t k = 1; k <= n + 1; ++k) values[k - 1] = psi[k];
  return MomentSeq(std::move(values), positive, formal);
}

TruncatedSeries sigma_series_from_s(const TruncatedSeries& s) {
  TruncatedSeries map = TruncatedSeries::geometric(s.order());  // z/(1-z)
  map[0] = 0.0;
  return series::compose(s, map);
}

TruncatedSeries s_series_from_sigma(const TruncatedSeries& sigma) {
  TruncatedSeries map(sigma.order());  // w/(1+w)
  for (std::size_t k = 1; k <= sigma.order(); ++k) map[k] = (k % 2 == 1) ? 1.0 : -1.0;
  return series::compose(sigma, map);
}

TruncatedSeries r_series(const MomentSeq& m) {
  const std::size_t K = m.order();
  // g(u) = u M(u), known to order K+1; its inverse is u h(u) with
  // h = 1/(1 + u R(u)).
  TruncatedSeries g(K + 1);
  g[1] = 1.0;
  for (std::size_t n = 1; n <= K; ++n) g[n + 1] = m.moment(n);
  const TruncatedSeries h = series::divide_by_z(series::revert(g));
  TruncatedSeries inv_h = series::reciprocal(h);
  inv_h[0] -= 1.0;
  return series::divide_by_z(inv_h);
}

MomentSeq moments_from_r_series(const TruncatedSeries& r) {
  const std::size_t K = r.order() + 1;
  TruncatedSeries one_plus_uR(K);
  one_plus_uR[0] = 1.0;
  for (std::size_t k = 0; k < K; ++k) one_plus_uR[k + 1] = r[k];
  const TruncatedSeries h = series::reciprocal(one_plus_uR);
  TruncatedSeries ginv(K + 1);
  for (std::size_t k = 0; k <= K; ++k) ginv[k + 1] = h[k];
  const TruncatedSeries g = series::revert(ginv);
  std::vector<double> values(K);
  for (std::size_t n = 1; n <= K; ++n) values[n - 1] = g[n + 1];
  return MomentSeq(std::move(values));
}

TruncatedSeries k_series(const MomentSeq& m) {
  const std::size_t K = m.order();
  // 1 - 1/M(u) = b_1 u + b_2 u^2 + ...
  TruncatedSeries mu(K);
  mu[0] = 1.0;
  for (std::size_t n = 1; n <= K; ++n) mu[n] = m.moment(n);
  TruncatedSeries b = -series::reciprocal(mu);
  b[0] += 1.0;
  return series::divide_by_z(b);
}

MomentSeq moments_from_k_series(const TruncatedSeries& k) {
  const std::size_t K = k.order() + 1;
  TruncatedSeries one_minus_b(K);
  one_minus_b[0] = 1.0;
  for (std::size_t n = 0; n < K; ++n) one_minus_b[n + 1] = -k[n];
  const TruncatedSeries mu = series::reciprocal(one_minus_b);
  std::vector<double> values(K);
  for (std::size_t n = 1; n <= K; ++n) values[n - 1] = mu[n];
  return MomentSeq(std::move(values));
}

}  // namespace freecsk
