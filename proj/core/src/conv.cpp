#include "freecsk/conv.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "freecsk/errors.hpp"
#include "freecsk/series.hpp"
#include "freecsk/transforms.hpp"

namespace freecsk {

namespace {

std::pair<MomentSeq, MomentSeq> common_order(const MomentSeq& a, const MomentSeq& b) {
  const std::size_t k = std::min(a.order(), b.order());
  return {a.truncated(k), b.truncated(k)};
}

TruncatedSeries as_series(const std::vector<double>& c) { return TruncatedSeries(c); }

std::vector<double> as_vector(const TruncatedSeries& s) { return {s.coeffs().begin(), s.coeffs().end()}; }

void require_order(const MomentSeq& m) {
  if (m.order() < 1) throw InsufficientDataError("operation needs at least one moment");
}

void require_multiplicative(const MomentSeq& m, const char* what) {
  require_order(m);
  if (!m.positive()) {
    throw DomainError(std::string(what) + " requires moment sequences flagged positive");
  }
  if (!(m.mean() > 0.0)) throw DomainError(std::string(what) + " requires a nonzero mean");
}

}  // namespace

FreeCumulants moments_to_free_cumulants(const MomentSeq& m) {
  require_order(m);
  return {as_vector(r_series(m))};
}

MomentSeq free_cumulants_to_moments(const FreeCumulants& kappa) {
  if (kappa.values.empty()) throw InsufficientDataError("no free cumulants given");
  return moments_from_r_series(as_series(kappa.values));
}

BooleanCumulants moments_to_boolean_cumulants(const MomentSeq& m) {
  require_order(m);
  return {as_vector(k_series(m))};
}

MomentSeq boolean_cumulants_to_moments(const BooleanCumulants& b) {
  if (b.values.empty()) throw InsufficientDataError("no Boolean cumulants given");
  return moments_from_k_series(as_series(b.values));
}

MomentSeq boxplus(const MomentSeq& mu, const MomentSeq& nu) {
  const auto [a, b] = common_order(mu, nu);
  require_order(a);
  const MomentSeq out = moments_from_r_series(r_series(a) + r_series(b));
  return out.with_flags(a.positive() && b.positive(), a.formal() || b.formal());
}

MomentSeq boxplus_power(const MomentSeq& nu, double alpha) {
  require_order(nu);
  if (!(alpha > 0.0)) throw DomainError("boxplus power needs alpha > 0");
  const MomentSeq out = moments_from_r_series(alpha * r_series(nu));
  return out.with_flags(nu.positive(), nu.formal() || alpha < 1.0);
}

MomentSeq uplus(const MomentSeq& mu, const MomentSeq& nu) {
  const auto [a, b] = common_order(mu, nu);
  require_order(a);
  const MomentSeq out = moments_from_k_series(k_series(a) + k_series(b));
  return out.with_flags(a.positive() && b.positive(), a.formal() || b.formal());
}

MomentSeq uplus_power(const MomentSeq& nu, double alpha) {
  require_order(nu);
  if (!(alpha > 0.0)) throw DomainError("uplus power needs alpha > 0");
  const MomentSeq out = moments_from_k_series(alpha * k_series(nu));
  return out.with_flags(nu.positive(), nu.formal());
}

MomentSeq boxtimes(const MomentSeq& mu, const MomentSeq& nu) {
  const auto [a, b] = common_order(mu, nu);
  require_multiplicative(a, "boxtimes");
  require_multiplicative(b, "boxtimes");
  return moments_from_s_series(s_series(a) * s_series(b), true, a.formal() || b.formal());
}

MomentSeq boxtimes_power(const MomentSeq& nu, double alpha) {
  require_multiplicative(nu, "boxtimes power");
  if (!(alpha > 0.0)) throw DomainError("boxtimes power needs alpha > 0");
  return moments_from_s_series(series::pow(s_series(nu), alpha), true, nu.formal() || alpha < 1.0);
}

MomentSeq dilate(const MomentSeq& nu, double r) {
  if (r == 0.0 || !std::isfinite(r)) throw DomainError("dilation needs a finite r != 0");
  std::vector<double> values(nu.values());
  double p = 1.0;
  for (double& v : values) {
    p *= r;
    v *= p;
  }
  return MomentSeq(std::move(values), nu.positive() && r > 0.0, nu.formal());
}

MomentSeq affine_image(const MomentSeq& nu, double beta, double lambda) {
  if (beta == 0.0 || !std::isfinite(beta)) throw DomainError("affine image needs a finite beta != 0");
  const std::size_t K = nu.order();
  // E[(X - lambda)^n] by the binomial expansion, then the dilation by 1/beta.
  std::vector<double> shifted(K);
  for (std::size_t n = 1; n <= K; ++n) {
    double binom = 1.0;
    double sum = 0.0;
    for (std::size_t j = 0; j <= n; ++j) {
      sum += binom * nu.moment(j) * std::pow(-lambda, static_cast<double>(n - j));
      binom = binom * static_cast<double>(n - j) / static_cast<double>(j + 1);
    }
    shifted[n - 1] = sum;
  }
  const bool positive = nu.positive() && lambda <= 0.0;
  return dilate(MomentSeq(std::move(shifted), positive, nu.formal()), 1.0 / beta);
}

MomentSeq bp_transform(const MomentSeq& nu, double t) {
  if (!(t >= 0.0)) throw DomainError("B_t needs t >= 0");
  if (t == 0.0) return nu;
  return uplus_power(boxplus_power(nu, 1.0 + t), 1.0 / (1.0 + t));
}

}  // namespace freecsk
