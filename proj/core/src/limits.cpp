#include "freecsk/limits.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "freecsk/conv.hpp"
#include "freecsk/errors.hpp"
#include "freecsk/transforms.hpp"

namespace freecsk {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void require_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("gamma must be positive, got " + num(gamma));
}

void require_unit_interval(double m, bool allow_one) {
  if (!(m > 0.0) || m > 1.0 || (!allow_one && m == 1.0)) {
    throw DomainError("m = " + num(m) + " is outside the mean interval of the limit law");
  }
}

TruncatedSeries exp_minus_gamma(double gamma, std::size_t order) {
  TruncatedSeries arg(order);
  if (order >= 1) arg[1] = -gamma;
  return series::exp(arg);
}

}  // namespace

std::string to_string(LimitKind kind) { return kind == LimitKind::eta ? "eta" : "sigma"; }
std::string to_string(ScalingKind kind) { return kind == ScalingKind::boxplus ? "boxplus" : "uplus"; }
LimitKind limit_of(ScalingKind kind) { return kind == ScalingKind::boxplus ? LimitKind::eta : LimitKind::sigma; }

// ---------------------------------------------------------------- closed forms

double limit_variance_eta(double gamma, double m) {
  require_gamma(gamma);
  require_unit_interval(m, true);
  if (m == 1.0) return gamma;
  return gamma * m * (m - 1.0) / std::log1p(m - 1.0);
}

double limit_variance_sigma(double gamma, double m) {
  return limit_variance_eta(gamma, m) + m * (1.0 - m);
}

double limit_pseudo_variance_eta(double gamma, double m) {
  require_gamma(gamma);
  require_unit_interval(m, false);
  return gamma * m * m / std::log(m);
}

double limit_pseudo_variance_sigma(double gamma, double m) {
  return limit_pseudo_variance_eta(gamma, m) - m * m;
}

// ---------------------------------------------------------------- limit laws

LimitLaw make_limit_law(LimitKind kind, double gamma, std::size_t K) {
  require_gamma(gamma);
  if (K < 1) throw DomainError("limit law needs at least one moment");
  TruncatedSeries defining = exp_minus_gamma(gamma, K - 1);
  const TruncatedSeries s = kind == LimitKind::eta ? defining : s_series_from_sigma(defining);
  return {kind, gamma, std::move(defining), moments_from_s_series(s, true)};
}

MomentSeq limit_law_moments(LimitKind kind, double gamma, std::size_t K) {
  return make_limit_law(kind, gamma, K).moments;
}

double LimitLaw::variance(double m) const {
  return kind == LimitKind::eta ? limit_variance_eta(gamma, m) : limit_variance_sigma(gamma, m);
}

double LimitLaw::pseudo_variance(double m) const {
  return kind == LimitKind::eta ? limit_pseudo_variance_eta(gamma, m) : limit_pseudo_variance_sigma(gamma, m);
}

VarianceProfile LimitLaw::variance_profile() const {
  const double g = gamma;
  if (kind == LimitKind::eta) {
    return VarianceProfile::closed_form(VarianceProfile::Kind::variance, "eta(gamma=" + num(g) + ")",
                                        [g](double m) { return limit_variance_eta(g, m); }, {0.0, 1.0});
  }
  return VarianceProfile::closed_form(VarianceProfile::Kind::variance, "sigma(gamma=" + num(g) + ")",
                                      [g](double m) { return limit_variance_sigma(g, m); }, {0.0, 1.0});
}

// ---------------------------------------------------------------- scaled sequences

MomentSeq scaled_sequence_moments(const Measure& nu, std::size_t n, ScalingKind kind, std::size_t K) {
  if (n < 1) throw DomainError("the scaled sequence starts at n = 1");
  if (!nu.positive()) throw UnsupportedError("the scaled sequence needs a measure on [0, inf)");
  const MomentSeq base = moments(nu, K).with_flags(true, false);
  const double m0 = base.mean();
  if (!(m0 > 0.0)) throw UnsupportedError("the scaled sequence needs m0 > 0");

  const double alpha = static_cast<double>(n);
  // D_r commutes with both additive powers; scaling before the additive
  // step keeps the intermediate moments of moderate size.
  const MomentSeq scaled = dilate(boxtimes_power(base, alpha), 1.0 / (alpha * std::pow(m0, alpha)));
  return kind == ScalingKind::boxplus ? boxplus_power(scaled, alpha) : uplus_power(scaled, alpha);
}

// ---------------------------------------------------------------- reports

double ConvergenceReport::error(std::size_t n, std::size_t order) const {
  for (const ConvergenceRow& r : rows) {
    if (r.n == n && r.order == order) return r.abs_error;
  }
  throw std::out_of_range("no report row for n = " + std::to_string(n) + ", order " + std::to_string(order));
}

const VarianceRow& ConvergenceReport::variance_at(std::size_t n, double m) const {
  for (const VarianceRow& r : variance_rows) {
    if (r.n == n && r.m == m) return r;
  }
  throw std::out_of_range("no variance row for n = " + std::to_string(n) + ", m = " + num(m));
}

ConvergenceReport convergence_report(const Measure& nu, ScalingKind kind, const ConvergenceOptions& options) {
  if (options.n_schedule.empty()) throw DomainError("empty n schedule");
  for (std::size_t i = 1; i < options.n_schedule.size(); ++i) {
    if (!(options.n_schedule[i] > options.n_schedule[i - 1])) {
      throw DomainError("n schedule must be strictly increasing");
    }
  }
  if (options.reported_orders < 1 || options.reported_orders > options.series_order) {
    throw DomainError("reported orders must lie in 1..series order");
  }

  const MomentSeq own = moments(nu, 2);
  const double gamma = own.variance() / (own.mean() * own.mean());
  const LimitLaw law = make_limit_law(limit_of(kind), gamma, options.series_order);

  ConvergenceReport report{nu.describe(), kind,  law.kind, gamma, options.series_order,
                           options.reported_orders, {},    {}};
  for (std::size_t n : options.n_schedule) {
    const MomentSeq seq = scaled_sequence_moments(nu, n, kind, options.series_order);
    for (std::size_t k = 1; k <= options.reported_orders; ++k) {
      const double value = seq.moment(k);
      const double limit = law.moments.moment(k);
      report.rows.push_back({n, k, value, limit, std::abs(value - limit)});
    }
    for (double m : options.variance_grid) {
      VarianceRow row{n, m, std::numeric_limits<double>::quiet_NaN(), law.variance(m),
                      std::numeric_limits<double>::quiet_NaN(), {}};
      try {
        row.value = variance_from_moments(seq, m);
        row.abs_error = std::abs(row.value - row.limit);
      } catch (const Error& e) {
        row.error = e.what();
      }
      report.variance_rows.push_back(row);
    }
  }
  return report;
}

BpIdentityReport verify_bp_identity(double gamma, std::size_t K, double threshold) {
  const MomentSeq lhs = bp_transform(limit_law_moments(LimitKind::sigma, gamma, K), 1.0);
  const MomentSeq rhs = limit_law_moments(LimitKind::eta, gamma, K);
  double worst = 0.0;
  for (std::size_t k = 1; k <= K; ++k) worst = std::max(worst, std::abs(lhs.moment(k) - rhs.moment(k)));
  return {gamma, K, lhs, rhs, worst, worst <= threshold};
}

}  // namespace freecsk
