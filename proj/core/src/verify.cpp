#include "freecsk/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>

#include "freecsk/conv.hpp"
#include "freecsk/csk.hpp"
#include "freecsk/errors.hpp"
#include "freecsk/limits.hpp"
#include "freecsk/quadrature.hpp"
#include "freecsk/series.hpp"
#include "freecsk/transforms.hpp"

namespace freecsk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class Recorder {
 public:
  explicit Recorder(std::string suite) : report_{std::move(suite), {}} {}

  // fn returns the worst deviation; library errors fail the check.
  void check(std::string name, double tolerance, const std::function<double()>& fn) {
    Check c{std::move(name), kInf, tolerance, false, {}};
    try {
      c.deviation = fn();
      c.passed = c.deviation <= tolerance;
    } catch (const Error& e) {
      c.note = e.what();
    }
    report_.checks.push_back(std::move(c));
  }

  SuiteReport take() { return std::move(report_); }

 private:
  SuiteReport report_;
};

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

// Points strictly inside (a, b).
std::vector<double> interior(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = a + (b - a) * static_cast<double>(i + 1) / static_cast<double>(n + 1);
  return out;
}

// Largest step up of a sequence that should be nonincreasing.
double worst_increase(const std::vector<double>& v) {
  double worst = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) worst = std::max(worst, v[i] - v[i - 1]);
  return worst;
}

double max_moment_gap(const MomentSeq& a, const MomentSeq& b, std::size_t order) {
  double worst = 0.0;
  for (std::size_t k = 1; k <= order; ++k) worst = std::max(worst, std::abs(a.moment(k) - b.moment(k)));
  return worst;
}

// Gap relative to max(1, |m_k|): high moments of products grow quickly.
double max_relative_moment_gap(const MomentSeq& a, const MomentSeq& b, std::size_t order) {
  double worst = 0.0;
  for (std::size_t k = 1; k <= order; ++k) {
    worst = std::max(worst, std::abs(a.moment(k) - b.moment(k)) / std::max(1.0, std::abs(b.moment(k))));
  }
  return worst;
}

Measure two_atom() { return AtomicMeasure({1.0, 3.0}, {0.5, 0.5}); }

AtomicMeasure random_positive_atomic(std::mt19937_64& rng, std::size_t atoms) {
  std::uniform_real_distribution<double> loc(0.1, 3.0);
  std::uniform_real_distribution<double> wt(0.1, 1.0);
  std::vector<double> x(atoms);
  std::vector<double> w(atoms);
  double total = 0.0;
  for (std::size_t i = 0; i < atoms; ++i) {
    x[i] = loc(rng);
    w[i] = wt(rng);
    total += w[i];
  }
  for (double& wi : w) wi /= total;
  return AtomicMeasure(x, w);
}

// ---------------------------------------------------------------- suites

SuiteReport suite_series() {
  Recorder r("series");
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> lead(1.0, 2.0);
  // Admissible: |a1| in [1, 2] and |ak| <= 3^(1-k), so that the inverse has
  // coefficients of moderate size and the identity can be checked absolutely.
  auto random_series = [&](std::size_t order, bool invertible) {
    TruncatedSeries a(order);
    for (std::size_t k = 1; k <= order; ++k) a[k] = coef(rng) * std::pow(3.0, 1.0 - static_cast<double>(k));
    if (invertible) {
      a[0] = 0.0;
      a[1] = lead(rng) * (coef(rng) < 0.0 ? -1.0 : 1.0);
    } else {
      a[0] = lead(rng);
    }
    return a;
  };

  r.check("compose(a, revert(a)) = z, order 20, 100 series", 1e-12, [&] {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const TruncatedSeries a = random_series(20, true);
      const TruncatedSeries id = series::compose(a, series::revert(a));
      for (std::size_t k = 0; k <= 20; ++k) worst = std::max(worst, std::abs(id[k] - (k == 1 ? 1.0 : 0.0)));
    }
    return worst;
  });
  r.check("pow(a, p) pow(a, q) = pow(a, p + q)", 1e-12, [&] {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const TruncatedSeries a = random_series(20, false);
      const TruncatedSeries lhs = series::pow(a, 0.7) * series::pow(a, 1.6);
      const TruncatedSeries rhs = series::pow(a, 2.3);
      for (std::size_t k = 0; k <= 20; ++k) worst = std::max(worst, std::abs(lhs[k] - rhs[k]));
    }
    return worst;
  });
  r.check("mul commutative and associative", 1e-12, [&] {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const TruncatedSeries a = random_series(20, false);
      const TruncatedSeries b = random_series(20, false);
      const TruncatedSeries c = random_series(20, false);
      const TruncatedSeries ab = a * b;
      const TruncatedSeries ba = b * a;
      const TruncatedSeries left = (a * b) * c;
      const TruncatedSeries right = a * (b * c);
      for (std::size_t k = 0; k <= 20; ++k) {
        worst = std::max({worst, std::abs(ab[k] - ba[k]), std::abs(left[k] - right[k])});
      }
    }
    return worst;
  });
  return r.take();
}

void prop2_checks(Recorder& r, const Measure& nu, const std::string& tag) {
  const CskFamily family(nu);
  const double m0 = family.mean();
  const double delta = nu.mass_at_zero();
  // Below m0 the pseudo-variance is negative and m^2/PV lands in (delta - 1, 0).
  const std::vector<double> grid = interior(family.mean_domain().lo, m0, 9);
  auto ratio = [&](double m) { return m * m / family.pseudo_variance(m); };

  r.check(tag + ": Psi(psi(m)) = m^2/PV(m)", 1e-9, [&] {
    double worst = 0.0;
    for (double m : grid) worst = std::max(worst, std::abs(psi_transform(nu, family.psi(m)) - ratio(m)));
    return worst;
  });
  r.check(tag + ": m^2/PV(m) in (delta - 1, 0)", 0.0, [&] {
    double worst = 0.0;
    for (double m : grid) {
      const double w = ratio(m);
      if (!(w > delta - 1.0 && w < 0.0)) worst = std::max({worst, std::abs(w), std::abs(w - (delta - 1.0))});
    }
    return worst;
  });
  r.check(tag + ": S(m^2/PV(m)) m = 1", 1e-9, [&] {
    double worst = 0.0;
    for (double m : grid) worst = std::max(worst, std::abs(s_transform(nu, ratio(m)) * m - 1.0));
    return worst;
  });
  r.check(tag + ": S strictly decreasing on (delta - 1, 0)", 0.0, [&] {
    std::vector<double> values;
    for (double w : interior(delta - 1.0, 0.0, 9)) values.push_back(s_transform(nu, w));
    // strictly: an equal neighbour counts as a violation
    double worst = 0.0;
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (!(values[i] < values[i - 1])) worst = std::max(worst, values[i] - values[i - 1] + 1e-300);
    }
    return worst;
  });
  r.check(tag + ": w S(w) -> 0 as w -> 0-", 1e-5, [&] {
    std::vector<double> values;
    for (double w : {-1e-2, -1e-4, -1e-6}) values.push_back(std::abs(w * s_transform(nu, w)));
    if (worst_increase(values) > 0.0) return kInf;
    return values.back();
  });
  r.check(tag + ": m -> m^2/PV(m) strictly increasing", 0.0, [&] {
    double worst = 0.0;
    double previous = -kInf;
    for (double m : grid) {
      const double w = ratio(m);
      if (!(w > previous)) worst = std::max(worst, previous - w + 1e-300);
      previous = w;
    }
    return worst;
  });
}

SuiteReport suite_prop2() {
  Recorder r("prop2");
  prop2_checks(r, Measure::free_poisson(), "free_poisson");
  prop2_checks(r, two_atom(), "(delta_1 + delta_3)/2");
  return r.take();
}

SuiteReport suite_theorem_boxtimes() {
  Recorder r("theorem-boxtimes");
  const Measure fp = Measure::free_poisson();
  const MomentSeq base = moments(fp, 40).with_flags(true, false);
  const CskFamily family(fp);
  for (double alpha : {2.0, 3.0}) {
    const std::string tag = "alpha = " + std::to_string(static_cast<int>(alpha));
    r.check(tag + ": m0 of the power equals m0^alpha", 0.0, [&] {
      return std::abs(boxtimes_power(base, alpha).mean() - std::pow(base.mean(), alpha));
    });
    r.check(tag + ": PV from moments matches m^(2-2/alpha) PV(m^(1/alpha))", 1e-5, [&] {
      const MomentSeq power = boxtimes_power(base, alpha);
      const VarianceFn pv = [&](double m) { return family.pseudo_variance(m); };
      double worst = 0.0;
      for (double m : linspace(0.7, 0.95, 5)) {
        worst = std::max(worst, std::abs(pseudo_variance_from_moments(power, m) -
                                         law_boxtimes_power_pseudo(pv, alpha, m)));
      }
      return worst;
    });
  }
  return r.take();
}

SuiteReport suite_free_poisson() {
  Recorder r("free-poisson");
  const Measure fp = Measure::free_poisson();
  const CskFamily family(fp);
  r.check("mean domain lower end 0", 1e-6, [&] { return std::abs(family.mean_domain().lo); });
  r.check("mean domain upper end 2", 1e-6, [&] { return std::abs(family.mean_domain().hi - 2.0); });
  r.check("V(m) = m on [0.2, 1.8]", 1e-8, [&] {
    double worst = 0.0;
    for (double m : linspace(0.2, 1.8, 20)) worst = std::max(worst, std::abs(family.variance(m) - m));
    return worst;
  });
  r.check("G(m + PV/m) PV(m) = m", 1e-9, [&] {
    double worst = 0.0;
    for (double m : {0.3, 0.6, 1.4, 1.7}) {
      const double pv = family.pseudo_variance(m);
      worst = std::max(worst, std::abs(cauchy_G(fp, m + pv / m) * pv - m));
    }
    return worst;
  });
  r.check("V(m) = int (x - m)^2 dQ_m", 1e-8, [&] {
    double worst = 0.0;
    for (double m : {0.5, 0.9, 1.5}) {
      const double second = quadrature_integrate(
          fp, [&](double x) { return (x - m) * (x - m) * family.density_weight(x, m); });
      worst = std::max(worst, std::abs(second - family.variance(m)));
    }
    return worst;
  });
  return r.take();
}

SuiteReport suite_marchenko_pastur() {
  Recorder r("marchenko-pastur");
  for (double a : {0.3, 1.0}) {
    const CskFamily family(Measure::marchenko_pastur_centered(a));
    const std::string tag = "a = " + std::string(a == 1.0 ? "1" : "0.3");
    r.check(tag + ": mean domain (-1, 1)", 1e-6, [&] {
      return std::max(std::abs(family.mean_domain().lo + 1.0), std::abs(family.mean_domain().hi - 1.0));
    });
    r.check(tag + ": V(m) = 1 + am on [-0.8, 0.8]", 1e-8, [&] {
      double worst = 0.0;
      for (double m : linspace(-0.8, 0.8, 17)) worst = std::max(worst, std::abs(family.variance(m) - (1.0 + a * m)));
      return worst;
    });
  }
  r.check("a = 1 shifted by +1 has the free Poisson moments", 1e-9, [&] {
    const MomentSeq shifted = affine_image(moments(Measure::marchenko_pastur_centered(1.0), 4), 1.0, -1.0);
    return max_moment_gap(shifted, MomentSeq({1.0, 2.0, 5.0, 14.0}), 4);
  });
  return r.take();
}

SuiteReport suite_conv_laws() {
  Recorder r("conv-laws");
  const std::vector<std::pair<std::string, Measure>> measures{
      {"free_poisson", Measure::free_poisson()},
      {"marchenko_pastur_centered(1)", Measure::marchenko_pastur_centered(1.0)}};
  for (const auto& [tag, nu] : measures) {
    const CskFamily family(nu);
    const VarianceFn V = [&](double m) { return family.variance(m); };
    const MomentSeq base = moments(nu, 8);
    const double m0 = family.mean();
    for (double alpha : {2.0, 3.0}) {
      const std::string suffix = ", alpha = " + std::to_string(static_cast<int>(alpha));
      r.check(tag + ": Var of boxplus power" + suffix, 1e-9, [&] {
        return std::abs(boxplus_power(base, alpha).variance() - law_boxplus_power_V(V, m0, alpha, alpha * m0));
      });
      r.check(tag + ": Var of uplus power" + suffix, 1e-9, [&] {
        return std::abs(uplus_power(base, alpha).variance() - law_uplus_power_V(V, m0, alpha, alpha * m0));
      });
    }
  }
  std::mt19937_64 rng(7);
  const MomentSeq a = moments(random_positive_atomic(rng, 3), 8).with_flags(true, false);
  const MomentSeq b = moments(random_positive_atomic(rng, 4), 8).with_flags(true, false);
  const MomentSeq c = moments(random_positive_atomic(rng, 2), 8).with_flags(true, false);
  r.check("mean laws", 1e-12, [&] {
    return std::max({std::abs(boxplus(a, b).mean() - (a.mean() + b.mean())),
                     std::abs(uplus(a, b).mean() - (a.mean() + b.mean())),
                     std::abs(boxtimes(a, b).mean() - a.mean() * b.mean())});
  });
  r.check("boxtimes commutative and associative (relative)", 1e-10, [&] {
    return std::max(max_relative_moment_gap(boxtimes(a, b), boxtimes(b, a), 8),
                    max_relative_moment_gap(boxtimes(boxtimes(a, b), c), boxtimes(a, boxtimes(b, c)), 8));
  });
  return r.take();
}

SuiteReport suite_limit(ScalingKind kind) {
  Recorder r(kind == ScalingKind::boxplus ? "limit-eta" : "limit-sigma");
  std::optional<ConvergenceReport> report;
  r.check("convergence report for free_poisson", 0.0, [&] {
    report = convergence_report(Measure::free_poisson(), kind);
    return 0.0;
  });
  if (!report) return r.take();

  std::vector<std::size_t> schedule;
  for (const ConvergenceRow& row : report->rows) {
    if (row.order == 1) schedule.push_back(row.n);
  }
  r.check("first moment equals 1 for every n", 1e-12, [&] {
    double worst = 0.0;
    for (const ConvergenceRow& row : report->rows) {
      if (row.order == 1) worst = std::max(worst, std::abs(row.value - 1.0));
    }
    return worst;
  });
  for (std::size_t order = 2; order <= 5; ++order) {
    r.check("order " + std::to_string(order) + " error nonincreasing in n", 1e-12, [&] {
      std::vector<double> errors;
      for (std::size_t n : schedule) errors.push_back(report->error(n, order));
      return worst_increase(errors);
    });
  }
  r.check("order 2 error at n = 64", 0.05, [&] { return report->error(64, 2); });
  r.check("variance function at n = 64, m in {0.6, 0.8, 0.9}", 5e-2, [&] {
    double worst = 0.0;
    for (double m : {0.6, 0.8, 0.9}) {
      const VarianceRow& row = report->variance_at(64, m);
      if (!row.error.empty()) throw NumericError(row.error);
      worst = std::max(worst, row.abs_error);
    }
    return worst;
  });
  return r.take();
}

SuiteReport suite_bp_identity() {
  Recorder r("bp-identity");
  for (double gamma : {0.5, 1.0}) {
    const std::string tag = "gamma = " + std::string(gamma == 1.0 ? "1" : "0.5");
    r.check(tag + ": B_1(sigma) = eta, order 8", 1e-9, [&] { return verify_bp_identity(gamma, 8).max_abs_error; });
    r.check(tag + ": bt law with t = 1 maps V_sigma to V_eta", 1e-12, [&] {
      const VarianceFn v_sigma = [&](double m) { return limit_variance_sigma(gamma, m); };
      double worst = 0.0;
      for (double m : linspace(0.05, 1.0, 20)) {
        worst = std::max(worst, std::abs(law_bt_V(v_sigma, 1.0, 1.0, m) - limit_variance_eta(gamma, m)));
      }
      return worst;
    });
    r.check(tag + ": V_sigma - V_eta = m (1 - m)", 1e-12, [&] {
      double worst = 0.0;
      for (double m : linspace(0.05, 1.0, 20)) {
        worst = std::max(worst, std::abs(limit_variance_sigma(gamma, m) - limit_variance_eta(gamma, m) -
                                         m * (1.0 - m)));
      }
      return worst;
    });
  }
  return r.take();
}

using SuiteFn = SuiteReport (*)();

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> table{
      {"series", suite_series},
      {"prop2", suite_prop2},
      {"theorem-boxtimes", suite_theorem_boxtimes},
      {"free-poisson", suite_free_poisson},
      {"marchenko-pastur", suite_marchenko_pastur},
      {"conv-laws", suite_conv_laws},
      {"limit-eta", [] { return suite_limit(ScalingKind::boxplus); }},
      {"limit-sigma", [] { return suite_limit(ScalingKind::uplus); }},
      {"bp-identity", suite_bp_identity},
  };
  return table;
}

}  // namespace

bool SuiteReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& entry : suites()) out.push_back(entry.first);
    return out;
  }();
  return names;
}

std::vector<SuiteReport> run_verification(std::string_view suite) {
  std::vector<SuiteReport> out;
  for (const auto& [name, fn] : suites()) {
    if (suite == "all" || suite == name) out.push_back(fn());
  }
  if (out.empty()) throw std::invalid_argument("unknown suite '" + std::string(suite) + "'");
  return out;
}

}  // namespace freecsk
