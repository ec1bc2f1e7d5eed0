#include "freecsk/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "freecsk/errors.hpp"
#include "freecsk/quadrature.hpp"

namespace freecsk {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------- atomic

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw DomainError("atomic measure needs at least one atom");
  double total = 0.0;
  for (const Atom& a : atoms_) {
    if (!std::isfinite(a.location)) throw DomainError("atom locations must be finite");
    if (!(a.weight > 0.0)) throw DomainError("atom weights must be positive");
    total += a.weight;
  }
  if (std::abs(total - 1.0) > kWeightTolerance) {
    throw DomainError("atom weights must sum to 1 (got " + fmt_double(total) + ")");
  }
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& l, const Atom& r) { return l.location < r.location; });
  for (std::size_t i = 1; i < atoms_.size(); ++i) {
    if (atoms_[i].location == atoms_[i - 1].location) {
      throw DomainError("atoms must be distinct (duplicate at " + fmt_double(atoms_[i].location) +
                        ")");
    }
  }
}

AtomicMeasure::AtomicMeasure(const std::vector<double>& locations,
                             const std::vector<double>& weights)
    : AtomicMeasure([&] {
        if (locations.size() != weights.size()) {
          throw DomainError("atoms and weights must have equal length");
        }
        std::vector<Atom> atoms;
        atoms.reserve(locations.size());
        for (std::size_t i = 0; i < locations.size(); ++i) atoms.push_back({locations[i], weights[i]});
        return atoms;
      }()) {}

// ---------------------------------------------------------------- densities

NamedDensity NamedDensity::semicircle(double center, double variance) {
  if (!std::isfinite(center) || !(variance > 0.0) || !std::isfinite(variance)) {
    throw DomainError("semicircle needs a finite center and a positive variance");
  }
  return NamedDensity(DensityKind::semicircle, center, 2.0 * std::sqrt(variance), variance, 0.0);
}

NamedDensity NamedDensity::marchenko_pastur_centered(double a) {
  if (!(a * a > 0.0) || a * a > 1.0) {
    throw DomainError("marchenko_pastur_centered requires 0 < a^2 <= 1 (got a = " + fmt_double(a) +
                      ")");
  }
  return NamedDensity(DensityKind::marchenko_pastur_centered, a, 2.0, 1.0, a);
}

NamedDensity NamedDensity::free_poisson() {
  return NamedDensity(DensityKind::free_poisson, 2.0, 2.0, 1.0, 0.0);
}

double NamedDensity::mean() const noexcept {
  switch (kind_) {
    case DensityKind::semicircle:
      return center_;
    case DensityKind::marchenko_pastur_centered:
      return 0.0;
    case DensityKind::free_poisson:
      return 1.0;
  }
  return 0.0;
}

double NamedDensity::density(double x) const noexcept {
  if (!(x > support_lo() && x < support_hi())) return 0.0;
  switch (kind_) {
    case DensityKind::semicircle: {
      const double d = x - center_;
      return std::sqrt(4.0 * variance_ - d * d) / (2.0 * kPi * variance_);
    }
    case DensityKind::marchenko_pastur_centered: {
      const double d = x - a_;
      return std::sqrt(4.0 - d * d) / (2.0 * kPi * (1.0 + a_ * x));
    }
    case DensityKind::free_poisson:
      return std::sqrt((4.0 - x) / x) / (2.0 * kPi);
  }
  return 0.0;
}

bool NamedDensity::singular_at_lo() const noexcept {
  switch (kind_) {
    case DensityKind::free_poisson: return true;
    case DensityKind::marchenko_pastur_centered: return a_ == 1.0;
    case DensityKind::semicircle: return false;
  }
  return false;
}

bool NamedDensity::singular_at_hi() const noexcept {
  return kind_ == DensityKind::marchenko_pastur_centered && a_ == -1.0;
}

double NamedDensity::location(double phi) const noexcept {
  return location(std::sin(0.5 * phi), std::cos(0.5 * phi));
}

double NamedDensity::location(double s, double c) const noexcept {
  // Measured from the nearer edge so that z - x stays accurate near it.
  if (s < c) return support_hi() - 2.0 * radius_ * s * s;
  return support_lo() + 2.0 * radius_ * c * c;
}

double NamedDensity::angle_of(double x) const noexcept {
  return std::acos(std::clamp((x - center_) / radius_, -1.0, 1.0));
}

double NamedDensity::angular_weight(double phi) const noexcept {
  return angular_weight(std::sin(0.5 * phi), std::cos(0.5 * phi));
}

double NamedDensity::angular_weight(double s, double c) const noexcept {
  switch (kind_) {
    case DensityKind::semicircle: {
      const double sn = 2.0 * s * c;
      return 2.0 / kPi * sn * sn;
    }
    case DensityKind::free_poisson:
      return 2.0 / kPi * s * s;
    case DensityKind::marchenko_pastur_centered: {
      // sin^2(phi) / (1 + a x) with 1 + a x = 1 + a^2 + 2 a cos(phi), rewritten
      // without cancellation at the edge where it may vanish.
      const double sn2 = 4.0 * s * s * c * c;
      const double denom = a_ > 0.0 ? (1.0 - a_) * (1.0 - a_) + 4.0 * a_ * c * c
                                     : (1.0 + a_) * (1.0 + a_) - 4.0 * a_ * s * s;
      // |a| = 1 leaves a removable 0/0 at one edge.
      if (denom == 0.0) return 2.0 / kPi * (a_ > 0.0 ? s * s : c * c) / std::abs(a_);
      return 2.0 / kPi * sn2 / denom;
    }
  }
  return 0.0;
}

std::string NamedDensity::describe() const {
  switch (kind_) {
    case DensityKind::semicircle:
      return "semicircle(center=" + fmt_double(center_) + ",variance=" + fmt_double(variance_) + ")";
    case DensityKind::marchenko_pastur_centered:
      return "marchenko_pastur_centered(a=" + fmt_double(a_) + ")";
    case DensityKind::free_poisson:
      return "free_poisson";
  }
  return "unknown";
}

// ---------------------------------------------------------------- moment sequences

double MomentSeq::moment(std::size_t n) const {
  if (n == 0) return 1.0;
  if (n > values_.size()) {
    throw InsufficientDataError("moment " + std::to_string(n) + " requested from a sequence of order " +
                                std::to_string(values_.size()));
  }
  return values_[n - 1];
}

double MomentSeq::variance() const {
  const double m1 = moment(1);
  return moment(2) - m1 * m1;
}

MomentSeq MomentSeq::truncated(std::size_t order) const {
  if (order > values_.size()) {
    throw InsufficientDataError("moment sequence of order " + std::to_string(values_.size()) +
                                " cannot supply " + std::to_string(order) + " moments");
  }
  return MomentSeq(std::vector<double>(values_.begin(), values_.begin() + order), positive_, formal_);
}

// ---------------------------------------------------------------- measure

bool Measure::positive() const noexcept {
  return std::visit(Overloaded{
                        [](const AtomicMeasure& m) { return m.atoms().front().location >= 0.0; },
                        [](const NamedDensity& d) { return d.support_lo() >= 0.0; },
                        [](const MomentSeq& s) { return s.positive(); },
                    },
                    rep_);
}

double Measure::mass_at_zero() const noexcept {
  if (const auto* at = atomic()) {
    for (const Atom& a : at->atoms()) {
      if (a.location == 0.0) return a.weight;
    }
  }
  return 0.0;
}

double Measure::support_inf() const noexcept {
  return std::visit(Overloaded{
                        [](const AtomicMeasure& m) { return m.atoms().front().location; },
                        [](const NamedDensity& d) { return d.support_lo(); },
                        [](const MomentSeq& s) { return s.positive() ? 0.0 : -kInf; },
                    },
                    rep_);
}

double Measure::support_sup() const noexcept {
  return std::visit(Overloaded{
                        [](const AtomicMeasure& m) { return m.atoms().back().location; },
                        [](const NamedDensity& d) { return d.support_hi(); },
                        [](const MomentSeq&) { return kInf; },
                    },
                    rep_);
}

double Measure::upper_bound() const noexcept { return std::max(0.0, support_sup()); }
double Measure::lower_bound() const noexcept { return std::min(0.0, support_inf()); }

std::string Measure::describe() const {
  return std::visit(Overloaded{
                        [](const AtomicMeasure& m) {
                          std::string out = "atomic(";
                          for (std::size_t i = 0; i < m.atoms().size(); ++i) {
                            if (i) out += ";";
                            out += fmt_double(m.atoms()[i].location) + ":" +
                                   fmt_double(m.atoms()[i].weight);
                          }
                          return out + ")";
                        },
                        [](const NamedDensity& d) { return d.describe(); },
                        [](const MomentSeq& s) {
                          return "moments(order=" + std::to_string(s.order()) +
                                 (s.positive() ? ",positive" : "") + (s.formal() ? ",formal" : "") +
                                 ")";
                        },
                    },
                    rep_);
}

// ---------------------------------------------------------------- quadrature

namespace {

template <class Value>
Value integrate_density(const NamedDensity& d, const std::function<Value(const SupportPoint&)>& f,
                        const QuadratureOptions& options) {
  // The weights are smooth on [0, pi]; what is left are near-singularities of
  // f close to the support. At the support edges they sit at the ends of the
  // angle range, where tanh-sinh clusters its nodes; an interior one gets a
  // split point so that it becomes an end as well.
  // integrate() is non-const (it extends its abscissa tables lazily), hence one per thread.
  static thread_local boost::math::quadrature::tanh_sinh<double> rule;
  const double diameter = d.support_hi() - d.support_lo();
  auto at = [&](double s, double c) -> Value {
    // x = lo + diameter c^2 = hi - diameter s^2
    const SupportPoint p{d.location(s, c), diameter * c * c, diameter * s * s};
    // Nodes where the weight underflows contribute nothing; skipping them also
    // avoids 0 * inf when z sits exactly on a regular support end.
    const double w = d.angular_weight(s, c);
    if (w < std::numeric_limits<double>::min()) return Value{};
    return f(p) * w;
  };
  // Pieces touching phi = pi run over psi = pi - phi instead, so that the
  // nodes crowding that end are exact and c = sin(psi/2) keeps its digits.
  auto near_zero = [&](double phi) { return at(std::sin(0.5 * phi), std::cos(0.5 * phi)); };
  auto near_pi = [&](double psi) { return at(std::cos(0.5 * psi), std::sin(0.5 * psi)); };

  double cut = 0.5 * kPi;
  if (options.near_point && *options.near_point > d.support_lo() && *options.near_point < d.support_hi()) {
    cut = d.angle_of(*options.near_point);
  }
  Value total{};
  double error = 0.0;
  double l1 = 0.0;
  auto add = [&](const auto& g, double a, double b) {
    if (!(a < b)) return;
    double piece_error = 0.0;
    double piece_l1 = 0.0;
    total += rule.integrate(g, a, b, options.rel_tol, &piece_error, &piece_l1);
    error += piece_error;
    l1 += piece_l1;
  };
  add(near_zero, 0.0, cut);
  add(near_pi, 0.0, kPi - cut);
  const double accepted = std::max(options.abs_tol, options.rel_tol * l1);
  if (!(error <= accepted) || !std::isfinite(std::abs(total))) {
    throw AccuracyError("quadrature over " + d.describe() + " did not converge (error estimate " +
                            fmt_double(error) + ")",
                        std::abs(total), error);
  }
  return total;
}

template <class Value>
Value integrate_impl(const Measure& nu, const std::function<Value(const SupportPoint&)>& f,
                     const QuadratureOptions& options) {
  if (const auto* at = nu.atomic()) {
    const double lo = at->atoms().front().location;
    const double hi = at->atoms().back().location;
    Value sum{};
    for (const Atom& a : at->atoms()) sum += a.weight * f({a.location, a.location - lo, hi - a.location});
    return sum;
  }
  if (const auto* d = nu.density()) return integrate_density<Value>(*d, f, options);
  throw UnsupportedError("a moment sequence cannot be integrated against an arbitrary function");
}

}  // namespace

double quadrature_integrate(const Measure& nu, const std::function<double(double)>& f,
                            const QuadratureOptions& options) {
  return integrate_impl<double>(nu, [&f](const SupportPoint& p) { return f(p.x); }, options);
}

double quadrature_integrate(const Measure& nu, const std::function<double(const SupportPoint&)>& f,
                            const QuadratureOptions& options) {
  return integrate_impl<double>(nu, f, options);
}

std::complex<double> quadrature_integrate_complex(
    const Measure& nu, const std::function<std::complex<double>(double)>& f,
    const QuadratureOptions& options) {
  return integrate_impl<std::complex<double>>(nu, [&f](const SupportPoint& p) { return f(p.x); }, options);
}

std::complex<double> quadrature_integrate_complex(
    const Measure& nu, const std::function<std::complex<double>(const SupportPoint&)>& f,
    const QuadratureOptions& options) {
  return integrate_impl<std::complex<double>>(nu, f, options);
}

// ---------------------------------------------------------------- moments

MomentSeq moments(const Measure& nu, std::size_t order) {
  if (order < 1) throw DomainError("moments: order must be at least 1");
  if (const auto* seq = nu.moment_seq()) return seq->truncated(order);

  std::vector<double> values(order);
  if (const auto* at = nu.atomic()) {
    for (const Atom& a : at->atoms()) {
      double p = 1.0;
      for (std::size_t n = 0; n < order; ++n) {
        p *= a.location;
        values[n] += a.weight * p;
      }
    }
  } else {
    // The first two are known exactly; quadrature would leave m0 = 0 at 1e-17.
    const NamedDensity& d = *nu.density();
    values[0] = d.mean();
    if (order >= 2) values[1] = d.variance() + d.mean() * d.mean();
    for (std::size_t n = 3; n <= order; ++n) {
      const int k = static_cast<int>(n);
      values[n - 1] = quadrature_integrate(nu, [k](double x) { return std::pow(x, k); });
    }
  }
  return MomentSeq(std::move(values), nu.positive());
}

}  // namespace freecsk
