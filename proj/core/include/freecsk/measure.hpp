#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace freecsk {

struct Atom {
  double location;
  double weight;
};

/// Finitely supported probability measure. Atoms are distinct, weights are
/// positive and sum to one within 1e-12; atoms are kept sorted.
class AtomicMeasure {
 public:
  static constexpr double kWeightTolerance = 1e-12;

  explicit AtomicMeasure(std::vector<Atom> atoms);
  AtomicMeasure(const std::vector<double>& locations, const std::vector<double>& weights);

  static AtomicMeasure dirac(double location) { return AtomicMeasure({{location, 1.0}}); }

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }

 private:
  std::vector<Atom> atoms_;
};

enum class DensityKind { semicircle, marchenko_pastur_centered, free_poisson };

/// One of the closed-form densities with compact support.
///
///   semicircle(c, v):  sqrt(4v - (x-c)^2) / (2 pi v)         on [c - 2 sqrt v, c + 2 sqrt v]
///   marchenko_pastur_centered(a):
///                      sqrt(4 - (x-a)^2) / (2 pi (1 + a x))  on [a - 2, a + 2], 0 < a^2 <= 1
///   free_poisson:      sqrt((4 - x)/x) / (2 pi)              on [0, 4]
class NamedDensity {
 public:
  static NamedDensity semicircle(double center, double variance);
  static NamedDensity marchenko_pastur_centered(double a);
  static NamedDensity free_poisson();

  DensityKind kind() const noexcept { return kind_; }
  double center() const noexcept { return center_; }
  double mean() const noexcept;
  double variance() const noexcept { return variance_; }
  double a() const noexcept { return a_; }

  double support_lo() const noexcept { return center_ - radius_; }
  double support_hi() const noexcept { return center_ + radius_; }

  /// Density value at x (zero outside the support).
  double density(double x) const noexcept;

  /// Whether 1/(z - x) fails to be integrable when z sits exactly on that
  /// support edge (density blows up there).
  bool singular_at_lo() const noexcept;
  bool singular_at_hi() const noexcept;

  /// The density written on the angle variable: x = center + radius cos(phi),
  /// phi in [0, pi], and  dnu = weight(phi) dphi. The weights are smooth,
  /// which removes the square-root and inverse-square-root edge behaviour.
  double location(double phi) const noexcept;
  double angular_weight(double phi) const noexcept;
  /// Same, from s = sin(phi/2) and c = cos(phi/2); lets callers keep full
  /// relative accuracy in whichever of the two is small.
  double location(double s, double c) const noexcept;
  double angular_weight(double s, double c) const noexcept;
  /// Inverse of location() on the support.
  double angle_of(double x) const noexcept;

  std::string describe() const;

 private:
  NamedDensity(DensityKind kind, double center, double radius, double variance, double a)
      : kind_(kind), center_(center), radius_(radius), variance_(variance), a_(a) {}

  DensityKind kind_;
  double center_;
  double radius_;
  double variance_;
  double a_;
};

/// Truncated moment sequence m1..mK (m0 = 1 implicit).
///
/// `positive` records that the underlying measure lives on [0, inf);
/// `formal` marks results of fractional powers that are computed at series
/// level but are not known to be probability measures.
class MomentSeq {
 public:
  MomentSeq() = default;
  explicit MomentSeq(std::vector<double> values, bool positive = false, bool formal = false)
      : values_(std::move(values)), positive_(positive), formal_(formal) {}

  std::size_t order() const noexcept { return values_.size(); }
  /// m_n for n = 0..K (m_0 = 1).
  double moment(std::size_t n) const;
  const std::vector<double>& values() const noexcept { return values_; }

  double mean() const { return moment(1); }
  /// m2 - m1^2
  double variance() const;

  bool positive() const noexcept { return positive_; }
  bool formal() const noexcept { return formal_; }
  MomentSeq with_flags(bool positive, bool formal) const { return MomentSeq(values_, positive, formal); }

  /// First `order` moments; InsufficientDataError if fewer are available.
  MomentSeq truncated(std::size_t order) const;

 private:
  std::vector<double> values_;
  bool positive_ = false;
  bool formal_ = false;
};

/// A probability measure in one of its concrete representations.
class Measure {
 public:
  using Representation = std::variant<AtomicMeasure, NamedDensity, MomentSeq>;

  Measure(AtomicMeasure atomic) : rep_(std::move(atomic)) {}  // NOLINT(google-explicit-constructor)
  Measure(NamedDensity density) : rep_(density) {}            // NOLINT(google-explicit-constructor)
  Measure(MomentSeq moments) : rep_(std::move(moments)) {}    // NOLINT(google-explicit-constructor)

  static Measure dirac(double location) { return AtomicMeasure::dirac(location); }
  static Measure free_poisson() { return NamedDensity::free_poisson(); }
  static Measure semicircle(double center, double variance) {
    return NamedDensity::semicircle(center, variance);
  }
  static Measure marchenko_pastur_centered(double a) {
    return NamedDensity::marchenko_pastur_centered(a);
  }

  const Representation& representation() const noexcept { return rep_; }
  const AtomicMeasure* atomic() const noexcept { return std::get_if<AtomicMeasure>(&rep_); }
  const NamedDensity* density() const noexcept { return std::get_if<NamedDensity>(&rep_); }
  const MomentSeq* moment_seq() const noexcept { return std::get_if<MomentSeq>(&rep_); }

  /// False for bare moment sequences, which cannot be integrated against f.
  bool integrable() const noexcept { return moment_seq() == nullptr; }

  /// Support inside [0, inf).
  bool positive() const noexcept;
  /// delta = nu({0}).
  double mass_at_zero() const noexcept;

  /// inf / sup of the support. Unknown for moment sequences: -inf / +inf,
  /// except that a sequence flagged positive reports inf = 0.
  double support_inf() const noexcept;
  double support_sup() const noexcept;

  /// B(nu) = max(0, sup supp nu) and b(nu) = min(0, inf supp nu).
  double upper_bound() const noexcept;
  double lower_bound() const noexcept;

  std::string describe() const;

 private:
  Representation rep_;
};

/// First K moments of nu. Exact power sums for atomic measures, quadrature for
/// densities, passthrough (InsufficientDataError if too short) for sequences.
MomentSeq moments(const Measure& nu, std::size_t order);

/// Parses the measure-spec schema:
///   {"type":"atomic",  "atoms":[...], "weights":[...]}
///   {"type":"named",   "name":"semicircle"|"marchenko_pastur_centered"|"free_poisson",
///                      "params":{"center":c,"variance":v} | {"a":a}}
///   {"type":"moments", "values":[m1, m2, ...], "positive": bool (optional)}
/// Throws ParseError carrying a byte offset or JSON pointer.
Measure parse_measure_spec(std::string_view text);
Measure load_measure_spec(const std::string& path);

}  // namespace freecsk
