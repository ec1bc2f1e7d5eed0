#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace freecsk {

/// A partial sum with an estimate of its truncation error.
struct PartialSum {
  double value;
  double error;       ///< |t_{N-1}| + |t_N| for the last two kept terms t_n = c_n z^n
  std::size_t order;  ///< N, the last kept power
};

/// Formal power series c0 + c1 z + ... + cN z^N, known exactly up to order N.
///
/// Binary operations truncate to the smaller operand order. Nothing in this
/// header extends the order of a series: coefficients beyond N are unknown,
/// not zero.
class TruncatedSeries {
 public:
  static constexpr std::size_t kDefaultOrder = 40;

  /// Zero series of the given order.
  explicit TruncatedSeries(std::size_t order = kDefaultOrder);
  /// Takes c0..cN; throws std::invalid_argument on an empty vector.
  explicit TruncatedSeries(std::vector<double> coeffs);
  TruncatedSeries(std::initializer_list<double> coeffs);

  static TruncatedSeries constant(double c, std::size_t order);
  /// The series z.
  static TruncatedSeries identity(std::size_t order);
  /// 1 + z + z^2 + ... + z^N
  static TruncatedSeries geometric(std::size_t order);

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }

  double operator[](std::size_t n) const { return coeffs_[n]; }
  double& operator[](std::size_t n) { return coeffs_[n]; }

  /// Copy truncated to `order` (must not exceed the current order).
  TruncatedSeries truncated(std::size_t order) const;

  /// Partial sum at z (Horner).
  double evaluate(double z) const noexcept;
  std::complex<double> evaluate(std::complex<double> z) const noexcept;

  /// Partial sum stopped where the error estimate is smallest. When the high
  /// coefficients carry rounding noise the terms stop decreasing there, so
  /// this keeps only the orders that still contribute signal.
  PartialSum optimal_sum(double z) const noexcept;

  TruncatedSeries& operator+=(const TruncatedSeries& other);
  TruncatedSeries& operator-=(const TruncatedSeries& other);
  TruncatedSeries& operator*=(double s) noexcept;

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  std::vector<double> coeffs_;
};

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator-(const TruncatedSeries& a);
TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator*(double s, const TruncatedSeries& a);
TruncatedSeries operator*(const TruncatedSeries& a, double s);

namespace series {

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b);
/// Cauchy product.
TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b);

/// a(b(z)). Requires b0 == 0 (DomainError otherwise).
TruncatedSeries compose(const TruncatedSeries& a, const TruncatedSeries& b);

/// Compositional inverse g with a(g(z)) = z, by Newton iteration on series.
/// Requires a0 == 0 and a1 != 0 (DomainError otherwise).
TruncatedSeries revert(const TruncatedSeries& a);

/// 1/a. Requires a0 != 0.
TruncatedSeries reciprocal(const TruncatedSeries& a);
/// a/b. Requires b0 != 0.
TruncatedSeries divide(const TruncatedSeries& a, const TruncatedSeries& b);

/// exp(a); any a0.
TruncatedSeries exp(const TruncatedSeries& a);
/// log(a). Requires a0 > 0.
TruncatedSeries log(const TruncatedSeries& a);
/// a^alpha as exp(alpha log a). Requires a0 > 0.
TruncatedSeries pow(const TruncatedSeries& a, double alpha);

/// Term-by-term derivative; order drops by one. Requires order >= 1.
TruncatedSeries derivative(const TruncatedSeries& a);
/// a(z)/z for a series with a0 == 0; order drops by one.
TruncatedSeries divide_by_z(const TruncatedSeries& a);
/// z a(z) truncated back to the order of a.
TruncatedSeries multiply_by_z(const TruncatedSeries& a);

/// Coefficientwise scaling c_n -> r^n c_n, i.e. a(r z).
TruncatedSeries rescale(const TruncatedSeries& a, double r);

}  // namespace series

}  // namespace freecsk
