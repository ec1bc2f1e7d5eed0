#include "freecsk/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "freecsk/errors.hpp"

namespace freecsk {

namespace {

using Coeffs = std::vector<double>;

// Raw kernels on coefficient vectors of a common length n. No order
// bookkeeping here; the public wrappers own that.

Coeffs mul_n(const Coeffs& a, const Coeffs& b, std::size_t n) {
  Coeffs out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; i + j < n; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Coeffs recip_n(const Coeffs& a, std::size_t n) {
  Coeffs out(n, 0.0);
  const double inv0 = 1.0 / a[0];
  out[0] = inv0;
  for (std::size_t k = 1; k < n; ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j) s += a[j] * out[k - j];
    out[k] = -s * inv0;
  }
  return out;
}

// a(b(z)) with b[0] == 0, Horner in b.
Coeffs compose_n(const Coeffs& a, const Coeffs& b, std::size_t n) {
  Coeffs out(n, 0.0);
  for (std::size_t k = n; k-- > 0;) {
    out = mul_n(out, b, n);
    out[0] += a[k];
  }
  return out;
}

void require_nonempty(const Coeffs& c) {
  if (c.empty()) throw std::invalid_argument("TruncatedSeries needs at least one coefficient");
}

}  // namespace

TruncatedSeries::TruncatedSeries(std::size_t order) : coeffs_(order + 1, 0.0) {}

TruncatedSeries::TruncatedSeries(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  require_nonempty(coeffs_);
}

TruncatedSeries::TruncatedSeries(std::initializer_list<double> coeffs) : coeffs_(coeffs) {
  require_nonempty(coeffs_);
}

TruncatedSeries TruncatedSeries::constant(double c, std::size_t order) {
  TruncatedSeries s(order);
  s[0] = c;
  return s;
}

TruncatedSeries TruncatedSeries::identity(std::size_t order) {
  TruncatedSeries s(order);
  if (order >= 1) s[1] = 1.0;
  return s;
}

TruncatedSeries TruncatedSeries::geometric(std::size_t order) {
  return TruncatedSeries(std::vector<double>(order + 1, 1.0));
}

TruncatedSeries TruncatedSeries::truncated(std::size_t order) const {
  if (order > this->order()) {
    throw std::invalid_argument("cannot extend a truncated series");
  }
  return TruncatedSeries(std::vector<double>(coeffs_.begin(), coeffs_.begin() + order + 1));
}

double TruncatedSeries::evaluate(double z) const noexcept {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::complex<double> TruncatedSeries::evaluate(std::complex<double> z) const noexcept {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

PartialSum TruncatedSeries::optimal_sum(double z) const noexcept {
  PartialSum best{coeffs_[0], std::abs(coeffs_[0]), 0};
  double sum = coeffs_[0];
  double power = 1.0;
  double previous = std::abs(coeffs_[0]);
  for (std::size_t n = 1; n < coeffs_.size(); ++n) {
    power *= z;
    const double term = coeffs_[n] * power;
    sum += term;
    const double error = previous + std::abs(term);
    previous = std::abs(term);
    if (error <= best.error) best = {sum, error, n};
  }
  return best;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& other) {
  coeffs_.resize(std::min(coeffs_.size(), other.coeffs_.size()));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& other) {
  coeffs_.resize(std::min(coeffs_.size(), other.coeffs_.size()));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(double s) noexcept {
  for (double& c : coeffs_) c *= s;
  return *this;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  TruncatedSeries out = a;
  out += b;
  return out;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
  TruncatedSeries out = a;
  out -= b;
  return out;
}

TruncatedSeries operator-(const TruncatedSeries& a) { return -1.0 * a; }

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  return series::mul(a, b);
}

TruncatedSeries operator*(double s, const TruncatedSeries& a) {
  TruncatedSeries out = a;
  out *= s;
  return out;
}

TruncatedSeries operator*(const TruncatedSeries& a, double s) { return s * a; }

namespace series {

namespace {

Coeffs head(const TruncatedSeries& a, std::size_t n) {
  return Coeffs(a.coeffs().begin(), a.coeffs().begin() + n);
}

}  // namespace

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b) { return a + b; }

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  const std::size_t n = std::min(a.order(), b.order()) + 1;
  return TruncatedSeries(mul_n(head(a, n), head(b, n), n));
}

TruncatedSeries compose(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (b[0] != 0.0) {
    throw DomainError("compose: inner series must have zero constant term");
  }
  const std::size_t n = std::min(a.order(), b.order()) + 1;
  return TruncatedSeries(compose_n(head(a, n), head(b, n), n));
}

TruncatedSeries revert(const TruncatedSeries& a) {
  if (a.order() < 1) throw DomainError("revert: series order must be at least 1");
  if (a[0] != 0.0) throw DomainError("revert: constant term must be zero");
  if (a[1] == 0.0) throw DomainError("revert: linear coefficient must be nonzero");

  const std::size_t n = a.order() + 1;
  const Coeffs ac = head(a, n);

  // a' padded with a zero in the top slot; that slot never reaches the
  // Newton correction because the residual vanishes through order 1.
  Coeffs da(n, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) da[k] = static_cast<double>(k + 1) * ac[k + 1];

  Coeffs g(n, 0.0);
  g[1] = 1.0 / ac[1];

  // Newton: correct order q goes to 2q+1 per step; one extra polishing pass.
  std::size_t correct = 1;
  bool polished = false;
  while (correct < n - 1 || !polished) {
    if (correct >= n - 1) polished = true;
    Coeffs residual = compose_n(ac, g, n);
    residual[1] -= 1.0;
    const Coeffs slope = compose_n(da, g, n);
    const Coeffs step = mul_n(residual, recip_n(slope, n), n);
    for (std::size_t k = 0; k < n; ++k) g[k] -= step[k];
    g[0] = 0.0;
    correct = 2 * correct + 1;
  }
  return TruncatedSeries(std::move(g));
}

TruncatedSeries reciprocal(const TruncatedSeries& a) {
  if (a[0] == 0.0) throw DomainError("reciprocal: constant term must be nonzero");
  const std::size_t n = a.order() + 1;
  return TruncatedSeries(recip_n(head(a, n), n));
}

TruncatedSeries divide(const TruncatedSeries& a, const TruncatedSeries& b) {
  return mul(a, reciprocal(b));
}

TruncatedSeries exp(const TruncatedSeries& a) {
  const std::size_t n = a.order() + 1;
  Coeffs out(n, 0.0);
  out[0] = std::exp(a[0]);
  // b' = a' b  =>  n b_n = sum_k k a_k b_{n-k}
  for (std::size_t k = 1; k < n; ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j) s += static_cast<double>(j) * a[j] * out[k - j];
    out[k] = s / static_cast<double>(k);
  }
  return TruncatedSeries(std::move(out));
}

TruncatedSeries log(const TruncatedSeries& a) {
  if (!(a[0] > 0.0)) throw DomainError("log: constant term must be positive");
  const std::size_t n = a.order() + 1;
  // (log a)' = a'/a, integrated term by term.
  Coeffs out(n, 0.0);
  out[0] = std::log(a[0]);
  if (n == 1) return TruncatedSeries(std::move(out));
  const Coeffs inv = recip_n(head(a, n), n);
  for (std::size_t k = 1; k < n; ++k) {
    // coefficient k-1 of a' * (1/a)
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j) s += static_cast<double>(j) * a[j] * inv[k - j];
    out[k] = s / static_cast<double>(k);
  }
  return TruncatedSeries(std::move(out));
}

TruncatedSeries pow(const TruncatedSeries& a, double alpha) {
  if (!(a[0] > 0.0)) throw DomainError("pow: constant term must be positive");
  return exp(alpha * log(a));
}

TruncatedSeries derivative(const TruncatedSeries& a) {
  if (a.order() < 1) throw DomainError("derivative: order must be at least 1");
  Coeffs out(a.order(), 0.0);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = static_cast<double>(k + 1) * a[k + 1];
  return TruncatedSeries(std::move(out));
}

TruncatedSeries divide_by_z(const TruncatedSeries& a) {
  if (a.order() < 1) throw DomainError("divide_by_z: order must be at least 1");
  if (a[0] != 0.0) throw DomainError("divide_by_z: constant term must be zero");
  return TruncatedSeries(Coeffs(a.coeffs().begin() + 1, a.coeffs().end()));
}

TruncatedSeries multiply_by_z(const TruncatedSeries& a) {
  Coeffs out(a.order() + 1, 0.0);
  for (std::size_t k = 1; k < out.size(); ++k) out[k] = a[k - 1];
  return TruncatedSeries(std::move(out));
}

TruncatedSeries rescale(const TruncatedSeries& a, double r) {
  TruncatedSeries out = a;
  double p = 1.0;
  for (std::size_t k = 0; k <= out.order(); ++k) {
    out[k] *= p;
    p *= r;
  }
  return out;
}

}  // namespace series

}  // namespace freecsk
