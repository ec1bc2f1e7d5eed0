#pragma once

#include <complex>

#include "freecsk/measure.hpp"
#include "freecsk/numerics.hpp"
#include "freecsk/series.hpp"

namespace freecsk {

/// A transform value together with how much it can be trusted.
struct TransformPoint {
  std::complex<double> z;
  std::complex<double> value;
  /// Computed from a truncated series (moment sequences) rather than the measure.
  bool approximate = false;
  /// Truncated series evaluated where its partial sums are not trusted.
  bool outside_validity = false;
};

/// |z| beyond which the truncated Laurent series of G is trusted:
/// 2 (1 + max_n |m_n|^(1/n)).
double laurent_validity_radius(const MomentSeq& m);

/// G(z) = int 1/(z - x) dnu, with flags. Moment sequences use the truncated
/// Laurent sum  sum_{n=0}^K m_n z^-(n+1). SingularityError for z on the support.
TransformPoint cauchy_transform(const Measure& nu, std::complex<double> z);
std::complex<double> cauchy_G(const Measure& nu, std::complex<double> z);
double cauchy_G(const Measure& nu, double x);

/// (theta_-, theta_+) = (1/b, 1/B), with infinite ends when b = 0 or B = 0.
/// For moment sequences, the disc where the moment series is trusted.
Interval theta_range(const Measure& nu);

/// M(theta) = int 1/(1 - theta x) dnu, theta in theta_range (DomainError otherwise).
double m_transform(const Measure& nu, double theta);

/// Psi(z) = int z x / (1 - z x) dnu. Requires a positive measure.
std::complex<double> psi_transform(const Measure& nu, std::complex<double> z);
double psi_transform(const Measure& nu, double z);

/// The z < 0 with Psi(z) = w, for w in (delta - 1, 0).
double chi_inverse(const Measure& nu, double w);

/// S(w) = chi(w) (1 + w) / w on (delta - 1, 0], with S(0) = 1/m0.
double s_transform(const Measure& nu, double w);

/// Sigma(z) = S(z / (1 - z)).
double sigma_transform(const Measure& nu, double z);

/// R(z) = G^{-1}(z) - 1/z, with G inverted on the real axis outside the support.
double r_transform(const Measure& nu, double z);

/// K(z) = z - 1/G(z).
std::complex<double> k_transform(const Measure& nu, std::complex<double> z);
double k_transform(const Measure& nu, double x);

// ---------------------------------------------------------------- series pipelines
//
// All of these take a moment sequence m1..mK and produce coefficient series
// that carry the same information; each has an exact inverse.

/// S as a power series in w: Psi = sum m_n z^n, reverted to chi, times (1+w)/w.
/// Order K-1. DomainError when m1 = 0.
TruncatedSeries s_series(const MomentSeq& m);
/// Inverse of s_series; the S-series of order N yields N+1 moments.
MomentSeq moments_from_s_series(const TruncatedSeries& s, bool positive = false, bool formal = false);

/// Sigma(z) = S(z/(1-z)) and back, at series level.
TruncatedSeries sigma_series_from_s(const TruncatedSeries& s);
TruncatedSeries s_series_from_sigma(const TruncatedSeries& sigma);

/// R(z) = kappa_1 + kappa_2 z + ... + kappa_K z^(K-1).
TruncatedSeries r_series(const MomentSeq& m);
MomentSeq moments_from_r_series(const TruncatedSeries& r);

/// K as a series in u = 1/z: b_1 + b_2 u + ... + b_K u^(K-1).
TruncatedSeries k_series(const MomentSeq& m);
MomentSeq moments_from_k_series(const TruncatedSeries& k);

}  // namespace freecsk
