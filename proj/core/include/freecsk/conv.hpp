#pragma once

#include <vector>

#include "freecsk/measure.hpp"

namespace freecsk {

/// kappa_1..kappa_K, the coefficients of R(z) = sum kappa_{n+1} z^n.
struct FreeCumulants {
  std::vector<double> values;
  std::size_t order() const noexcept { return values.size(); }
};

/// b_1..b_K, the coefficients of K(z) = sum b_{n+1} z^-n.
struct BooleanCumulants {
  std::vector<double> values;
  std::size_t order() const noexcept { return values.size(); }
};

FreeCumulants moments_to_free_cumulants(const MomentSeq& m);
MomentSeq free_cumulants_to_moments(const FreeCumulants& kappa);

BooleanCumulants moments_to_boolean_cumulants(const MomentSeq& m);
MomentSeq boolean_cumulants_to_moments(const BooleanCumulants& b);

// Binary operations work at the smaller of the two orders. Results are
// flagged positive when the operation is known to preserve [0, inf), and
// formal when an input is formal or a fractional power below 1 was taken
// where the result need not be a probability measure.

/// Free additive convolution: free cumulants add.
MomentSeq boxplus(const MomentSeq& mu, const MomentSeq& nu);
/// nu^{boxplus alpha}: free cumulants scale by alpha > 0 (formal for alpha < 1).
MomentSeq boxplus_power(const MomentSeq& nu, double alpha);

/// Boolean convolution: Boolean cumulants add.
MomentSeq uplus(const MomentSeq& mu, const MomentSeq& nu);
/// nu^{uplus alpha}, alpha > 0: Boolean cumulants scale by alpha.
MomentSeq uplus_power(const MomentSeq& nu, double alpha);

/// Free multiplicative convolution: S-series multiply. Both inputs must be
/// flagged positive (with nonzero mean).
MomentSeq boxtimes(const MomentSeq& mu, const MomentSeq& nu);
/// nu^{boxtimes alpha}, alpha > 0: S-series raised to alpha (formal for alpha < 1).
MomentSeq boxtimes_power(const MomentSeq& nu, double alpha);

/// D_r: m_n -> r^n m_n, r != 0.
MomentSeq dilate(const MomentSeq& nu, double r);

/// Image under x -> (x - lambda)/beta, beta != 0.
MomentSeq affine_image(const MomentSeq& nu, double beta, double lambda);

/// B_t(nu) = (nu^{boxplus (1+t)})^{uplus 1/(1+t)}, t >= 0.
MomentSeq bp_transform(const MomentSeq& nu, double t);

}  // namespace freecsk
