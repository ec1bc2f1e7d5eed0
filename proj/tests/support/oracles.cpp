#include "oracles.hpp"

#include <cmath>
#include <functional>
#include <map>

namespace oracle {

// ---------------------------------------------------------------- partitions

std::vector<std::vector<int>> set_partitions(int n) {
  // Restricted growth strings: a[0] = 0, a[i] <= 1 + max(a[0..i-1]).
  std::vector<std::vector<int>> out;
  std::vector<int> a(n, 0);
  std::function<void(int, int)> rec = [&](int i, int max_block) {
    if (i == n) {
      out.push_back(a);
      return;
    }
    for (int b = 0; b <= max_block + 1; ++b) {
      a[i] = b;
      rec(i + 1, std::max(max_block, b));
    }
  };
  if (n == 0) return {{}};
  a[0] = 0;
  rec(1, 0);
  return out;
}

bool is_noncrossing(const std::vector<int>& blocks) {
  const int n = static_cast<int>(blocks.size());
  // a < b < c < d with a, c in one block and b, d in another is a crossing.
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int d = c + 1; d < n; ++d)
          if (blocks[a] == blocks[c] && blocks[b] == blocks[d] && blocks[a] != blocks[b]) return false;
  return true;
}

bool is_interval(const std::vector<int>& blocks) {
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = i + 1; j < blocks.size(); ++j)
      for (std::size_t k = i + 1; k < j; ++k)
        if (blocks[i] == blocks[j] && blocks[k] != blocks[i]) return false;
  return true;
}

std::vector<int> block_sizes(const std::vector<int>& blocks) {
  std::map<int, int> count;
  for (int b : blocks) ++count[b];
  std::vector<int> out;
  for (const auto& [b, c] : count) out.push_back(c);
  return out;
}

namespace {

using Filter = bool (*)(const std::vector<int>&);

std::vector<double> cumulants_by_partitions(const std::vector<double>& m, Filter keep) {
  const int N = static_cast<int>(m.size());
  std::vector<double> k(N + 1, 0.0);
  for (int n = 1; n <= N; ++n) {
    double rest = 0.0;
    for (const auto& p : set_partitions(n)) {
      if (!keep(p)) continue;
      const std::vector<int> sizes = block_sizes(p);
      if (sizes.size() == 1) continue;  // the one-block partition carries k_n
      double prod = 1.0;
      for (int s : sizes) prod *= k[s];
      rest += prod;
    }
    k[n] = m[n - 1] - rest;
  }
  return {k.begin() + 1, k.end()};
}

std::vector<double> moments_by_partitions(const std::vector<double>& k, Filter keep) {
  const int N = static_cast<int>(k.size());
  std::vector<double> m(N, 0.0);
  for (int n = 1; n <= N; ++n) {
    for (const auto& p : set_partitions(n)) {
      if (!keep(p)) continue;
      double prod = 1.0;
      for (int s : block_sizes(p)) prod *= k[s - 1];
      m[n - 1] += prod;
    }
  }
  return m;
}

}  // namespace

std::vector<double> free_cumulants_by_partitions(const std::vector<double>& moments) {
  return cumulants_by_partitions(moments, is_noncrossing);
}

std::vector<double> boolean_cumulants_by_partitions(const std::vector<double>& moments) {
  return cumulants_by_partitions(moments, is_interval);
}

std::vector<double> moments_from_free_cumulants(const std::vector<double>& kappa) {
  return moments_by_partitions(kappa, is_noncrossing);
}

std::vector<double> moments_from_boolean_cumulants(const std::vector<double>& b) {
  return moments_by_partitions(b, is_interval);
}

// ---------------------------------------------------------------- series

Poly poly_mul(const Poly& a, const Poly& b, std::size_t order) {
  Poly c(order + 1, 0.0);
  for (std::size_t i = 0; i < a.size() && i <= order; ++i)
    for (std::size_t j = 0; j < b.size() && i + j <= order; ++j) c[i + j] += a[i] * b[j];
  return c;
}

Poly poly_substitute(const Poly& a, const Poly& b, std::size_t order) {
  Poly out(order + 1, 0.0);
  Poly power(order + 1, 0.0);
  power[0] = 1.0;
  for (std::size_t k = 0; k < a.size() && k <= order; ++k) {
    for (std::size_t i = 0; i <= order; ++i) out[i] += a[k] * power[i];
    power = poly_mul(power, b, order);
  }
  return out;
}

Poly poly_reciprocal(const Poly& a, std::size_t order) {
  Poly r(order + 1, 0.0);
  r[0] = 1.0 / a[0];
  for (std::size_t n = 1; n <= order; ++n) {
    double s = 0.0;
    for (std::size_t k = 1; k <= n && k < a.size(); ++k) s += a[k] * r[n - k];
    r[n] = -s / a[0];
  }
  return r;
}

Poly lagrange_inverse(const Poly& a, std::size_t order) {
  // a(z)/z = a1 + a2 z + ...
  Poly shifted(order, 0.0);
  for (std::size_t k = 1; k <= order && k < a.size(); ++k) shifted[k - 1] = a[k];
  const Poly phi = poly_reciprocal(shifted, order - 1);  // z / a(z)
  Poly g(order + 1, 0.0);
  Poly power(order, 0.0);
  power[0] = 1.0;
  for (std::size_t n = 1; n <= order; ++n) {
    power = poly_mul(power, phi, order - 1);
    g[n] = power[n - 1] / static_cast<double>(n);
  }
  return g;
}

Poly random_admissible(std::mt19937_64& rng, std::size_t order) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> lead(1.0, 2.0);
  Poly a(order + 1, 0.0);
  a[1] = lead(rng) * (coef(rng) < 0.0 ? -1.0 : 1.0);
  for (std::size_t k = 2; k <= order; ++k) a[k] = coef(rng) * std::pow(3.0, 1.0 - static_cast<double>(k));
  return a;
}

Poly to_poly(const freecsk::TruncatedSeries& s) { return Poly(s.coeffs().begin(), s.coeffs().end()); }

// ---------------------------------------------------------------- closed forms

double catalan(int n) { return fuss_catalan(1, n); }

double fuss_catalan(int s, int n) {
  // C((s+1) n, n) / (s n + 1), built as a running product.
  double c = 1.0;
  for (int i = 1; i <= n; ++i) c = c * static_cast<double>(s * n + i) / static_cast<double>(i);
  return c / static_cast<double>(s * n + 1);
}

std::complex<double> free_poisson_G(std::complex<double> z) {
  const std::complex<double> s = std::sqrt(z) * std::sqrt(z - 4.0);
  return (z - s) / (2.0 * z);
}

std::complex<double> semicircle_G(std::complex<double> z, double center, double variance) {
  const double r = 2.0 * std::sqrt(variance);
  const std::complex<double> u = z - center;
  return (u - std::sqrt(u - r) * std::sqrt(u + r)) / (2.0 * variance);
}

std::vector<double> semicircle_moments(double variance, int order) {
  std::vector<double> m(order, 0.0);
  for (int n = 2; n <= order; n += 2) m[n - 1] = catalan(n / 2) * std::pow(variance, n / 2);
  return m;
}

std::vector<double> atomic_moments(const std::vector<double>& x, const std::vector<double>& w, int order) {
  std::vector<double> m(order, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    double p = 1.0;
    for (int n = 0; n < order; ++n) {
      p *= x[i];
      m[n] += w[i] * p;
    }
  }
  return m;
}

RandomAtomic random_atomic(std::mt19937_64& rng, int atoms, double lo, double hi) {
  std::uniform_real_distribution<double> loc(lo, hi);
  std::uniform_real_distribution<double> wt(0.05, 1.0);
  RandomAtomic out;
  double total = 0.0;
  for (int i = 0; i < atoms; ++i) {
    out.x.push_back(loc(rng));
    out.w.push_back(wt(rng));
    total += out.w.back();
  }
  for (double& w : out.w) w /= total;
  return out;
}

namespace {

Poly exp_taylor(double scale, std::size_t order) {
  Poly e(order + 1, 0.0);
  double term = 1.0;
  for (std::size_t k = 0; k <= order; ++k) {
    e[k] = term;
    term *= scale / static_cast<double>(k + 1);
  }
  return e;
}

std::vector<double> moments_from_S(const Poly& S, int order) {
  // chi(w) = w S(w) / (1 + w); Psi = chi^{-1}; m_n = [z^n] Psi.
  const std::size_t K = static_cast<std::size_t>(order);
  Poly inv_one_plus_w(K + 1, 0.0);
  for (std::size_t k = 0; k <= K; ++k) inv_one_plus_w[k] = (k % 2 == 0) ? 1.0 : -1.0;
  const Poly q = poly_mul(S, inv_one_plus_w, K);
  Poly chi(K + 1, 0.0);
  for (std::size_t k = 1; k <= K; ++k) chi[k] = q[k - 1];
  const Poly psi = lagrange_inverse(chi, K);
  return {psi.begin() + 1, psi.end()};
}

}  // namespace

std::vector<double> eta_moments(double gamma, int order) {
  return moments_from_S(exp_taylor(-gamma, static_cast<std::size_t>(order)), order);
}

std::vector<double> sigma_moments(double gamma, int order) {
  const std::size_t K = static_cast<std::size_t>(order);
  Poly u(K + 1, 0.0);  // w / (1 + w)
  for (std::size_t k = 1; k <= K; ++k) u[k] = (k % 2 == 1) ? 1.0 : -1.0;
  return moments_from_S(poly_substitute(exp_taylor(-gamma, K), u, K), order);
}

}  // namespace oracle
