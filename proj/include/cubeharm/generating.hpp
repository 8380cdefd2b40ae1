#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cubeharm/bernoulli.hpp"
#include "cubeharm/invariants.hpp"
#include "cubeharm/rational.hpp"
#include "cubeharm/series.hpp"
#include "cubeharm/unipoly.hpp"

namespace cubeharm {

/// G_1, …, G_m from the Bernoulli recursion
///   G_m = b_m (t+1)^{m−1} + 2t Σ_{i=1}^{m−1} b_{m−i} (t+1)^{m−i−1} G_i,
/// seeded with G_1 = t/2 + 1/6. Element i−1 holds G_i.
inline std::vector<UniPoly> G_sequence(unsigned m_max) {
  std::vector<UniPoly> g;
  if (m_max == 0) return g;
  g.push_back(UniPoly{Rational(1, 6), Rational(1, 2)});
  const UniPoly two_t = UniPoly::monomial(Rational(2), 1);
  for (unsigned m = 2; m <= m_max; ++m) {
    UniPoly acc = t_plus_one_pow(m - 1) * b_scaled(m);
    for (unsigned i = 1; i < m; ++i) acc += two_t * (t_plus_one_pow(m - i - 1) * b_scaled(m - i)) * g[i - 1];
    g.push_back(std::move(acc));
  }
  return g;
}

/// G_m(t) := G_{m,m}(t).
inline UniPoly G_recursive(long m) {
  if (m <= 0) throw std::domain_error("G_recursive: m must be >= 1");
  return G_sequence(static_cast<unsigned>(m)).back();
}

/// G_{n,m}(t) = (t+1)^{n−m} G_m(t), defined for n >= m >= 1.
inline UniPoly G_nm(long n, long m) {
  if (m < 1 || n < m) throw std::domain_error("G_nm: need n >= m >= 1");
  return t_plus_one_pow(static_cast<unsigned>(n - m)) * G_recursive(m);
}

/// Ĝ_{n,m}(t) = t^n G_{n,m}(1/t).
inline UniPoly Ghat_nm(long n, long m) { return G_nm(n, m).reversed(static_cast<std::size_t>(n)); }

/// Weight n!/((n−k)!(2m+k)!) linking c_{n,m}^{(k)} to the coefficient of t^{n−k}.
inline Rational generating_weight(unsigned n, unsigned m, unsigned k) {
  return factorial(n) / (factorial(n - k) * factorial(2 * m + k));
}

/// Reads c_{n,m}^{(k)} off a generating polynomial G_{n,m}.
inline Rational coefficient_from_generating(const UniPoly& g, unsigned n, unsigned m, unsigned k) {
  if (k > n) throw std::domain_error("coefficient_from_generating: k exceeds n");
  return g.coeff(n - k) / generating_weight(n, m, k);
}

/// Supplies c_{n,m}^{(k)} for a fixed route.
using CoefficientProvider = std::function<Rational(unsigned n, unsigned m, unsigned k)>;

/// Σ_k n! c^{(k)}/((n−k)!(2m+k)!) t^{n−k}, with c from the given provider.
inline UniPoly G_from_coefficients(unsigned n, unsigned m, const CoefficientProvider& provider) {
  std::vector<Rational> coeffs(n + 1);
  for (unsigned k = 0; k <= n; ++k) coeffs[n - k] = generating_weight(n, m, k) * provider(n, m, k);
  return UniPoly(std::move(coeffs));
}

/// F_{n,m}(t) = t^n G_{n,m}((1−t)/t) = Σ_j g_j (1−t)^j t^{n−j}.
inline UniPoly F_nm(long n, long m) {
  const UniPoly g = G_nm(n, m);
  const UniPoly one_minus_t{Rational(1), Rational(-1)};
  UniPoly f;
  for (long j = 0; j <= n; ++j) {
    const Rational& gj = g.coeff(static_cast<std::size_t>(j));
    if (gj.is_zero()) continue;
    f += pow(one_minus_t, static_cast<unsigned>(j)) * UniPoly::monomial(gj, static_cast<std::size_t>(n - j));
  }
  return f;
}

/// Solves 2F_m + (t/m)F_m' + ((1−t)²/(m−1))F_{m−1}' = 0 for F_m by matching the
/// coefficient of each t^j:
///   (2 + j/m)·a_j = −[(j+1)f_{j+1} − 2j·f_j + (j−1)f_{j−1}]/(m−1).
/// The value F_m(0) = (2^{2m}−1)b_m is then asserted, not imposed.
inline UniPoly F_via_ode(long m, const UniPoly& prev) {
  if (m < 2) throw std::domain_error("F_via_ode: m must be >= 2");
  const auto mm = static_cast<unsigned>(m);
  const std::size_t top = static_cast<std::size_t>(std::max(prev.degree(), 0L)) + 1;
  std::vector<Rational> a(top + 1);
  for (std::size_t j = 0; j <= top; ++j) {
    Rational rhs = Rational(j + 1) * prev.coeff(j + 1) - Rational(2 * j) * prev.coeff(j);
    if (j >= 1) rhs += Rational(j - 1) * prev.coeff(j - 1);
    const Rational lhs_factor = Rational(2) + Rational(j) / Rational(mm);
    a[j] = -rhs / (Rational(mm - 1) * lhs_factor);
  }
  UniPoly f(std::move(a));
  const Rational expected = (pow2(2 * mm) - Rational(1)) * b_scaled(m);
  if (!(f.constant_term() == expected)) {
    throw InvariantViolation("F_via_ode: F_" + std::to_string(m) + "(0) = " + f.constant_term().to_string() +
                             " but (2^{2m}-1)b_m = " + expected.to_string());
  }
  return f;
}

/// G_m together with its two reparametrisations.
struct GeneratingFamily {
  unsigned m = 0;
  UniPoly G;
  UniPoly Ghat;
  UniPoly F;

  static GeneratingFamily build(unsigned m) {
    GeneratingFamily fam;
    fam.m = m;
    fam.G = G_recursive(m);
    fam.Ghat = fam.G.reversed(m);
    fam.F = F_nm(m, m);
    return fam;
  }

  /// deg G = m, all coefficients of G positive, G(0) = b_m,
  /// Ĝ(0) = F(0) = (2^{2m}−1)b_m.
  [[nodiscard]] bool satisfies_invariants() const {
    if (G.degree() != static_cast<long>(m)) return false;
    for (const auto& c : G.coefficients()) {
      if (c.sign() <= 0) return false;
    }
    const Rational top = (pow2(2 * m) - Rational(1)) * b_scaled(m);
    return G.constant_term() == b_scaled(m) && Ghat.constant_term() == top && F.constant_term() == top;
  }
};

struct IdentityCheck {
  std::string name;
  bool passed = false;
  /// Empty when passed; otherwise names the first differing z-power.
  std::string detail;
};

struct IdentityReport {
  std::size_t order = 0;
  std::vector<IdentityCheck> checks;

  [[nodiscard]] bool all_passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return !checks.empty();
  }
};

namespace detail {

inline IdentityCheck compare_series(std::string name, const PolySeries& lhs, const PolySeries& rhs) {
  IdentityCheck check{std::move(name), true, {}};
  if (auto j = first_difference(lhs, rhs)) {
    check.passed = false;
    check.detail = "z^" + std::to_string(*j) + ": " + lhs[*j].to_string() + " vs " + rhs[*j].to_string();
  }
  return check;
}

/// Σ_{m≥1} (−1)^{m−1} F_m(t)/m · z^{2m}, truncated.
inline PolySeries log_series_from_F(std::size_t order) {
  PolySeries phi(order);
  for (std::size_t j = 2; j <= order; j += 2) {
    const long m = static_cast<long>(j / 2);
    phi[j] = F_nm(m, m) * (sign_power(m - 1) / Rational(m));
  }
  return phi;
}

/// z∂Φ/∂z + (t − (1−t)²z²)∂Φ/∂t − (1−t)z², coefficient-wise.
inline PolySeries pde_residual(const PolySeries& phi) {
  const UniPoly t = UniPoly::t();
  const UniPoly one_minus_t{Rational(1), Rational(-1)};
  const UniPoly one_minus_t_sq = one_minus_t * one_minus_t;
  PolySeries r(phi.order());
  for (std::size_t j = 0; j <= phi.order(); ++j) {
    UniPoly acc = phi[j] * Rational(j) + t * phi[j].derivative();
    if (j >= 2) acc -= one_minus_t_sq * phi[j - 2].derivative();
    if (j == 2) acc -= one_minus_t;
    r[j] = std::move(acc);
  }
  return r;
}

}  // namespace detail

/// Verifies the generating-series identities with exact Q[t] coefficients
/// modulo z^{order+1}:
///  - "g-series": Σ(−1)^{m−1}G_m (z²/(t+1))^m · 2(tz·coth z + 1) = z·coth z + tz² − 1,
///    both sides multiplied by (t+1)^M with M = order/2;
///  - "log-series": log((1−t)cosh z + t·sinh z/z) = Σ(−1)^{m−1}F_m z^{2m}/m;
///  - "pde": zΦ_z + (t − (1−t)²z²)Φ_t = (1−t)z² for both sides of "log-series";
///  - "tanh": Σ(−1)^{m−1}Ĝ_m(0) z^{2m} = (z/2)·tanh z.
inline IdentityReport identity_suite(std::size_t order = kDefaultSeriesOrder) {
  if (order < 4 || order % 2 != 0) throw std::domain_error("identity_suite: order must be even and >= 4");
  IdentityReport report;
  report.order = order;
  const auto big_m = static_cast<unsigned>(order / 2);
  const std::vector<UniPoly> g = G_sequence(big_m);
  const RationalSeries zcoth = coth_series(order);
  const UniPoly t = UniPoly::t();

  {
    PolySeries lhs_factor(order);
    for (unsigned m = 1; m <= big_m; ++m) {
      lhs_factor[2 * m] = g[m - 1] * t_plus_one_pow(big_m - m) * sign_power(static_cast<long>(m) - 1);
    }
    PolySeries denom(order);
    for (std::size_t j = 0; j <= order; ++j) denom[j] = (t * UniPoly(zcoth[j])) * Rational(2);
    denom[0] += UniPoly(Rational(2));
    PolySeries numer(order);
    const UniPoly scale = t_plus_one_pow(big_m);
    for (std::size_t j = 0; j <= order; ++j) numer[j] = UniPoly(zcoth[j]);
    numer[0] -= UniPoly(Rational(1));
    numer[2] += t;
    report.checks.push_back(detail::compare_series("g-series", lhs_factor * denom, numer.times(scale)));
  }

  const PolySeries phi_rhs = detail::log_series_from_F(order);
  PolySeries inner(order);
  {
    const RationalSeries ch = cosh_series(order);
    const RationalSeries sc = sinhc_series(order);
    const UniPoly one_minus_t{Rational(1), Rational(-1)};
    for (std::size_t j = 0; j <= order; ++j) inner[j] = one_minus_t * UniPoly(ch[j]) + t * UniPoly(sc[j]);
  }
  const PolySeries phi_lhs = series_log(inner, order);
  report.checks.push_back(detail::compare_series("log-series", phi_lhs, phi_rhs));

  {
    const PolySeries zero(order);
    IdentityCheck lhs = detail::compare_series("pde", detail::pde_residual(phi_lhs), zero);
    IdentityCheck rhs = detail::compare_series("pde", detail::pde_residual(phi_rhs), zero);
    if (!lhs.passed) {
      lhs.detail = "log side, " + lhs.detail;
      report.checks.push_back(lhs);
    } else if (!rhs.passed) {
      rhs.detail = "F side, " + rhs.detail;
      report.checks.push_back(rhs);
    } else {
      report.checks.push_back(lhs);
    }
  }

  {
    PolySeries lhs(order);
    for (unsigned m = 1; m <= big_m; ++m) {
      lhs[2 * m] = UniPoly(g[m - 1].coeff(m) * sign_power(static_cast<long>(m) - 1));
    }
    const RationalSeries half_z_tanh = tanh_series(order - 1).shifted_up(1).scaled(Rational(1, 2));
    report.checks.push_back(detail::compare_series("tanh", lhs, lift(half_z_tanh)));
  }
  return report;
}

}  // namespace cubeharm
