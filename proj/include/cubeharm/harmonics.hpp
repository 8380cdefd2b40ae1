#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cubeharm/invariants.hpp"
#include "cubeharm/multipoly.hpp"
#include "cubeharm/rational.hpp"

namespace cubeharm {

/// A k-face of [−1,1]^n: `free` coordinates range over [−1,1], the others
/// are pinned to ±1.
struct CubeFace {
  unsigned n = 0;
  std::vector<unsigned> free;
  std::vector<std::pair<unsigned, int>> fixed;
};

/// Yields the C(n,k)·2^{n−k} faces of dimension k. Free sets advance in
/// lexicographic order; within one free set the signs count up in binary.
class FaceStream {
 public:
  FaceStream(unsigned n, unsigned k) : n_(n), k_(k), done_(k > n) {
    for (unsigned i = 0; i < k && !done_; ++i) free_.push_back(i);
  }

  std::optional<CubeFace> next() {
    if (done_) return std::nullopt;
    CubeFace face;
    face.n = n_;
    face.free = free_;
    std::size_t bit = 0;
    for (unsigned i = 0, f = 0; i < n_; ++i) {
      if (f < free_.size() && free_[f] == i) {
        ++f;
        continue;
      }
      face.fixed.emplace_back(i, ((signs_ >> bit) & 1U) ? 1 : -1);
      ++bit;
    }
    advance();
    return face;
  }

 private:
  void advance() {
    if (++signs_ < (1ULL << (n_ - k_))) return;
    signs_ = 0;
    // Next k-subset of {0..n−1}.
    std::size_t i = k_;
    while (i > 0 && free_[i - 1] == n_ - k_ + i - 1) --i;
    if (i == 0) {
      done_ = true;
      return;
    }
    ++free_[i - 1];
    for (std::size_t j = i; j < k_; ++j) free_[j] = free_[j - 1] + 1;
  }

  unsigned n_;
  unsigned k_;
  std::vector<unsigned> free_;
  unsigned long long signs_ = 0;
  bool done_;
};

inline FaceStream enum_faces(unsigned n, unsigned k) {
  if (k > n) throw std::domain_error("enum_faces: need 0 <= k <= n");
  return FaceStream(n, k);
}

namespace detail {

/// Average of y^b over the k-skeleton, memoized per exponent vector.
class SkeletonMoments {
 public:
  SkeletonMoments(unsigned n, unsigned k) {
    auto stream = enum_faces(n, k);
    while (auto f = stream.next()) faces_.push_back(std::move(*f));
    measure_ = binomial(n, k) * pow2(n);
  }

  const Rational& operator()(const Exponents& b) {
    auto it = cache_.find(b);
    if (it != cache_.end()) return it->second;
    Rational sum;
    for (const auto& face : faces_) {
      Rational term(1);
      for (unsigned i : face.free) {
        if (b[i] % 2 != 0) {
          term = Rational(0);
          break;
        }
        term *= Rational(2, static_cast<long>(b[i]) + 1);
      }
      if (term.is_zero()) continue;
      for (const auto& [i, s] : face.fixed) {
        if (s < 0 && b[i] % 2 != 0) term = -term;
      }
      sum += term;
    }
    return cache_.emplace(b, sum / measure_).first->second;
  }

 private:
  std::vector<CubeFace> faces_;
  Rational measure_;
  std::map<Exponents, Rational> cache_;
};

/// Calls fn(b) for every b with 0 <= b_i <= a_i.
template <class Fn>
void for_each_sub_exponent(const Exponents& a, Fn&& fn) {
  Exponents b(a.size(), 0);
  while (true) {
    fn(b);
    std::size_t i = 0;
    while (i < a.size() && b[i] == a[i]) b[i++] = 0;
    if (i == a.size()) return;
    ++b[i];
  }
}

}  // namespace detail

/// (1/|C(k)|)∫_{C(k)} f(x + r·y) dμ_k(y) as a polynomial in (x_1, …, x_n, r);
/// r is the last variable.
inline MultiPoly skeleton_average(const MultiPoly& f, unsigned n, unsigned k) {
  if (f.variable_count() != n) throw std::invalid_argument("skeleton_average: f must have n variables");
  if (k > n) throw std::domain_error("skeleton_average: need 0 <= k <= n");
  detail::SkeletonMoments moments(n, k);
  MultiPoly out(n + 1);
  for (const auto& [a, c] : f.terms()) {
    detail::for_each_sub_exponent(a, [&](const Exponents& b) {
      const Rational& mom = moments(b);
      if (mom.is_zero()) return;
      Rational coef = c * mom;
      Exponents e(n + 1, 0);
      for (unsigned i = 0; i < n; ++i) {
        coef *= binomial(a[i], b[i]);
        e[i] = a[i] - b[i];
        e[n] += b[i];
      }
      out.add_term(std::move(e), coef);
    });
  }
  return out;
}

struct MvpReport {
  MultiPoly f;
  unsigned n = 0;
  unsigned k = 0;
  /// skeleton_average(f) − f, in (x, r).
  MultiPoly residual;
  bool holds = false;
};

/// Mean value property over the k-skeleton, as an identity in (x, r).
inline MvpReport mvp_check(const MultiPoly& f, unsigned n, unsigned k) {
  MvpReport report{f, n, k, skeleton_average(f, n, k) - f.extended(n + 1), false};
  report.holds = report.residual.is_zero();
  return report;
}

/// Greedy independent set of homogeneous polynomials of one degree, kept in
/// echelon form keyed by leading monomial.
class EchelonBasis {
 public:
  /// Adds p when it is independent of the current span.
  bool insert(const MultiPoly& p) {
    MultiPoly r = reduce(p);
    if (r.is_zero()) return false;
    auto lead = r.terms().begin();
    const Rational inv = lead->second.inverse();
    Exponents key = lead->first;
    r *= inv;
    pivots_.emplace(std::move(key), std::move(r));
    members_.push_back(p);
    return true;
  }

  [[nodiscard]] bool contains(const MultiPoly& p) const { return reduce(p).is_zero(); }
  [[nodiscard]] std::size_t size() const { return members_.size(); }
  [[nodiscard]] const std::vector<MultiPoly>& members() const { return members_; }

 private:
  [[nodiscard]] MultiPoly reduce(MultiPoly r) const {
    while (true) {
      const MultiPoly* pivot = nullptr;
      Rational c;
      for (const auto& [e, coef] : r.terms()) {
        auto it = pivots_.find(e);
        if (it != pivots_.end()) {
          pivot = &it->second;
          c = coef;
          break;
        }
      }
      if (pivot == nullptr) return r;
      r -= *pivot * c;
    }
  }

  std::map<Exponents, MultiPoly, GrlexGreater> pivots_;
  std::vector<MultiPoly> members_;
};

/// The span of all ∂^αΔ, one echelon basis per degree.
struct DerivativeModule {
  unsigned n = 0;
  /// Indexed by degree 0..n².
  std::vector<EchelonBasis> by_degree;

  [[nodiscard]] std::size_t dimension() const {
    std::size_t d = 0;
    for (const auto& b : by_degree) d += b.size();
    return d;
  }

  [[nodiscard]] std::vector<MultiPoly> basis() const {
    std::vector<MultiPoly> out;
    for (auto it = by_degree.rbegin(); it != by_degree.rend(); ++it) {
      out.insert(out.end(), it->members().begin(), it->members().end());
    }
    return out;
  }
};

inline constexpr unsigned kHarmonicsDefaultMaxN = 3;

namespace detail {

inline void check_harmonics_n(unsigned n, bool allow_n4, const char* who) {
  if (n == 0) throw std::domain_error(std::string(who) + ": n must be >= 1");
  const unsigned bound = allow_n4 ? 4 : kHarmonicsDefaultMaxN;
  if (n > bound) throw ResourceError(std::string(who) + ": n = " + std::to_string(n) + " exceeds the bound " + std::to_string(bound));
}

}  // namespace detail

/// Differentiates Δ by every α with |α| <= n² and keeps a maximal
/// independent set in each degree.
inline DerivativeModule derivative_module(unsigned n, bool allow_n4 = false) {
  detail::check_harmonics_n(n, allow_n4, "derivative_module");
  const MultiPoly delta = delta_poly(n);
  const unsigned top = n * n;
  DerivativeModule mod;
  mod.n = n;
  mod.by_degree.resize(top + 1);
  Exponents bound(n, top);
  detail::for_each_sub_exponent(bound, [&](const Exponents& alpha) {
    const unsigned order = total_degree(alpha);
    if (order > top) return;
    MultiPoly d = delta.derivative(alpha);
    if (!d.is_zero()) mod.by_degree[top - order].insert(d);
  });
  return mod;
}

inline std::size_t derivative_module_dimension(unsigned n, bool allow_n4 = false) {
  return derivative_module(n, allow_n4).dimension();
}

/// True when τ_{2m}^{(k)}(∂) kills Δ.
inline bool annihilation_check(unsigned n, unsigned m, unsigned k, bool allow_n4 = false) {
  detail::check_harmonics_n(n, allow_n4, "annihilation_check");
  if (m < 1 || m > n) throw std::domain_error("annihilation_check: need 1 <= m <= n");
  if (k > n) throw std::domain_error("annihilation_check: need 0 <= k <= n");
  const MultiPoly delta = delta_poly(n);
  const MultiPoly tau = tau_poly(n, k, 2 * m);
  MultiPoly result(n);
  for (const auto& [beta, c] : tau.terms()) result += delta.derivative(beta) * c;
  return result.is_zero();
}

struct HarmonicSuiteReport {
  unsigned n = 0;
  std::size_t dimension = 0;
  std::vector<MultiPoly> basis;
  /// (basis index, k) of every failed mean value check.
  std::vector<std::pair<std::size_t, unsigned>> mvp_failures;
  /// Basis indices whose partial derivatives leave the span.
  std::vector<std::size_t> closure_failures;

  [[nodiscard]] bool passed() const { return mvp_failures.empty() && closure_failures.empty(); }
};

/// Checks the mean value property for every basis element of the derivative
/// module of Δ and every k = 0..n, and that each ∂_i maps the basis back into
/// its span.
inline HarmonicSuiteReport harmonic_basis_mvp_suite(unsigned n, bool allow_n4 = false) {
  const DerivativeModule mod = derivative_module(n, allow_n4);
  HarmonicSuiteReport report;
  report.n = n;
  report.dimension = mod.dimension();
  report.basis = mod.basis();
  for (std::size_t idx = 0; idx < report.basis.size(); ++idx) {
    const MultiPoly& b = report.basis[idx];
    for (unsigned k = 0; k <= n; ++k) {
      if (!mvp_check(b, n, k).holds) report.mvp_failures.emplace_back(idx, k);
    }
    const long deg = b.degree();
    for (unsigned i = 0; i < n; ++i) {
      MultiPoly d = b.derivative(i);
      if (d.is_zero()) continue;
      if (deg < 1 || !mod.by_degree[static_cast<std::size_t>(deg - 1)].contains(d)) {
        report.closure_failures.push_back(idx);
        break;
      }
    }
  }
  return report;
}

}  // namespace cubeharm
