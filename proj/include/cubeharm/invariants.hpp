#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubeharm/combinatorics.hpp"
#include "cubeharm/multipoly.hpp"
#include "cubeharm/rational.hpp"
#include "cubeharm/rational_matrix.hpp"

namespace cubeharm {

/// Raised when a symbolic computation would exceed the configured term budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a proven structural property fails to hold at run time; always
/// indicates a bug rather than bad input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr std::size_t kDefaultTermBudget = 250000;

/// Maximum number of polynomial terms the symbolic oracle may build.
/// Overridable through the CUBEHARM_TERM_BUDGET environment variable.
inline std::size_t term_budget() {
  if (const char* env = std::getenv("CUBEHARM_TERM_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultTermBudget;
}

/// H_m(args) = Σ over ordered partitions (m_1..m_j) of m of Π args_i^{m_i}.
inline MultiPoly complete_symmetric(unsigned degree, const std::vector<MultiPoly>& args) {
  if (args.empty()) throw std::invalid_argument("complete_symmetric: need at least one argument");
  const std::size_t vars = args.front().variable_count();
  std::vector<std::vector<MultiPoly>> powers(args.size());
  for (std::size_t i = 0; i < args.size(); ++i) {
    powers[i].push_back(MultiPoly::constant(vars, Rational(1)));
    for (unsigned e = 1; e <= degree; ++e) powers[i].push_back(powers[i].back() * args[i]);
  }
  MultiPoly sum(vars);
  auto stream = enum_ordered_partitions(degree, static_cast<unsigned>(args.size()));
  while (auto nu = stream.next()) {
    MultiPoly term = powers[0][(*nu)[0]];
    for (std::size_t i = 1; i < args.size(); ++i) {
      if ((*nu)[i] != 0) term *= powers[i][(*nu)[i]];
    }
    sum += term;
  }
  return sum;
}

/// Tail sum x_i + … + x_n (0-based start index); zero when start == n.
inline MultiPoly tail_sum(std::size_t n, std::size_t start) {
  MultiPoly s(n);
  for (std::size_t j = start; j < n; ++j) s += MultiPoly::variable(n, j);
  return s;
}

/// h_m^{(k)}(x) = H_m^{(k+1)}(x_1+…+x_n, x_2+…+x_n, …, x_{k+1}+…+x_n).
inline MultiPoly h_poly(unsigned n, unsigned k, unsigned m) {
  if (n == 0 || k > n) throw std::domain_error("h_poly: need n >= 1 and 0 <= k <= n");
  std::vector<MultiPoly> args;
  for (unsigned i = 0; i <= k; ++i) args.push_back(tail_sum(n, i));
  return complete_symmetric(m, args);
}

/// (A𝟏)!/A!: product of row-sum factorials over product of entry factorials.
inline Rational multinomial_weight(const QuadMatrix& a) {
  mpz_class num = 1;
  mpz_class den = 1;
  for (unsigned i = 0; i < a.rows(); ++i) {
    num *= factorial_z(a.row_sum(i));
    for (unsigned j = i; j < a.cols(); ++j) den *= factorial_z(a.at(i, j));
  }
  return Rational(num, den);
}

/// Sign symmetrization of h_m^{(k)}, computed as the sum over upper
/// quadrilateral matrices with even column sums of (A𝟏)!/A!·x^{column sums}.
/// Vanishes for odd m.
inline MultiPoly g_poly(unsigned n, unsigned k, unsigned m) {
  if (n == 0 || k > n) throw std::domain_error("g_poly: need n >= 1 and 0 <= k <= n");
  MultiPoly g(n);
  if (m % 2 != 0) return g;
  auto stream = enum_matrices_even(n, k, m);
  while (auto a = stream.next()) {
    g.add_term(a->col_sums(), multinomial_weight(*a));
  }
  return g;
}

/// S_n average of p, by monomial orbits: the coefficients over one orbit are
/// pooled and spread evenly across its distinct permutations.
inline MultiPoly symmetrize(const MultiPoly& p) {
  const std::size_t n = p.variable_count();
  std::map<Exponents, Rational> pooled;
  for (const auto& [e, c] : p.terms()) {
    Exponents key = e;
    std::sort(key.begin(), key.end());
    pooled[key] += c;
  }
  MultiPoly out(n);
  for (auto& [key, total] : pooled) {
    if (total.is_zero()) continue;
    std::vector<Exponents> orbit;
    Exponents perm = key;
    do {
      orbit.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    const Rational share = total / Rational(orbit.size());
    for (auto& e : orbit) out.add_term(std::move(e), share);
  }
  return out;
}

/// τ^{(k)}_{degree}: the W_n average of h^{(k)}_{degree}. Zero for odd degree.
inline MultiPoly tau_poly(unsigned n, unsigned k, unsigned degree) {
  return symmetrize(g_poly(n, k, degree));
}

/// e_{2m}(x): m-th elementary symmetric polynomial of x_1², …, x_n².
inline MultiPoly elementary_symmetric_sq(unsigned n, unsigned m) {
  if (n == 0) throw std::domain_error("elementary_symmetric_sq: n must be >= 1");
  if (m < 1 || m > n) throw std::domain_error("elementary_symmetric_sq: need 1 <= m <= n");
  MultiPoly e(n);
  std::vector<unsigned> exps(n, 0);
  std::fill(exps.begin(), exps.begin() + m, 2U);
  std::sort(exps.begin(), exps.end());
  do {
    e.add_term(exps, Rational(1));
  } while (std::next_permutation(exps.begin(), exps.end()));
  return e;
}

/// Δ(x) = x_1⋯x_n Π_{i<j} (x_i² − x_j²), of degree n².
inline MultiPoly delta_poly(unsigned n) {
  if (n == 0) throw std::domain_error("delta_poly: n must be >= 1");
  MultiPoly d = MultiPoly::constant(n, Rational(1));
  for (unsigned i = 0; i < n; ++i) d *= MultiPoly::variable(n, i);
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = i + 1; j < n; ++j) {
      Exponents a(n, 0);
      Exponents b(n, 0);
      a[i] = 2;
      b[j] = 2;
      MultiPoly diff(n);
      diff.add_term(a, Rational(1));
      diff.add_term(b, Rational(-1));
      d *= diff;
    }
  }
  return d;
}

/// τ_{2m}^{(k)} = c·e_{2m} + P(e_2, …, e_{2m−2}).
struct InvariantExpansion {
  unsigned n = 0;
  unsigned m = 0;
  unsigned k = 0;
  /// c_{n,m}^{(k)}.
  Rational leading;
  /// Keyed by the exponents of (e_2, e_4, …, e_{2m−2}); only nonzero entries.
  std::map<std::vector<unsigned>, Rational> lower_terms;

  /// Rebuilds c·e_{2m} + Σ coefficient·Π e_{2i}^{a_i} as a polynomial in x.
  [[nodiscard]] MultiPoly reconstruct() const {
    MultiPoly out = elementary_symmetric_sq(n, m) * leading;
    for (const auto& [exps, c] : lower_terms) {
      MultiPoly term = MultiPoly::constant(n, c);
      for (std::size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] != 0) term *= pow(elementary_symmetric_sq(n, static_cast<unsigned>(i + 1)), exps[i]);
      }
      out += term;
    }
    return out;
  }
};

/// Expresses τ_{2m}^{(k)} in the basis of weighted e-monomials of weight 2m
/// (indexed by partitions of m) by solving an exact linear system in monomial
/// coordinates. The leading coefficient is c_{n,m}^{(k)}.
inline InvariantExpansion expand_in_invariant_basis(unsigned n, unsigned m, unsigned k,
                                                    std::size_t budget = term_budget()) {
  if (m < 1 || m > n) throw std::domain_error("expand_in_invariant_basis: need 1 <= m <= n");
  if (k > n) throw std::domain_error("expand_in_invariant_basis: need 0 <= k <= n");
  const MultiPoly tau = tau_poly(n, k, 2 * m);
  if (tau.term_count() > budget) {
    throw ResourceError("expand_in_invariant_basis: tau has " + std::to_string(tau.term_count()) +
                        " terms, over the budget of " + std::to_string(budget));
  }

  std::vector<YoungDiagram> basis_index;
  std::vector<MultiPoly> basis;
  std::vector<MultiPoly> e_polys;
  for (unsigned i = 1; i <= m; ++i) e_polys.push_back(elementary_symmetric_sq(n, i));
  std::size_t used_terms = tau.term_count();
  auto partitions = enum_young(m, m);
  while (auto lambda = partitions.next()) {
    MultiPoly prod = MultiPoly::constant(n, Rational(1));
    for (unsigned part : lambda->parts()) prod *= e_polys[part - 1];
    used_terms += prod.term_count();
    if (used_terms > budget) {
      throw ResourceError("expand_in_invariant_basis: e-basis exceeds the term budget of " + std::to_string(budget));
    }
    basis_index.push_back(*lambda);
    basis.push_back(std::move(prod));
  }

  // Rows are monomials appearing anywhere; columns are basis elements.
  std::map<Exponents, std::size_t, GrlexGreater> row_of;
  auto note_row = [&row_of](const Exponents& e) { row_of.try_emplace(e, row_of.size()); };
  for (const auto& [e, c] : tau.terms()) note_row(e);
  for (const auto& b : basis) {
    for (const auto& [e, c] : b.terms()) note_row(e);
  }
  RationalMatrix system(row_of.size(), basis.size());
  std::vector<Rational> rhs(row_of.size());
  for (std::size_t col = 0; col < basis.size(); ++col) {
    for (const auto& [e, c] : basis[col].terms()) system(row_of.at(e), col) = c;
  }
  for (const auto& [e, c] : tau.terms()) rhs[row_of.at(e)] = c;

  const LinearSolveOutcome solved = solve_or_rank(system, rhs);
  if (solved.status != SolveStatus::kUnique) {
    throw InvariantViolation("expand_in_invariant_basis: e-basis system for (n,m,k)=(" + std::to_string(n) + "," +
                             std::to_string(m) + "," + std::to_string(k) + ") has no unique solution");
  }

  InvariantExpansion out;
  out.n = n;
  out.m = m;
  out.k = k;
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const auto& parts = basis_index[col].parts();
    if (parts.size() == 1 && parts[0] == m) {
      out.leading = solved.solution[col];
      continue;
    }
    if (solved.solution[col].is_zero()) continue;
    std::vector<unsigned> exps(m - 1, 0);
    for (unsigned part : parts) ++exps[part - 1];
    out.lower_terms.emplace(std::move(exps), solved.solution[col]);
  }
  return out;
}

}  // namespace cubeharm
