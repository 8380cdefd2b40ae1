#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "cubeharm/bernoulli.hpp"
#include "cubeharm/combinatorics.hpp"
#include "cubeharm/generating.hpp"
#include "cubeharm/invariants.hpp"
#include "cubeharm/rational.hpp"
#include "cubeharm/unipoly.hpp"

namespace cubeharm {

enum class Route { kOracle, kMatrix, kPartition, kYoung, kGenerating, kRecursion, kExtremal };

inline constexpr std::array<Route, 7> kAllRoutes = {Route::kOracle,     Route::kMatrix,    Route::kPartition,
                                                    Route::kYoung,      Route::kGenerating, Route::kRecursion,
                                                    Route::kExtremal};

inline std::string_view route_name(Route r) {
  switch (r) {
    case Route::kOracle: return "oracle";
    case Route::kMatrix: return "matrix";
    case Route::kPartition: return "partition";
    case Route::kYoung: return "young";
    case Route::kGenerating: return "generating";
    case Route::kRecursion: return "recursion";
    case Route::kExtremal: return "extremal";
  }
  return "?";
}

inline std::optional<Route> parse_route(std::string_view name) {
  for (Route r : kAllRoutes) {
    if (route_name(r) == name) return r;
  }
  return std::nullopt;
}

/// One value c_{n,m}^{(k)} together with the route that produced it.
struct CoefficientRecord {
  unsigned n = 0;
  unsigned m = 0;
  unsigned k = 0;
  Rational value;
  Route route = Route::kGenerating;
};

namespace detail {

inline void check_cell(long n, long m, long k, const char* who) {
  if (m < 1 || m > n) throw std::domain_error(std::string(who) + ": need 1 <= m <= n");
  if (k < 0 || k > n) throw std::domain_error(std::string(who) + ": need 0 <= k <= n");
}

inline CoefficientRecord record(long n, long m, long k, Rational value, Route route) {
  return {static_cast<unsigned>(n), static_cast<unsigned>(m), static_cast<unsigned>(k), std::move(value), route};
}

/// (−1)^{ℓ−1}(ℓ−1)!(n−ℓ)!, the ν-dependent part of u_{n,m}(ν)/m.
inline Rational length_factor(unsigned n, unsigned ell) {
  return sign_power(static_cast<long>(ell) - 1) * factorial(ell - 1) * factorial(n - ell);
}

}  // namespace detail

/// u_{n,m}(ν) = m(−1)^{ℓ(ν)−1}(ℓ(ν)−1)!(n−ℓ(ν))! for ν ∈ 𝒫_n(m), m ≤ n.
inline Rational u_value(unsigned n, unsigned m, const OrderedPartition& nu) {
  if (m < 1) throw std::domain_error("u_value: m must be >= 1");
  if (m > n) throw std::domain_error("u_value: closed form holds only for m <= n");
  if (nu.size() != n) throw std::domain_error("u_value: partition must have n parts");
  if (nu.total() != m) throw std::domain_error("u_value: partition must sum to m");
  return Rational(m) * detail::length_factor(n, nu.length());
}

/// v_n^{(k)}(ν) = (Σν + k)! / (Π_{j=1}^{k}(ν_1+…+ν_j + j) · Π ν_j!).
/// Components past position n count as zero when k > n.
inline Rational v_value(unsigned k, const std::vector<unsigned>& nu) {
  unsigned total = 0;
  mpz_class den = 1;
  for (unsigned x : nu) {
    total += x;
    den *= factorial_z(x);
  }
  unsigned prefix = 0;
  for (unsigned j = 1; j <= k; ++j) {
    if (j <= nu.size()) prefix += nu[j - 1];
    den *= prefix + j;
  }
  return Rational(factorial_z(total + k), den);
}

/// v̄_n^{(k)}(ν) = 1 / (Π_{j=1}^{k}(2ν_1+…+2ν_j + j) · Π_{j=1}^{n}(2ν_j)!).
inline Rational v_bar(unsigned k, const std::vector<unsigned>& nu) {
  mpz_class den = 1;
  for (unsigned x : nu) den *= factorial_z(2 * x);
  unsigned prefix = 0;
  for (unsigned j = 1; j <= k; ++j) {
    if (j <= nu.size()) prefix += 2 * nu[j - 1];
    den *= prefix + j;
  }
  return Rational(mpz_class(1), den);
}

/// w_k(μ) = 1 / (Π s_j! · Π ((2j+1)!)^{s_j}), s_j counted over k parts.
inline Rational w_value(unsigned k, const YoungDiagram& mu) {
  if (mu.length() > k) throw std::domain_error("w_value: diagram has more than k parts");
  mpz_class den = 1;
  for (const auto& [part, mult] : mu.multiplicities(k)) {
    den *= factorial_z(mult);
    mpz_class f = factorial_z(2 * part + 1);
    for (unsigned i = 0; i < mult; ++i) den *= f;
  }
  return Rational(mpz_class(1), den);
}

namespace detail {

/// Σ over 𝓜_n^{(k)}(2ν) of (A𝟏)!/A!, i.e. v_n^{(k)}(2ν) by enumeration.
inline mpz_class matrix_weight_sum(unsigned n, unsigned k, const OrderedPartition& nu) {
  std::vector<unsigned> doubled(n);
  for (unsigned j = 0; j < n; ++j) doubled[j] = 2 * nu[j];
  auto stream = enum_matrices_colsums(n, k, OrderedPartition(doubled));
  const unsigned rows = k + 1;
  const unsigned total = 2 * nu.total();
  mpz_class acc = 0;
  std::vector<unsigned> row_sums(rows);
  const std::vector<std::vector<unsigned>>* cols = nullptr;

  if (total <= 20) {
    // Every weight is a product of multinomials of the rows, bounded by total!.
    std::vector<std::uint64_t> fact(total + 1, 1);
    for (unsigned i = 1; i <= total; ++i) fact[i] = fact[i - 1] * i;
    std::uint64_t chunk = 0;
    const std::uint64_t flush_at = UINT64_MAX - fact[total];
    while (stream.next_columns(cols)) {
      std::fill(row_sums.begin(), row_sums.end(), 0U);
      std::uint64_t den = 1;
      for (const auto& col : *cols) {
        for (std::size_t i = 0; i < col.size(); ++i) {
          row_sums[i] += col[i];
          den *= fact[col[i]];
        }
      }
      std::uint64_t num = 1;
      for (unsigned s : row_sums) num *= fact[s];
      chunk += num / den;
      if (chunk > flush_at) {
        acc += mpz_class(static_cast<unsigned long>(chunk));
        chunk = 0;
      }
    }
    acc += mpz_class(static_cast<unsigned long>(chunk));
    return acc;
  }

  while (stream.next_columns(cols)) {
    std::fill(row_sums.begin(), row_sums.end(), 0U);
    mpz_class den = 1;
    for (const auto& col : *cols) {
      for (std::size_t i = 0; i < col.size(); ++i) {
        row_sums[i] += col[i];
        den *= factorial_z(col[i]);
      }
    }
    mpz_class num = 1;
    for (unsigned s : row_sums) num *= factorial_z(s);
    acc += num / den;
  }
  return acc;
}

}  // namespace detail

/// c_{n,m}^{(k)} as a signed sum over 𝓜_{n,m}^{(k)}: upper quadrilateral
/// (k+1)×n matrices with even column sums and entry total 2m.
inline CoefficientRecord c_matrix(long n, long m, long k) {
  detail::check_cell(n, m, k, "c_matrix");
  const auto un = static_cast<unsigned>(n);
  const auto um = static_cast<unsigned>(m);
  Rational sum;
  auto partitions = enum_ordered_partitions(um, un);
  while (auto nu = partitions.next()) {
    const mpz_class weights = detail::matrix_weight_sum(un, static_cast<unsigned>(k), *nu);
    sum += detail::length_factor(un, nu->length()) * Rational(weights);
  }
  Rational value = sign_power(m - 1) * Rational(um) / factorial(un) * sum;
  return detail::record(n, m, k, std::move(value), Route::kMatrix);
}

/// c_{n,m}^{(k)} as a sum over ordered partitions ν ∈ 𝒫_n(m) weighted by v̄.
inline CoefficientRecord c_partition(long n, long m, long k) {
  detail::check_cell(n, m, k, "c_partition");
  const auto un = static_cast<unsigned>(n);
  const auto um = static_cast<unsigned>(m);
  const auto uk = static_cast<unsigned>(k);
  Rational sum;
  auto partitions = enum_ordered_partitions(um, un);
  while (auto nu = partitions.next()) {
    sum += detail::length_factor(un, nu->length()) * v_bar(uk, nu->parts());
  }
  Rational value = sign_power(m - 1) * Rational(um) * factorial(2 * um + uk) / factorial(un) * sum;
  return detail::record(n, m, k, std::move(value), Route::kPartition);
}

/// G_{n,m}(t) assembled from the Young-diagram sum over 𝒴(m), after clearing
/// every (t+1) denominator:
///   (−1)^{m−1} m Σ_λ (−1)^{ℓ−1}(ℓ−1)!/(r_1!⋯r_m!) Π_j ((2j+1)t+1)^{r_j}/((2j+1)!)^{r_j} · (t+1)^{n−ℓ}.
inline UniPoly G_young(long n, long m) {
  if (m < 1 || n < m) throw std::domain_error("G_young: need n >= m >= 1");
  const auto un = static_cast<unsigned>(n);
  const auto um = static_cast<unsigned>(m);
  std::vector<UniPoly> t_factor(um + 1);
  for (unsigned j = 1; j <= um; ++j) {
    t_factor[j] = UniPoly{Rational(1), Rational(2 * j + 1)} * (Rational(1) / factorial(2 * j + 1));
  }
  UniPoly sum;
  auto diagrams = enum_young(um, um);
  while (auto lambda = diagrams.next()) {
    const unsigned ell = lambda->length();
    Rational scalar = sign_power(static_cast<long>(ell) - 1) * factorial(ell - 1);
    UniPoly term = t_plus_one_pow(un - ell);
    for (const auto& [part, mult] : lambda->multiplicities()) {
      scalar /= factorial(mult);
      term *= pow(t_factor[part], mult);
    }
    sum += term * scalar;
  }
  return sum * (sign_power(m - 1) * Rational(um));
}

/// c_{n,m}^{(k)} read off the Young-diagram form of G_{n,m}.
inline CoefficientRecord c_young(long n, long m, long k) {
  detail::check_cell(n, m, k, "c_young");
  Rational value = coefficient_from_generating(G_young(n, m), static_cast<unsigned>(n), static_cast<unsigned>(m),
                                               static_cast<unsigned>(k));
  return detail::record(n, m, k, std::move(value), Route::kYoung);
}

/// c_{n,m}^{(k)} read off (t+1)^{n−m}G_m with G_m from the Bernoulli recursion.
inline CoefficientRecord c_generating(long n, long m, long k) {
  detail::check_cell(n, m, k, "c_generating");
  Rational value = coefficient_from_generating(G_nm(n, m), static_cast<unsigned>(n), static_cast<unsigned>(m),
                                               static_cast<unsigned>(k));
  return detail::record(n, m, k, std::move(value), Route::kGenerating);
}

/// c^{(0)} = (2m)!(2^{2m}−1)b_m.
inline Rational extremal_k0(unsigned m) {
  return factorial(2 * m) * (pow2(2 * m) - Rational(1)) * b_scaled(m);
}

/// c^{(n−1)} = c^{(n)} = (n+2m)!/n!·b_m; for m ≥ 2 also c^{(n−2)}.
inline Rational extremal_top(unsigned n, unsigned m) { return factorial(n + 2 * m) / factorial(n) * b_scaled(m); }

/// c^{(1)} = (2m+1)!{(2^{2m}−1)b_m − (2m/n)(2^{2m+2}−1)b_{m+1}}.
inline Rational extremal_k1(unsigned n, unsigned m) {
  const Rational first = (pow2(2 * m) - Rational(1)) * b_scaled(m);
  const Rational second = Rational(2 * m) / Rational(n) * (pow2(2 * m + 2) - Rational(1)) * b_scaled(m + 1);
  return factorial(2 * m + 1) * (first - second);
}

/// c^{(n−3)} = {(n+2m)!b_m − 4m(n+2m−3)!b_{m−1}}/n!, for n ≥ 3 and m ≥ 2.
inline Rational extremal_n_minus_3(unsigned n, unsigned m) {
  return (factorial(n + 2 * m) * b_scaled(m) - Rational(4 * m) * factorial(n + 2 * m - 3) * b_scaled(m - 1)) /
         factorial(n);
}

/// A closed form that applies at one cell, tagged by which k it targets.
struct ExtremalValue {
  std::string formula;
  Rational value;
};

/// Every closed form applicable at (n,m,k); empty when none applies.
inline std::vector<ExtremalValue> c_extremal_all(long n, long m, long k) {
  detail::check_cell(n, m, k, "c_extremal");
  const auto un = static_cast<unsigned>(n);
  const auto um = static_cast<unsigned>(m);
  std::vector<ExtremalValue> out;
  if (k == 0) out.push_back({"k=0", extremal_k0(um)});
  if (k == n || k == n - 1) out.push_back({k == n ? "k=n" : "k=n-1", extremal_top(un, um)});
  if (k == 1) out.push_back({"k=1", extremal_k1(un, um)});
  if (m >= 2 && k == n - 2) out.push_back({"k=n-2", extremal_top(un, um)});
  if (m >= 2 && n >= 3 && k == n - 3) out.push_back({"k=n-3", extremal_n_minus_3(un, um)});
  return out;
}

/// First applicable closed form, or nullopt.
inline std::optional<CoefficientRecord> c_extremal(long n, long m, long k) {
  auto all = c_extremal_all(n, m, k);
  if (all.empty()) return std::nullopt;
  return detail::record(n, m, k, std::move(all.front().value), Route::kExtremal);
}

/// c_{n,1}^{(k)} = (k+1)(k+2)(1/2 − k/(3n)), from F_{n,1} = 1/2 − t/3 expanded
/// in the basis t^k(1−t)^{n−k}.
inline Rational m1_initial_value(unsigned n, unsigned k) {
  return Rational((k + 1) * (k + 2)) * (Rational(1, 2) - Rational(k) / Rational(3 * n));
}

/// The step factor (n−k)(n−k−1)m/(n(m−1)) of the k-recursion.
inline Rational recursion_factor(unsigned n, unsigned m, unsigned k) {
  return Rational((n - k) * (n - k - 1) * m) / Rational(n * (m - 1));
}

/// Coefficients filled by the k-recursion, keyed by (n, m, k).
struct RecursionTable {
  unsigned n_max = 0;
  unsigned m_max = 0;
  std::map<std::tuple<unsigned, unsigned, unsigned>, Rational> values;
  /// Descriptions of every replay that disagreed; empty when consistent.
  std::vector<std::string> mismatches;

  [[nodiscard]] bool consistent() const { return mismatches.empty(); }

  [[nodiscard]] const Rational& at(unsigned n, unsigned m, unsigned k) const {
    auto it = values.find({n, m, k});
    if (it == values.end()) throw std::out_of_range("RecursionTable: cell not filled");
    return it->second;
  }

  [[nodiscard]] std::vector<CoefficientRecord> records() const {
    std::vector<CoefficientRecord> out;
    for (const auto& [key, v] : values) {
      out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), v, Route::kRecursion});
    }
    return out;
  }
};

/// Fills c_{n,m}^{(k)} for m ≤ m_max, n ≤ n_max. Rows with m ≥ 2 are swept
/// upward in k from c^{(0)}, each step using the (n−1, m−1) row:
///   c^{(k)} = c^{(k−1)} + f·{(2m+k−1)c'^{(k)} − (k+1)c'^{(k+1)}}.
/// Rows with m = 1 come from the closed forms and the initial condition.
/// The downward replay and the replay that solves for c'^{(k+1)}, together
/// with the endpoint values, are checked afterwards and recorded in
/// `mismatches`.
inline RecursionTable c_recursion_table(unsigned n_max, unsigned m_max) {
  if (m_max < 1 || m_max > n_max) throw std::domain_error("c_recursion_table: need 1 <= m_max <= n_max");
  RecursionTable table;
  table.n_max = n_max;
  table.m_max = m_max;
  auto& v = table.values;
  auto note = [&table](unsigned n, unsigned m, unsigned k, const char* what, const Rational& got, const Rational& want) {
    if (got == want) return;
    table.mismatches.push_back("(" + std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(k) + ") " +
                               what + ": " + got.to_string() + " vs " + want.to_string());
  };

  // m = 1 first; each later m only needs rows of m − 1.
  for (unsigned n = 1; n <= n_max; ++n) {
    v[{n, 1, 0}] = extremal_k0(1);
    v[{n, 1, n}] = extremal_top(n, 1);
    v[{n, 1, n - 1}] = n >= 2 ? extremal_top(n, 1) : extremal_k0(1);
    if (n >= 2) v[{n, 1, 1}] = extremal_k1(n, 1);
    for (unsigned k = 2; k + 2 <= n; ++k) v[{n, 1, k}] = m1_initial_value(n, k);
    for (unsigned k = 0; k <= n; ++k) note(n, 1, k, "initial condition", v.at({n, 1, k}), m1_initial_value(n, k));
  }

  for (unsigned m = 2; m <= m_max; ++m) {
    for (unsigned n = m; n <= n_max; ++n) {
      v[{n, m, 0}] = extremal_k0(m);
      for (unsigned k = 1; k + 2 <= n; ++k) {
        const Rational step = recursion_factor(n, m, k) * (Rational(2 * m + k - 1) * v.at({n - 1, m - 1, k}) -
                                                           Rational(k + 1) * v.at({n - 1, m - 1, k + 1}));
        v[{n, m, k}] = v.at({n, m, k - 1}) + step;
      }
      const Rational top = extremal_top(n, m);
      v[{n, m, n - 1}] = top;
      v[{n, m, n}] = top;
      if (n >= 2) note(n, m, n - 2, "sweep end", v.at({n, m, n - 2}), top);
      if (n >= 3) note(n, m, 1, "k=1 closed form", v.at({n, m, 1}), extremal_k1(n, m));
      if (n >= 3) note(n, m, n - 3, "k=n-3 closed form", v.at({n, m, n - 3}), extremal_n_minus_3(n, m));

      for (unsigned k = 1; k + 2 <= n; ++k) {
        const Rational f = recursion_factor(n, m, k);
        const Rational& lo = v.at({n - 1, m - 1, k});
        const Rational& hi = v.at({n - 1, m - 1, k + 1});
        const Rational down = v.at({n, m, k}) - f * (Rational(2 * m + k - 1) * lo - Rational(k + 1) * hi);
        note(n, m, k - 1, "downward replay", down, v.at({n, m, k - 1}));
        const Rational diff = v.at({n, m, k}) - v.at({n, m, k - 1});
        const Rational solved = (Rational(2 * m + k - 1) * lo - diff / f) / Rational(k + 1);
        note(n - 1, m - 1, k + 1, "column replay", solved, hi);
      }
    }
  }
  return table;
}

/// c_{n,m}^{(k)} from a recursion table sized to the cell.
inline CoefficientRecord c_recursion(long n, long m, long k) {
  detail::check_cell(n, m, k, "c_recursion");
  const RecursionTable table = c_recursion_table(static_cast<unsigned>(n), static_cast<unsigned>(m));
  if (!table.consistent()) throw InvariantViolation("c_recursion: " + table.mismatches.front());
  return detail::record(n, m, k, table.at(n, m, k), Route::kRecursion);
}

/// Definition-level value: the leading e_{2m} coefficient of τ_{2m}^{(k)}.
inline CoefficientRecord c_oracle(long n, long m, long k, std::size_t budget = term_budget()) {
  detail::check_cell(n, m, k, "c_oracle");
  InvariantExpansion e = expand_in_invariant_basis(static_cast<unsigned>(n), static_cast<unsigned>(m),
                                                   static_cast<unsigned>(k), budget);
  return detail::record(n, m, k, std::move(e.leading), Route::kOracle);
}

/// Dispatches to one route. The extremal route throws std::domain_error
/// where no closed form applies.
inline CoefficientRecord c_by_route(Route route, long n, long m, long k) {
  switch (route) {
    case Route::kOracle: return c_oracle(n, m, k);
    case Route::kMatrix: return c_matrix(n, m, k);
    case Route::kPartition: return c_partition(n, m, k);
    case Route::kYoung: return c_young(n, m, k);
    case Route::kGenerating: return c_generating(n, m, k);
    case Route::kRecursion: return c_recursion(n, m, k);
    case Route::kExtremal:
      if (auto r = c_extremal(n, m, k)) return *r;
      throw std::domain_error("c_extremal: no closed form applies at this cell");
  }
  throw std::invalid_argument("c_by_route: unknown route");
}

}  // namespace cubeharm
