#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cubeharm/rational.hpp"

namespace cubeharm {

using Exponents = std::vector<unsigned>;

inline unsigned total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0U); }

/// Graded lexicographic order, largest term first: higher total degree wins,
/// ties broken lexicographically on the exponent vector.
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const {
    const unsigned da = total_degree(a);
    const unsigned db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

/// Sparse multivariate polynomial over Q in a fixed number of variables.
/// Zero coefficients are never stored; iteration follows GrlexGreater, which
/// makes serialization canonical.
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, Rational, GrlexGreater>;

  explicit MultiPoly(std::size_t variables) : vars_(variables) {
    if (variables == 0) throw std::domain_error("MultiPoly: need at least one variable");
  }

  static MultiPoly constant(std::size_t variables, const Rational& c) {
    MultiPoly p(variables);
    p.add_term(Exponents(variables, 0), c);
    return p;
  }

  /// The variable x_index (0-based).
  static MultiPoly variable(std::size_t variables, std::size_t index) {
    if (index >= variables) throw std::out_of_range("MultiPoly::variable: index out of range");
    MultiPoly p(variables);
    Exponents e(variables, 0);
    e[index] = 1;
    p.add_term(std::move(e), Rational(1));
    return p;
  }

  [[nodiscard]] std::size_t variable_count() const { return vars_; }
  [[nodiscard]] const TermMap& terms() const { return terms_; }
  [[nodiscard]] std::size_t term_count() const { return terms_.size(); }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }

  [[nodiscard]] Rational coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Total degree; -1 for the zero polynomial.
  [[nodiscard]] long degree() const {
    return terms_.empty() ? -1 : static_cast<long>(total_degree(terms_.begin()->first));
  }

  [[nodiscard]] bool is_homogeneous() const {
    if (terms_.empty()) return true;
    const unsigned d = total_degree(terms_.begin()->first);
    return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return total_degree(t.first) == d; });
  }

  void add_term(Exponents e, const Rational& c) {
    if (e.size() != vars_) throw std::invalid_argument("MultiPoly: exponent vector has wrong length");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  MultiPoly& operator*=(const Rational& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator-(MultiPoly a) { return a *= Rational(-1); }
  friend MultiPoly operator*(MultiPoly a, const Rational& s) { return a *= s; }
  friend MultiPoly operator*(const Rational& s, MultiPoly a) { return a *= s; }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_compatible(b);
    MultiPoly out(a.vars_);
    Exponents e(a.vars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < a.vars_; ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  /// ∂/∂x_index.
  [[nodiscard]] MultiPoly derivative(std::size_t index) const {
    MultiPoly out(vars_);
    for (const auto& [e, c] : terms_) {
      if (e[index] == 0) continue;
      Exponents d = e;
      --d[index];
      out.add_term(std::move(d), c * Rational(e[index]));
    }
    return out;
  }

  /// ∂^alpha = ∂_1^{alpha_1}⋯∂_n^{alpha_n}.
  [[nodiscard]] MultiPoly derivative(const Exponents& alpha) const {
    if (alpha.size() != vars_) throw std::invalid_argument("MultiPoly::derivative: multi-index has wrong length");
    MultiPoly out(vars_);
    for (const auto& [e, c] : terms_) {
      Rational factor(1);
      Exponents d = e;
      bool vanishes = false;
      for (std::size_t i = 0; i < vars_ && !vanishes; ++i) {
        if (alpha[i] > e[i]) {
          vanishes = true;
          break;
        }
        for (unsigned j = 0; j < alpha[i]; ++j) factor *= Rational(e[i] - j);
        d[i] = e[i] - alpha[i];
      }
      if (!vanishes) out.add_term(std::move(d), c * factor);
    }
    return out;
  }

  /// Reorders variables: the new exponent of x_{perm[i]} is the old exponent of x_i,
  /// i.e. the result is p(x_{perm[0]}, …, x_{perm[n−1]}).
  [[nodiscard]] MultiPoly permuted(std::span<const std::size_t> perm) const {
    if (perm.size() != vars_) throw std::invalid_argument("MultiPoly::permuted: wrong permutation length");
    MultiPoly out(vars_);
    Exponents d(vars_);
    for (const auto& [e, c] : terms_) {
      for (std::size_t i = 0; i < vars_; ++i) d[perm[i]] = e[i];
      out.add_term(d, c);
    }
    return out;
  }

  /// p(s_1 x_1, …, s_n x_n) for signs s_i = ±1.
  [[nodiscard]] MultiPoly sign_flipped(std::span<const int> signs) const {
    if (signs.size() != vars_) throw std::invalid_argument("MultiPoly::sign_flipped: wrong length");
    MultiPoly out(vars_);
    for (const auto& [e, c] : terms_) {
      int s = 1;
      for (std::size_t i = 0; i < vars_; ++i) {
        if (signs[i] < 0 && (e[i] % 2U) == 1U) s = -s;
      }
      out.add_term(e, s > 0 ? c : -c);
    }
    return out;
  }

  /// Embeds into more variables, padding exponents with zeros on the right.
  [[nodiscard]] MultiPoly extended(std::size_t variables) const {
    if (variables < vars_) throw std::invalid_argument("MultiPoly::extended: cannot drop variables");
    MultiPoly out(variables);
    for (const auto& [e, c] : terms_) {
      Exponents d = e;
      d.resize(variables, 0);
      out.add_term(std::move(d), c);
    }
    return out;
  }

  /// Sets trailing variables to zero and drops them.
  [[nodiscard]] MultiPoly restricted(std::size_t variables) const {
    if (variables > vars_ || variables == 0) throw std::invalid_argument("MultiPoly::restricted: bad variable count");
    MultiPoly out(variables);
    for (const auto& [e, c] : terms_) {
      if (std::any_of(e.begin() + static_cast<long>(variables), e.end(), [](unsigned x) { return x != 0; })) continue;
      out.add_term(Exponents(e.begin(), e.begin() + static_cast<long>(variables)), c);
    }
    return out;
  }

  [[nodiscard]] Rational evaluate(std::span<const Rational> point) const {
    if (point.size() != vars_) throw std::invalid_argument("MultiPoly::evaluate: wrong point dimension");
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
      Rational term = c;
      for (std::size_t i = 0; i < vars_; ++i) term *= pow(point[i], e[i]);
      acc += term;
    }
    return acc;
  }

  /// Canonical serialization: array of [exponent vector, "p/q"] pairs in
  /// graded-lex order, largest term first.
  [[nodiscard]] nlohmann::json to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [e, c] : terms_) arr.push_back(nlohmann::json::array({e, c.to_string()}));
    return arr;
  }

  static MultiPoly from_json(const nlohmann::json& j, std::size_t variables) {
    if (!j.is_array()) throw std::invalid_argument("MultiPoly::from_json: expected an array of terms");
    MultiPoly p(variables);
    for (const auto& term : j) {
      if (!term.is_array() || term.size() != 2 || !term[0].is_array() || !term[1].is_string()) {
        throw std::invalid_argument("MultiPoly::from_json: each term must be [[exponents...], \"p/q\"]");
      }
      Exponents e;
      for (const auto& x : term[0]) {
        if (!x.is_number_unsigned()) throw std::invalid_argument("MultiPoly::from_json: exponents must be nonnegative integers");
        e.push_back(x.get<unsigned>());
      }
      if (e.size() != variables) {
        throw std::invalid_argument("MultiPoly::from_json: exponent vector length " + std::to_string(e.size()) +
                                    " does not match " + std::to_string(variables) + " variables");
      }
      p.add_term(std::move(e), Rational::parse(term[1].get<std::string>()));
    }
    return p;
  }

  /// Human-readable form such as "x1^3*x2 - x1*x2^3". Variable names can be
  /// overridden (e.g. to print the radius variable as "r").
  [[nodiscard]] std::string to_string(const std::vector<std::string>& names = {}) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
      const Rational mag = c.sign() < 0 ? -c : c;
      if (out.empty()) {
        if (c.sign() < 0) out += "-";
      } else {
        out += c.sign() < 0 ? " - " : " + ";
      }
      std::string mono;
      for (std::size_t i = 0; i < vars_; ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += i < names.size() ? names[i] : "x" + std::to_string(i + 1);
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      if (mono.empty()) {
        out += mag.to_string();
      } else if (mag == Rational(1)) {
        out += mono;
      } else {
        out += mag.to_string() + "*" + mono;
      }
    }
    return out;
  }

 private:
  void check_compatible(const MultiPoly& o) const {
    if (o.vars_ != vars_) throw std::invalid_argument("MultiPoly: variable counts differ");
  }

  std::size_t vars_;
  TermMap terms_;
};

inline MultiPoly pow(const MultiPoly& base, unsigned exponent) {
  MultiPoly result = MultiPoly::constant(base.variable_count(), Rational(1));
  for (unsigned i = 0; i < exponent; ++i) result *= base;
  return result;
}

}  // namespace cubeharm
