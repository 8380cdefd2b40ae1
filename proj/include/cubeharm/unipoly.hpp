#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cubeharm/rational.hpp"

namespace cubeharm {

/// Dense univariate polynomial in t with rational coefficients, stored
/// lowest degree first. Trailing zeros are always trimmed, so the zero
/// polynomial has an empty coefficient list and degree() == -1.
class UniPoly {
 public:
  static constexpr long kZeroDegree = -1;

  UniPoly() = default;
  UniPoly(Rational constant) {  // NOLINT(google-explicit-constructor)
    if (!constant.is_zero()) coeffs_.push_back(std::move(constant));
  }
  template <std::integral I>
  UniPoly(I constant) : UniPoly(Rational(constant)) {}  // NOLINT(google-explicit-constructor)
  explicit UniPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  UniPoly(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }

  /// The monomial c·t^power.
  static UniPoly monomial(Rational c, std::size_t power) {
    std::vector<Rational> v(power + 1);
    v[power] = std::move(c);
    return UniPoly(std::move(v));
  }
  static UniPoly t() { return monomial(Rational(1), 1); }

  [[nodiscard]] long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
  [[nodiscard]] bool is_constant() const { return coeffs_.size() <= 1; }
  [[nodiscard]] const std::vector<Rational>& coefficients() const { return coeffs_; }

  /// Coefficient of t^power; zero beyond the degree.
  [[nodiscard]] Rational coeff(std::size_t power) const {
    return power < coeffs_.size() ? coeffs_[power] : Rational(0);
  }
  [[nodiscard]] Rational constant_term() const { return coeff(0); }
  [[nodiscard]] Rational leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }

  [[nodiscard]] Rational evaluate(const Rational& at) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + *it;
    return acc;
  }

  [[nodiscard]] UniPoly derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * Rational(i);
    return UniPoly(std::move(d));
  }

  /// Composition this(inner).
  [[nodiscard]] UniPoly compose(const UniPoly& inner) const {
    UniPoly acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * inner + UniPoly(*it);
    return acc;
  }

  /// t^d · this(1/t) for d >= degree().
  [[nodiscard]] UniPoly reversed(std::size_t d) const {
    if (degree() > static_cast<long>(d)) throw std::domain_error("UniPoly::reversed: degree exceeds d");
    std::vector<Rational> v(d + 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[d - i] = coeffs_[i];
    return UniPoly(std::move(v));
  }

  /// Exact quotient by a polynomial that divides this one; throws otherwise.
  [[nodiscard]] UniPoly exact_div(const UniPoly& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("UniPoly: division by zero polynomial");
    std::vector<Rational> rem = coeffs_;
    const long dd = divisor.degree();
    if (degree() < dd) {
      if (is_zero()) return {};
      throw std::domain_error("UniPoly::exact_div: divisor does not divide");
    }
    std::vector<Rational> quot(static_cast<std::size_t>(degree() - dd + 1));
    const Rational lead_inv = divisor.leading().inverse();
    for (long i = degree() - dd; i >= 0; --i) {
      const auto top = static_cast<std::size_t>(i + dd);
      Rational q = rem[top] * lead_inv;
      if (!q.is_zero()) {
        for (long j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(i + j)] -= q * divisor.coeffs_[static_cast<std::size_t>(j)];
      }
      quot[static_cast<std::size_t>(i)] = std::move(q);
    }
    for (const auto& r : rem) {
      if (!r.is_zero()) throw std::domain_error("UniPoly::exact_div: divisor does not divide");
    }
    return UniPoly(std::move(quot));
  }

  UniPoly& operator+=(const UniPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  UniPoly& operator-=(const UniPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  UniPoly& operator*=(const Rational& s) {
    if (s.is_zero()) {
      coeffs_.clear();
      return *this;
    }
    for (auto& c : coeffs_) c *= s;
    return *this;
  }

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator-(UniPoly a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend UniPoly operator*(UniPoly a, const Rational& s) { return a *= s; }
  friend UniPoly operator*(const Rational& s, UniPoly a) { return a *= s; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return UniPoly(std::move(out));
  }
  UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

  /// Human-readable form, highest degree first, e.g. "1/2*t^2 + 2/3*t + 1/6".
  [[nodiscard]] std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (long i = degree(); i >= 0; --i) {
      const Rational& c = coeffs_[static_cast<std::size_t>(i)];
      if (c.is_zero()) continue;
      Rational mag = c.sign() < 0 ? -c : c;
      if (out.empty()) {
        if (c.sign() < 0) out += "-";
      } else {
        out += c.sign() < 0 ? " - " : " + ";
      }
      const bool unit = mag == Rational(1);
      if (i == 0 || !unit) out += mag.to_string();
      if (i >= 1) {
        if (!unit) out += "*";
        out += "t";
        if (i >= 2) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const UniPoly& p) { return os << p.to_string(); }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

inline UniPoly pow(const UniPoly& base, unsigned exponent) {
  UniPoly result(Rational(1));
  for (unsigned i = 0; i < exponent; ++i) result *= base;
  return result;
}

/// (t + 1)^e, used throughout the generating-polynomial code.
inline UniPoly t_plus_one_pow(unsigned e) {
  std::vector<Rational> v(e + 1);
  for (unsigned i = 0; i <= e; ++i) v[i] = binomial(e, i);
  return UniPoly(std::move(v));
}

}  // namespace cubeharm
