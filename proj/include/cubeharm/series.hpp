#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cubeharm/rational.hpp"
#include "cubeharm/unipoly.hpp"

namespace cubeharm {

/// Coefficient-ring interface for TruncatedSeries. A ring supplies zero, one,
/// scaling by a rational, and a partial inverse for constant terms; addition
/// and multiplication come from the ordinary operators.
template <class R>
struct RingTraits;

template <>
struct RingTraits<Rational> {
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static bool is_zero(const Rational& x) { return x.is_zero(); }
  static Rational scale(const Rational& x, const Rational& s) { return x * s; }
  static std::optional<Rational> invert(const Rational& x) {
    if (x.is_zero()) return std::nullopt;
    return x.inverse();
  }
};

/// Only nonzero constant polynomials are units in Q[t].
template <>
struct RingTraits<UniPoly> {
  static UniPoly zero() { return {}; }
  static UniPoly one() { return UniPoly(Rational(1)); }
  static bool is_zero(const UniPoly& x) { return x.is_zero(); }
  static UniPoly scale(const UniPoly& x, const Rational& s) { return x * s; }
  static std::optional<UniPoly> invert(const UniPoly& x) {
    if (x.is_zero() || !x.is_constant()) return std::nullopt;
    return UniPoly(x.constant_term().inverse());
  }
};

template <class R>
concept CoefficientRing = requires(const R& a, const R& b, const Rational& s) {
  { a + b } -> std::convertible_to<R>;
  { a - b } -> std::convertible_to<R>;
  { a * b } -> std::convertible_to<R>;
  { a == b } -> std::convertible_to<bool>;
  { RingTraits<R>::zero() } -> std::convertible_to<R>;
  { RingTraits<R>::one() } -> std::convertible_to<R>;
  { RingTraits<R>::scale(a, s) } -> std::convertible_to<R>;
  { RingTraits<R>::invert(a) } -> std::convertible_to<std::optional<R>>;
};

/// Power series in z known modulo z^(order+1). Binary operations on series of
/// different orders truncate to the smaller order.
template <CoefficientRing R>
class TruncatedSeries {
  using Traits = RingTraits<R>;

 public:
  explicit TruncatedSeries(std::size_t order) : coeffs_(order + 1, Traits::zero()) {}
  TruncatedSeries(std::size_t order, std::vector<R> coeffs) : coeffs_(std::move(coeffs)) {
    coeffs_.resize(order + 1, Traits::zero());
  }

  static TruncatedSeries constant(std::size_t order, R value) {
    TruncatedSeries s(order);
    s.coeffs_[0] = std::move(value);
    return s;
  }

  [[nodiscard]] std::size_t order() const { return coeffs_.size() - 1; }
  [[nodiscard]] const R& operator[](std::size_t power) const { return coeffs_.at(power); }
  R& operator[](std::size_t power) { return coeffs_.at(power); }
  [[nodiscard]] const std::vector<R>& coefficients() const { return coeffs_; }

  [[nodiscard]] TruncatedSeries truncated(std::size_t order) const {
    if (order > this->order()) throw std::domain_error("TruncatedSeries: cannot extend truncation order");
    return TruncatedSeries(order, std::vector<R>(coeffs_.begin(), coeffs_.begin() + static_cast<long>(order + 1)));
  }

  /// d/dz; the result is known to one order less.
  [[nodiscard]] TruncatedSeries derivative() const {
    if (order() == 0) return TruncatedSeries(0);
    TruncatedSeries d(order() - 1);
    for (std::size_t j = 1; j <= order(); ++j) d.coeffs_[j - 1] = Traits::scale(coeffs_[j], Rational(j));
    return d;
  }

  /// Multiplication by z^shift.
  [[nodiscard]] TruncatedSeries shifted_up(std::size_t shift) const {
    TruncatedSeries out(order() + shift);
    for (std::size_t j = 0; j <= order(); ++j) out.coeffs_[j + shift] = coeffs_[j];
    return out;
  }

  /// Division by z^shift; the dropped low coefficients must vanish.
  [[nodiscard]] TruncatedSeries shifted_down(std::size_t shift) const {
    if (shift > order()) throw std::domain_error("TruncatedSeries: shift exceeds order");
    for (std::size_t j = 0; j < shift; ++j) {
      if (!Traits::is_zero(coeffs_[j])) throw std::domain_error("TruncatedSeries: low coefficient not zero");
    }
    TruncatedSeries out(order() - shift);
    for (std::size_t j = shift; j <= order(); ++j) out.coeffs_[j - shift] = coeffs_[j];
    return out;
  }

  [[nodiscard]] TruncatedSeries scaled(const Rational& s) const {
    TruncatedSeries out(order());
    for (std::size_t j = 0; j <= order(); ++j) out.coeffs_[j] = Traits::scale(coeffs_[j], s);
    return out;
  }

  /// Multiplies every coefficient by a ring element.
  [[nodiscard]] TruncatedSeries times(const R& factor) const {
    TruncatedSeries out(order());
    for (std::size_t j = 0; j <= order(); ++j) out.coeffs_[j] = coeffs_[j] * factor;
    return out;
  }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    const std::size_t n = std::min(a.order(), b.order());
    TruncatedSeries out(n);
    for (std::size_t j = 0; j <= n; ++j) out.coeffs_[j] = a.coeffs_[j] + b.coeffs_[j];
    return out;
  }
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    const std::size_t n = std::min(a.order(), b.order());
    TruncatedSeries out(n);
    for (std::size_t j = 0; j <= n; ++j) out.coeffs_[j] = a.coeffs_[j] - b.coeffs_[j];
    return out;
  }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    const std::size_t n = std::min(a.order(), b.order());
    TruncatedSeries out(n);
    for (std::size_t i = 0; i <= n; ++i) {
      if (Traits::is_zero(a.coeffs_[i])) continue;
      for (std::size_t j = 0; i + j <= n; ++j) {
        if (Traits::is_zero(b.coeffs_[j])) continue;
        out.coeffs_[i + j] = out.coeffs_[i + j] + a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return out;
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) { return a.coeffs_ == b.coeffs_; }

  /// Index of the first coefficient where the two series differ (up to the
  /// smaller order), or nullopt when they agree.
  friend std::optional<std::size_t> first_difference(const TruncatedSeries& a, const TruncatedSeries& b) {
    const std::size_t n = std::min(a.order(), b.order());
    for (std::size_t j = 0; j <= n; ++j) {
      if (!(a.coeffs_[j] == b.coeffs_[j])) return j;
    }
    return std::nullopt;
  }

 private:
  std::vector<R> coeffs_;
};

/// q with q·b = a modulo z^(order+1). The constant term of b must be a unit.
template <CoefficientRing R>
TruncatedSeries<R> series_div(const TruncatedSeries<R>& a, const TruncatedSeries<R>& b, std::size_t order) {
  order = std::min({order, a.order(), b.order()});
  const auto inv = RingTraits<R>::invert(b[0]);
  if (!inv) throw std::domain_error("series_div: constant term of divisor is not invertible");
  TruncatedSeries<R> q(order);
  for (std::size_t j = 0; j <= order; ++j) {
    R acc = a[j];
    for (std::size_t i = 1; i <= j; ++i) acc = acc - q[j - i] * b[i];
    q[j] = acc * *inv;
  }
  return q;
}

/// log(s) modulo z^(order+1), computed as the integral of s'/s.
template <CoefficientRing R>
TruncatedSeries<R> series_log(const TruncatedSeries<R>& s, std::size_t order) {
  order = std::min(order, s.order());
  if (!(s[0] == RingTraits<R>::one())) throw std::domain_error("series_log: constant term must equal 1");
  TruncatedSeries<R> out(order);
  if (order == 0) return out;
  const TruncatedSeries<R> ratio = series_div(s.derivative(), s.truncated(order - 1), order - 1);
  for (std::size_t j = 1; j <= order; ++j) out[j] = RingTraits<R>::scale(ratio[j - 1], Rational(1) / Rational(j));
  return out;
}

/// exp(s) modulo z^(order+1); s must have zero constant term. Uses the
/// recurrence n·E_n = Σ_{k=1..n} k·s_k·E_{n−k}.
template <CoefficientRing R>
TruncatedSeries<R> series_exp(const TruncatedSeries<R>& s, std::size_t order) {
  order = std::min(order, s.order());
  if (!RingTraits<R>::is_zero(s[0])) throw std::domain_error("series_exp: constant term must be zero");
  TruncatedSeries<R> e(order);
  e[0] = RingTraits<R>::one();
  for (std::size_t n = 1; n <= order; ++n) {
    R acc = RingTraits<R>::zero();
    for (std::size_t k = 1; k <= n; ++k) acc = acc + RingTraits<R>::scale(s[k] * e[n - k], Rational(k));
    e[n] = RingTraits<R>::scale(acc, Rational(1) / Rational(n));
  }
  return e;
}

using RationalSeries = TruncatedSeries<Rational>;
using PolySeries = TruncatedSeries<UniPoly>;

/// Default truncation order for identity checks (covers z^16, i.e. m <= 8).
inline constexpr std::size_t kDefaultSeriesOrder = 16;

/// Σ_j z^{2j}/(2j)! and Σ_j z^{2j}/(2j+1)!, i.e. cosh z and sinh(z)/z.
inline RationalSeries cosh_series(std::size_t order) {
  RationalSeries s(order);
  for (std::size_t j = 0; j <= order; j += 2) s[j] = factorial(static_cast<unsigned>(j)).inverse();
  return s;
}

inline RationalSeries sinhc_series(std::size_t order) {
  RationalSeries s(order);
  for (std::size_t j = 0; j <= order; j += 2) s[j] = factorial(static_cast<unsigned>(j + 1)).inverse();
  return s;
}

/// Lifts a rational-coefficient series into Q[t]-coefficients.
inline PolySeries lift(const RationalSeries& s) {
  PolySeries out(s.order());
  for (std::size_t j = 0; j <= s.order(); ++j) out[j] = UniPoly(s[j]);
  return out;
}

}  // namespace cubeharm
