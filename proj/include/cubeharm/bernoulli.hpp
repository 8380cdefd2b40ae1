#pragma once

#include <cstddef>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "cubeharm/rational.hpp"
#include "cubeharm/series.hpp"

namespace cubeharm {

// Sign convention: all Bernoulli numbers here are the positive ones defined by
//
//   z/(e^z − 1) = 1 − z/2 + Σ_{m≥1} (−1)^{m−1} B_m z^{2m}/(2m)!,
//
// so B_1 = 1/6, B_2 = 1/30, B_3 = 1/42, … In the more common convention these
// are (−1)^{m−1}·B_{2m}. The scaled values b_m = 2^{2m−1} B_m/(2m)! satisfy
// z·coth z = 1 + 2 Σ (−1)^{m−1} b_m z^{2m}.

/// Process-wide cache of the positive-convention Bernoulli numbers. Filled
/// from the standard recurrence Σ_{j=0}^{n} C(n+1, j)·β_j = 0 (β_1 = −1/2).
class BernoulliCache {
 public:
  static BernoulliCache& instance() {
    static BernoulliCache cache;
    return cache;
  }

  /// B_m for m >= 1.
  Rational get(unsigned m) {
    if (m == 0) throw std::domain_error("bernoulli_paper: index must be >= 1");
    std::lock_guard lock(mutex_);
    extend(2 * m);
    const Rational& standard = standard_[2 * m];
    return (m % 2 == 1) ? standard : -standard;
  }

 private:
  BernoulliCache() { standard_.push_back(Rational(1)); }

  void extend(unsigned index) {
    while (standard_.size() <= index) {
      const unsigned n = static_cast<unsigned>(standard_.size());  // computing β_n
      if (n % 2 == 1 && n > 1) {
        standard_.push_back(Rational(0));
        continue;
      }
      Rational acc(0);
      for (unsigned j = 0; j < n; ++j) {
        if (standard_[j].is_zero()) continue;
        acc += binomial(n + 1, j) * standard_[j];
      }
      standard_.push_back(-acc / Rational(n + 1));
    }
  }

  std::mutex mutex_;
  std::vector<Rational> standard_;
};

/// B_m in the positive convention (B_1 = 1/6).
inline Rational bernoulli_paper(long m) {
  if (m <= 0) throw std::domain_error("bernoulli_paper: index must be >= 1");
  return BernoulliCache::instance().get(static_cast<unsigned>(m));
}

/// b_m = 2^{2m−1} B_m / (2m)!; equals ζ(2m)/π^{2m}, hence positive.
inline Rational b_scaled(long m) {
  if (m <= 0) throw std::domain_error("b_scaled: index must be >= 1");
  const auto mm = static_cast<unsigned>(m);
  return pow2(2 * mm - 1) * bernoulli_paper(m) / factorial(2 * mm);
}

/// z·coth z = 1 + 2 Σ (−1)^{m−1} b_m z^{2m}, truncated at z^order.
inline RationalSeries coth_series(std::size_t order) {
  RationalSeries s(order);
  s[0] = Rational(1);
  for (std::size_t j = 2; j <= order; j += 2) {
    const long m = static_cast<long>(j / 2);
    s[j] = Rational(2) * sign_power(m - 1) * b_scaled(m);
  }
  return s;
}

/// tanh z = 2 Σ (−1)^{m−1} (2^{2m} − 1) b_m z^{2m−1}, truncated at z^order.
inline RationalSeries tanh_series(std::size_t order) {
  RationalSeries s(order);
  for (std::size_t j = 1; j <= order; j += 2) {
    const long m = static_cast<long>((j + 1) / 2);
    s[j] = Rational(2) * sign_power(m - 1) * (pow2(static_cast<unsigned>(2 * m)) - Rational(1)) * b_scaled(m);
  }
  return s;
}

}  // namespace cubeharm
