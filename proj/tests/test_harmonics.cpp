#include <gtest/gtest.h>

#include <random>
#include <set>

#include "cubeharm/harmonics.hpp"
#include "cubeharm/invariants.hpp"
#include "oracles.hpp"

using namespace cubeharm;

namespace {

MultiPoly mono(std::size_t vars, Exponents e, Rational c = Rational(1)) {
  MultiPoly p(vars);
  p.add_term(std::move(e), c);
  return p;
}

std::size_t face_count(unsigned n, unsigned k) {
  std::size_t c = 0;
  auto s = enum_faces(n, k);
  std::set<std::pair<std::vector<unsigned>, std::vector<std::pair<unsigned, int>>>> seen;
  while (auto f = s.next()) {
    ++c;
    EXPECT_EQ(f->free.size() + f->fixed.size(), n);
    seen.emplace(f->free, f->fixed);
  }
  EXPECT_EQ(seen.size(), c);
  return c;
}

}  // namespace

TEST(Faces, Counts) {
  EXPECT_EQ(face_count(2, 1), 4U);
  EXPECT_EQ(face_count(3, 0), 8U);
  EXPECT_EQ(face_count(3, 2), 6U);
  for (unsigned n = 1; n <= 4; ++n) {
    for (unsigned k = 0; k <= n; ++k) {
      EXPECT_EQ(Rational(face_count(n, k)), binomial(n, k) * pow2(n - k));
    }
  }
}

TEST(SkeletonAverage, Examples) {
  // Variables (x1, x2, r).
  const MultiPoly x1sq = mono(2, {2, 0});
  EXPECT_EQ(skeleton_average(x1sq, 2, 1), mono(3, {2, 0, 0}) + mono(3, {0, 0, 2}, Rational(2, 3)));
  for (unsigned n = 1; n <= 3; ++n) {
    for (unsigned k = 0; k <= n; ++k) {
      EXPECT_EQ(skeleton_average(MultiPoly::constant(n, Rational(1)), n, k), MultiPoly::constant(n + 1, Rational(1)));
      EXPECT_EQ(skeleton_average(MultiPoly::variable(n, 0), n, k), MultiPoly::variable(n + 1, 0));
    }
  }
}

TEST(SkeletonAverage, MatchesFaceByFaceIntegration) {
  std::mt19937 rng(17);
  for (unsigned n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 4; ++trial) {
      const MultiPoly f = oracle::random_poly(rng, n, 4, 4);
      for (unsigned k = 0; k <= n; ++k) EXPECT_EQ(skeleton_average(f, n, k), oracle::skeleton_average_literal(f, n, k));
    }
  }
}

TEST(SkeletonAverage, Linearity) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 6; ++trial) {
    const MultiPoly f = oracle::random_poly(rng, 3, 4, 5);
    const MultiPoly g = oracle::random_poly(rng, 3, 4, 5);
    const Rational a(3, 7);
    const Rational b(-2);
    for (unsigned k = 0; k <= 3; ++k) {
      EXPECT_EQ(skeleton_average(f * a + g * b, 3, k), skeleton_average(f, 3, k) * a + skeleton_average(g, 3, k) * b);
    }
  }
}

TEST(SkeletonAverage, DegreeAndRadiusZero) {
  std::mt19937 rng(23);
  for (unsigned n = 1; n <= 3; ++n) {
    const MultiPoly f = oracle::random_poly(rng, n, 5, 6);
    for (unsigned k = 0; k <= n; ++k) {
      const MultiPoly avg = skeleton_average(f, n, k);
      EXPECT_LE(avg.degree(), f.degree());
      // Dropping every term with a positive power of r recovers f.
      MultiPoly at_zero(n + 1);
      for (const auto& [e, c] : avg.terms()) {
        if (e[n] == 0) at_zero.add_term(e, c);
      }
      EXPECT_EQ(at_zero, f.extended(n + 1));
    }
  }
}

TEST(Mvp, Examples) {
  EXPECT_TRUE(mvp_check(delta_poly(2), 2, 1).holds);
  const MvpReport bad = mvp_check(mono(2, {2, 0}), 2, 1);
  EXPECT_FALSE(bad.holds);
  EXPECT_EQ(bad.residual, mono(3, {0, 0, 2}, Rational(2, 3)));
  for (unsigned n = 1; n <= 3; ++n) {
    for (unsigned k = 0; k <= n; ++k) EXPECT_TRUE(mvp_check(MultiPoly::constant(n, Rational(1)), n, k).holds);
  }
}

TEST(Mvp, InvariantWitnessFails) {
  const MultiPoly w = mono(2, {2, 2});
  EXPECT_FALSE(mvp_check(w, 2, 0).holds);
  EXPECT_FALSE(mvp_check(elementary_symmetric_sq(3, 1), 3, 2).holds);
}

TEST(DerivativeModule, Dimensions) {
  EXPECT_EQ(derivative_module_dimension(1), 2U);
  EXPECT_EQ(derivative_module_dimension(2), 8U);
  EXPECT_EQ(derivative_module_dimension(3), 48U);
}

TEST(DerivativeModule, DegreeTwoRankAtNTwo) {
  const DerivativeModule mod = derivative_module(2);
  ASSERT_EQ(mod.by_degree.size(), 5U);
  const std::vector<std::size_t> expected = {1, 2, 2, 2, 1};
  for (std::size_t d = 0; d < expected.size(); ++d) EXPECT_EQ(mod.by_degree[d].size(), expected[d]) << d;
}

TEST(DerivativeModule, ResourceBound) {
  EXPECT_THROW(derivative_module_dimension(4), ResourceError);
  EXPECT_THROW(harmonic_basis_mvp_suite(5, true), ResourceError);
  EXPECT_THROW(annihilation_check(4, 1, 0), ResourceError);
}

TEST(Annihilation, Examples) {
  EXPECT_TRUE(annihilation_check(2, 1, 1));
  for (unsigned k = 0; k <= 2; ++k) EXPECT_TRUE(annihilation_check(2, 2, k));
  EXPECT_TRUE(annihilation_check(1, 1, 0));
}

TEST(Annihilation, AllSmallCases) {
  for (unsigned n = 1; n <= 3; ++n) {
    for (unsigned m = 1; m <= n; ++m) {
      for (unsigned k = 0; k <= n; ++k) EXPECT_TRUE(annihilation_check(n, m, k)) << n << m << k;
    }
  }
}

TEST(HarmonicSuite, BasisPassesEverySkeleton) {
  for (unsigned n = 1; n <= 3; ++n) {
    const HarmonicSuiteReport r = harmonic_basis_mvp_suite(n);
    EXPECT_TRUE(r.passed()) << "n=" << n;
    EXPECT_EQ(r.basis.size(), r.dimension);
    EXPECT_TRUE(r.mvp_failures.empty());
    EXPECT_TRUE(r.closure_failures.empty());
  }
  const HarmonicSuiteReport one = harmonic_basis_mvp_suite(1);
  ASSERT_EQ(one.basis.size(), 2U);
  EXPECT_EQ(one.basis[0], MultiPoly::variable(1, 0));
  EXPECT_EQ(one.basis[1], MultiPoly::constant(1, Rational(1)));
}
