#include <gtest/gtest.h>

#include <complex>

#include "cubeharm/coefficients.hpp"
#include "oracles.hpp"

using namespace cubeharm;

namespace {

std::vector<Rational> row(CoefficientRecord (*route)(long, long, long), long n, long m) {
  std::vector<Rational> out;
  for (long k = 0; k <= n; ++k) out.push_back(route(n, m, k).value);
  return out;
}

using Row = std::vector<Rational>;

}  // namespace

TEST(UValue, Examples) {
  EXPECT_EQ(u_value(2, 2, OrderedPartition({2, 0})), Rational(2));
  EXPECT_EQ(u_value(2, 2, OrderedPartition({1, 1})), Rational(-2));
  EXPECT_EQ(u_value(3, 2, OrderedPartition({1, 1, 0})), Rational(-2));
  EXPECT_THROW(u_value(3, 2, OrderedPartition({1, 0, 0})), std::domain_error);
  EXPECT_THROW(u_value(1, 2, OrderedPartition({2})), std::domain_error);
}

TEST(UValue, MatchesRootOfUnityDefinition) {
  for (unsigned n = 1; n <= 4; ++n) {
    for (unsigned m = 1; m <= n; ++m) {
      auto parts = enum_ordered_partitions(m, n);
      while (auto nu = parts.next()) {
        const std::complex<double> def = oracle::u_definition(n, m, nu->parts());
        EXPECT_NEAR(def.real(), u_value(n, m, *nu).to_double(), 1e-9);
        EXPECT_NEAR(def.imag(), 0.0, 1e-9);
      }
    }
  }
}

TEST(UValue, SymmetricUnderPermutation) {
  const OrderedPartition a({2, 1, 0, 1});
  const OrderedPartition b({0, 1, 1, 2});
  EXPECT_EQ(u_value(4, 4, a), u_value(4, 4, b));
}

TEST(VValue, Examples) {
  EXPECT_EQ(v_value(0, {1, 1}), Rational(2));
  EXPECT_EQ(v_value(1, {2, 0}), Rational(1));
  EXPECT_EQ(v_value(0, {3, 1, 2}), Rational(60));
}

TEST(VValue, MatchesMatrixSum) {
  for (unsigned n = 1; n <= 3; ++n) {
    for (unsigned k = 0; k <= 3; ++k) {
      std::vector<unsigned> nu(n, 0);
      while (true) {
        EXPECT_EQ(v_value(k, nu), oracle::v_brute(n, k, nu)) << "n=" << n << " k=" << k;
        std::size_t i = 0;
        while (i < n && nu[i] == 3) nu[i++] = 0;
        if (i == n) break;
        ++nu[i];
      }
    }
  }
}

TEST(WValue, Examples) {
  EXPECT_EQ(w_value(1, YoungDiagram(std::vector<unsigned>{1})), Rational(1, 6));
  EXPECT_EQ(w_value(2, YoungDiagram(std::vector<unsigned>{1, 0})), Rational(1, 6));
  EXPECT_EQ(w_value(1, YoungDiagram(std::vector<unsigned>{0})), Rational(1));
  EXPECT_THROW(w_value(1, YoungDiagram(std::vector<unsigned>{1, 1})), std::domain_error);
}

TEST(WValue, MatchesOrbitSum) {
  for (unsigned k = 1; k <= 4; ++k) {
    for (unsigned weight = 0; weight <= 4; ++weight) {
      auto diagrams = enum_young(weight, k);
      while (auto mu = diagrams.next()) {
        EXPECT_EQ(w_value(k, *mu), oracle::w_brute(k, *mu)) << "k=" << k << " mu=" << mu->to_string(k);
      }
    }
  }
}

TEST(CMatrix, Examples) {
  EXPECT_EQ(c_matrix(2, 1, 0).value, Rational(1));
  EXPECT_EQ(c_matrix(2, 1, 1).value, Rational(2));
  EXPECT_EQ(c_matrix(2, 1, 2).value, Rational(2));
  EXPECT_EQ(c_matrix(2, 1, 2).route, Route::kMatrix);
  EXPECT_THROW(c_matrix(1, 2, 0), std::domain_error);
  EXPECT_THROW(c_matrix(2, 1, 3), std::domain_error);
  EXPECT_THROW(c_matrix(2, 0, 0), std::domain_error);
}

TEST(CPartition, Examples) {
  EXPECT_EQ(c_partition(2, 1, 1).value, Rational(2));
  EXPECT_EQ(c_partition(3, 1, 1).value, Rational(7, 3));
  EXPECT_EQ(c_partition(3, 2, 0).value, Rational(4));
  EXPECT_THROW(c_partition(3, 4, 0), std::domain_error);
}

TEST(CYoung, Examples) {
  EXPECT_EQ(row(c_young, 2, 1), (Row{1, 2, 2}));
  EXPECT_EQ(c_young(3, 2, 1).value, Rational(28, 3));
  for (long m = 1; m <= 6; ++m) {
    EXPECT_EQ(c_young(m, m, m).value, factorial(3 * m) / factorial(m) * b_scaled(m)) << m;
  }
  EXPECT_EQ(G_young(3, 2), (UniPoly{Rational(1, 90), Rational(7, 90), Rational(7, 30), Rational(1, 6)}));
}

TEST(CGenerating, Examples) {
  EXPECT_EQ(c_generating(1, 1, 0).value, Rational(1));
  EXPECT_EQ(c_generating(1, 1, 1).value, Rational(1));
  EXPECT_EQ(c_generating(3, 1, 2).value, Rational(10, 3));
  EXPECT_EQ(row(c_generating, 4, 2), row(c_young, 4, 2));
}

TEST(CExtremal, Examples) {
  for (long n = 1; n <= 8; ++n) EXPECT_EQ(c_extremal(n, 1, 0)->value, Rational(1));
  for (long k = 1; k <= 3; ++k) EXPECT_EQ(c_extremal(3, 2, k)->value, Rational(28, 3));
  EXPECT_EQ(extremal_n_minus_3(3, 2), Rational(4));
  EXPECT_EQ(extremal_k0(2), Rational(4));
  EXPECT_FALSE(c_extremal(6, 2, 2).has_value());
  EXPECT_FALSE(c_extremal(6, 1, 3).has_value());
  // k = n−2 needs m ≥ 2.
  for (const auto& e : c_extremal_all(4, 1, 2)) EXPECT_NE(e.formula, "k=n-2");
}

TEST(CExtremal, AllFormulasAgreeWithGenerating) {
  for (long n = 1; n <= 9; ++n) {
    for (long m = 1; m <= n; ++m) {
      for (long k = 0; k <= n; ++k) {
        const Rational g = c_generating(n, m, k).value;
        for (const auto& e : c_extremal_all(n, m, k)) EXPECT_EQ(e.value, g) << e.formula << " at " << n << m << k;
      }
    }
  }
}

TEST(Recursion, Examples) {
  const auto t32 = c_recursion_table(3, 2);
  EXPECT_TRUE(t32.consistent());
  EXPECT_EQ(t32.at(3, 2, 2), Rational(28, 3));
  const auto t31 = c_recursion_table(3, 1);
  EXPECT_EQ((Row{t31.at(3, 1, 0), t31.at(3, 1, 1), t31.at(3, 1, 2), t31.at(3, 1, 3)}),
            (Row{1, Rational(7, 3), Rational(10, 3), Rational(10, 3)}));
  const auto t21 = c_recursion_table(2, 1);
  EXPECT_EQ((Row{t21.at(2, 1, 0), t21.at(2, 1, 1), t21.at(2, 1, 2)}), (Row{1, 2, 2}));
  EXPECT_THROW(c_recursion_table(2, 3), std::domain_error);
  EXPECT_THROW(c_recursion_table(2, 0), std::domain_error);
}

TEST(Recursion, ReplaysConsistentAndMatchGenerating) {
  const auto table = c_recursion_table(10, 10);
  EXPECT_TRUE(table.consistent()) << (table.mismatches.empty() ? "" : table.mismatches.front());
  for (unsigned n = 1; n <= 10; ++n) {
    for (unsigned m = 1; m <= n; ++m) {
      for (unsigned k = 0; k <= n; ++k) EXPECT_EQ(table.at(n, m, k), c_generating(n, m, k).value) << n << m << k;
    }
  }
  EXPECT_EQ(table.records().size(), table.values.size());
}

TEST(Recursion, MOneRowsFromInitialCondition) {
  for (unsigned n = 1; n <= 9; ++n) {
    for (unsigned k = 0; k <= n; ++k) EXPECT_EQ(m1_initial_value(n, k), c_generating(n, 1, k).value);
  }
}

TEST(Oracle, Examples) {
  EXPECT_EQ(c_oracle(2, 1, 1).value, Rational(2));
  EXPECT_EQ(c_oracle(2, 2, 0).value, c_extremal(2, 2, 0)->value);
  EXPECT_EQ(c_oracle(2, 2, 0).value, Rational(4));
  EXPECT_EQ(c_oracle(3, 2, 2).value, Rational(28, 3));
  EXPECT_THROW(c_oracle(3, 3, 2, 10), ResourceError);
}

TEST(Routes, AgreeOnSmallGrid) {
  for (long n = 1; n <= 4; ++n) {
    for (long m = 1; m <= n; ++m) {
      for (long k = 0; k <= n; ++k) {
        const Rational g = c_generating(n, m, k).value;
        EXPECT_EQ(c_matrix(n, m, k).value, g);
        EXPECT_EQ(c_partition(n, m, k).value, g);
        EXPECT_EQ(c_young(n, m, k).value, g);
        EXPECT_EQ(c_recursion(n, m, k).value, g);
        EXPECT_EQ(c_oracle(n, m, k).value, g);
        EXPECT_GT(g.sign(), 0);
      }
      EXPECT_EQ(c_generating(n, m, n).value, c_generating(n, m, n - 1).value);
      if (m >= 2) EXPECT_EQ(c_generating(n, m, n - 2).value, c_generating(n, m, n).value);
    }
  }
}

TEST(Routes, DispatchByName) {
  for (Route r : kAllRoutes) {
    EXPECT_EQ(parse_route(route_name(r)), r);
    EXPECT_EQ(c_by_route(r, 3, 2, 1).value, Rational(28, 3)) << route_name(r);
  }
  EXPECT_FALSE(parse_route("bogus").has_value());
  EXPECT_THROW(c_by_route(Route::kExtremal, 6, 2, 2), std::domain_error);
}
