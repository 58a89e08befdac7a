#include <gtest/gtest.h>

#include <numbers>

#include "cubicsum/sieve.hpp"

using namespace cubicsum;

namespace {

// Plain Euler steps for y = u^{-2} sigma_2 with linear interpolation of the lag; an
// independent low-order solver used only as a loose cross-check.
double sigma2_euler(double u_end, double h) {
  const double c = std::exp(-2 * euler_gamma) / 8;
  const auto lag = static_cast<std::size_t>(std::llround(2 / h));
  std::vector<double> y{c};
  double u = 2;
  while (u < u_end - 1e-12) {
    const double v = u - 2;
    const double s2 = v <= 2 ? c * v * v : v * v * y[y.size() - 1 - lag];
    y.push_back(y.back() - h * 2 * s2 / (u * u * u));
    u += h;
  }
  return u_end * u_end * y.back();
}

}  // namespace

TEST(Sigma2, ClosedFormBelowTwo) {
  EXPECT_EQ(sigma2(0), 0.0);
  for (double u = 0.1; u <= 2; u += 0.1) EXPECT_NEAR(sigma2(u), std::exp(-2 * euler_gamma) * u * u / 8, 1e-16);
  EXPECT_NEAR(sigma2(2), std::exp(-2 * euler_gamma) / 2, 1e-10);
  EXPECT_NEAR(sigma2(2), 0.157618375844, 1e-11);
  EXPECT_THROW((void)sigma2(-1), std::domain_error);
}

TEST(Sigma2, ContinuousMonotoneAndBounded) {
  EXPECT_NEAR(sigma2(2 - 1e-12), sigma2(2 + 1e-12), 1e-12);
  double prev = 0, prev_gap = 1;
  for (double u = 0.05; u <= 80; u += 0.05) {
    const double s = sigma2(u);
    const double gap = sigma2_table::shared().deficit(u);
    EXPECT_GE(s, prev) << u;
    EXPECT_LE(s, 1.0);
    EXPECT_GE(gap, 0.0);
    EXPECT_LE(gap, prev_gap) << u;
    prev = s;
    prev_gap = gap;
  }
  EXPECT_LT(1 - sigma2(60), 1e-8);
  EXPECT_NEAR(sigma2_table::shared().deficit(7.5), 1 - sigma2(7.5), 1e-15);
}

TEST(Sigma2, SolverConvergesUnderRefinement) {
  for (double u : {3.0, 5.0, 8.0, 12.0}) {
    const double coarse = sigma2_table(2e-3)(u), fine = sigma2(u);
    EXPECT_NEAR(coarse, fine, 1e-12) << u;
    EXPECT_NEAR(sigma2_euler(u, 1e-4), fine, 1e-4) << u;
  }
  // the deficit keeps its relative accuracy deep in the tail
  const sigma2_table coarse(2e-3);
  for (double u : {20.0, 40.0, 80.0})
    EXPECT_NEAR(coarse.deficit(u) / sigma2_table::shared().deficit(u), 1.0, 1e-9) << u;
}

TEST(H2, DefinitionAndDecay) {
  EXPECT_NEAR(h2(2), 1 - 2 * std::exp(2 * euler_gamma), 1e-9);
  double prev = std::abs(h2(2));
  for (double u = 2.5; u <= 60; u += 0.5) {
    const double v = std::abs(h2(u));
    EXPECT_LE(v, prev);
    prev = v;
  }
  EXPECT_LT(std::abs(h2(60)), 1e-8);
  EXPECT_THROW((void)h2(0), std::domain_error);
}

TEST(FLambda, FactorsAndConvergence) {
  EXPECT_NEAR(f_lambda(4).value, 1.125, 1e-15);
  double prev = 0;
  for (std::int64_t cut : {10, 100, 1000, 10000, 100000}) {
    const auto f = f_lambda(cut);
    EXPECT_GT(f.value, prev);
    EXPECT_LE(f_lambda(1000000).value - f.value, f.tail_bound);
    prev = f.value;
  }
  EXPECT_NEAR(f_lambda(1000000).value, 1.22710960717, 1e-9);
  EXPECT_NEAR(alpha_residue, std::numbers::pi / (3 * std::sqrt(3.0)), 1e-16);
  EXPECT_THROW((void)f_lambda(3), std::domain_error);
}

TEST(RoughSums, WeightIdentitiesAndNonnegativity) {
  const smooth_bump g;
  const split_table table(6000);
  const auto r = rough_sums(3000, 3, g, table);
  EXPECT_GE(r.min_a, 0.0);
  EXPECT_NEAR(r.A_plus + r.A_minus, 2 * r.B, 1e-12 * r.B);
  EXPECT_NEAR(r.A_plus - r.A_minus, 2 * r.signed_sum, 1e-12 * r.B);
  EXPECT_EQ(r.count, static_cast<std::int64_t>(rough_moduli_sieve(3000, std::cbrt(3000.0)).size()));
}

TEST(RoughSums, PrimesOnlyNearUOne) {
  const smooth_bump g;
  const split_table table(4000);
  const auto r = rough_sums(2000, 1.0001, g, table);
  double b = 0;
  std::int64_t n = 0;
  for (const eint& c : enumerate_primary<std::int64_t>(3999))
    if (c.norm() > 2000 && is_prime(c)) {
      b += 2 * g(static_cast<double>(c.norm()) / 2000);
      ++n;
    }
  EXPECT_EQ(r.count, n);
  EXPECT_NEAR(r.B, b, 1e-12 * b);
}

TEST(RoughSums, UnfilteredMatchesBruteForce) {
  const smooth_bump g;
  const split_table table(2000);
  const auto r = rough_sums(1000, 50, g, table);  // z < 2: nothing is sieved out
  double b = 0, s = 0;
  for (const eint& c : enumerate_primary<std::int64_t>(1999)) {
    if (c.norm() <= 1000) continue;
    const double w = g(static_cast<double>(c.norm()) / 1000);
    b += w * std::ldexp(1.0, factor(c).big_omega());
    s += w * s_cubic_direct(eint{1}, c).real() / std::sqrt(static_cast<double>(c.norm()));
  }
  EXPECT_NEAR(r.B, b, 1e-12 * b);
  EXPECT_NEAR(r.signed_sum, s, 1e-9 * b);
}

TEST(GSum, SmallCases) {
  EXPECT_EQ(g_sum(3.9, 100), 1.0);
  // T = infinity: the product over pi of norm <= z of 1 + 2/(N - 2)
  double prod = 1;
  for (const eint& p : sieve_primes(30, eint{1})) prod *= 1 + 2.0 / static_cast<double>(p.norm() - 2);
  EXPECT_NEAR(g_sum(1e30, 30), prod, 1e-12 * prod);
  // excluding the primes dividing c
  const eint c = eint{-2} * eint{1, 3};
  double prod_c = 1;
  for (const eint& p : sieve_primes(30, c)) prod_c *= 1 + 2.0 / static_cast<double>(p.norm() - 2);
  EXPECT_NEAR(g_sum(1e30, 30, c), prod_c, 1e-12 * prod_c);
  EXPECT_NEAR(prod / prod_c, (1 + 2.0 / 2) * (1 + 2.0 / 5), 1e-12);
}

TEST(GSum, OnePrimeMoreIsDistributive) {
  // raising z from 12 to 13 adds the two primes of norm 13; d uses neither, one or both
  const double T = 2000;
  const double g13 = 2.0 / 11;
  const double expected = g_sum(T, 12) + 2 * g13 * g_sum(T / 13, 12) + g13 * g13 * g_sum(T / 169, 12);
  EXPECT_NEAR(g_sum(T, 13), expected, 1e-12 * expected);
}

TEST(GSum, AsymptoticRatio) {
  const double z = 50;
  const double ratio = g_sum(z * z, z) / g_sum_asymptotic(z * z, z);
  EXPECT_GE(ratio, 0.5);
  EXPECT_LE(ratio, 2.0);
}

TEST(GSum, BudgetIsEnforced) {
  EXPECT_THROW((void)g_sum(1e9, 2000, eint{1}, 1000), budget_exceeded);
  EXPECT_THROW((void)g_sum(0.5, 10), std::domain_error);
}
