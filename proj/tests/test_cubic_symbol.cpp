#include <gtest/gtest.h>

#include <random>

#include "cubicsum/cubic_symbol.hpp"
#include "cubicsum/factor.hpp"

using namespace cubicsum;

namespace {

eint random_eint(std::mt19937_64& rng, std::int64_t r) {
  std::uniform_int_distribution<std::int64_t> d(-r, r);
  return {d(rng), d(rng)};
}

eint random_modulus(std::mt19937_64& rng, std::int64_t r) {
  for (;;) {
    const eint c = random_eint(rng, r);
    if (!c.is_zero() && !c.is_unit() && !c.divisible_by_lambda()) return c;
  }
}

// Product of Euler-criterion symbols over the prime factorization of c.
cubic_root symbol_via_euler(const eint& x, const eint& c) {
  cubic_root acc = cubic_root::one();
  for (const auto& pp : factor(c).factors)
    for (int k = 0; k < pp.exponent; ++k) acc *= cubic_symbol_euler(x, pp.prime);
  return acc;
}

gamma_one_matrix<> random_gamma(std::mt19937_64& rng, int len) {
  gamma_one_matrix<> g;
  std::uniform_int_distribution<int> coin(0, 1);
  for (int i = 0; i < len; ++i) {
    const eint t = eint{3} * random_eint(rng, 3);
    g = g * (coin(rng) ? gamma_one_matrix<>::upper(t) : gamma_one_matrix<>::lower(t));
  }
  return g;
}

}  // namespace

TEST(CubicRoot, GroupStructure) {
  const cubic_root w = cubic_root::omega();
  EXPECT_EQ(w * w * w, cubic_root::one());
  EXPECT_EQ(w.inverse(), cubic_root::omega2());
  EXPECT_EQ(w * cubic_root::zero(), cubic_root::zero());
  EXPECT_THROW((void)cubic_root::zero().inverse(), std::domain_error);
  EXPECT_EQ(cubic_root::power(-4), cubic_root::omega2());
  EXPECT_EQ(w.to_eisenstein(), eint::omega());
  EXPECT_NEAR(std::abs(w.to_complex() - std::complex<double>(-0.5, std::sqrt(3.0) / 2)), 0.0, 1e-15);
}

TEST(CubicSymbol, EulerCriterionOnSmallPrimes) {
  std::size_t checked = 0;
  for (const eint& pi : enumerate_primary<std::int64_t>(400)) {
    if (!is_prime(pi)) continue;
    for (const eint& x : residues(pi)) {
      ASSERT_EQ(cubic_symbol(x, pi), cubic_symbol_euler(x, pi)) << x << " / " << pi;
      ++checked;
    }
  }
  EXPECT_GT(checked, 5000u);
}

TEST(CubicSymbol, CubesAreResidues) {
  const eint pi{-1, 6};  // norm 43
  ASSERT_TRUE(is_prime(pi));
  int ones = 0;
  for (const eint& x : residues(pi)) {
    if (x.is_zero()) continue;
    EXPECT_EQ(cubic_symbol(x * x * x, pi), cubic_root::one());
    if (cubic_symbol(x, pi) == cubic_root::one()) ++ones;
  }
  EXPECT_EQ(ones, 14);
}

TEST(CubicSymbol, CompositeModuliMatchFactorization) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 3000; ++i) {
    const eint c = random_modulus(rng, 200);
    const eint x = random_eint(rng, 100000);
    ASSERT_EQ(cubic_symbol(x, c), symbol_via_euler(x, c)) << x << " / " << c;
  }
}

TEST(CubicSymbol, DependsOnlyOnTheIdeal) {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 500; ++i) {
    const eint c = random_modulus(rng, 1000), x = random_eint(rng, 10000);
    for (const eint& u : units()) EXPECT_EQ(cubic_symbol(x, u * c), cubic_symbol(x, c));
  }
}

TEST(CubicSymbol, Multiplicativity) {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 1000; ++i) {
    const eint c1 = random_modulus(rng, 300), c2 = random_modulus(rng, 300);
    const eint x = random_eint(rng, 10000), y = random_eint(rng, 10000);
    EXPECT_EQ(cubic_symbol(x * y, c1), cubic_symbol(x, c1) * cubic_symbol(y, c1));
    EXPECT_EQ(cubic_symbol(x, c1 * c2), cubic_symbol(x, c1) * cubic_symbol(x, c2));
  }
}

TEST(CubicSymbol, ReciprocityAndSupplements) {
  const auto ps = enumerate_primary<std::int64_t>(3000);
  std::vector<eint> primes;
  for (const eint& p : ps)
    if (is_prime(p)) primes.push_back(p);
  for (std::size_t i = 0; i < primes.size(); i += 7)
    for (std::size_t j = i + 1; j < primes.size(); j += 11) {
      if (primes[i].norm() == primes[j].norm()) continue;
      EXPECT_EQ(cubic_symbol(primes[i], primes[j]), cubic_symbol(primes[j], primes[i]));
    }
  for (const eint& pi : primes) {
    const std::int64_t n = pi.norm();
    EXPECT_EQ(cubic_symbol(eint::omega(), pi), cubic_root::power((n - 1) / 3));
    EXPECT_EQ(cubic_symbol(eint{-1}, pi), cubic_root::one());
    EXPECT_EQ(cubic_symbol(eint::lambda(), pi), cubic_symbol_euler(eint::lambda(), pi));
  }
}

TEST(CubicSymbol, ZeroWhenNotCoprime) {
  std::mt19937_64 rng(34);
  for (int i = 0; i < 500; ++i) {
    const eint c = random_modulus(rng, 500), x = random_eint(rng, 1000);
    EXPECT_EQ(cubic_symbol(x, c).is_zero(), !coprime(x, c));
  }
  EXPECT_THROW((void)cubic_symbol(eint{1}, eint::lambda()), std::domain_error);
  EXPECT_THROW((void)cubic_symbol(eint{1}, eint{}), std::domain_error);
}

TEST(CubicSymbol, BigIntegerAgreesWithInt64) {
  std::mt19937_64 rng(35);
  for (int i = 0; i < 200; ++i) {
    const eint c = random_modulus(rng, 100000), x = random_eint(rng, 100000);
    const eisenstein<bigint> cb{bigint(c.a), bigint(c.b)}, xb{bigint(x.a), bigint(x.b)};
    EXPECT_EQ(cubic_symbol(xb, cb), cubic_symbol(x, c));
  }
}

TEST(Kubota, GeneratorsAreInGammaOne) {
  EXPECT_TRUE(gamma_one_matrix<>::upper(eint{3, -6}).in_gamma_one());
  EXPECT_FALSE(gamma_one_matrix<>::upper(eint{1}).in_gamma_one());
  EXPECT_THROW((void)kubota(gamma_one_matrix<>::upper(eint{1})), std::domain_error);
  EXPECT_EQ(kubota(gamma_one_matrix<>::identity()), cubic_root::one());
}

TEST(Kubota, IsAHomomorphism) {
  std::mt19937_64 rng(36);
  for (int i = 0; i < 2000; ++i) {
    const auto g1 = random_gamma(rng, 3), g2 = random_gamma(rng, 3);
    const auto g = g1 * g2;
    ASSERT_TRUE(g.in_gamma_one());
    EXPECT_EQ(kubota(g), kubota(g1) * kubota(g2));
  }
}
