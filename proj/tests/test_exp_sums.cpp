#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "cubicsum/exp_sums.hpp"

using namespace cubicsum;

namespace {

eint random_eint(std::mt19937_64& rng, std::int64_t r) {
  std::uniform_int_distribution<std::int64_t> d(-r, r);
  return {d(rng), d(rng)};
}

eint random_modulus(std::mt19937_64& rng, std::int64_t r, bool coprime_to_3) {
  for (;;) {
    const eint c = random_eint(rng, r);
    if (c.is_zero() || c.is_unit()) continue;
    if (coprime_to_3 && c.divisible_by_lambda()) continue;
    return c;
  }
}

// e(y / c) with y / c = y conj(c) / N(c) and Tr = 2 Re.
std::complex<double> e_over(const eint& y, const eint& c) {
  const std::int64_t n = c.norm();
  std::int64_t t = (y * c.conj()).trace() % n;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(n));
}

std::complex<double> s_naive(const eint& a, const eint& c) {
  std::complex<double> s;
  for (const eint& x : residues(c)) s += e_over(a * (x * x * x - eint{3} * x), c);
  return s;
}

cubic_root symbol_via_euler(const eint& x, const eint& c) {
  cubic_root acc = cubic_root::one();
  for (const auto& pp : factor(c).factors)
    for (int k = 0; k < pp.exponent; ++k) acc *= cubic_symbol_euler(x, pp.prime);
  return acc;
}

std::complex<double> k3_naive(const eint& m, const eint& n, const eint& c) {
  const auto rs = residues(c);
  std::complex<double> s;
  for (const eint& x : rs) {
    if (!coprime(x, c)) continue;
    eint xbar;
    for (const eint& y : rs)
      if (divides(c, x * y - eint{1})) xbar = y;
    s += symbol_via_euler(x, c).to_complex() * e_over(m * x + n * xbar, c);
  }
  return s;
}

}  // namespace

TEST(RootSum, CyclotomicRelations) {
  for (std::int64_t m : {2, 3, 4, 9, 12, 30, 49}) {
    root_sum all(m);
    for (std::int64_t k = 0; k < m; ++k) all.add(k);
    EXPECT_TRUE(all.is_exactly_zero()) << m;
    root_sum one_zero(m);
    one_zero.add(0);
    EXPECT_FALSE(one_zero.is_exactly_zero());
  }
  // 1 + w + w^2 = 0 seen over the 6th roots, and zeta_4 + zeta_4^3 = 0
  root_sum a(6);
  a.add(0), a.add(2), a.add(4);
  EXPECT_TRUE(a.is_exactly_zero());
  root_sum b(4);
  b.add(1), b.add(3);
  EXPECT_TRUE(b.is_exactly_real());
  EXPECT_TRUE(exactly_equal(b, root_sum(7)));
  root_sum c(5);
  c.add(1);
  EXPECT_FALSE(c.is_exactly_real());
  EXPECT_TRUE(exactly_equal(c * c.conj(), root_sum::constant(1)));
}

TEST(RootSum, ArithmeticMatchesComplexValues) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 100; ++i) {
    std::uniform_int_distribution<std::int64_t> md(1, 40), cd(-3, 3);
    root_sum x(md(rng)), y(md(rng));
    for (std::int64_t k = 0; k < x.modulus(); ++k) x.add(k, cd(rng));
    for (std::int64_t k = 0; k < y.modulus(); ++k) y.add(k, cd(rng));
    EXPECT_NEAR(std::abs((x * y).value() - x.value() * y.value()), 0.0, 1e-9);
    EXPECT_NEAR(std::abs((x + y).value() - (x.value() + y.value())), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(x.rotate(1).value() - x.value() * std::polar(1.0, 2 * std::numbers::pi / x.modulus())), 0.0, 1e-9);
  }
}

TEST(ExpSums, CubicSumMatchesNaive) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 300; ++i) {
    const eint c = random_modulus(rng, 14, false), a = random_eint(rng, 50);
    const root_sum s = s_cubic_direct(a, c);
    EXPECT_EQ(s.total_count(), c.norm());
    EXPECT_NEAR(std::abs(s.value() - s_naive(a, c)), 0.0, 1e-8) << a << " / " << c;
  }
}

TEST(ExpSums, KloostermanMatchesNaive) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 150; ++i) {
    const eint c = random_modulus(rng, 10, true), m = random_eint(rng, 50), n = random_eint(rng, 50);
    EXPECT_NEAR(std::abs(k3_direct(m, n, c).value() - k3_naive(m, n, c)), 0.0, 1e-8) << m << "," << n << " / " << c;
  }
}

TEST(ExpSums, FastKloostermanIsExact) {
  std::mt19937_64 rng(44);
  for (int i = 0; i < 300; ++i) {
    const eint c = random_modulus(rng, 25, true), m = random_eint(rng, 1000), n = random_eint(rng, 1000);
    EXPECT_TRUE(exactly_equal(k3_fast(m, n, c), k3_direct(m, n, c))) << m << "," << n << " / " << c;
  }
}

TEST(ExpSums, CubicSumEqualsKloostermanAtEqualArguments) {
  std::size_t checked = 0;
  for (const eint& c : enumerate_primary<std::int64_t>(400)) {
    if (c.is_unit()) continue;
    EXPECT_TRUE(exactly_equal(s_cubic_direct(eint{1}, c), k3_direct(eint{1}, eint{1}, c))) << c;
    ++checked;
  }
  EXPECT_GT(checked, 100u);
  std::mt19937_64 rng(45);
  for (int i = 0; i < 200; ++i) {
    const eint c = random_modulus(rng, 20, true), a = random_eint(rng, 100);
    if (!coprime(a, c)) continue;
    EXPECT_TRUE(exactly_equal(s_cubic(a, c), s_cubic_direct(a, c))) << a << " / " << c;
  }
}

TEST(ExpSums, RealityAndWeilBound) {
  for (const eint& pi : enumerate_primary<std::int64_t>(2000)) {
    if (!is_prime(pi)) continue;
    for (const eint& a : {eint{1}, eint{2, 1}, eint{-1, 5}}) {
      if (divides(pi, a)) continue;
      const root_sum s = s_cubic_direct(a, pi);
      ASSERT_TRUE(s.is_exactly_real()) << a << " / " << pi;
      EXPECT_LE(std::abs(s.real()), 2.0 * std::sqrt(static_cast<double>(pi.norm())) + 1e-9);
      EXPECT_NEAR(s.imag(), 0.0, 1e-9);
    }
  }
}

TEST(ExpSums, KloostermanBound) {
  std::mt19937_64 rng(46);
  for (int i = 0; i < 200; ++i) {
    const eint c = random_modulus(rng, 30, true), m = random_eint(rng, 1000), n = random_eint(rng, 1000);
    const double bound = std::ldexp(1.0, factor(c).small_omega()) * static_cast<double>(gcd(gcd(m, n), c).norm()) *
                         std::sqrt(static_cast<double>(c.norm()));
    EXPECT_LE(std::abs(k3_fast(m, n, c).value()), bound * (1 + 1e-12) + 1e-9) << m << "," << n << " / " << c;
  }
}

TEST(ExpSums, FloatEvaluatorsAgreeWithExactSums) {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 300; ++i) {
    const eint c = random_modulus(rng, 40, false), a = random_eint(rng, 10000);
    const double exact = s_cubic_direct(a, c).real();
    EXPECT_NEAR(s_direct_real(a, c), exact, 1e-8 * (1 + std::sqrt(static_cast<double>(c.norm()))));
    EXPECT_NEAR(s_real(a, c), exact, 1e-8 * (1 + c.norm())) << a << " / " << c;
  }
  const split_table table(5000);
  for (const eint& pi : enumerate_primary<std::int64_t>(5000)) {
    if (!is_prime_u64(static_cast<std::uint64_t>(pi.norm())) || pi.norm() < 1000) continue;
    const split_model sm(pi);
    EXPECT_EQ(sm.image(pi), 0);
    EXPECT_NEAR(s_split_real(1, sm), s_cubic_direct(eint{1}, pi).real(), 1e-8);
    EXPECT_NEAR(s_real(eint{2, 1}, pi, &table), s_cubic_direct(eint{2, 1}, pi).real(), 1e-8);
  }
}

TEST(ExpSums, SumOverUnitModulusAndErrors) {
  EXPECT_TRUE(exactly_equal(s_cubic(eint{5}, eint{1}), root_sum::constant(1)));
  EXPECT_THROW((void)s_cubic(eint{1}, eint{}), std::domain_error);
  EXPECT_THROW((void)k3_direct(eint{1}, eint{1}, eint{3}), std::domain_error);
  EXPECT_TRUE(s_cubic(eint{1}, eint{2}).is_exactly_zero());
}

TEST(ExpSums, GeometricKloostermanSupport) {
  const eint d{1, -3};  // primary, norm 13
  ASSERT_TRUE(d.is_primary());
  EXPECT_TRUE(geometric_kloosterman(eint{1}, eint{1}, eint{2, 3}, d).is_exactly_zero());
  const eint c = d * eint{-2};
  EXPECT_TRUE(exactly_equal(geometric_kloosterman(eint{1}, eint{2}, c, d), k3_fast(eint{1}, eint{2}, c)));
  EXPECT_THROW((void)geometric_kloosterman(eint{1}, eint{1}, c, eint{2, 3}), std::domain_error);
}

TEST(ExpSums, AnglesLieInRange) {
  for (const eint& pi : enumerate_primary<std::int64_t>(3000)) {
    if (!is_prime(pi)) continue;
    const auto s = angle(eint{1}, pi);
    EXPECT_GE(s.theta, 0.0);
    EXPECT_LE(s.theta, std::numbers::pi);
  }
  EXPECT_THROW((void)angle_from_ratio(1.01), weil_violation);
  EXPECT_THROW((void)angle(eint{1}, eint{-2, 0} * eint{-2, 0}), std::domain_error);
}
