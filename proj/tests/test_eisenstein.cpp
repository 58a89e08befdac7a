#include <gtest/gtest.h>

#include <random>
#include <set>

#include "cubicsum/eisenstein.hpp"

using namespace cubicsum;

namespace {

eint random_eint(std::mt19937_64& rng, std::int64_t r) {
  std::uniform_int_distribution<std::int64_t> d(-r, r);
  return {d(rng), d(rng)};
}

// w as a complex number, for an independent check of the multiplication table.
std::complex<double> as_complex(const eint& z) {
  const std::complex<double> w{-0.5, std::sqrt(3.0) / 2};
  return static_cast<double>(z.a) + static_cast<double>(z.b) * w;
}

}  // namespace

TEST(Eisenstein, MultiplicationMatchesComplexEmbedding) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const eint x = random_eint(rng, 1000), y = random_eint(rng, 1000);
    const auto p = as_complex(x * y), q = as_complex(x) * as_complex(y);
    EXPECT_NEAR(p.real(), q.real(), 1e-6);
    EXPECT_NEAR(p.imag(), q.imag(), 1e-6);
  }
}

TEST(Eisenstein, RingLaws) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 500; ++i) {
    const eint x = random_eint(rng, 500), y = random_eint(rng, 500), z = random_eint(rng, 500);
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x * (y + z), x * y + x * z);
    EXPECT_EQ(x * y, y * x);
    EXPECT_EQ((x * y).norm(), x.norm() * y.norm());
    EXPECT_EQ(x * x.conj(), eint{x.norm()});
    EXPECT_EQ(x.trace(), (x + x.conj()).a);
  }
}

TEST(Eisenstein, OmegaAndLambda) {
  const eint w = eint::omega();
  EXPECT_EQ(w * w * w, eint{1});
  EXPECT_EQ(w * w + w + eint{1}, eint{});
  const eint l = eint::lambda();
  EXPECT_EQ(l.norm(), 3);
  EXPECT_EQ(l * l, eint{-3} * w);
}

TEST(Eisenstein, UnitsAreTheSixRootsOfUnity) {
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  for (const auto& u : units()) {
    EXPECT_TRUE(u.is_unit());
    EXPECT_EQ(u * unit_inverse(u), eint{1});
    seen.insert({u.a, u.b});
  }
  EXPECT_EQ(seen.size(), 6u);
}

TEST(Eisenstein, DivremRemainderIsSmall) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 2000; ++i) {
    const eint x = random_eint(rng, 100000), y = random_eint(rng, 300);
    if (y.is_zero()) continue;
    const auto qr = divrem(x, y);
    EXPECT_EQ(qr.q * y + qr.r, x);
    EXPECT_LT(qr.r.norm(), y.norm());
  }
}

TEST(Eisenstein, GcdAndBezout) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 1000; ++i) {
    const eint x = random_eint(rng, 5000), y = random_eint(rng, 5000);
    if (x.is_zero() && y.is_zero()) continue;
    const auto [g, s, t] = xgcd(x, y);
    EXPECT_EQ(s * x + t * y, g);
    EXPECT_TRUE(divides(g, x));
    EXPECT_TRUE(divides(g, y));
    EXPECT_EQ(gcd(x, y).norm(), g.norm());
  }
}

TEST(Eisenstein, PrimaryAssociateIsUniquePerClass) {
  std::mt19937_64 rng(15);
  for (int i = 0; i < 500; ++i) {
    const eint c = random_eint(rng, 1000);
    if (c.divisible_by_lambda()) {
      EXPECT_THROW((void)primary_associate(c), std::domain_error);
      continue;
    }
    int primary = 0;
    for (const auto& u : units())
      if ((u * c).is_primary()) ++primary;
    EXPECT_EQ(primary, 1);
    const auto [u, p] = primary_associate(c);
    EXPECT_TRUE(p.is_primary());
    EXPECT_EQ(u * p, c);
  }
}

TEST(Eisenstein, ResidueSystemIsComplete) {
  for (const eint c : {eint{2}, eint{1, 3}, eint{-5, 3}, eint{7}, eint{4, 9}, eint::lambda(), eint{3}}) {
    const residue_system<std::int64_t> rs(c);
    const auto reps = rs.representatives();
    ASSERT_EQ(static_cast<std::int64_t>(reps.size()), c.norm());
    // distinct mod c, and reduce is a projection
    for (std::size_t i = 0; i < reps.size(); ++i) {
      EXPECT_EQ(rs.reduce(reps[i]), reps[i]);
      EXPECT_EQ(rs.index_of(reps[i]), static_cast<std::int64_t>(i));
      for (std::size_t j = i + 1; j < reps.size(); ++j) EXPECT_FALSE(divides(c, reps[i] - reps[j]));
    }
    std::mt19937_64 rng(16);
    for (int k = 0; k < 200; ++k) {
      const eint x = random_eint(rng, 10000);
      EXPECT_TRUE(divides(c, x - rs.reduce(x)));
    }
  }
}

TEST(Eisenstein, InverseModulo) {
  const eint c{7, 3};
  for (const eint& x : residues(c)) {
    if (!coprime(x, c)) {
      EXPECT_THROW((void)inverse_mod(x, c), not_invertible);
      continue;
    }
    EXPECT_TRUE(divides(c, x * inverse_mod(x, c) - eint{1}));
  }
}

TEST(Eisenstein, EnumeratePrimaryMatchesBruteForce) {
  const std::int64_t M = 400;
  std::size_t brute = 0;
  for (std::int64_t a = -40; a <= 40; ++a)
    for (std::int64_t b = -40; b <= 40; ++b) {
      const eint z{a, b};
      if (z.norm() <= M && z.is_primary()) ++brute;
    }
  const auto list = enumerate_primary<std::int64_t>(M);
  EXPECT_EQ(list.size(), brute);
  for (std::size_t i = 1; i < list.size(); ++i) EXPECT_TRUE(norm_order(list[i - 1], list[i]));
}

TEST(Eisenstein, OverflowIsDetected) {
  const eint big{std::int64_t{1} << 40, 1};
  EXPECT_THROW((void)(big * big * big), std::overflow_error);
  const eisenstein<bigint> bb{bigint(1) << 40, bigint(1)};
  EXPECT_EQ((bb * bb * bb).norm(), bb.norm() * bb.norm() * bb.norm());
}

TEST(Eisenstein, Parse) {
  EXPECT_EQ(parse_eisenstein("2+3w"), (eint{2, 3}));
  EXPECT_EQ(parse_eisenstein("-w"), (eint{0, -1}));
  EXPECT_EQ(parse_eisenstein("4-7w"), (eint{4, -7}));
  EXPECT_EQ(parse_eisenstein("-5"), (eint{-5, 0}));
  EXPECT_EQ(parse_eisenstein("2,-3"), (eint{2, -3}));
  EXPECT_EQ(parse_eisenstein(eint{-8, 27}.str()), (eint{-8, 27}));
  EXPECT_THROW(parse_eisenstein("2+x"), std::invalid_argument);
  EXPECT_THROW(parse_eisenstein(""), std::invalid_argument);
  EXPECT_THROW(parse_eisenstein("1+2w+3w"), std::invalid_argument);
}
