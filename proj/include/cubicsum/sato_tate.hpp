#pragma once

// Vertical Sato-Tate experiments, the sign census and the triple-product counts.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "cubicsum/exp_sums.hpp"
#include "cubicsum/factor.hpp"
#include "cubicsum/parallel.hpp"

namespace cubicsum {

/// mu_ST([alpha, beta]) = (beta - alpha)/pi - (sin 2beta - sin 2alpha)/(2 pi)
inline double mu_st(double alpha, double beta) {
  constexpr double eps = 1e-12;
  if (alpha < -eps || beta > std::numbers::pi + eps || alpha > beta + eps)
    throw std::domain_error("mu_st: need 0 <= alpha <= beta <= pi");
  return (beta - alpha) / std::numbers::pi - (std::sin(2 * beta) - std::sin(2 * alpha)) / (2 * std::numbers::pi);
}

inline double st_cdf(double theta) { return mu_st(0.0, std::clamp(theta, 0.0, std::numbers::pi)); }

/// Measure of I(t) = [0, t] u [pi - t, pi], namely (2t - sin 2t)/pi.
inline double symmetric_interval_mass(double t) { return (2 * t - std::sin(2 * t)) / std::numbers::pi; }

/// t in (0, pi/2) with mu_ST(I(t)) = mass, by bisection.
inline double solve_interval_t(double mass) {
  if (!(mass > 0.0 && mass < 1.0)) throw std::domain_error("solve_interval_t: mass must be in (0, 1)");
  double lo = 0.0, hi = std::numbers::pi / 2;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (symmetric_interval_mass(mid) < mass ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline bool in_symmetric_interval(double theta, double t) { return theta <= t || theta >= std::numbers::pi - t; }

/// Kolmogorov-Smirnov distance between the sample and mu_ST.
inline double ks_distance(std::vector<double> thetas) {
  if (thetas.empty()) throw std::domain_error("ks_distance: empty sample");
  std::sort(thetas.begin(), thetas.end());
  const double n = static_cast<double>(thetas.size());
  double d = 0.0;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const double f = st_cdf(thetas[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

struct sato_tate_result {
  std::vector<angle_sample> samples;
  double ks{};
};

/// All angles theta_{a, pi}, a over the nonzero residues mod pi, and their KS distance to mu_ST.
inline sato_tate_result sato_tate_experiment(const eint& pi, unsigned workers = 0) {
  if (!is_prime(pi)) throw std::domain_error("sato_tate_experiment: modulus is not prime");
  if (pi.divisible_by_lambda() || pi.norm() < 5) throw std::domain_error("sato_tate_experiment: need norm >= 5 and pi coprime to 3");
  const std::int64_t n = pi.norm();
  const double scale = 2.0 * std::sqrt(static_cast<double>(n));
  sato_tate_result out;
  if (is_prime_u64(static_cast<std::uint64_t>(n))) {
    const split_model sm(pi);
    const auto h = split_histogram(sm);
    std::vector<double> cos_table(static_cast<std::size_t>(n));
    for (std::int64_t k = 0; k < n; ++k) cos_table[static_cast<std::size_t>(k)] = std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
    std::vector<std::int64_t> support;
    for (std::int64_t v = 0; v < n; ++v)
      if (h[static_cast<std::size_t>(v)] != 0) support.push_back(v);
    auto thetas = parallel_map<double>(static_cast<std::size_t>(n - 1), [&](std::size_t i) {
      const auto alpha = static_cast<std::int64_t>(i) + 1;
      double s = 0.0;
      for (std::int64_t v : support) s += static_cast<double>(h[static_cast<std::size_t>(v)]) * cos_table[static_cast<std::size_t>(static_cast<__int128>(alpha) * v % n)];
      return angle_from_ratio(s / scale);
    }, workers);
    for (std::size_t i = 0; i < thetas.size(); ++i) out.samples.push_back({pi, eint{static_cast<std::int64_t>(i) + 1}, thetas[i]});
  } else {
    std::vector<eint> as;
    residue_system<std::int64_t>(pi).for_each([&](const eint& a) {
      if (!a.is_zero()) as.push_back(a);
    });
    auto thetas = parallel_map<double>(as.size(), [&](std::size_t i) { return angle_from_ratio(s_direct_real(as[i], pi) / scale); }, workers);
    for (std::size_t i = 0; i < as.size(); ++i) out.samples.push_back({pi, as[i], thetas[i]});
  }
  std::vector<double> th;
  th.reserve(out.samples.size());
  for (const auto& s : out.samples) th.push_back(s.theta);
  out.ks = ks_distance(std::move(th));
  return out;
}

/// Fraction of the sample with theta in I(t).
inline double interval_fraction(const std::vector<angle_sample>& samples, double t) {
  std::size_t k = 0;
  for (const auto& s : samples) k += in_symmetric_interval(s.theta, t) ? 1 : 0;
  return static_cast<double>(k) / static_cast<double>(samples.size());
}

/// The first primary prime (in (norm, a, b) order) of prime norm >= target.
inline eint split_prime_near(std::int64_t target) {
  for (std::int64_t p = std::max<std::int64_t>(target, 7);; ++p)
    if (p % 3 == 1 && is_prime_u64(static_cast<std::uint64_t>(p))) return split_prime<std::int64_t>(p);
}

// ---------------------------------------------------------------------------
// Rough moduli and the sign census

struct rough_modulus {
  eint c;
  std::int64_t norm;
  int big_omega;
};

/// Primary c with lo <= N(c) < hi whose prime factors all have norm >= z, in (norm, a, b) order.
inline std::vector<rough_modulus> rough_primary(std::int64_t lo, std::int64_t hi, double z, const split_table& table) {
  std::vector<rough_modulus> out;
  if (hi <= 1) return out;
  for (const eint& c : enumerate_primary<std::int64_t>(hi - 1)) {
    const std::int64_t n = c.norm();
    if (n < lo) continue;
    const auto f = factor(c, table);
    bool rough = true;
    for (const auto& pp : f.factors)
      if (static_cast<double>(pp.prime.norm()) < z) rough = false;
    if (rough) out.push_back({c, n, f.big_omega()});
  }
  return out;
}

struct census_row {
  std::int64_t X{};
  double u{};
  std::int64_t positives{}, negatives{}, zeros{}, total{};
};

/// Signs of S(1, c) over primary c with X <= N(c) < 2X and all prime factors of norm >= X^(1/u).
inline census_row sign_census(std::int64_t X, double u, const split_table* table = nullptr, unsigned workers = 0) {
  if (X < 10 || u < 1.0) throw std::domain_error("sign_census: need X >= 10 and u >= 1");
  const split_table local = table ? split_table(0) : split_table(static_cast<std::uint64_t>(2 * X));
  const split_table& tab = table ? *table : local;
  const auto moduli = rough_primary(X, 2 * X, std::pow(static_cast<double>(X), 1.0 / u), tab);
  const auto sums = parallel_map<double>(moduli.size(), [&](std::size_t i) { return s_real(eint{1}, moduli[i].c, &tab); }, workers);
  census_row row{X, u};
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const double eps = 1e-6 * std::sqrt(static_cast<double>(moduli[i].norm));
    if (sums[i] > eps) ++row.positives;
    else if (sums[i] < -eps) ++row.negatives;
    else ++row.zeros;
  }
  row.total = static_cast<std::int64_t>(moduli.size());
  return row;
}

// ---------------------------------------------------------------------------
// Triple products c = pi1 pi2 pi3

struct exponent_bounds {
  double mu3_minus = 7.0 / 42.0;
  double mu3_plus = 13.0 / 42.0;
  double mu2_minus = 13.0 / 42.0;
  double mu2_plus = 1.0 / 3.0;
};

class empty_range : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct triple_product_result {
  double mE{}, mE1{}, mE2{}, mE3{}, mE123{};
  double t{}, mu_interval{};
  std::int64_t triples{};
  double P3_minus{}, P3_plus{}, P2_minus{}, P2_plus{};
  [[nodiscard]] double ratio(int i) const { return (i == 1 ? mE1 : i == 2 ? mE2 : mE3) / mE; }
  /// 8 cos^3 t (3 mu_ST(I) - 2) m(E)
  [[nodiscard]] double lower_bound_functional() const { return 8 * std::pow(std::cos(t), 3) * (3 * mu_interval - 2) * mE; }
};

namespace detail {

/// max { 2^l P : l >= 1, 2^l P < limit / 2 }
inline double dyadic_top(double p_minus, double limit) {
  double best = -1.0;
  for (double v = 2 * p_minus; v < limit / 2; v *= 2) best = v;
  if (best < 0) throw empty_range("triple_product_experiment: exponent range is empty at this X");
  return best;
}

inline double angle_of(const eint& a, const eint& pi) {
  const double scale = 2.0 * std::sqrt(static_cast<double>(pi.norm()));
  if (is_prime_u64(static_cast<std::uint64_t>(pi.norm()))) {
    const split_model sm(pi);
    return angle_from_ratio(s_split_real(sm.image(a), sm) / scale);
  }
  return angle_from_ratio(s_direct_real(a, pi) / scale);
}

}  // namespace detail

/// Weighted counts m(E), m(E_i) over c = pi1 pi2 pi3 with P3- <= N(pi3) < 2P3+, P2- <= N(pi2) < 2P2+,
/// all N(pi_i) > X^(1/u), weight g(N(c)/X) and the constraints theta_i in I(t).
inline triple_product_result triple_product_experiment(double X, double u, const exponent_bounds& b, double t,
                                                       const std::function<double(double)>& g, unsigned workers = 0) {
  if (u < 3.0) throw std::domain_error("triple_product_experiment: need u >= 3");
  if (!(b.mu3_minus < b.mu3_plus && b.mu3_plus <= b.mu2_minus && b.mu2_minus < b.mu2_plus && b.mu2_plus < 1.0))
    throw std::domain_error("triple_product_experiment: exponents must satisfy mu3- < mu3+ <= mu2- < mu2+ < 1");
  triple_product_result r;
  r.t = t;
  r.mu_interval = t >= std::numbers::pi / 2 ? 1.0 : symmetric_interval_mass(t);
  r.P3_minus = std::pow(X, b.mu3_minus);
  r.P2_minus = std::pow(X, b.mu2_minus);
  r.P3_plus = detail::dyadic_top(r.P3_minus, std::pow(X, b.mu3_plus));
  r.P2_plus = detail::dyadic_top(r.P2_minus, std::pow(X, b.mu2_plus));
  const double z = std::pow(X, 1.0 / u);
  const auto n1_max = static_cast<std::int64_t>(2 * X / (r.P3_minus * r.P2_minus)) + 1;
  const auto n_max = std::max<std::int64_t>(n1_max, static_cast<std::int64_t>(2 * r.P2_plus) + 1);
  std::vector<eint> primes;
  for (const eint& p : enumerate_primary<std::int64_t>(n_max))
    if (is_prime(p) && static_cast<double>(p.norm()) > z) primes.push_back(p);
  auto in_range = [](const eint& p, double lo, double hi) {
    const auto n = static_cast<double>(p.norm());
    return lo <= n && n < hi;
  };
  struct pair23 {
    eint p2, p3;
  };
  std::vector<pair23> pairs;
  for (const eint& p3 : primes) {
    if (!in_range(p3, r.P3_minus, 2 * r.P3_plus)) continue;
    for (const eint& p2 : primes)
      if (in_range(p2, r.P2_minus, 2 * r.P2_plus) && !(p2 == p3)) pairs.push_back({p2, p3});
  }
  struct partial {
    double mE = 0, m1 = 0, m2 = 0, m3 = 0, m123 = 0;
    std::int64_t count = 0;
  };
  const auto parts = parallel_map<partial>(pairs.size(), [&](std::size_t i) {
    partial acc;
    const eint& p2 = pairs[i].p2;
    const eint& p3 = pairs[i].p3;
    const double n23 = static_cast<double>(p2.norm()) * static_cast<double>(p3.norm());
    for (const eint& p1 : primes) {
      if (p1 == p2 || p1 == p3) continue;
      const double w = g(static_cast<double>(p1.norm()) * n23 / X);
      if (w == 0.0) continue;
      const double th1 = detail::angle_of(inverse_mod(p2 * p3, p1), p1);
      const double th2 = detail::angle_of(inverse_mod(p1 * p3, p2), p2);
      const double th3 = detail::angle_of(inverse_mod(p1 * p2, p3), p3);
      const bool i1 = in_symmetric_interval(th1, t), i2 = in_symmetric_interval(th2, t), i3 = in_symmetric_interval(th3, t);
      acc.mE += w;
      acc.m1 += i1 ? w : 0.0;
      acc.m2 += i2 ? w : 0.0;
      acc.m3 += i3 ? w : 0.0;
      acc.m123 += (i1 && i2 && i3) ? w : 0.0;
      ++acc.count;
    }
    return acc;
  }, workers);
  for (const auto& p : parts) {
    r.mE += p.mE;
    r.mE1 += p.m1;
    r.mE2 += p.m2;
    r.mE3 += p.m3;
    r.mE123 += p.m123;
    r.triples += p.count;
  }
  if (r.triples == 0) throw empty_range("triple_product_experiment: no admissible triples");
  return r;
}

}  // namespace cubicsum
