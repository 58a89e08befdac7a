#pragma once

// Sieve ingredients: sigma_2, h_2, the Euler product F_lambda(1), rough-number sums
// weighted by 2^Omega(c) and S(1, c), and the sums G_c(T, z).

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "cubicsum/exp_sums.hpp"
#include "cubicsum/factor.hpp"
#include "cubicsum/moments.hpp"
#include "cubicsum/parallel.hpp"

namespace cubicsum {

inline constexpr double euler_gamma = std::numbers::egamma;
/// Residue of the Dedekind zeta function of Q(w) at s = 1.
inline constexpr double alpha_residue = std::numbers::pi / (3.0 * 1.7320508075688772935274463415058723);

// ---------------------------------------------------------------------------
// sigma_2

/// sigma_2(u) = e^{-2 gamma} u^2 / 8 on [0, 2]; beyond, y = u^{-2} sigma_2 solves
/// y'(u) = -2 u^{-3} sigma_2(u - 2). The equation is linear and u^{-2} is a solution, so the
/// table integrates the complement d = u^{-2} - y = u^{-2}(1 - sigma_2) on a fixed grid, with
/// cubic Hermite interpolation for the lagged value. Carrying 1 - sigma_2 keeps full relative
/// precision once sigma_2 is within rounding of 1.
class sigma2_table {
 public:
  explicit sigma2_table(double step = 1e-3, double u_max = 100.0) : h_(step), u_max_(u_max) {
    lag_ = static_cast<std::size_t>(std::llround(2.0 / h_));
    if (std::abs(static_cast<double>(lag_) * h_ - 2.0) > 1e-12) throw std::domain_error("sigma2_table: step must divide 2");
    const auto n = static_cast<std::size_t>(std::ceil((u_max_ - 2.0) / h_)) + 1;
    d_.resize(n);
    dd_.resize(n);
    d_[0] = (1.0 - closed_form(2.0)) / 4.0;
    dd_[0] = rhs(2.0, 0, false);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const double u = node(k);
      const double f0 = dd_[k];
      const double fm = rhs(u + h_ / 2, k, true);
      const double f1 = rhs(u + h_, k + 1, false);
      d_[k + 1] = d_[k] + h_ / 6.0 * (f0 + 4.0 * fm + f1);
      dd_[k + 1] = f1;
    }
    refine_tail();
  }

  [[nodiscard]] double step() const { return h_; }
  [[nodiscard]] double u_max() const { return u_max_; }

  /// 1 - sigma_2(u), accurate to full relative precision.
  [[nodiscard]] double deficit(double u) const {
    if (u < 0.0) throw std::domain_error("sigma2: u must be nonnegative");
    if (u <= 2.0) return 1.0 - closed_form(u);
    if (u >= node(d_.size() - 1)) return u * u * d_.back();
    const double x = (u - 2.0) / h_;
    const auto k = static_cast<std::size_t>(x);
    return u * u * hermite(k, x - static_cast<double>(k));
  }

  /// y(u) = u^{-2} sigma_2(u) for u > 0.
  [[nodiscard]] double y(double u) const { return (*this)(u) / (u * u); }

  [[nodiscard]] double operator()(double u) const {
    if (u <= 2.0 && u >= 0.0) return closed_form(u);
    return 1.0 - deficit(u);
  }

  static const sigma2_table& shared() {
    static const sigma2_table table;
    return table;
  }

 private:
  static double closed_form(double u) { return std::exp(-2.0 * euler_gamma) * u * u / 8.0; }

  [[nodiscard]] double node(std::size_t k) const { return 2.0 + static_cast<double>(k) * h_; }

  [[nodiscard]] double hermite(std::size_t k, double s) const {
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
    return h00 * d_[k] + h10 * h_ * dd_[k] + h01 * d_[k + 1] + h11 * h_ * dd_[k + 1];
  }

  /// Once d is small the forward sum has lost its relative precision. Since d(infinity) = 0,
  /// d(u_k) is minus the sum of the later increments; recompute those from the lagged values
  /// until the table stops changing (errors drift one lag interval forward per pass and leave the table).
  void refine_tail() {
    const std::size_t n = d_.size();
    std::size_t start = 0;
    while (start < n && d_[start] > 1e-4 * d_[0]) ++start;
    if (start + 1 >= n) return;
    std::vector<double> next(n);
    for (std::size_t pass = 0; pass < 4 * (n / lag_) + 8; ++pass) {
      for (std::size_t k = start; k < n; ++k) dd_[k] = rhs(node(k), k, false);
      next[n - 1] = 0.0;
      for (std::size_t k = n - 1; k-- > start;) {
        const double fm = rhs(node(k) + h_ / 2, k, true);
        next[k] = next[k + 1] - h_ / 6.0 * (dd_[k] + 4.0 * fm + dd_[k + 1]);
      }
      bool same = true;
      for (std::size_t k = start; k < n; ++k) {
        same = same && next[k] == d_[k];
        d_[k] = next[k];
      }
      if (same) break;
    }
    for (std::size_t k = start; k < n; ++k) dd_[k] = rhs(node(k), k, false);
  }

  /// -2 u^{-3} (1 - sigma_2(u - 2)), u = node(k) or node(k) + h/2.
  [[nodiscard]] double rhs(double u, std::size_t k, bool mid) const {
    const double v = u - 2.0;
    double e;
    if (k < lag_ || (k == lag_ && !mid)) {
      e = 1.0 - closed_form(v);
    } else {
      const std::size_t j = k - lag_;
      e = v * v * (mid ? hermite(j, 0.5) : d_[j]);
    }
    return -2.0 * e / (u * u * u);
  }

  double h_;
  double u_max_;
  std::size_t lag_{};
  std::vector<double> d_, dd_;
};

inline double sigma2(double u) { return sigma2_table::shared()(u); }

/// h_2(u) = 1 - 1/sigma_2(u)
inline double h2(double u) {
  const double s = sigma2(u);
  if (s == 0.0) throw std::domain_error("h2: sigma_2 vanishes");
  return -sigma2_table::shared().deficit(u) / s;
}

// ---------------------------------------------------------------------------
// F_lambda(1)

struct euler_product {
  double value{};
  double tail_bound{};  ///< |F_lambda(1) - value| <= tail_bound
};

/// prod over prime ideals (pi) != (lambda) with N(pi) <= cutoff of 1 + 1/(N(pi)(N(pi) - 2)).
inline euler_product f_lambda(std::int64_t cutoff) {
  if (cutoff < 4) throw std::domain_error("f_lambda: cutoff must be >= 4");
  std::vector<bool> composite(static_cast<std::size_t>(cutoff) + 1, false);
  double log_value = 0.0;
  auto factor_at = [&](double n) { log_value += std::log1p(1.0 / (n * (n - 2.0))); };
  for (std::int64_t p = 2; p <= cutoff; ++p) {
    if (composite[static_cast<std::size_t>(p)]) continue;
    for (std::int64_t q = p * p; q <= cutoff; q += p) composite[static_cast<std::size_t>(q)] = true;
    if (p % 3 == 1) {
      factor_at(static_cast<double>(p));
      factor_at(static_cast<double>(p));
    } else if (p % 3 == 2 && p <= cutoff / p) {
      factor_at(static_cast<double>(p * p));
    }
  }
  // Each norm n > cutoff carries at most two prime ideals and 1/(n(n-2)) <= 2/n^2,
  // so the log of the missing factor is at most sum_{n > cutoff} 4/n^2 < 4/cutoff.
  const double value = std::exp(log_value);
  return {value, value * std::expm1(4.0 / static_cast<double>(cutoff))};
}

// ---------------------------------------------------------------------------
// Rough sums

/// Primary primes (lambda excluded) of norm below z, ascending.
inline std::vector<eint> small_primary_primes(double z) {
  std::vector<eint> out;
  const auto top = static_cast<std::int64_t>(std::ceil(z));
  if (top < 2) return out;
  for (const eint& p : enumerate_primary<std::int64_t>(top))
    if (static_cast<double>(p.norm()) < z && is_prime(p)) out.push_back(p);
  return out;
}

/// Primary c with X < N(c) < 2X not divisible by any prime of norm < z; found by trial division.
inline std::vector<eint> rough_moduli_sieve(std::int64_t X, double z) {
  const auto small = small_primary_primes(z);
  std::vector<eint> out;
  for (const eint& c : enumerate_primary<std::int64_t>(2 * X - 1)) {
    if (c.norm() <= X) continue;
    bool rough = true;
    for (const eint& p : small)
      if (divides(p, c)) {
        rough = false;
        break;
      }
    if (rough) out.push_back(c);
  }
  return out;
}

struct sieve_sums {
  std::int64_t X{};
  double u{};
  std::int64_t count{};
  double B{};           ///< sum b_c
  double A_plus{};      ///< sum a_c^+
  double A_minus{};     ///< sum a_c^-
  double signed_sum{};  ///< sum g S(1,c)/sqrt N(c)
  double min_a{};       ///< min over c of min(a_c^+, a_c^-)
  double main_term{};   ///< e^{-2 gamma} ghat(1) (X / log X)(u^2 + 2u)

  [[nodiscard]] double ratio() const { return B / main_term; }
};

/// One pass over the rough primary c with X < N(c) < 2X (prime factors of norm >= X^(1/u)):
/// b_c = g 2^Omega(c), a_c^+- = g (+-S(1,c)/sqrt N(c) + 2^Omega(c)).
inline sieve_sums rough_sums(std::int64_t X, double u, const smooth_bump& g, const split_table& table, unsigned workers = 0) {
  if (X < 100 || u < 1.0) throw std::domain_error("rough_sums: need X >= 100 and u >= 1");
  const double z = std::pow(static_cast<double>(X), 1.0 / u);
  std::vector<eint> cs;
  std::vector<int> omegas;
  for (const eint& c : enumerate_primary<std::int64_t>(2 * X - 1)) {
    if (c.norm() <= X) continue;
    const auto f = factor(c, table);
    bool rough = true;
    for (const auto& pp : f.factors)
      if (static_cast<double>(pp.prime.norm()) < z) rough = false;
    if (!rough) continue;
    cs.push_back(c);
    omegas.push_back(f.big_omega());
  }
  const auto vals = parallel_map<double>(cs.size(), [&](std::size_t i) {
    return s_real(eint{1}, cs[i], &table) / std::sqrt(static_cast<double>(cs[i].norm()));
  }, workers);
  sieve_sums out{X, u, static_cast<std::int64_t>(cs.size())};
  out.min_a = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const double w = g(static_cast<double>(cs[i].norm()) / static_cast<double>(X));
    const double two_omega = std::ldexp(1.0, omegas[i]);
    const double ap = w * (vals[i] + two_omega), am = w * (-vals[i] + two_omega);
    out.B += w * two_omega;
    out.A_plus += ap;
    out.A_minus += am;
    out.signed_sum += w * vals[i];
    out.min_a = std::min({out.min_a, ap, am});
  }
  const double xd = static_cast<double>(X);
  out.main_term = std::exp(-2.0 * euler_gamma) * mellin(g, 1.0).real() * xd / std::log(xd) * (u * u + 2 * u);
  return out;
}

// ---------------------------------------------------------------------------
// G_c(T, z)

class budget_exceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void g_sum_rec(const std::vector<eint>& primes, std::size_t from, double norm, double gval, double T, double& acc,
                      std::int64_t& nodes, std::int64_t budget) {
  acc += gval;
  if (++nodes > budget) throw budget_exceeded("g_sum: node budget exceeded");
  for (std::size_t i = from; i < primes.size(); ++i) {
    const auto n = static_cast<double>(primes[i].norm());
    if (norm * n > T) break;
    g_sum_rec(primes, i + 1, norm * n, gval * 2.0 / (n - 2.0), T, acc, nodes, budget);
  }
}

}  // namespace detail

/// Primary primes pi != lambda with N(pi) <= z and pi not dividing c.
inline std::vector<eint> sieve_primes(double z, const eint& c) {
  std::vector<eint> out;
  for (const eint& p : enumerate_primary<std::int64_t>(static_cast<std::int64_t>(std::floor(z))))
    if (is_prime(p) && !divides(p, c)) out.push_back(p);
  return out;
}

/// G_c(T, z) = sum g(d) over squarefree primary d | P(z), N(d) <= T, gcd(d, c) = 1, with g(pi) = 2/(N(pi) - 2).
inline double g_sum(double T, double z, const eint& c = eint{1}, std::int64_t budget = 50'000'000) {
  if (T < 1.0 || z < 2.0) throw std::domain_error("g_sum: need T >= 1 and z >= 2");
  const auto primes = sieve_primes(z, c);
  double acc = 0.0;
  std::int64_t nodes = 0;
  detail::g_sum_rec(primes, 0, 1.0, 1.0, T, acc, nodes, budget);
  return acc;
}

/// alpha^2 (4/9) e^{2 gamma} F_lambda(1) prod_{pi | c} (1 - 2/N(pi)) sigma_2(2 tau) log^2 z, tau = log T / log z.
inline double g_sum_asymptotic(double T, double z, const eint& c = eint{1}, std::int64_t euler_cutoff = 1'000'000) {
  const double tau = std::log(T) / std::log(z);
  double local = 1.0;
  if (!c.is_unit()) {
    for (const auto& pp : factor(c).factors) {
      if (pp.prime == eint::lambda()) continue;
      local *= 1.0 - 2.0 / static_cast<double>(pp.prime.norm());
    }
  }
  const double lz = std::log(z);
  return alpha_residue * alpha_residue * 4.0 / 9.0 * std::exp(2 * euler_gamma) * f_lambda(euler_cutoff).value * local *
         sigma2(2 * tau) * lz * lz;
}

}  // namespace cubicsum
