#pragma once

// The cubic exponential sums S(a, c), the cubic Kloosterman sums K3(m, n, c) and the
// angles theta_{a, pi}. Exact evaluators return root_sum histograms; the float
// evaluators at the bottom are used by the large experiments.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cubicsum/cubic_symbol.hpp"
#include "cubicsum/eisenstein.hpp"
#include "cubicsum/factor.hpp"
#include "cubicsum/root_sum.hpp"

namespace cubicsum {

namespace detail {

/// Arithmetic in (Z/N)[w]; the trace pairing with conj(c) only depends on this image.
struct mod_ring {
  std::int64_t n;

  [[nodiscard]] std::int64_t red(std::int64_t v) const {
    v %= n;
    return v < 0 ? v + n : v;
  }
  [[nodiscard]] std::int64_t mul(std::int64_t x, std::int64_t y) const {
    auto r = static_cast<std::int64_t>(static_cast<__int128>(x) * y % n);
    return r < 0 ? r + n : r;
  }
  [[nodiscard]] eint red(const eint& z) const { return {red(z.a), red(z.b)}; }
  [[nodiscard]] eint mul(const eint& x, const eint& y) const {
    const std::int64_t bd = mul(x.b, y.b);
    return {red(mul(x.a, y.a) - bd), red(mul(x.a, y.b) + mul(x.b, y.a) - bd)};
  }
};

/// T(y) = Tr(y * conj(c)) mod N(c), linear in the coordinates of y.
struct trace_form {
  mod_ring ring;
  std::int64_t t1;  // Tr(conj c)
  std::int64_t tw;  // Tr(w conj c)

  explicit trace_form(const eint& c) : ring{c.norm()} {
    t1 = ring.red(c.conj().trace());
    tw = ring.red((eint::omega() * c.conj()).trace());
  }
  [[nodiscard]] std::int64_t operator()(const eint& y) const { return ring.red(ring.mul(y.a, t1) + ring.mul(y.b, tw)); }
};

/// a * (x^3 - 3x) in (Z/N)[w]
inline eint cubic_poly(const mod_ring& r, const eint& a, const eint& x) {
  const eint x2 = r.mul(x, x);
  const eint x3 = r.mul(x2, x);
  return r.mul(a, r.red(eint{x3.a - 3 * x.a, x3.b - 3 * x.b}));
}

inline std::optional<eint> try_inverse(const eint& x, const eint& c, const residue_system<std::int64_t>& rs) {
  auto [g, s, t] = xgcd(x, c);
  if (!g.is_unit()) return std::nullopt;
  return rs.reduce(s * unit_inverse(g));
}

inline void require_modulus(const eint& c) {
  if (c.is_zero()) throw std::domain_error("modulus must be nonzero");
}

inline void require_kloosterman_modulus(const eint& c) {
  require_modulus(c);
  if (c.divisible_by_lambda()) throw std::domain_error("Kloosterman modulus must be coprime to 3");
}

}  // namespace detail

/// S(a, c) = sum_{x mod c} e(a(x^3 - 3x)/c), histogram over the N(c)-th roots of unity.
inline root_sum s_cubic_direct(const eint& a, const eint& c) {
  detail::require_modulus(c);
  const detail::trace_form tr(c);
  const eint ar = tr.ring.red(a);
  root_sum out(tr.ring.n);
  residue_system<std::int64_t>(c).for_each([&](const eint& x) { out.add(tr(detail::cubic_poly(tr.ring, ar, x))); });
  return out;
}

/// K3(m, n, c) = sum_{x invertible mod c} (x/c)_3 e((m x + n xbar)/c), over the 3N(c)-th roots.
inline root_sum k3_direct(const eint& m, const eint& n, const eint& c) {
  detail::require_kloosterman_modulus(c);
  const residue_system<std::int64_t> rs(c);
  const detail::trace_form tr(c);
  const std::int64_t nn = tr.ring.n;
  const eint mr = tr.ring.red(m), nr = tr.ring.red(n);
  root_sum out(3 * nn);
  rs.for_each([&](const eint& x) {
    auto inv = detail::try_inverse(x, c, rs);
    if (!inv) return;
    const cubic_root chi = cubic_symbol(x, c);
    const std::int64_t t = tr(tr.ring.red(tr.ring.mul(mr, x) + tr.ring.mul(nr, *inv)));
    out.add(3 * t + chi.exponent() * nn);
  });
  return out;
}

namespace detail {

inline root_sum k3_blocks(const eint& m, const eint& n, const std::vector<eint>& blocks, std::size_t from) {
  if (from + 1 == blocks.size()) return k3_direct(m, n, blocks[from]);
  const eint& q = blocks[from];
  eint r{1};
  for (std::size_t i = from + 1; i < blocks.size(); ++i) r *= blocks[i];
  const residue_system<std::int64_t> rq(q), rr(r);
  const eint r_inv = inverse_mod(r, q);
  const eint q_inv = inverse_mod(q, r);
  const root_sum left = k3_direct(m, rq.reduce(n * r_inv * r_inv), q);
  const root_sum right = k3_blocks(m, rr.reduce(n * q_inv * q_inv), blocks, from + 1);
  const cubic_root twist = cubic_symbol(q, r) * cubic_symbol(r, q);
  root_sum prod = left * right;
  if (twist.is_zero()) throw std::logic_error("k3_fast: blocks are not coprime");
  return prod.rotate(twist.exponent() * (prod.modulus() / 3));
}

}  // namespace detail

/// K3 through the twisted multiplicativity over the prime-power blocks of c:
/// K3(m, n, c1 c2) = (c1/c2)(c2/c1) K3(m, n c2bar^2, c1) K3(m, n c1bar^2, c2).
inline root_sum k3_fast(const eint& m, const eint& n, const eint& c) {
  detail::require_kloosterman_modulus(c);
  if (c.is_unit()) return k3_direct(m, n, c);
  const auto f = factor(c);
  const eint uinv = unit_inverse(f.unit);
  std::vector<eint> blocks;
  for (std::size_t i = 0; i < f.factors.size(); ++i) blocks.push_back(f.prime_power_value(i));
  return detail::k3_blocks(m * uinv, n * uinv, blocks, 0);
}

/// S(a, c) as K3(a, a, c) when gcd(a, c) = 1 and gcd(c, 3) = 1, otherwise the direct sum.
inline root_sum s_cubic(const eint& a, const eint& c) {
  detail::require_modulus(c);
  if (c.divisible_by_lambda() || a.is_zero() || !coprime(a, c)) return s_cubic_direct(a, c);
  return k3_fast(a, a, c);
}

/// The geometric sum at the cusps used for Gamma_d: K3(m, n, c) if c = +-1 (mod 3) and d | c, else 0.
inline root_sum geometric_kloosterman(const eint& m, const eint& n, const eint& c, const eint& d) {
  detail::require_modulus(c);
  if (!d.is_primary()) throw std::domain_error("geometric_kloosterman: d must be primary");
  const bool pm_one = c.congruent_mod3(eint{1}) || c.congruent_mod3(eint{-1});
  if (!pm_one || !divides(d, c)) return root_sum(1);
  return k3_fast(m, n, c);
}

// ---------------------------------------------------------------------------
// Angles

class weil_violation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct angle_sample {
  eint prime;
  eint twist;
  double theta;
};

/// arccos(x) for x = S / (2 sqrt N), clamping only float noise.
inline double angle_from_ratio(double x) {
  constexpr double slack = 1e-9;
  if (x > 1.0 + slack || x < -1.0 - slack) throw weil_violation("Weil bound violated");
  return std::acos(std::clamp(x, -1.0, 1.0));
}

/// theta_{a, pi} with cos theta = S(a, pi) / (2 sqrt N(pi)).
inline angle_sample angle(const eint& a, const eint& pi) {
  if (!is_prime(pi)) throw std::domain_error("angle: modulus is not prime");
  if (pi.divisible_by_lambda() || divides(pi, a)) throw std::domain_error("angle: pi must not divide 3a");
  const double s = s_cubic_direct(a, pi).real();
  return {pi, a, angle_from_ratio(s / (2.0 * std::sqrt(static_cast<double>(pi.norm()))))};
}

// ---------------------------------------------------------------------------
// Float evaluators

namespace detail {

/// Real part of sum_k h[k] exp(2 pi i k / n); the cosines come from a rotation that is
/// re-seeded every 256 steps.
template <class Count>
double hist_cos_sum(const std::vector<Count>& h) {
  const auto n = static_cast<std::int64_t>(h.size());
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  const std::complex<double> w = std::polar(1.0, step);
  std::complex<double> z;
  double s = 0.0;
  for (std::int64_t k = 0; k < n; ++k) {
    if ((k & 255) == 0) z = std::polar(1.0, step * static_cast<double>(k));
    if (h[static_cast<std::size_t>(k)] != 0) s += static_cast<double>(h[static_cast<std::size_t>(k)]) * z.real();
    z *= w;
  }
  return s;
}

inline std::int64_t add_mod(std::int64_t x, std::int64_t y, std::int64_t n) {
  const std::int64_t r = x + y;
  return r >= n ? r - n : r;
}

/// Adds to h the values t (k^3 - 3k) mod p for k = 0 .. p-1, by third-order differences.
inline void cubic_values_into(std::int64_t t, std::int64_t p, std::vector<std::int32_t>& h) {
  const mod_ring r{p};
  std::int64_t v = 0;                  // t f(k)
  std::int64_t d1 = r.mul(t, r.red(-2));  // t (f(k+1) - f(k)) = t (3k^2 + 3k - 2)
  std::int64_t d2 = r.mul(t, 6 % p);   // t (6k + 6)
  const std::int64_t d3 = d2;          // 6t
  for (std::int64_t k = 0; k < p; ++k) {
    ++h[static_cast<std::size_t>(v)];
    v = add_mod(v, d1, p);
    d1 = add_mod(d1, d2, p);
    d2 = add_mod(d2, d3, p);
  }
}

}  // namespace detail

/// F_p model of a degree-one prime pi = x + y w of norm p: w maps to -x/y mod p.
struct split_model {
  std::int64_t p;
  std::int64_t omega_image;
  std::int64_t trace;  // Tr(pi) mod p

  explicit split_model(const eint& pi) : p(pi.norm()) {
    const detail::mod_ring r{p};
    const auto yinv = static_cast<std::int64_t>(powmod_u64(static_cast<std::uint64_t>(r.red(pi.b)), static_cast<std::uint64_t>(p - 2), static_cast<std::uint64_t>(p)));
    omega_image = r.red(-r.mul(r.red(pi.a), yinv));
    trace = r.red(pi.trace());
  }
  [[nodiscard]] std::int64_t image(const eint& z) const {
    const detail::mod_ring r{p};
    return r.red(r.red(z.a) + r.mul(r.red(z.b), omega_image));
  }
};

/// Histogram h[v] = #{k mod p : Tr(pi) (k^3 - 3k) = v}; S(alpha, pi) = sum_v h[v] e(alpha v / p).
inline std::vector<std::int32_t> split_histogram(const split_model& m) {
  std::vector<std::int32_t> h(static_cast<std::size_t>(m.p), 0);
  detail::cubic_values_into(m.trace, m.p, h);
  return h;
}

/// Real part of S(alpha, pi) for a split prime, alpha an integer representative.
inline double s_split_real(std::int64_t alpha, const split_model& m) {
  const detail::mod_ring r{m.p};
  std::vector<std::int32_t> h(static_cast<std::size_t>(m.p), 0);
  detail::cubic_values_into(r.mul(m.trace, r.red(alpha)), m.p, h);
  return detail::hist_cos_sum(h);
}

/// Real part of S(a, c) by direct enumeration in floating point. Along each row
/// x = i + jw of the residue box, T(x) = Tr(a f(x) conj c) is a cubic in i and is
/// advanced by differences.
inline double s_direct_real(const eint& a, const eint& c) {
  detail::require_modulus(c);
  const residue_system<std::int64_t> rs(c);
  const detail::mod_ring r{c.norm()};
  const std::int64_t n = r.n;
  const eint cc = c.conj();
  const std::int64_t l1 = r.red((a * cc).trace() % n);
  const std::int64_t l2 = r.red((a * eint::omega() * cc).trace() % n);
  auto lin = [&](const eint& y) { return r.red(r.mul(r.red(y.a), l1) + r.mul(r.red(y.b), l2)); };
  std::vector<std::int32_t> h(static_cast<std::size_t>(n), 0);
  const std::int64_t d3 = lin(eint{6});
  for (std::int64_t j = 0; j < rs.n2(); ++j) {
    const eint x0{0, j};
    const eint x2 = r.mul(x0, x0);
    std::int64_t v = lin(r.mul(x2, x0) - eint{3} * x0);
    std::int64_t d1 = lin(eint{3} * x2 + eint{3} * x0 - eint{2});
    std::int64_t d2 = lin(eint{6} * x0 + eint{6});
    for (std::int64_t i = 0; i < rs.n1(); ++i) {
      ++h[static_cast<std::size_t>(v)];
      v = detail::add_mod(v, d1, n);
      d1 = detail::add_mod(d1, d2, n);
      d2 = detail::add_mod(d2, d3, n);
    }
  }
  return detail::hist_cos_sum(h);
}

/// S(a, c) = prod_i S(a (c/q_i)^{-1} mod q_i, q_i) over the prime-power blocks q_i of c,
/// with the unit absorbed into a. Split primes use the F_p model.
inline double s_real(const eint& a, const eint& c, const split_table* table = nullptr) {
  detail::require_modulus(c);
  if (c.is_unit()) return 1.0;
  const auto f = table ? factor(c, *table) : factor(c);
  const eint a0 = a * unit_inverse(f.unit);
  eint rest{1};
  for (const auto& pp : f.factors)
    for (int k = 0; k < pp.exponent; ++k) rest *= pp.prime;
  double prod = 1.0;
  for (std::size_t i = 0; i < f.factors.size(); ++i) {
    const eint q = f.prime_power_value(i);
    const eint cof = divide_exact(rest, q);
    const residue_system<std::int64_t> rq(q);
    const eint ai = f.factors.size() == 1 ? rq.reduce(a0) : rq.reduce(a0 * inverse_mod(cof, q));
    const std::int64_t nq = q.norm();
    const bool split = f.factors[i].exponent == 1 && nq % 3 == 1 && is_prime_u64(static_cast<std::uint64_t>(nq));
    if (split) {
      const split_model sm(f.factors[i].prime);
      prod *= s_split_real(sm.image(ai), sm);
    } else {
      prod *= s_direct_real(ai, q);
    }
    if (prod == 0.0) return 0.0;
  }
  return prod;
}

}  // namespace cubicsum
