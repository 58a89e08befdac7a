#pragma once

// Factorization in Z[w] through the rational norm.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/miller_rabin.hpp>

#include "cubicsum/eisenstein.hpp"

namespace cubicsum {

// ---------------------------------------------------------------------------
// Rational integers

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, b, m);
    b = mulmod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

/// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace detail {

inline std::uint64_t pollard_brent(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    const std::uint64_t m = 128;
    std::uint64_t r = 1;
    auto f = [&](std::uint64_t v) { return (mulmod_u64(v, v, n) + c) % n; };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod_u64(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void factor_u64_rec(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t d = pollard_brent(n);
  factor_u64_rec(d, out);
  factor_u64_rec(n / d, out);
}

inline std::vector<std::pair<std::uint64_t, int>> collect(std::vector<std::uint64_t> ps) {
  std::sort(ps.begin(), ps.end());
  std::vector<std::pair<std::uint64_t, int>> out;
  for (auto p : ps) {
    if (!out.empty() && out.back().first == p) ++out.back().second;
    else out.emplace_back(p, 1);
  }
  return out;
}

inline bigint pollard_big(const bigint& n) {
  if (n % 2 == 0) return 2;
  for (unsigned c = 1;; ++c) {
    bigint x = 2, y = 2, d = 1;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      d = boost::multiprecision::gcd(x > y ? bigint(x - y) : bigint(y - x), n);
    }
    if (d != n) return d;
  }
}

inline void factor_big_rec(const bigint& n, std::vector<bigint>& out) {
  if (n == 1) return;
  if (n <= std::numeric_limits<std::uint64_t>::max()) {
    std::vector<std::uint64_t> small;
    factor_u64_rec(n.convert_to<std::uint64_t>(), small);
    for (auto p : small) out.emplace_back(p);
    return;
  }
  if (boost::multiprecision::miller_rabin_test(n, 40)) {
    out.push_back(n);
    return;
  }
  const bigint d = pollard_big(n);
  factor_big_rec(d, out);
  factor_big_rec(n / d, out);
}

}  // namespace detail

/// Prime factorization of n >= 1 as sorted (prime, exponent) pairs.
inline std::vector<std::pair<std::uint64_t, int>> factor_u64(std::uint64_t n) {
  if (n == 0) throw std::domain_error("factor_u64: zero");
  std::vector<std::uint64_t> ps;
  for (std::uint64_t p = 2; p < 1000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ps.push_back(p);
      n /= p;
    }
  }
  detail::factor_u64_rec(n, ps);
  return detail::collect(std::move(ps));
}

inline std::vector<std::pair<bigint, int>> factor_integer(bigint n) {
  if (n <= 0) throw std::domain_error("factor_integer: argument must be positive");
  std::vector<bigint> ps;
  for (unsigned p = 2; p < 100000 && bigint(p) * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ps.emplace_back(p);
      n /= p;
    }
  }
  detail::factor_big_rec(n, ps);
  std::sort(ps.begin(), ps.end());
  std::vector<std::pair<bigint, int>> out;
  for (auto& p : ps) {
    if (!out.empty() && out.back().first == p) ++out.back().second;
    else out.emplace_back(p, 1);
  }
  return out;
}

/// A primitive cube root of unity modulo a prime p = 1 (mod 3).
inline std::uint64_t cube_root_of_unity_mod(std::uint64_t p) {
  if (p % 3 != 1) throw std::domain_error("cube_root_of_unity_mod: p must be 1 mod 3");
  for (std::uint64_t g = 2; g < p; ++g) {
    const std::uint64_t r = powmod_u64(g, (p - 1) / 3, p);
    if (r != 1) return r;
  }
  throw std::logic_error("cube_root_of_unity_mod: not found");
}

inline bigint cube_root_of_unity_mod(const bigint& p) {
  if (p <= std::numeric_limits<std::uint64_t>::max()) return cube_root_of_unity_mod(p.convert_to<std::uint64_t>());
  if (p % 3 != 1) throw std::domain_error("cube_root_of_unity_mod: p must be 1 mod 3");
  for (bigint g = 2; g < p; ++g) {
    bigint r = boost::multiprecision::powm(g, (p - 1) / 3, p);
    if (r != 1) return r;
  }
  throw std::logic_error("cube_root_of_unity_mod: not found");
}

// ---------------------------------------------------------------------------
// Eisenstein primes

/// The primary prime of norm p (p = 1 mod 3) dividing r - w, r the first cube root of unity found.
template <detail::ring_integer Int = std::int64_t>
eisenstein<Int> split_prime(const Int& p) {
  const bigint pb = detail::to_big(p);
  const bigint r = cube_root_of_unity_mod(pb);
  const eisenstein<Int> g = gcd(eisenstein<Int>(p), eisenstein<Int>(detail::from_big<Int>(r), Int(-1)));
  if (g.norm() != p) throw std::logic_error("split_prime: splitting failed");
  return g;
}

/// True when z generates a prime ideal.
template <detail::ring_integer Int>
bool is_prime(const eisenstein<Int>& z) {
  const bigint n = detail::to_big(z.norm());
  if (n < 2) return false;
  if (n <= std::numeric_limits<std::uint64_t>::max() && is_prime_u64(n.convert_to<std::uint64_t>())) return true;
  if (n > std::numeric_limits<std::uint64_t>::max() && boost::multiprecision::miller_rabin_test(n, 40)) return true;
  const bigint p = boost::multiprecision::sqrt(n);
  if (p * p != n || p % 3 != 2) return false;
  const bool prime_p = p <= std::numeric_limits<std::uint64_t>::max() ? is_prime_u64(p.convert_to<std::uint64_t>())
                                                                      : boost::multiprecision::miller_rabin_test(p, 40);
  return prime_p && detail::to_big(z.a) % p == 0 && detail::to_big(z.b) % p == 0;
}

template <detail::ring_integer Int>
struct prime_power {
  eisenstein<Int> prime;
  int exponent;
  friend bool operator==(const prime_power&, const prime_power&) = default;
};

template <detail::ring_integer Int = std::int64_t>
struct factorization {
  eisenstein<Int> unit{Int(1)};
  std::vector<prime_power<Int>> factors;

  [[nodiscard]] int big_omega() const {
    int s = 0;
    for (const auto& f : factors) s += f.exponent;
    return s;
  }
  [[nodiscard]] int small_omega() const { return static_cast<int>(factors.size()); }
  [[nodiscard]] std::int64_t tau() const {
    std::int64_t t = 1;
    for (const auto& f : factors) t *= f.exponent + 1;
    return t;
  }
  [[nodiscard]] eisenstein<Int> value() const {
    eisenstein<Int> v = unit;
    for (const auto& f : factors)
      for (int i = 0; i < f.exponent; ++i) v *= f.prime;
    return v;
  }
  [[nodiscard]] eisenstein<Int> prime_power_value(std::size_t i) const {
    eisenstein<Int> v{Int(1)};
    for (int k = 0; k < factors[i].exponent; ++k) v *= factors[i].prime;
    return v;
  }
};

namespace detail {

template <ring_integer Int>
int strip(eisenstein<Int>& rest, const eisenstein<Int>& pi) {
  int e = 0;
  for (;;) {
    auto [q, r] = divrem(rest, pi);
    if (!r.is_zero()) break;
    rest = q;
    ++e;
  }
  return e;
}

template <ring_integer Int>
void sort_and_close(factorization<Int>& f, const eisenstein<Int>& rest) {
  if (!rest.is_unit()) throw std::logic_error("factor: leftover cofactor is not a unit");
  f.unit = rest;
  std::sort(f.factors.begin(), f.factors.end(),
            [](const prime_power<Int>& x, const prime_power<Int>& y) { return norm_order(x.prime, y.prime); });
}

}  // namespace detail

/// Split rational primes up to a bound, computed once and shared read-only.
class split_table {
 public:
  explicit split_table(std::uint64_t limit) : limit_(limit), spf_(limit + 1, 0) {
    for (std::uint64_t i = 2; i <= limit; ++i) {
      if (spf_[i] != 0) continue;
      for (std::uint64_t j = i; j <= limit; j += i)
        if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
      if (i % 3 == 1) primes_.emplace(i, split_prime<std::int64_t>(static_cast<std::int64_t>(i)));
    }
  }

  [[nodiscard]] std::uint64_t limit() const { return limit_; }
  [[nodiscard]] std::uint32_t smallest_factor(std::uint64_t n) const { return spf_.at(n); }

  /// Rational factorization of n <= limit.
  [[nodiscard]] std::vector<std::pair<std::uint64_t, int>> factor_rational(std::uint64_t n) const {
    if (n > limit_) return factor_u64(n);
    std::vector<std::pair<std::uint64_t, int>> out;
    while (n > 1) {
      const std::uint64_t p = spf_[n];
      if (!out.empty() && out.back().first == p) ++out.back().second;
      else out.emplace_back(p, 1);
      n /= p;
    }
    return out;
  }

  [[nodiscard]] eint split(std::uint64_t p) const {
    auto it = primes_.find(p);
    if (it != primes_.end()) return it->second;
    return split_prime<std::int64_t>(static_cast<std::int64_t>(p));
  }

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
  std::unordered_map<std::uint64_t, eint> primes_;
};

namespace detail {

template <ring_integer Int, class SplitFn>
factorization<Int> factor_from_norm(const eisenstein<Int>& c, const std::vector<std::pair<bigint, int>>& norm_factors,
                                    SplitFn&& split) {
  factorization<Int> out;
  eisenstein<Int> rest = c;
  for (const auto& [p, e] : norm_factors) {
    if (p == 3) {
      const auto lam = eisenstein<Int>::lambda();
      out.factors.push_back({lam, strip(rest, lam)});
    } else if (p % 3 == 2) {
      const eisenstein<Int> q{from_big<Int>(bigint(-p))};
      const int k = strip(rest, q);
      if (2 * k != e) throw std::logic_error("factor: inert exponent mismatch");
      out.factors.push_back({q, k});
    } else {
      const eisenstein<Int> pi = split(p);
      const eisenstein<Int> pc = primary_associate(pi.conj()).second;
      const int k1 = strip(rest, pi);
      const int k2 = strip(rest, pc);
      if (k1 + k2 != e) throw std::logic_error("factor: split exponent mismatch");
      if (k1 > 0) out.factors.push_back({pi, k1});
      if (k2 > 0) out.factors.push_back({pc, k2});
    }
  }
  sort_and_close(out, rest);
  return out;
}

}  // namespace detail

/// unit * prod prime^exponent, primes primary (or lambda), sorted by (norm, a, b).
template <detail::ring_integer Int>
factorization<Int> factor(const eisenstein<Int>& c) {
  if (c.is_zero()) throw std::domain_error("factor: zero");
  auto nf = factor_integer(detail::to_big(c.norm()));
  return detail::factor_from_norm(c, nf, [](const bigint& p) {
    return split_prime<Int>(detail::from_big<Int>(p));
  });
}

/// Same as factor(c), using precomputed tables when norm(c) is within range.
inline factorization<std::int64_t> factor(const eint& c, const split_table& table) {
  if (c.is_zero()) throw std::domain_error("factor: zero");
  const auto n = static_cast<std::uint64_t>(c.norm());
  std::vector<std::pair<bigint, int>> nf;
  for (auto [p, e] : table.factor_rational(n)) nf.emplace_back(p, e);
  return detail::factor_from_norm(c, nf, [&](const bigint& p) { return table.split(p.convert_to<std::uint64_t>()); });
}

}  // namespace cubicsum
