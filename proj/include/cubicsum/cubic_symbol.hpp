#pragma once

// Cubic residue symbol (x/c)_3 and the Kubota symbol on Gamma_1.

#include <array>
#include <complex>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

#include "cubicsum/eisenstein.hpp"
#include "cubicsum/factor.hpp"

namespace cubicsum {

/// An element of {0, 1, w, w^2} under multiplication.
class cubic_root {
 public:
  constexpr cubic_root() = default;

  static constexpr cubic_root zero() { return cubic_root(true, 0); }
  static constexpr cubic_root one() { return cubic_root(false, 0); }
  static constexpr cubic_root omega() { return cubic_root(false, 1); }
  static constexpr cubic_root omega2() { return cubic_root(false, 2); }
  /// w^k for any integer k.
  static constexpr cubic_root power(std::int64_t k) { return cubic_root(false, static_cast<int>(((k % 3) + 3) % 3)); }

  [[nodiscard]] constexpr bool is_zero() const { return zero_; }
  /// Exponent j with value w^j; meaningless for zero.
  [[nodiscard]] constexpr int exponent() const { return j_; }

  friend constexpr cubic_root operator*(cubic_root x, cubic_root y) {
    if (x.zero_ || y.zero_) return zero();
    return power(x.j_ + y.j_);
  }
  cubic_root& operator*=(cubic_root y) { return *this = *this * y; }
  [[nodiscard]] constexpr cubic_root inverse() const {
    if (zero_) throw std::domain_error("cubic_root: zero has no inverse");
    return power(-j_);
  }
  friend constexpr bool operator==(cubic_root, cubic_root) = default;

  [[nodiscard]] std::complex<double> to_complex() const {
    if (zero_) return {0.0, 0.0};
    static constexpr double h = 0.8660254037844386467637231707529362;
    static const std::array<std::complex<double>, 3> v{{{1.0, 0.0}, {-0.5, h}, {-0.5, -h}}};
    return v[j_];
  }

  template <detail::ring_integer Int = std::int64_t>
  [[nodiscard]] eisenstein<Int> to_eisenstein() const {
    if (zero_) return {};
    if (j_ == 0) return eisenstein<Int>{Int(1)};
    if (j_ == 1) return eisenstein<Int>::omega();
    return eisenstein<Int>{Int(-1), Int(-1)};
  }

  [[nodiscard]] std::string name() const {
    if (zero_) return "zero";
    return j_ == 0 ? "one" : (j_ == 1 ? "omega" : "omega2");
  }
  friend std::ostream& operator<<(std::ostream& os, cubic_root r) { return os << r.name(); }

 private:
  constexpr cubic_root(bool z, int j) : zero_(z), j_(j) {}
  bool zero_{false};
  int j_{0};
};

/// Euler criterion: x^((N(pi)-1)/3) mod pi matched against 1, w, w^2.
template <detail::ring_integer Int>
cubic_root cubic_symbol_euler(const eisenstein<Int>& x, const eisenstein<Int>& pi) {
  if (pi.divisible_by_lambda()) throw std::domain_error("cubic_symbol_euler: modulus divisible by lambda");
  if (!is_prime(pi)) throw std::domain_error("cubic_symbol_euler: modulus is not prime");
  residue_system<Int> rs(pi);
  eisenstein<Int> base = rs.reduce(x);
  if (base.is_zero()) return cubic_root::zero();
  Int e = (pi.norm() - 1) / 3;
  eisenstein<Int> acc = rs.reduce(eisenstein<Int>{Int(1)});
  while (e > 0) {
    if (e % 2 == 1) acc = rs.reduce(acc * base);
    base = rs.reduce(base * base);
    e /= 2;
  }
  for (int j = 0; j < 3; ++j) {
    if (rs.reduce(cubic_root::power(j).template to_eisenstein<Int>()) == acc) return cubic_root::power(j);
  }
  throw std::logic_error("cubic_symbol_euler: power is not a cube root of unity");
}

namespace detail {

/// (u/c)_3 for a unit u and primary c: (-1/c) = 1, (w/c) = w^((N(c)-1)/3).
template <ring_integer Int>
cubic_root unit_symbol(const eisenstein<Int>& u, const eisenstein<Int>& c) {
  const auto us = units<Int>();
  // units() lists 1, -w^2, w, -1, w^2, -w; exponent of w up to sign:
  static constexpr std::array<int, 6> w_exp{0, 2, 1, 0, 2, 1};
  for (std::size_t i = 0; i < 6; ++i) {
    if (us[i] == u) {
      const Int k = ((c.norm() - 1) / 3) % 3;
      return cubic_root::power(static_cast<std::int64_t>(w_exp[i]) * to_i64(k));
    }
  }
  throw std::domain_error("unit_symbol: not a unit");
}

/// (lambda/c)_3 = w^(2m) with c = a + bw primary and m = (1 - a)/3.
template <ring_integer Int>
cubic_root lambda_symbol(const eisenstein<Int>& c) {
  const Int m = floor_div(Int(1) - c.a, Int(3));
  return cubic_root::power(2 * to_i64(floor_mod(m, Int(3))));
}

}  // namespace detail

/// (x/c)_3 for c coprime to 3, extended multiplicatively over the prime factors of c.
/// Evaluated by a Euclid-style descent using cubic reciprocity.
template <detail::ring_integer Int>
cubic_root cubic_symbol(const eisenstein<Int>& x_in, const eisenstein<Int>& c_in) {
  if (c_in.is_zero()) throw std::domain_error("cubic_symbol: zero modulus");
  if (c_in.divisible_by_lambda()) throw std::domain_error("cubic_symbol: modulus divisible by lambda");
  const auto lam = eisenstein<Int>::lambda();
  eisenstein<Int> c = primary_associate(c_in).second;
  eisenstein<Int> x = x_in;
  cubic_root acc = cubic_root::one();
  for (;;) {
    if (c.is_unit()) return acc;
    x = divrem(x, c).r;
    if (x.is_zero()) return cubic_root::zero();
    int k = 0;
    while (x.divisible_by_lambda()) {
      x = divide_exact(x, lam);
      ++k;
    }
    auto [u, xp] = primary_associate(x);
    acc *= detail::unit_symbol(u, c);
    if (k % 3 != 0) acc *= cubic_root::power(static_cast<std::int64_t>(detail::lambda_symbol(c).exponent()) * k);
    // both primary: (xp/c) = (c/xp)
    x = c;
    c = xp;
  }
}

// ---------------------------------------------------------------------------
// Kubota symbol

template <detail::ring_integer Int = std::int64_t>
struct gamma_one_matrix {
  eisenstein<Int> a{Int(1)}, b{}, c{}, d{Int(1)};

  static gamma_one_matrix identity() { return {}; }
  /// [[1, t], [0, 1]]
  static gamma_one_matrix upper(const eisenstein<Int>& t) { return {eisenstein<Int>{Int(1)}, t, {}, eisenstein<Int>{Int(1)}}; }
  /// [[1, 0], [t, 1]]
  static gamma_one_matrix lower(const eisenstein<Int>& t) { return {eisenstein<Int>{Int(1)}, {}, t, eisenstein<Int>{Int(1)}}; }

  [[nodiscard]] eisenstein<Int> det() const { return a * d - b * c; }

  [[nodiscard]] bool in_gamma_one() const {
    const eisenstein<Int> one{Int(1)}, zero{};
    return det() == one && a.congruent_mod3(one) && d.congruent_mod3(one) && b.congruent_mod3(zero) &&
           c.congruent_mod3(zero);
  }

  friend gamma_one_matrix operator*(const gamma_one_matrix& x, const gamma_one_matrix& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend bool operator==(const gamma_one_matrix&, const gamma_one_matrix&) = default;
};

/// kappa(gamma) = (c/a)_3 if c != 0, else 1.
template <detail::ring_integer Int>
cubic_root kubota(const gamma_one_matrix<Int>& g) {
  if (!g.in_gamma_one()) throw std::domain_error("kubota: matrix is not in Gamma_1");
  if (g.c.is_zero()) return cubic_root::one();
  return cubic_symbol(g.c, g.a);
}

}  // namespace cubicsum
