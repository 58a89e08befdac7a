#pragma once

// Exact arithmetic in the Eisenstein integers Z[w], w = exp(2 pi i / 3).
//
// Elements are stored in the basis (1, w) and multiplied with w^2 = -1 - w.
// The coefficient type is a template parameter: std::int64_t (checked, throws
// std::overflow_error), __int128 (checked) or cubicsum::bigint (unbounded).

#include <algorithm>
#include <array>
#include <complex>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cubicsum/detail/checked.hpp"

namespace cubicsum {

template <detail::ring_integer Int = std::int64_t>
class eisenstein {
 public:
  using int_type = Int;

  Int a{0};  ///< rational coordinate
  Int b{0};  ///< coordinate of w

  constexpr eisenstein() = default;
  constexpr eisenstein(Int re) : a(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  constexpr eisenstein(Int re, Int om) : a(std::move(re)), b(std::move(om)) {}

  static constexpr eisenstein omega() { return {Int(0), Int(1)}; }
  /// The ramified prime 1 - w above 3.
  static constexpr eisenstein lambda() { return {Int(1), Int(-1)}; }

  template <detail::ring_integer Other>
  static eisenstein from(const eisenstein<Other>& z) {
    return {detail::from_big<Int>(detail::to_big(z.a)), detail::from_big<Int>(detail::to_big(z.b))};
  }

  friend constexpr bool operator==(const eisenstein& x, const eisenstein& y) { return x.a == y.a && x.b == y.b; }

  friend constexpr eisenstein operator+(const eisenstein& x, const eisenstein& y) {
    return {detail::add(x.a, y.a), detail::add(x.b, y.b)};
  }
  friend constexpr eisenstein operator-(const eisenstein& x, const eisenstein& y) {
    return {detail::sub(x.a, y.a), detail::sub(x.b, y.b)};
  }
  friend constexpr eisenstein operator-(const eisenstein& x) { return {detail::sub(Int(0), x.a), detail::sub(Int(0), x.b)}; }

  // (a + bw)(c + dw) = (ac - bd) + (ad + bc - bd) w
  friend constexpr eisenstein operator*(const eisenstein& x, const eisenstein& y) {
    const Int bd = detail::mul(x.b, y.b);
    return {detail::sub(detail::mul(x.a, y.a), bd),
            detail::sub(detail::add(detail::mul(x.a, y.b), detail::mul(x.b, y.a)), bd)};
  }

  eisenstein& operator+=(const eisenstein& y) { return *this = *this + y; }
  eisenstein& operator-=(const eisenstein& y) { return *this = *this - y; }
  eisenstein& operator*=(const eisenstein& y) { return *this = *this * y; }

  [[nodiscard]] constexpr eisenstein conj() const { return {detail::sub(a, b), detail::sub(Int(0), b)}; }

  [[nodiscard]] constexpr Int norm() const {
    return detail::add(detail::sub(detail::mul(a, a), detail::mul(a, b)), detail::mul(b, b));
  }

  [[nodiscard]] constexpr Int trace() const { return detail::sub(detail::add(a, a), b); }

  [[nodiscard]] constexpr bool is_zero() const { return a == 0 && b == 0; }
  [[nodiscard]] constexpr bool is_unit() const { return norm() == 1; }

  /// x = y (mod 3) coordinate-wise.
  [[nodiscard]] bool congruent_mod3(const eisenstein& y) const {
    return detail::floor_mod(detail::sub(a, y.a), Int(3)) == 0 && detail::floor_mod(detail::sub(b, y.b), Int(3)) == 0;
  }
  [[nodiscard]] bool is_primary() const { return congruent_mod3(eisenstein(Int(1))); }
  /// lambda | x  <=>  a + b = 0 (mod 3)
  [[nodiscard]] bool divisible_by_lambda() const { return detail::floor_mod(detail::add(a, b), Int(3)) == 0; }

  [[nodiscard]] std::complex<double> to_complex() const {
    const double x = static_cast<double>(a);
    const double y = static_cast<double>(b);
    return {x - 0.5 * y, y * 0.8660254037844386467637231707529362};
  }

  [[nodiscard]] std::string str() const {
    auto s = [](const Int& v) {
      if constexpr (std::is_same_v<Int, bigint>) return v.str();
      else return detail::to_big(v).str();
    };
    if (b == 0) return s(a);
    std::string out;
    if (a != 0) out = s(a);
    if (b < 0) out += "-";
    else if (a != 0) out += "+";
    const Int mb = detail::abs(b);
    if (mb != 1) out += s(mb);
    out += "w";
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const eisenstein& z) { return os << z.str(); }
};

using eint = eisenstein<std::int64_t>;

/// The six units 1, -w^2, w, -1, w^2, -w in a fixed order.
template <detail::ring_integer Int = std::int64_t>
constexpr std::array<eisenstein<Int>, 6> units() {
  return {eisenstein<Int>{1, 0},  eisenstein<Int>{1, 1},  eisenstein<Int>{0, 1},
          eisenstein<Int>{-1, 0}, eisenstein<Int>{-1, -1}, eisenstein<Int>{0, -1}};
}

template <detail::ring_integer Int>
eisenstein<Int> unit_inverse(const eisenstein<Int>& u) {
  if (!u.is_unit()) throw std::domain_error("unit_inverse: not a unit");
  return u.conj();
}

/// Total order used for canonical listings: (norm, a, b).
template <detail::ring_integer Int>
bool norm_order(const eisenstein<Int>& x, const eisenstein<Int>& y) {
  const Int nx = x.norm();
  const Int ny = y.norm();
  if (nx != ny) return nx < ny;
  if (x.a != y.a) return x.a < y.a;
  return x.b < y.b;
}

// ---------------------------------------------------------------------------
// Euclidean structure

template <detail::ring_integer Int>
struct quotient_remainder {
  eisenstein<Int> q;
  eisenstein<Int> r;
};

/// x = q*y + r with norm(r) < norm(y); q is a nearest lattice point to x/y,
/// ties broken towards smaller |q.a|, then smaller |q.b|.
template <detail::ring_integer Int>
quotient_remainder<Int> divrem(const eisenstein<Int>& x, const eisenstein<Int>& y) {
  if (y.is_zero()) throw std::domain_error("divrem: division by zero");
  const Int n = y.norm();
  const eisenstein<Int> t = x * y.conj();  // x/y = t/n
  const Int qa0 = detail::floor_div(t.a, n);
  const Int qb0 = detail::floor_div(t.b, n);
  quotient_remainder<Int> best{};
  Int best_norm = -1;
  for (int da = 0; da <= 1; ++da) {
    for (int db = 0; db <= 1; ++db) {
      eisenstein<Int> q{detail::add(qa0, Int(da)), detail::add(qb0, Int(db))};
      eisenstein<Int> r = x - q * y;
      const Int rn = r.norm();
      bool better = best_norm < 0 || rn < best_norm;
      if (!better && rn == best_norm) {
        const Int ca = detail::abs(q.a), ba = detail::abs(best.q.a);
        better = ca < ba || (ca == ba && detail::abs(q.b) < detail::abs(best.q.b));
      }
      if (better) {
        best = {q, r};
        best_norm = rn;
      }
    }
  }
  return best;
}

/// Exact quotient x / y; throws if y does not divide x.
template <detail::ring_integer Int>
eisenstein<Int> divide_exact(const eisenstein<Int>& x, const eisenstein<Int>& y) {
  auto [q, r] = divrem(x, y);
  if (!r.is_zero()) throw std::domain_error("divide_exact: not divisible");
  return q;
}

template <detail::ring_integer Int>
bool divides(const eisenstein<Int>& d, const eisenstein<Int>& x) {
  if (d.is_zero()) return x.is_zero();
  return divrem(x, d).r.is_zero();
}

/// c = unit * p with p = 1 (mod 3). Requires lambda not dividing c.
template <detail::ring_integer Int>
std::pair<eisenstein<Int>, eisenstein<Int>> primary_associate(const eisenstein<Int>& c) {
  if (c.is_zero() || c.divisible_by_lambda())
    throw std::domain_error("primary_associate: argument divisible by lambda");
  for (const auto& u : units<Int>()) {
    eisenstein<Int> p = c * unit_inverse(u);
    if (p.is_primary()) return {u, p};
  }
  throw std::logic_error("primary_associate: no primary associate");  // unreachable
}

/// Canonical associate: lambda^k * (primary part), with k the lambda-adic valuation.
template <detail::ring_integer Int>
eisenstein<Int> canonical_associate(const eisenstein<Int>& z) {
  if (z.is_zero()) return z;
  eisenstein<Int> rest = z;
  eisenstein<Int> lam_pow{Int(1)};
  const auto lam = eisenstein<Int>::lambda();
  while (rest.divisible_by_lambda()) {
    rest = divide_exact(rest, lam);
    lam_pow = lam_pow * lam;
  }
  return lam_pow * primary_associate(rest).second;
}

/// Greatest common divisor in canonical associate form (primary when coprime to lambda).
template <detail::ring_integer Int>
eisenstein<Int> gcd(eisenstein<Int> x, eisenstein<Int> y) {
  if (x.is_zero() && y.is_zero()) throw std::domain_error("gcd(0, 0) is undefined");
  while (!y.is_zero()) {
    auto r = divrem(x, y).r;
    x = std::move(y);
    y = std::move(r);
  }
  return canonical_associate(x);
}

template <detail::ring_integer Int>
bool coprime(const eisenstein<Int>& x, const eisenstein<Int>& y) {
  return gcd(x, y).is_unit();
}

/// Extended Euclid: returns (g, s, t) with s*x + t*y = g, g a (non-normalized) gcd.
template <detail::ring_integer Int>
std::array<eisenstein<Int>, 3> xgcd(eisenstein<Int> x, eisenstein<Int> y) {
  eisenstein<Int> s0{Int(1)}, s1{Int(0)}, t0{Int(0)}, t1{Int(1)};
  while (!y.is_zero()) {
    auto [q, r] = divrem(x, y);
    x = std::move(y);
    y = std::move(r);
    auto s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    auto t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  return {x, s0, t0};
}

// ---------------------------------------------------------------------------
// Residue systems

/// Z[w]/(c) via the Hermite basis {(n1, 0), (k, n2)} of the lattice cZ[w] in
/// (1, w) coordinates. Representatives are i + j w, 0 <= i < n1, 0 <= j < n2.
template <detail::ring_integer Int = std::int64_t>
class residue_system {
 public:
  explicit residue_system(eisenstein<Int> c) : modulus_(std::move(c)) {
    if (modulus_.is_zero()) throw std::domain_error("residue_system: zero modulus");
    const Int nrm = modulus_.norm();
    // c and c*w as lattice vectors: (a, b) and (-b, a - b).
    const Int a = modulus_.a;
    const Int b = modulus_.b;
    const Int y1 = b;
    const Int y2 = detail::sub(a, b);
    auto [g, s, t] = int_xgcd(y1, y2);
    n2_ = g;
    n1_ = nrm / g;
    // s*(a, b) + t*(-b, a - b) = (s a - t b, g)
    shift_ = detail::floor_mod(detail::sub(detail::mul(s, a), detail::mul(t, b)), n1_);
  }

  [[nodiscard]] const eisenstein<Int>& modulus() const { return modulus_; }
  [[nodiscard]] Int size() const { return detail::mul(n1_, n2_); }
  [[nodiscard]] Int n1() const { return n1_; }
  [[nodiscard]] Int n2() const { return n2_; }

  /// Canonical representative of x mod c.
  [[nodiscard]] eisenstein<Int> reduce(const eisenstein<Int>& x) const {
    const Int j = detail::floor_mod(x.b, n2_);
    const Int q = (x.b - j) / n2_;
    const Int i = detail::floor_mod(detail::sub(x.a, detail::mul(q, shift_)), n1_);
    return {i, j};
  }

  /// Index of a canonical representative in enumeration order (j-major).
  [[nodiscard]] Int index_of(const eisenstein<Int>& rep) const { return detail::add(detail::mul(rep.b, n1_), rep.a); }

  [[nodiscard]] eisenstein<Int> at(const Int& idx) const { return {idx % n1_, idx / n1_}; }

  /// All representatives in the fixed order j = 0..n2-1, i = 0..n1-1.
  [[nodiscard]] std::vector<eisenstein<Int>> representatives() const {
    std::vector<eisenstein<Int>> out;
    out.reserve(static_cast<std::size_t>(detail::to_i64(size())));
    for (Int j = 0; j < n2_; ++j)
      for (Int i = 0; i < n1_; ++i) out.push_back({i, j});
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    for (Int j = 0; j < n2_; ++j)
      for (Int i = 0; i < n1_; ++i) f(eisenstein<Int>{i, j});
  }

 private:
  static std::array<Int, 3> int_xgcd(Int x, Int y) {
    Int s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (y != 0) {
      Int q = detail::floor_div(x, y);
      Int r = x - q * y;
      x = y;
      y = r;
      Int s2 = s0 - q * s1;
      s0 = s1;
      s1 = s2;
      Int t2 = t0 - q * t1;
      t0 = t1;
      t1 = t2;
    }
    if (x < 0) return {-x, -s0, -t0};
    return {x, s0, t0};
  }

  eisenstein<Int> modulus_;
  Int n1_{1};
  Int n2_{1};
  Int shift_{0};
};

template <detail::ring_integer Int>
std::vector<eisenstein<Int>> residues(const eisenstein<Int>& c) {
  return residue_system<Int>(c).representatives();
}

class not_invertible : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// y with x*y = 1 (mod c), returned as the canonical representative.
template <detail::ring_integer Int>
eisenstein<Int> inverse_mod(const eisenstein<Int>& x, const eisenstein<Int>& c) {
  if (c.is_zero()) throw std::domain_error("inverse_mod: zero modulus");
  residue_system<Int> rs(c);
  if (c.is_unit()) return {};
  auto [g, s, t] = xgcd(x, c);
  if (!g.is_unit()) throw not_invertible("inverse_mod: argument not invertible modulo c");
  // s*x + t*c = g  =>  x * (s / g) = 1 (mod c)
  return rs.reduce(s * unit_inverse(g));
}

/// Every primary element of norm <= max_norm, sorted by (norm, a, b).
template <detail::ring_integer Int = std::int64_t>
std::vector<eisenstein<Int>> enumerate_primary(const Int& max_norm) {
  if (max_norm < 1) throw std::domain_error("enumerate_primary: max_norm must be >= 1");
  // a^2 - ab + b^2 <= M  implies  |a|, |b| <= 2 sqrt(M / 3)
  Int bound = 0;
  while (3 * bound * bound <= 4 * max_norm) ++bound;
  std::vector<eisenstein<Int>> out;
  Int a0 = -bound;
  while (detail::floor_mod(a0, Int(3)) != 1) ++a0;
  Int b0 = -bound;
  while (detail::floor_mod(b0, Int(3)) != 0) ++b0;
  for (Int a = a0; a <= bound; a += 3)
    for (Int b = b0; b <= bound; b += 3) {
      eisenstein<Int> z{a, b};
      if (z.norm() <= max_norm) out.push_back(z);
    }
  std::sort(out.begin(), out.end(), norm_order<Int>);
  return out;
}

/// Parses "a,b" or a sum of terms like "2+3w", "-w", "5", "4-7w" (w also accepted as 'o').
inline eint parse_eisenstein(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (ch != ' ') t += ch;
  auto bad = [&] { return std::invalid_argument("not an Eisenstein integer: '" + text + "'"); };
  auto to_int = [&](const std::string& digits) -> std::int64_t {
    if (digits.empty()) throw bad();
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(digits, &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != digits.size()) throw bad();
    return v;
  };
  if (t.empty()) throw bad();
  if (const auto comma = t.find(','); comma != std::string::npos) return {to_int(t.substr(0, comma)), to_int(t.substr(comma + 1))};
  std::int64_t a = 0, b = 0;
  bool seen_a = false, seen_b = false;
  std::size_t i = 0;
  while (i < t.size()) {
    std::size_t j = i + 1;
    while (j < t.size() && t[j] != '+' && t[j] != '-') ++j;
    std::string term = t.substr(i, j - i);
    i = j;
    std::int64_t sign = 1;
    if (term[0] == '+' || term[0] == '-') {
      sign = term[0] == '-' ? -1 : 1;
      term.erase(0, 1);
    }
    if (term.empty()) throw bad();
    if (term.back() == 'w' || term.back() == 'o') {
      term.pop_back();
      if (seen_b) throw bad();
      seen_b = true;
      b = sign * (term.empty() ? 1 : to_int(term));
    } else {
      if (seen_a) throw bad();
      seen_a = true;
      a = sign * to_int(term);
    }
  }
  return {a, b};
}

}  // namespace cubicsum
