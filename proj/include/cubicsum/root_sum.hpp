#pragma once

// Exact sums of M-th roots of unity, stored as exponent histograms.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cubicsum/factor.hpp"

namespace cubicsum {

/// sum_k counts[k] * exp(2 pi i k / M)
class root_sum {
 public:
  root_sum() : modulus_(1), counts_(1, 0) {}
  explicit root_sum(std::int64_t modulus) : modulus_(modulus) {
    if (modulus < 1) throw std::domain_error("root_sum: modulus must be positive");
    counts_.assign(static_cast<std::size_t>(modulus), 0);
  }

  static root_sum constant(std::int64_t v) {
    root_sum r(1);
    r.counts_[0] = v;
    return r;
  }

  [[nodiscard]] std::int64_t modulus() const { return modulus_; }
  [[nodiscard]] const std::vector<std::int64_t>& counts() const { return counts_; }
  [[nodiscard]] std::int64_t count(std::int64_t k) const { return counts_[static_cast<std::size_t>(reduce(k))]; }

  void add(std::int64_t k, std::int64_t mult = 1) { counts_[static_cast<std::size_t>(reduce(k))] += mult; }

  /// Sum of multiplicities (the number of summands for a plain histogram).
  [[nodiscard]] std::int64_t total_count() const { return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0}); }

  [[nodiscard]] std::complex<double> value() const {
    double re = 0.0, im = 0.0;
    const double step = 2.0 * std::numbers::pi / static_cast<double>(modulus_);
    for (std::int64_t k = 0; k < modulus_; ++k) {
      const std::int64_t c = counts_[static_cast<std::size_t>(k)];
      if (c == 0) continue;
      // symmetric representative keeps the angle small
      const std::int64_t ks = 2 * k > modulus_ ? k - modulus_ : k;
      const double ang = step * static_cast<double>(ks);
      re += static_cast<double>(c) * std::cos(ang);
      im += static_cast<double>(c) * std::sin(ang);
    }
    return {re, im};
  }
  [[nodiscard]] double real() const { return value().real(); }
  [[nodiscard]] double imag() const { return value().imag(); }

  /// The same element written over the M'-th roots, M | M'.
  [[nodiscard]] root_sum lift(std::int64_t new_modulus) const {
    if (new_modulus % modulus_ != 0) throw std::domain_error("root_sum::lift: modulus must divide target");
    const std::int64_t f = new_modulus / modulus_;
    root_sum r(new_modulus);
    for (std::int64_t k = 0; k < modulus_; ++k) r.counts_[static_cast<std::size_t>(k * f)] = counts_[static_cast<std::size_t>(k)];
    return r;
  }

  /// Multiply by exp(2 pi i j / M).
  [[nodiscard]] root_sum rotate(std::int64_t j) const {
    root_sum r(modulus_);
    for (std::int64_t k = 0; k < modulus_; ++k) r.counts_[static_cast<std::size_t>(reduce(k + j))] = counts_[static_cast<std::size_t>(k)];
    return r;
  }

  [[nodiscard]] root_sum conj() const {
    root_sum r(modulus_);
    for (std::int64_t k = 0; k < modulus_; ++k) r.counts_[static_cast<std::size_t>(reduce(-k))] = counts_[static_cast<std::size_t>(k)];
    return r;
  }

  friend root_sum operator*(const root_sum& x, const root_sum& y) {
    const std::int64_t m = std::lcm(x.modulus_, y.modulus_);
    const std::int64_t fx = m / x.modulus_, fy = m / y.modulus_;
    root_sum r(m);
    std::vector<std::int64_t> ynz;
    for (std::int64_t k = 0; k < y.modulus_; ++k)
      if (y.counts_[static_cast<std::size_t>(k)] != 0) ynz.push_back(k);
    for (std::int64_t i = 0; i < x.modulus_; ++i) {
      const std::int64_t cx = x.counts_[static_cast<std::size_t>(i)];
      if (cx == 0) continue;
      const std::int64_t base = i * fx;
      for (std::int64_t j : ynz) {
        std::int64_t e = base + j * fy;
        if (e >= m) e %= m;
        r.counts_[static_cast<std::size_t>(e)] += cx * y.counts_[static_cast<std::size_t>(j)];
      }
    }
    return r;
  }

  friend root_sum operator+(const root_sum& x, const root_sum& y) {
    const std::int64_t m = std::lcm(x.modulus_, y.modulus_);
    root_sum r = x.lift(m);
    const root_sum ly = y.lift(m);
    for (std::size_t k = 0; k < r.counts_.size(); ++k) r.counts_[k] += ly.counts_[k];
    return r;
  }

  /// Coordinates in the integral basis of Z[zeta_M] given by the tensor product of the
  /// power bases of Z[zeta_{p^e}]: exponents whose p-part has top base-p digit p-1 are
  /// rewritten through the relation sum_{j<p} zeta^{k + jM/p} = 0.
  [[nodiscard]] std::vector<std::int64_t> canonical() const {
    std::vector<std::int64_t> c = counts_;
    const std::int64_t m = modulus_;
    for (auto [p64, e] : factor_u64(static_cast<std::uint64_t>(m))) {
      const auto p = static_cast<std::int64_t>(p64);
      std::int64_t pe = 1;
      for (int i = 0; i < e; ++i) pe *= p;
      const std::int64_t top = pe / p;  // p^(e-1)
      const std::int64_t step = m / p;
      for (std::int64_t k = 0; k < m; ++k) {
        const std::int64_t v = c[static_cast<std::size_t>(k)];
        if (v == 0 || (k % pe) / top != p - 1) continue;
        c[static_cast<std::size_t>(k)] = 0;
        for (std::int64_t j = 1; j < p; ++j) c[static_cast<std::size_t>((k + j * step) % m)] -= v;
      }
    }
    return c;
  }

  /// Exact equality in the cyclotomic ring (moduli may differ).
  friend bool exactly_equal(const root_sum& x, const root_sum& y) {
    const std::int64_t m = std::lcm(x.modulus_, y.modulus_);
    return x.lift(m).canonical() == y.lift(m).canonical();
  }

  [[nodiscard]] bool is_exactly_zero() const { return exactly_equal(*this, root_sum(1)); }
  [[nodiscard]] bool is_exactly_real() const { return exactly_equal(*this, conj()); }

  /// Histogram equality as stored (same modulus and multiplicities).
  friend bool operator==(const root_sum&, const root_sum&) = default;

 private:
  [[nodiscard]] std::int64_t reduce(std::int64_t k) const {
    std::int64_t r = k % modulus_;
    return r < 0 ? r + modulus_ : r;
  }

  std::int64_t modulus_;
  std::vector<std::int64_t> counts_;
};

}  // namespace cubicsum
