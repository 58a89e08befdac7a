#pragma once

// Bessel kernels on C^x and the transforms K, B for radial test functions.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cubicsum/eisenstein.hpp"
#include "cubicsum/moments.hpp"
#include "cubicsum/parallel.hpp"

namespace cubicsum {

using cplx = std::complex<double>;

class radius_exceeded : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class quadrature_failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class insufficient_decay : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

/// log Gamma(z) for Re z >= 1/2 (Lanczos, g = 7).
inline cplx lgamma_right(cplx z) {
  static constexpr std::array<double, 9> c = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                              771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                              -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  z -= 1.0;
  cplx x = c[0];
  for (std::size_t i = 1; i < c.size(); ++i) x += c[i] / (z + static_cast<double>(i));
  const cplx t = z + 7.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace detail

/// log sin(pi z), stable for large |Im z|.
inline cplx log_sin_pi(cplx z) {
  if (std::abs(z.imag()) < 20.0) return std::log(std::sin(std::numbers::pi * z));
  // sin(pi z) = e^{-i pi z} (1 - e^{2 i pi z}) / (-2i) for Im z > 0, and the mirror image below
  const cplx i{0.0, 1.0};
  if (z.imag() > 0) return -i * std::numbers::pi * z + std::log(1.0 - std::exp(2.0 * i * std::numbers::pi * z)) - std::log(-2.0 * i);
  return i * std::numbers::pi * z + std::log(1.0 - std::exp(-2.0 * i * std::numbers::pi * z)) - std::log(2.0 * i);
}

/// 1/Gamma(z), entire; exactly zero at 0, -1, -2, ...
inline cplx rgamma(cplx z) {
  if (detail::is_nonpositive_integer(z)) return 0.0;
  if (z.real() >= 0.5) return std::exp(-detail::lgamma_right(z));
  return std::sin(std::numbers::pi * z) / std::numbers::pi * std::exp(detail::lgamma_right(1.0 - z));
}

inline cplx gamma(cplx z) { return 1.0 / rgamma(z); }

/// log(1/Gamma(z)) on any branch; -inf at the poles of Gamma.
inline cplx log_rgamma(cplx z) {
  if (detail::is_nonpositive_integer(z)) return -std::numeric_limits<double>::infinity();
  if (z.real() >= 0.5) return -detail::lgamma_right(z);
  return log_sin_pi(z) - std::log(std::numbers::pi) + detail::lgamma_right(1.0 - z);
}

struct kernel_options {
  double max_radius = 8.0;
  int max_terms = 400;
  double rel_tol = 1e-17;
};

namespace detail {

/// Coefficients 1/(m! Gamma(a + m)) of sum_m (-w)^m / (m! Gamma(a + m)), truncated so that
/// the tail is below rel_tol times the largest term for |w| <= w_max.
class bessel_series {
 public:
  bessel_series(cplx a, double w_max, const kernel_options& opt) {
    cplx rg = rgamma(a);  // 1/Gamma(a + m)
    double fact = 1.0;    // 1/m!
    double peak = 0.0;
    for (int m = 0; m < opt.max_terms; ++m) {
      const cplx c = rg * fact;
      coeffs_.push_back(c);
      const double mag = std::abs(c) * std::pow(w_max, m);
      peak = std::max(peak, mag);
      const double q = w_max / ((m + 1.0) * std::max(std::abs(a + static_cast<double>(m)), 0.5));
      if (q < 0.5 && static_cast<double>(m) > w_max && 2.0 * mag * q <= opt.rel_tol * peak) return;
      fact /= m + 1.0;
      const cplx next = a + static_cast<double>(m);
      rg = is_nonpositive_integer(next) ? rgamma(next + 1.0) : rg / next;
    }
    throw std::runtime_error("bessel_series: truncation order exhausted");
  }

  [[nodiscard]] cplx operator()(cplx w) const {
    cplx sum = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) sum = sum * (-w) + *it;
    return sum;
  }
  [[nodiscard]] std::size_t order() const { return coeffs_.size(); }

 private:
  std::vector<cplx> coeffs_;
};

}  // namespace detail

/// J_{s,p}(z) = J_{s-p}(z) J_{s+p}(conj z) from the factorized double power series, with the
/// series coefficients precomputed for |z| <= radius.
class kernel_J_series {
 public:
  kernel_J_series(cplx s, int p, double radius, const kernel_options& opt = {})
      : s_(s), p_(p), radius_(radius),
        left_(s - static_cast<double>(p) + 1.0, radius * radius / 4.0, opt),
        right_(s + static_cast<double>(p) + 1.0, radius * radius / 4.0, opt) {
    if (radius > opt.max_radius) throw radius_exceeded("kernel_J: |z| above configured radius");
  }

  [[nodiscard]] cplx operator()(cplx z) const {
    const double r = std::abs(z);
    if (r > radius_ * (1.0 + 1e-12)) throw radius_exceeded("kernel_J: |z| above series radius");
    if (r == 0.0) throw std::domain_error("kernel_J: z must be nonzero");
    const cplx w = z * z / 4.0;
    return std::exp(2.0 * s_ * std::log(r / 2.0)) * std::pow(z / r, -2 * p_) * left_(w) * right_(std::conj(w));
  }
  [[nodiscard]] std::size_t order() const { return std::max(left_.order(), right_.order()); }

 private:
  cplx s_;
  int p_;
  double radius_;
  detail::bessel_series left_, right_;
};

inline cplx kernel_J(cplx s, int p, cplx z, const kernel_options& opt = {}) {
  return kernel_J_series(s, p, std::abs(z), opt)(z);
}

/// K_{s,p}(z) = (J_{-s,-p}(z) - J_{s,p}(z)) / sin(pi s). Within 1e-3 of an integer the
/// removable singularity is bridged by the symmetric average at s +- delta d, with d
/// orthogonal to s - k, and one Richardson step delta -> delta/2.
class kernel_K_series {
 public:
  kernel_K_series(cplx s, int p, double radius, const kernel_options& opt = {}) {
    const double k = std::round(s.real());
    const cplx off = s - k;
    if (std::abs(off) >= 1e-3) {
      add(s, p, radius, opt, 1.0);
      return;
    }
    const cplx dir = std::abs(off) == 0.0 ? cplx{1.0, 0.0} : cplx{0.0, 1.0} * off / std::abs(off);
    constexpr double delta = 1e-4;
    // (4 A(delta/2) - A(delta)) / 3 with A(d) the mean of the two points s +- d dir
    for (double sign : {1.0, -1.0}) {
      add(s + sign * (delta / 2.0) * dir, p, radius, opt, 2.0 / 3.0);
      add(s + sign * delta * dir, p, radius, opt, -1.0 / 6.0);
    }
  }

  [[nodiscard]] cplx operator()(cplx z) const {
    cplx total = 0.0;
    for (const auto& n : nodes_) total += n.weight * (n.minus(z) - n.plus(z)) / n.sin;
    return total;
  }

 private:
  struct node {
    double weight;
    cplx sin;
    kernel_J_series minus, plus;
  };
  void add(cplx s, int p, double radius, const kernel_options& opt, double weight) {
    nodes_.push_back({weight, std::sin(std::numbers::pi * s), kernel_J_series(-s, -p, radius, opt), kernel_J_series(s, p, radius, opt)});
  }
  std::vector<node> nodes_;
};

inline cplx kernel_K(cplx s, int p, cplx z, const kernel_options& opt = {}) {
  return kernel_K_series(s, p, std::abs(z), opt)(z);
}

/// f(z) = g(sqrt(N(mn)) / (N(z) X)) N(z)^(-1/2) sqrt(N(mn)), supported on
/// sqrt(N(mn))/(2X) <= N(z) <= sqrt(N(mn))/X.
struct radial_test_function {
  double X = 100.0;
  eint m{1};
  eint n{1};
  smooth_bump g{};

  [[nodiscard]] double root_norm() const { return std::sqrt(static_cast<double>(m.norm()) * static_cast<double>(n.norm())); }
  [[nodiscard]] double norm_min() const { return root_norm() / (2.0 * X); }
  [[nodiscard]] double norm_max() const { return root_norm() / X; }

  [[nodiscard]] double at_radius(double r) const {
    const double nz = r * r;
    if (nz <= 0.0) return 0.0;
    return g(root_norm() / (nz * X)) / std::sqrt(nz) * root_norm();
  }
  double operator()(cplx z) const { return at_radius(std::abs(z)); }
};

struct transform_options {
  kernel_options kernel{};
  int angular_nodes = 64;
  double tol = 1e-12;
  unsigned max_depth = 8;
  double abs_tol = 1e-8;
};

/// Kf(s,p) = int_{C^x} K_{s,p}(u) f(u) |u|^{-2} du, with du Lebesgue measure. Polar form:
/// with t = sqrt(N(mn))/(r^2 X) the radial integral runs over the support t in [1,2]
/// (adaptive Gauss-Kronrod) and the angle uses the trapezoid rule.
inline cplx K_transform(const radial_test_function& f, cplx s, int p, const transform_options& opt = {}) {
  using gk = boost::math::quadrature::gauss_kronrod<double, 61>;
  const int na = opt.angular_nodes;
  const double dphi = 2.0 * std::numbers::pi / na;
  const kernel_K_series kernel(s, p, std::sqrt(f.norm_max()), opt.kernel);
  auto integrand = [&](double t) -> cplx {
    const double gt = f.g(t);
    if (gt == 0.0) return 0.0;
    const double r = std::sqrt(f.root_norm() / (t * f.X));
    cplx ang = 0.0;
    for (int j = 0; j < na; ++j) ang += kernel(std::polar(r, dphi * j));
    ang *= dphi;
    // f(r) dr / r = g(t) sqrt(N(mn)) / r * dt / (2t)
    return ang * gt * f.root_norm() / r / (2.0 * t);
  };
  double err = 0.0, l1 = 0.0;
  const cplx v = gk::integrate(integrand, 1.0, 2.0, opt.max_depth, opt.tol, &err, &l1);
  if (!std::isfinite(err) || err > std::max(opt.abs_tol, 1e-6 * l1)) throw quadrature_failure("K_transform: quadrature did not converge");
  return v;
}

/// Sampled spectral function on the imaginary axis: values[p + p_max][i] = h(i t_i, p).
/// The grid is the midpoint rule on [-T, T].
struct spectral_grid {
  double T{};
  int nodes{};
  int p_max{};
  std::vector<std::vector<cplx>> values;

  [[nodiscard]] double step() const { return 2.0 * T / nodes; }
  [[nodiscard]] double t(int i) const { return -T + (i + 0.5) * step(); }
};

/// Kf(s,p) for radial f through the Mellin transform of g. The angular average of
/// J_{s,p}(r e^{i phi}) keeps the terms with m - n = p, which gives
///   Jf(s,p) = pi (-1)^p sum_j 4^{-u} A^{1/4+u/2} X^{1/2-u} ghat(1/2-u) / ((j+|p|)! j! Gamma(s+j+1) Gamma(s+|p|+j+1)),
/// u = s + |p| + 2j, A = N(m)N(n); then Kf = (Jf(-s,-p) - Jf(s,p)) / sin(pi s).
inline cplx K_transform_radial(const radial_test_function& f, cplx s, int p, int terms = 40) {
  const int q = std::abs(p);
  const double logA = std::log(f.root_norm() * f.root_norm());
  auto J_over_sin = [&](cplx sv, cplx lsin) {
    cplx total = 0.0;
    for (int j = 0; j < terms; ++j) {
      const cplx u = sv + static_cast<double>(q + 2 * j);
      const cplx lg = log_rgamma(sv + static_cast<double>(j + 1)) + log_rgamma(sv + static_cast<double>(q + j + 1));
      if (std::isinf(lg.real())) continue;
      const cplx log_mag = -u * std::log(4.0) + (0.25 + u / 2.0) * logA + (0.5 - u) * std::log(f.X) -
                           std::lgamma(j + q + 1.0) - std::lgamma(j + 1.0) + lg - lsin;
      const cplx term = std::exp(log_mag) * mellin_tanh(f.g, 0.5 - u);
      total += term;
      if (j > 0 && std::abs(term) <= 1e-17 * std::abs(total)) break;
    }
    return std::numbers::pi * (q % 2 == 0 ? 1.0 : -1.0) * total;
  };
  auto direct = [&](cplx sv) {
    const cplx lsin = log_sin_pi(sv);
    return J_over_sin(-sv, lsin) - J_over_sin(sv, lsin);
  };
  const double k = std::round(s.real());
  const cplx off = s - k;
  if (std::abs(off) >= 1e-3) return direct(s);
  const cplx dir = std::abs(off) == 0.0 ? cplx{1.0, 0.0} : cplx{0.0, 1.0} * off / std::abs(off);
  constexpr double delta = 1e-4;
  auto avg = [&](double d) { return 0.5 * (direct(s + d * dir) + direct(s - d * dir)); };
  return (4.0 * avg(delta / 2.0) - avg(delta)) / 3.0;
}

/// Samples h(it, p) on the grid |p| <= p_max, t in [-T, T].
template <class H>
spectral_grid sample_spectral(H&& h_fn, double T, int nodes, int p_max, unsigned workers = 0) {
  spectral_grid h{T, nodes, p_max, {}};
  const auto rows = static_cast<std::size_t>(2 * p_max + 1);
  const auto flat = parallel_map<cplx>(rows * static_cast<std::size_t>(nodes), [&](std::size_t k) {
    const int p = static_cast<int>(k / static_cast<std::size_t>(nodes)) - p_max;
    const int i = static_cast<int>(k % static_cast<std::size_t>(nodes));
    return h_fn(cplx{0.0, h.t(i)}, p);
  }, workers);
  h.values.assign(rows, std::vector<cplx>(static_cast<std::size_t>(nodes)));
  for (std::size_t k = 0; k < flat.size(); ++k) h.values[k / static_cast<std::size_t>(nodes)][k % static_cast<std::size_t>(nodes)] = flat[k];
  return h;
}

/// Bh(z) = (1/2 pi i) sum_p int_(0) K_{s,p}(z) h(s,p) (p^2 - s^2) ds
///       = (1/2 pi) sum_p int K_{it,p}(z) h(it,p) (p^2 + t^2) dt,
/// truncated to the grid. Throws insufficient_decay if the edge samples of h, weighted by
/// (p^2 + t^2), are not small against the bulk.
inline cplx B_transform(const spectral_grid& h, cplx z, const kernel_options& opt = {}, double decay_tol = 1e-3) {
  double bulk = 0.0, edge = 0.0;
  cplx total = 0.0;
  for (int p = -h.p_max; p <= h.p_max; ++p) {
    const auto& row = h.values[static_cast<std::size_t>(p + h.p_max)];
    for (int i = 0; i < h.nodes; ++i) {
      const double t = h.t(i);
      const double weight = p * p + t * t;
      const cplx hv = row[static_cast<std::size_t>(i)];
      if (hv == 0.0) continue;
      const double mag = std::abs(hv) * weight;
      bulk = std::max(bulk, mag);
      if (i == 0 || i == h.nodes - 1 || std::abs(p) == h.p_max) edge = std::max(edge, mag);
      total += kernel_K(cplx{0.0, t}, p, z, opt) * hv * weight;
    }
  }
  if (bulk > 0.0 && edge > decay_tol * bulk) throw insufficient_decay("B_transform: h has not decayed at the grid edge");
  return total * h.step() / (2.0 * std::numbers::pi);
}

/// c_s = pi 4^s / Gamma(1-s)^2 / sin(pi s) * (N(m) N(n))^((1-2s)/4)
inline cplx c_s_constant(cplx s, const eint& m = eint{1}, const eint& n = eint{1}) {
  if (s.imag() == 0.0 && s.real() == std::round(s.real())) throw std::domain_error("c_s_constant: s must not be an integer");
  const double mn = static_cast<double>(m.norm()) * static_cast<double>(n.norm());
  const cplx rg = rgamma(1.0 - s);
  return std::numbers::pi * std::pow(cplx{4.0}, s) * rg * rg / std::sin(std::numbers::pi * s) * std::pow(cplx{mn}, (1.0 - 2.0 * s) / 4.0);
}

struct lemma_ratio_row {
  double X{};
  cplx kf{};
  cplx ratio{};          ///< Kf(s,0) / X^(1/2+s)
  cplx candidate_plus;   ///< c_s ghat(1/2+s)
  cplx candidate_minus;  ///< c_s ghat(1/2-s)
};

/// Kf(s,0)/X^(1/2+s) against both readings of the leading constant.
inline lemma_ratio_row lemma_ratio(double X, cplx s, const eint& m = eint{1}, const eint& n = eint{1},
                                   const smooth_bump& g = {}, const transform_options& opt = {}) {
  const radial_test_function f{X, m, n, g};
  lemma_ratio_row row{X, K_transform(f, s, 0, opt), 0.0, 0.0, 0.0};
  row.ratio = row.kf / std::pow(cplx{X}, 0.5 + s);
  const cplx cs = c_s_constant(s, m, n);
  row.candidate_plus = cs * mellin(g, 0.5 + s);
  row.candidate_minus = cs * mellin(g, 0.5 - s);
  return row;
}

struct inversion_sample {
  double radius{};
  double f{};
  cplx two_pi_BKf{};
};

/// 2 pi B(Kf) at the given radii (angle 0.3), with Kf sampled by the Mellin-series route.
inline std::vector<inversion_sample> bessel_inversion(const radial_test_function& f, const std::vector<double>& radii,
                                                      double T = 200.0, int nodes = 4000, int p_max = 3,
                                                      unsigned workers = 0) {
  const auto h = sample_spectral([&](cplx s, int p) { return K_transform_radial(f, s, p); }, T, nodes, p_max, workers);
  std::vector<inversion_sample> out;
  for (double r : radii) {
    const cplx z = std::polar(r, 0.3);
    out.push_back({r, f(z), 2.0 * std::numbers::pi * B_transform(h, z)});
  }
  return out;
}

}  // namespace cubicsum
