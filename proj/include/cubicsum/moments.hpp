#pragma once

// Smooth weights, Mellin transforms and first moments of S(1, c) over progressions.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cubicsum/exp_sums.hpp"
#include "cubicsum/factor.hpp"
#include "cubicsum/parallel.hpp"

namespace cubicsum {

/// scale * exp(-1/((t-1)(2-t))) on (1, 2), zero elsewhere.
struct smooth_bump {
  double scale = 1.0;

  double operator()(double t) const {
    if (t <= 1.0 || t >= 2.0) return 0.0;
    return scale * std::exp(-1.0 / ((t - 1.0) * (2.0 - t)));
  }
};

/// int_a^b f(t) t^(s-1) dt by adaptive Gauss-Kronrod.
inline std::complex<double> mellin_integral(const std::function<double(double)>& f, double a, double b,
                                            std::complex<double> s, double tol = 1e-13) {
  using gk = boost::math::quadrature::gauss_kronrod<double, 61>;
  auto re = [&](double t) { return f(t) * std::real(std::exp((s - 1.0) * std::log(t))); };
  auto im = [&](double t) { return f(t) * std::imag(std::exp((s - 1.0) * std::log(t))); };
  double err_re = 0, err_im = 0;
  const double r = gk::integrate(re, a, b, 20, tol, &err_re);
  const double i = gk::integrate(im, a, b, 20, tol, &err_im);
  return {r, i};
}

/// ghat(s) = int_1^2 g(t) t^(s-1) dt
inline std::complex<double> mellin(const smooth_bump& g, std::complex<double> s) {
  return mellin_integral([&](double t) { return g(t); }, 1.0, 2.0, s);
}

/// ghat(s) by the trapezoid rule in x, t = 3/2 + tanh(x)/2. The bump decays double
/// exponentially in x at both ends, so the rule converges geometrically; the step
/// shrinks with |Im s| to resolve t^(i Im s).
inline std::complex<double> mellin_tanh(const smooth_bump& g, std::complex<double> s) {
  constexpr double L = 4.0;
  const double h = std::min(0.02, 0.5 / (1.0 + std::abs(s.imag())));
  const int n = static_cast<int>(std::ceil(L / h));
  std::complex<double> total = 0.0;
  for (int k = -n; k <= n; ++k) {
    const double x = k * h;
    const double th = std::tanh(x);
    // (t-1)(2-t) = (1 - tanh^2)/4 = sech^2/4, computed without cancellation
    const double sech2 = 1.0 / (std::cosh(x) * std::cosh(x));
    const double gt = g.scale * std::exp(-4.0 / sech2);
    if (gt == 0.0) continue;
    const double t = 1.5 + 0.5 * th;
    total += gt * 0.5 * sech2 * std::exp((s - 1.0) * std::log(t));
  }
  return total * h;
}

// ---------------------------------------------------------------------------

struct moment_term {
  eint c;
  std::int64_t norm;
  double s_normalized;  ///< S(1, c) / sqrt(N(c))
};

/// Primary c with X < N(c) < 2X (the open support of g(N/X)), ascending (norm, a, b).
inline std::vector<moment_term> moment_terms(std::int64_t X, const split_table& table, unsigned workers = 0) {
  std::vector<eint> cs;
  for (const eint& c : enumerate_primary<std::int64_t>(std::max<std::int64_t>(2 * X - 1, 1)))
    if (c.norm() > X) cs.push_back(c);
  const auto vals = parallel_map<double>(cs.size(), [&](std::size_t i) {
    return s_real(eint{1}, cs[i], &table) / std::sqrt(static_cast<double>(cs[i].norm()));
  }, workers);
  std::vector<moment_term> out;
  out.reserve(cs.size());
  for (std::size_t i = 0; i < cs.size(); ++i) out.push_back({cs[i], cs[i].norm(), vals[i]});
  return out;
}

struct moment_row {
  std::int64_t X{};
  eint d{1};
  double sum{};
  double abs_sum{};
  std::int64_t term_count{};
};

/// sum over primary c = 0 mod d of S(1,c)/sqrt(N(c)) g(N(c)/X), and the same with |S|.
template <class G>
moment_row first_moment(std::int64_t X, const eint& d, const G& g, const std::vector<moment_term>& terms) {
  if (!d.is_primary()) throw std::domain_error("first_moment: d must be primary");
  moment_row row{X, d};
  for (const auto& t : terms) {
    if (!divides(d, t.c)) continue;
    const double w = g(static_cast<double>(t.norm) / static_cast<double>(X));
    row.sum += t.s_normalized * w;
    row.abs_sum += std::abs(t.s_normalized) * w;
    ++row.term_count;
  }
  return row;
}

template <class G>
moment_row first_moment(std::int64_t X, const eint& d, const G& g, unsigned workers = 0) {
  if (X < 10) throw std::domain_error("first_moment: need X >= 10");
  const split_table table(static_cast<std::uint64_t>(2 * X));
  return first_moment(X, d, g, moment_terms(X, table, workers));
}

namespace detail {

inline void primary_divisors(const factorization<std::int64_t>& f, std::size_t i, const eint& acc, std::int64_t limit,
                             std::vector<eint>& out) {
  if (acc.norm() > limit) return;
  if (i == f.factors.size()) {
    out.push_back(acc);
    return;
  }
  eint cur = acc;
  for (int k = 0; k <= f.factors[i].exponent; ++k) {
    if (cur.norm() > limit) break;
    primary_divisors(f, i + 1, cur, limit, out);
    cur *= f.factors[i].prime;
  }
}

}  // namespace detail

/// Sigma(D) = sum_{d primary, N(d) <= D} first_moment(X, d), accumulated per d in one pass over c
/// and then summed over d in (norm, a, b) order.
template <class G>
double sigma_D(std::int64_t X, std::int64_t D, const G& g, const std::vector<moment_term>& terms, const split_table& table) {
  if (D < 1) throw std::domain_error("sigma_D: need D >= 1");
  const auto ds = enumerate_primary<std::int64_t>(D);
  std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> index;
  for (std::size_t i = 0; i < ds.size(); ++i) index[{ds[i].a, ds[i].b}] = i;
  std::vector<double> partial(ds.size(), 0.0);
  std::vector<eint> divs;
  for (const auto& t : terms) {
    const double w = g(static_cast<double>(t.norm) / static_cast<double>(X));
    divs.clear();
    detail::primary_divisors(factor(t.c, table), 0, eint{1}, D, divs);
    for (const eint& d : divs) partial[index.at({d.a, d.b})] += t.s_normalized * w;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

/// The same quantity by the nested loop over d, then c.
template <class G>
double sigma_D_naive(std::int64_t X, std::int64_t D, const G& g, const std::vector<moment_term>& terms) {
  double total = 0.0;
  for (const eint& d : enumerate_primary<std::int64_t>(D)) total += first_moment(X, d, g, terms).sum;
  return total;
}

// ---------------------------------------------------------------------------

struct slope_estimate {
  double exponent{};
  double stderr_{};
  double intercept{};
};

/// Least-squares slope of log|y| against log x.
inline slope_estimate slope_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 4) throw std::domain_error("slope_fit: need at least 4 points");
  const auto n = static_cast<double>(xs.size());
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] <= 0 || ys[i] == 0) throw std::domain_error("slope_fit: degenerate grid");
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(std::abs(ys[i])));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0) throw std::domain_error("slope_fit: degenerate grid");
  const double slope = sxy / sxx;
  const double icpt = my - slope * mx;
  double rss = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double e = ly[i] - icpt - slope * lx[i];
    rss += e * e;
  }
  return {slope, std::sqrt(rss / (n - 2) / sxx), icpt};
}

}  // namespace cubicsum
