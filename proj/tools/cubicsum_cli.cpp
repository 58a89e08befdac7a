// cubicsum: command-line driver for the cubic exponential sum experiments.

#include <chrono>
#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <boost/version.hpp>
#include <CLI11.hpp>
#include <json.hpp>

#include "cubicsum/bessel.hpp"
#include "cubicsum/exp_sums.hpp"
#include "cubicsum/moments.hpp"
#include "cubicsum/report.hpp"
#include "cubicsum/sato_tate.hpp"
#include "cubicsum/sieve.hpp"

using namespace cubicsum;
using json = nlohmann::json;

namespace {

constexpr int exit_invalid = 1;
constexpr int exit_usage = 2;
constexpr int exit_budget = 3;
constexpr int exit_failure = 4;

struct common_opts {
  std::string out;
  unsigned workers = 0;
  std::uint64_t seed = 1;
};

struct result {
  csv_table table;
  json extra = json::object();
};

std::string histogram_text(const root_sum& s) {
  std::ostringstream os;
  bool first = true;
  for (std::int64_t k = 0; k < s.modulus(); ++k) {
    const auto c = s.counts()[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    os << (first ? "" : ";") << k << ':' << c;
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

struct sum_opts {
  std::string a = "1", c, m, n;
};

result run_sum(const sum_opts& o) {
  const eint c = parse_eisenstein(o.c);
  result r{csv_table({"kind", "a_or_m", "n", "c", "modulus", "histogram", "re", "im", "exact_zero", "exact_real"})};
  if (!o.m.empty() || !o.n.empty()) {
    if (o.m.empty() || o.n.empty()) throw std::invalid_argument("sum: --m and --n go together");
    const eint m = parse_eisenstein(o.m), n = parse_eisenstein(o.n);
    const root_sum k = k3_fast(m, n, c);
    r.table.row("K3", m.str(), n.str(), c.str(), k.modulus(), histogram_text(k), k.real(), k.imag(), k.is_exactly_zero() ? "1" : "0",
                k.is_exactly_real() ? "1" : "0");
  } else {
    const eint a = parse_eisenstein(o.a);
    const root_sum s = s_cubic(a, c);
    r.table.row("S", a.str(), "", c.str(), s.modulus(), histogram_text(s), s.real(), s.imag(), s.is_exactly_zero() ? "1" : "0",
                s.is_exactly_real() ? "1" : "0");
  }
  return r;
}

struct satotate_opts {
  std::vector<std::int64_t> norms{100, 1000, 10000};
  double t = std::numbers::pi / 4;
};

result run_satotate(const satotate_opts& o, unsigned workers) {
  result r{csv_table({"prime", "norm", "samples", "ks", "t", "interval_fraction", "interval_mass"})};
  for (auto target : o.norms) {
    if (target < 7) throw std::domain_error("satotate: norms must be >= 7");
    const eint pi = split_prime_near(target);
    const auto res = sato_tate_experiment(pi, workers);
    r.table.row(pi.str(), pi.norm(), res.samples.size(), res.ks, o.t, interval_fraction(res.samples, o.t), symmetric_interval_mass(o.t));
  }
  return r;
}

struct census_opts {
  std::int64_t X = 10000;
  double u = 3.0;
};

result run_census(const census_opts& o, unsigned workers) {
  const auto row = sign_census(o.X, o.u, nullptr, workers);
  result r{csv_table({"X", "u", "positives", "negatives", "zeros", "total", "positive_fraction", "negative_fraction"})};
  const double tot = std::max<double>(1.0, static_cast<double>(row.total));
  r.table.row(row.X, row.u, row.positives, row.negatives, row.zeros, row.total, row.positives / tot, row.negatives / tot);
  return r;
}

struct moment_opts {
  std::vector<std::int64_t> X{100000};
  std::string d = "1";
  std::int64_t D = 0;
};

result run_moment(const moment_opts& o, unsigned workers) {
  const eint d = parse_eisenstein(o.d);
  if (!d.is_primary()) throw std::domain_error("moment: d must be primary");
  std::vector<std::string> cols{"X", "d", "terms", "sum", "abs_sum", "ratio", "c_theta_estimate"};
  if (o.D > 0) cols.push_back("sigma_D");
  result r{csv_table(cols)};
  const smooth_bump g;
  const double g16 = mellin(g, 1.0 / 6.0).real();
  std::vector<double> xs, ys;
  for (auto X : o.X) {
    if (X < 10) throw std::domain_error("moment: X must be >= 10");
    const split_table table(static_cast<std::uint64_t>(2 * X));
    const auto terms = moment_terms(X, table, workers);
    const auto row = first_moment(X, d, g, terms);
    const double ratio = row.abs_sum > 0 ? row.sum / row.abs_sum : 0.0;
    const double ct = row.sum / (g16 * std::pow(static_cast<double>(X), 5.0 / 6.0));
    if (o.D > 0)
      r.table.row(X, d.str(), row.term_count, row.sum, row.abs_sum, ratio, ct, sigma_D(X, o.D, g, terms, table));
    else
      r.table.row(X, d.str(), row.term_count, row.sum, row.abs_sum, ratio, ct);
    xs.push_back(static_cast<double>(X));
    ys.push_back(row.sum);
  }
  if (xs.size() >= 4) {
    const auto fit = slope_fit(xs, ys);
    r.extra["slope_fit"] = {{"exponent", fit.exponent}, {"stderr", fit.stderr_}, {"intercept", fit.intercept}, {"predicted", 5.0 / 6.0}};
  }
  return r;
}

struct sieve_opts {
  std::vector<double> sigma2_at;
  std::int64_t rough_X = 0;
  double u = 3.0;
  std::int64_t flambda = 0;
  double gsum_T = 0, gsum_z = 0;
  std::string gsum_c = "1";
  std::int64_t budget = 50'000'000;
};

result run_sieve(const sieve_opts& o, unsigned workers) {
  result r{csv_table({"quantity", "parameters", "value"})};
  for (double u : o.sigma2_at) {
    if (u < 0) throw std::domain_error("sieve: sigma2 argument must be >= 0");
    const std::string p = "u=" + cell(u);
    r.table.row("sigma2", p, sigma2(u));
    r.table.row("one_minus_sigma2", p, sigma2_table::shared().deficit(u));
    if (u > 0) r.table.row("h2", p, h2(u));
  }
  if (o.rough_X > 0) {
    const smooth_bump g;
    const split_table table(static_cast<std::uint64_t>(2 * o.rough_X));
    const auto s = rough_sums(o.rough_X, o.u, g, table, workers);
    const std::string p = "X=" + cell(o.rough_X) + ";u=" + cell(o.u);
    r.table.row("count", p, s.count);
    r.table.row("B", p, s.B);
    r.table.row("A_plus", p, s.A_plus);
    r.table.row("A_minus", p, s.A_minus);
    r.table.row("min_a", p, s.min_a);
    r.table.row("main_term", p, s.main_term);
    r.table.row("ratio", p, s.ratio());
  }
  if (o.flambda > 0) {
    const auto e = f_lambda(o.flambda);
    const std::string p = "cutoff=" + cell(o.flambda);
    r.table.row("F_lambda", p, e.value);
    r.table.row("F_lambda_tail_bound", p, e.tail_bound);
  }
  if (o.gsum_T > 0) {
    const eint c = parse_eisenstein(o.gsum_c);
    const std::string p = "T=" + cell(o.gsum_T) + ";z=" + cell(o.gsum_z) + ";c=" + c.str();
    r.table.row("G", p, g_sum(o.gsum_T, o.gsum_z, c, o.budget));
    r.table.row("G_asymptotic", p, g_sum_asymptotic(o.gsum_T, o.gsum_z, c));
  }
  if (r.table.size() == 0) throw std::invalid_argument("sieve: nothing requested (use --sigma2, --rough, --flambda or --gsum-T)");
  return r;
}

struct bessel_opts {
  std::string mode = "lemma";
  std::vector<double> X{100, 1000, 10000};
  double s = 1.0 / 3.0;
  double T = 200;
  int nodes = 4000;
  int p_max = 3;
};

result run_bessel(const bessel_opts& o, unsigned workers) {
  if (o.mode == "lemma") {
    result r{csv_table({"X", "s", "Kf", "ratio", "c_s_ghat_half_plus_s", "c_s_ghat_half_minus_s"})};
    for (double X : o.X) {
      const auto row = lemma_ratio(X, o.s);
      r.table.row(X, o.s, row.kf.real(), row.ratio.real(), row.candidate_plus.real(), row.candidate_minus.real());
    }
    return r;
  }
  if (o.mode == "inversion") {
    result r{csv_table({"X", "radius", "f", "two_pi_BKf", "ratio"})};
    for (double X : o.X) {
      const radial_test_function f{X};
      const double r1 = std::sqrt(f.norm_min());
      std::vector<double> radii;
      for (double k : {0.5, 1.1, 1.15, 1.2, 1.25, 1.3, 1.6}) radii.push_back(r1 * k);
      for (const auto& smp : bessel_inversion(f, radii, o.T, o.nodes, o.p_max, workers))
        r.table.row(X, smp.radius, smp.f, smp.two_pi_BKf.real(), smp.f != 0 ? smp.two_pi_BKf.real() / smp.f : 0.0);
    }
    return r;
  }
  if (o.mode == "radial") {
    result r{csv_table({"X", "s", "p", "Kf_re", "Kf_im"})};
    for (double X : o.X)
      for (int p = 0; p <= o.p_max; ++p) {
        const auto v = K_transform(radial_test_function{X}, o.s, p);
        r.table.row(X, o.s, p, v.real(), v.imag());
      }
    return r;
  }
  throw std::invalid_argument("bessel: --mode must be lemma, inversion or radial");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cubic exponential sums over Eisenstein integers: identities, distributions and moments"};
  app.require_subcommand(1, 1);
  common_opts common;
  common.workers = default_workers();
  app.add_option("--out", common.out, "CSV output path (a .json sidecar is written next to it); stdout if omitted");
  app.add_option("--workers", common.workers, "worker threads (default: CUBICSUM_WORKERS or hardware concurrency)")->check(CLI::PositiveNumber);
  app.add_option("--seed", common.seed, "seed recorded in the metadata");

  sum_opts so;
  auto* sum = app.add_subcommand("sum", "exact S(a,c), or K3(m,n,c) with --m/--n");
  sum->add_option("--a", so.a, "a, as '2+3w' or '2,3'");
  sum->add_option("--c", so.c, "modulus c")->required();
  sum->add_option("--m", so.m, "m for K3");
  sum->add_option("--n", so.n, "n for K3");

  satotate_opts sto;
  auto* st = app.add_subcommand("satotate", "angle distribution at split primes of given norms");
  st->add_option("--norm", sto.norms, "target prime norms")->delimiter(',');
  st->add_option("--t", sto.t, "half-width of the symmetric interval");

  census_opts co;
  auto* cen = app.add_subcommand("census", "signs of S(1,c) over rough primary c");
  cen->add_option("--X", co.X, "range X <= N(c) < 2X");
  cen->add_option("--u", co.u, "roughness: prime factors of norm >= X^(1/u)");

  moment_opts mo;
  auto* mom = app.add_subcommand("moment", "first moment of S(1,c)/sqrt N(c) over c = 0 mod d");
  mom->add_option("--X", mo.X, "values of X")->delimiter(',');
  mom->add_option("--d", mo.d, "primary modulus d");
  mom->add_option("--D", mo.D, "also compute Sigma(D)");

  sieve_opts sio;
  auto* sie = app.add_subcommand("sieve", "sigma_2, h_2, rough-number sums, F_lambda and G sums");
  sie->add_option("--sigma2", sio.sigma2_at, "arguments u")->delimiter(',');
  sie->add_option("--rough", sio.rough_X, "X for the rough-number sums");
  sie->add_option("--u", sio.u, "roughness exponent");
  sie->add_option("--flambda", sio.flambda, "prime-norm cutoff for F_lambda");
  sie->add_option("--gsum-T", sio.gsum_T, "T for G_c(T,z)");
  sie->add_option("--gsum-z", sio.gsum_z, "z for G_c(T,z)");
  sie->add_option("--gsum-c", sio.gsum_c, "c for G_c(T,z)");
  sie->add_option("--budget", sio.budget, "node budget for G_c(T,z)");

  bessel_opts bo;
  auto* bes = app.add_subcommand("bessel", "Bessel transforms of the radial test function");
  bes->add_option("--mode", bo.mode, "lemma, inversion or radial");
  bes->add_option("--X", bo.X, "values of X")->delimiter(',');
  bes->add_option("--s", bo.s, "spectral parameter (real)");
  bes->add_option("--T", bo.T, "spectral cutoff |t| <= T");
  bes->add_option("--nodes", bo.nodes, "midpoint nodes on [-T, T]");
  bes->add_option("--pmax", bo.p_max, "largest |p|");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return exit_usage;
  }

  const auto start = std::chrono::steady_clock::now();
  json config = json::object();
  result res{csv_table({"none"})};
  try {
    if (*sum) {
      config = {{"a", so.a}, {"c", so.c}, {"m", so.m}, {"n", so.n}};
      res = run_sum(so);
    } else if (*st) {
      config = {{"norms", sto.norms}, {"t", sto.t}};
      res = run_satotate(sto, common.workers);
    } else if (*cen) {
      config = {{"X", co.X}, {"u", co.u}};
      res = run_census(co, common.workers);
    } else if (*mom) {
      config = {{"X", mo.X}, {"d", mo.d}, {"D", mo.D}};
      res = run_moment(mo, common.workers);
    } else if (*sie) {
      config = {{"sigma2", sio.sigma2_at}, {"rough", sio.rough_X}, {"u", sio.u}, {"flambda", sio.flambda},
                {"gsum_T", sio.gsum_T}, {"gsum_z", sio.gsum_z}, {"gsum_c", sio.gsum_c}, {"budget", sio.budget}};
      res = run_sieve(sio, common.workers);
    } else if (*bes) {
      config = {{"mode", bo.mode}, {"X", bo.X}, {"s", bo.s}, {"T", bo.T}, {"nodes", bo.nodes}, {"pmax", bo.p_max}};
      res = run_bessel(bo, common.workers);
    }
  } catch (const budget_exceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return exit_budget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return exit_invalid;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return exit_invalid;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << '\n';
    return exit_failure;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (common.out.empty()) {
    res.table.write(std::cout);
    return 0;
  }
  json meta = {
      {"subcommand", app.get_subcommands().front()->get_name()},
      {"config", config},
      {"workers", common.workers},
      {"seed", common.seed},
      {"columns", res.table.columns()},
      {"rows", res.table.size()},
      {"versions", {{"cubicsum", "0.1.0"}, {"compiler", __VERSION__}, {"boost", BOOST_LIB_VERSION}}},
      {"wall_time_seconds", wall},
  };
  if (!res.extra.empty()) meta["results"] = res.extra;
  try {
    write_report(common.out, res.table, meta);
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << '\n';
    return exit_failure;
  }
  return 0;
}
