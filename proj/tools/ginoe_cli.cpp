#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ginoe/moments.hpp"
#include "ginoe/rmt_sampler.hpp"

using json = nlohmann::json;
using namespace ginoe;

namespace {

constexpr int schema_version = 1;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct GridSpec {
  double t_min = 0.0, t_max = 0.0, step = 0.25;

  int count() const {
    return (int)std::floor((t_max - t_min) / step + 1e-9) + 1;
  }
  double at(int i) const { return t_min + i * step; }
};

// pre-sized slots plus an atomic cursor: output order never depends on how
// the workers interleave
template <class F>
void parallel_for(int count, int threads, F&& fn) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      int i;
      while ((i = next.fetch_add(1)) < count) fn(i);
    });
  for (auto& th : pool) th.join();
}

int env_int(const char* name, int fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  return std::atoi(v);
}

std::optional<gapdist::Route> parse_route(const std::string& r) {
  if (r == "auto") return std::nullopt;
  if (r == "product") return gapdist::Route::PRODUCT;
  if (r == "single-det") return gapdist::Route::SINGLE_DET;
  if (r == "closed-form") return gapdist::Route::CLOSED_FORM;
  throw CLI::ValidationError("--route",
                             "expected auto, product, single-det or closed-form");
}

struct VerifyRow {
  std::string name;
  double t, gamma, residual, tol;
  bool pass() const { return residual < tol; }
};

std::vector<VerifyRow> run_verify_suite() {
  std::vector<VerifyRow> rows;
  auto add = [&](const std::string& name, double t, double g, double resid,
                 double tol) {
    rows.push_back({name, t, g, resid, tol});
  };

  for (double t : {0.0, -2.0})
    for (double g : {0.5, 1.0}) {
      add("logdet_vs_potential", t, g, zs::verify_log_det_from_potential(t, g),
          1e-7);
      add("gamma_factor_closed_form", t, g,
          gapdist::verify_gamma_closed_form(t, g), 1e-7);
    }

  for (double t : {-2.0, 0.0, 1.0})
    for (double g : {0.5, 1.0})
      add("cumulative_resolvent", t, g, fred::verify_cumulative_identity(t, g),
          1e-8);

  for (double t : {-4.0, 0.0, 6.0}) {
    const auto fs = gapdist::verify_fs_identities(t);
    add("shifted_rank_one", t, 1.0, fs.resid_rank_one, 1e-8);
    add("determinant_product", t, 1.0, fs.resid_product, 1e-8);
  }

  add("tail_rate_polylog", -1.0, 0.5, tails::verify_polylog_integral(-1.0, 0.5),
      1e-9);
  add("tail_rate_polylog", -2.0, 0.9, tails::verify_polylog_integral(-2.0, 0.9),
      1e-9);

  for (double t : {-2.0, 0.0, 2.0}) {
    const double a = gapdist::cdf(t, 1.0, gapdist::Route::PRODUCT).F;
    const double b = gapdist::cdf(t, 1.0, gapdist::Route::SINGLE_DET).F;
    add("route_agreement", t, 1.0, std::fabs(a - b), 1e-8);
  }

  for (double g : {0.5, 1.0})
    add("right_tail", 5.0, g,
        std::fabs(gapdist::cdf(5.0, g).F - tails::right_tail(5.0, g)), 1e-12);

  for (auto [t, g] : {std::pair{0.0, 1.0}, std::pair{-1.0, 0.5}}) {
    const auto ab = gapdist::verify_ab_system(t, g);
    add("first_order_a", t, g, ab.resid_a_integral, 1e-7);
    add("first_order_du", t, g, ab.resid_du_dt, 1e-6);
  }

  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Limiting distribution of the largest real eigenvalue of large real "
      "Gaussian matrices: quadrature routes, tail laws and Monte Carlo"};
  app.require_subcommand(1);

  double gamma = 1.0;
  GridSpec grid;
  bool grid_given = false;
  int m = env_int("GINOE_DEFAULT_M", 0);
  int threads = env_int("GINOE_THREADS", 0);
  if (threads <= 0) threads = (int)std::thread::hardware_concurrency();
  if (threads <= 0) threads = 1;
  int n = 128, samples = 1000;
  std::uint64_t seed = 1;
  std::string route_str = "auto", format, out_path, law = "max-real";

  auto add_common = [&](CLI::App* cmd, double dmin, double dmax, double dstep) {
    cmd->add_option("--gamma", gamma, "thinning parameter in [0, 1]")
        ->default_val(1.0);
    cmd->add_option("--t-min", grid.t_min, "grid start")->default_val(dmin);
    cmd->add_option("--t-max", grid.t_max, "grid end")->default_val(dmax);
    cmd->add_option("--step", grid.step, "grid spacing")->default_val(dstep);
    cmd->add_option("--m", m, "quadrature order (0 = automatic)");
    cmd->add_option("--format", format, "csv or json");
    cmd->add_option("--out", out_path, "write to file instead of stdout");
    cmd->add_option("--threads", threads, "worker count");
  };

  auto* c_cdf = app.add_subcommand("cdf", "distribution values over a t grid");
  add_common(c_cdf, -6.0, 4.0, 0.25);
  c_cdf->add_option("--route", route_str,
                    "auto, product, single-det or closed-form");

  auto* c_pdf = app.add_subcommand("pdf", "density values over a t grid");
  add_common(c_pdf, -6.0, 4.0, 0.25);

  auto* c_mom = app.add_subcommand("moments", "mean, variance, skewness and "
                                              "excess kurtosis");
  add_common(c_mom, -6.0, 4.0, 0.25);

  auto* c_tails = app.add_subcommand("tails", "tail parameters and the "
                                              "quadratic series constant");
  add_common(c_tails, -6.0, 4.0, 0.25);

  auto* c_pot = app.add_subcommand("potential", "scattering potential over a "
                                                "grid");
  add_common(c_pot, -3.0, 3.0, 0.25);

  auto* c_ver = app.add_subcommand("verify", "run the identity suite and "
                                             "report residuals");
  add_common(c_ver, -6.0, 4.0, 0.25);

  auto* c_samp = app.add_subcommand("sample", "Monte Carlo comparison against "
                                              "the limit law");
  add_common(c_samp, 0.0, 0.0, 0.25);
  c_samp->add_option("--n", n, "matrix size")->default_val(128);
  c_samp->add_option("--samples", samples, "number of draws")->default_val(1000);
  c_samp->add_option("--seed", seed, "base seed; draw k uses seed + k")
      ->default_val(1);
  c_samp->add_option("--law", law, "max-real or complex-radius");

  auto* c_cloud = app.add_subcommand("cloud", "rescaled eigenvalue point cloud");
  add_common(c_cloud, 0.0, 0.0, 0.25);
  c_cloud->add_option("--n", n, "matrix size")->default_val(256);
  c_cloud->add_option("--samples", samples, "number of draws")->default_val(1);
  c_cloud->add_option("--seed", seed, "base seed")->default_val(2024);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  CLI::App* cmd = app.get_subcommands().front();
  const std::string name = cmd->get_name();
  grid_given = cmd->count("--t-min") || cmd->count("--t-max") ||
               cmd->count("--step");

  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    std::cerr << "error: --gamma must lie in [0, 1]\n";
    return 2;
  }
  if (grid.step <= 0.0) {
    std::cerr << "error: --step must be positive\n";
    return 2;
  }
  if (grid.t_min > grid.t_max) {
    std::cerr << "error: --t-min must not exceed --t-max\n";
    return 2;
  }
  if (format.empty()) {
    // row emitters default to csv, summaries to json
    format = (name == "moments" || name == "tails" || name == "verify")
                 ? "json"
                 : "csv";
  }
  if (format != "csv" && format != "json") {
    std::cerr << "error: --format must be csv or json\n";
    return 2;
  }

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << "error: cannot open " << out_path << " for writing\n";
      return 2;
    }
  }
  std::ostream& os = out_path.empty() ? std::cout : file;

  try {
    if (name == "cdf") {
      const auto route = parse_route(route_str);
      const int count = grid.count();
      std::vector<gapdist::DistributionPoint> rows(count);
      parallel_for(count, threads, [&](int i) {
        rows[i] = gapdist::cdf(grid.at(i), gamma, route, m);
      });
      if (format == "csv") {
        os << "t,gamma,F,det_factor,gamma_factor,route\n";
        for (const auto& r : rows)
          os << fmt17(r.t) << ',' << fmt17(r.gamma) << ',' << fmt17(r.F) << ','
             << fmt17(r.det_factor) << ',' << fmt17(r.gamma_factor) << ','
             << gapdist::route_name(r.route) << '\n';
      } else {
        json j{{"schema_version", schema_version}, {"command", "cdf"}};
        for (const auto& r : rows)
          j["rows"].push_back({{"t", r.t},
                               {"gamma", r.gamma},
                               {"F", r.F},
                               {"det_factor", r.det_factor},
                               {"gamma_factor", r.gamma_factor},
                               {"route", gapdist::route_name(r.route)}});
        os << j.dump(2) << '\n';
      }
    } else if (name == "pdf") {
      const int count = grid.count();
      std::vector<double> rows(count);
      parallel_for(count, threads,
                   [&](int i) { rows[i] = gapdist::pdf(grid.at(i), gamma); });
      if (format == "csv") {
        os << "t,gamma,pdf\n";
        for (int i = 0; i < count; ++i)
          os << fmt17(grid.at(i)) << ',' << fmt17(gamma) << ',' << fmt17(rows[i])
             << '\n';
      } else {
        json j{{"schema_version", schema_version}, {"command", "pdf"}};
        for (int i = 0; i < count; ++i)
          j["rows"].push_back({{"t", grid.at(i)}, {"gamma", gamma},
                               {"pdf", rows[i]}});
        os << j.dump(2) << '\n';
      }
    } else if (name == "moments") {
      const auto mom = gapdist::moments(gamma);
      if (format == "json") {
        json j{{"schema_version", schema_version},
               {"command", "moments"},
               {"gamma", mom.gamma},
               {"mean", mom.mean},
               {"variance", mom.variance},
               {"skewness", mom.skewness},
               {"kurtosis", mom.kurtosis},
               {"kurtosis_convention", "excess"},
               {"grid", {mom.grid_range.first, mom.grid_range.second}},
               {"tail_corrected", mom.tail_corrected}};
        os << j.dump(2) << '\n';
      } else {
        os << "gamma,mean,variance,skewness,kurtosis\n";
        os << fmt17(mom.gamma) << ',' << fmt17(mom.mean) << ','
           << fmt17(mom.variance) << ',' << fmt17(mom.skewness) << ','
           << fmt17(mom.kurtosis) << '\n';
      }
    } else if (name == "tails") {
      const auto p = tails::estimate_eta0(gamma);
      const double fc = tails::forrester_constant();
      if (format == "json") {
        json j{{"schema_version", schema_version},
               {"command", "tails"},
               {"gamma", p.gamma},
               {"eta1", p.eta1},
               {"eta0", p.eta0},
               {"fit_window", {p.fit_window.first, p.fit_window.second}},
               {"spread", p.spread},
               {"series_constant", fc}};
        os << j.dump(2) << '\n';
      } else {
        os << "gamma,eta1,eta0,window_lo,window_hi,spread,series_constant\n";
        os << fmt17(p.gamma) << ',' << fmt17(p.eta1) << ',' << fmt17(p.eta0)
           << ',' << fmt17(p.fit_window.first) << ','
           << fmt17(p.fit_window.second) << ',' << fmt17(p.spread) << ','
           << fmt17(fc) << '\n';
      }
    } else if (name == "potential") {
      const int count = grid.count();
      std::vector<zs::PotentialSample> rows(count);
      parallel_for(count, threads, [&](int i) {
        rows[i] = zs::potential_sample(grid.at(i), gamma);
      });
      if (format == "csv") {
        os << "x,gamma,y12,im_y\n";
        for (const auto& r : rows)
          os << fmt17(r.x) << ',' << fmt17(r.gamma) << ',' << fmt17(r.y12)
             << ',' << fmt17(r.im_y) << '\n';
      } else {
        json j{{"schema_version", schema_version}, {"command", "potential"}};
        for (const auto& r : rows)
          j["rows"].push_back({{"x", r.x}, {"gamma", r.gamma},
                               {"y12", r.y12}, {"im_y", r.im_y}});
        os << j.dump(2) << '\n';
      }
    } else if (name == "verify") {
      const auto rows = run_verify_suite();
      bool all = true;
      for (const auto& r : rows) all = all && r.pass();
      if (format == "json") {
        json j{{"schema_version", schema_version},
               {"command", "verify"},
               {"all_pass", all}};
        for (const auto& r : rows)
          j["checks"].push_back({{"name", r.name},
                                 {"t", r.t},
                                 {"gamma", r.gamma},
                                 {"residual", r.residual},
                                 {"tolerance", r.tol},
                                 {"pass", r.pass()}});
        os << j.dump(2) << '\n';
      } else {
        os << "name,t,gamma,residual,tolerance,pass\n";
        for (const auto& r : rows)
          os << r.name << ',' << fmt17(r.t) << ',' << fmt17(r.gamma) << ','
             << fmt17(r.residual) << ',' << fmt17(r.tol) << ','
             << (r.pass() ? 1 : 0) << '\n';
      }
      return all ? 0 : 1;
    } else if (name == "sample") {
      if (law != "max-real" && law != "complex-radius") {
        std::cerr << "error: --law must be max-real or complex-radius\n";
        return 2;
      }
      std::vector<double> ts;
      if (grid_given) {
        for (int i = 0; i < grid.count(); ++i) ts.push_back(grid.at(i));
      } else if (law == "max-real") {
        ts = {-2.0, -1.0, 0.0, 1.0, 2.0};
      } else {
        ts = {0.0, 1.0};
      }

      std::vector<std::optional<double>> vals(samples);
      const bool max_real = (law == "max-real");
      parallel_for(samples, threads, [&](int i) {
        const auto s = mc::draw_spectrum(n, seed + (std::uint64_t)i);
        vals[i] = max_real ? mc::scaled_max_real(s)
                           : std::optional<double>(mc::scaled_complex_radius(s));
      });
      const auto lawres = mc::empirical_cdf(
          vals, ts, max_real ? mc::LawKind::MAX_REAL
                             : mc::LawKind::COMPLEX_RADIUS);

      std::vector<double> theory(ts.size());
      for (std::size_t i = 0; i < ts.size(); ++i)
        theory[i] = max_real ? gapdist::cdf(ts[i], gamma).F
                             : std::exp(-0.5 * std::exp(-ts[i]));
      if (format == "csv") {
        os << "t,count,total,empirical,theoretical,wilson_halfwidth\n";
        for (std::size_t i = 0; i < ts.size(); ++i) {
          const int c = lawres.counts_at_or_below[i];
          os << fmt17(ts[i]) << ',' << c << ',' << lawres.total << ','
             << fmt17((double)c / lawres.total) << ',' << fmt17(theory[i])
             << ',' << fmt17(mc::wilson_halfwidth(c, lawres.total)) << '\n';
        }
      } else {
        json j{{"schema_version", schema_version},
               {"command", "sample"},
               {"law", law},
               {"n", n},
               {"samples", samples},
               {"seed", seed}};
        for (std::size_t i = 0; i < ts.size(); ++i) {
          const int c = lawres.counts_at_or_below[i];
          j["rows"].push_back(
              {{"t", ts[i]},
               {"count", c},
               {"total", lawres.total},
               {"empirical", (double)c / lawres.total},
               {"theoretical", theory[i]},
               {"wilson_halfwidth", mc::wilson_halfwidth(c, lawres.total)}});
        }
        os << j.dump(2) << '\n';
      }
    } else if (name == "cloud") {
      const auto pts = mc::circular_law_cloud(n, samples, seed);
      if (format == "csv") {
        os << "re,im,is_real\n";
        for (const auto& p : pts)
          os << fmt17(p.re) << ',' << fmt17(p.im) << ',' << (p.is_real ? 1 : 0)
             << '\n';
      } else {
        json j{{"schema_version", schema_version}, {"command", "cloud"},
               {"n", n}, {"samples", samples}};
        for (const auto& p : pts)
          j["rows"].push_back({{"re", p.re}, {"im", p.im},
                               {"is_real", p.is_real}});
        os << j.dump(2) << '\n';
      }
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
