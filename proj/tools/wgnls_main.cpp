// Command-line front end: long-time simulations, randomized inequality
// verification ensembles, config sweeps, and post-hoc run analysis.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "wgnls/errors.hpp"
#include "wgnls/growth.hpp"
#include "wgnls/trials.hpp"

namespace fs = std::filesystem;
using namespace wgnls;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitParameter = 2;
constexpr int kExitBlowup = 3;
constexpr int kExitAcceptance = 4;

struct VerifyOptions {
  std::string estimate;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::vector<double> bands{4, 8, 16, 32};
  double s = 0.5;
  double b = 0.55;
  double bprime = 0.55;
  double b1 = 0.6;
  double b2 = 0.35;
  std::size_t nt = 16;
  double window = 1.0;
  double rho = 0.25;
  std::size_t grid = 0;  // 0: auto-size per band
  std::string out;
};

int run_verify(const VerifyOptions& opt) {
  std::vector<EstimateTrial> all;
  std::map<std::string, double> params{{"trials", static_cast<double>(opt.trials)},
                                       {"seed", static_cast<double>(opt.seed)},
                                       {"nt", static_cast<double>(opt.nt)},
                                       {"window", opt.window},
                                       {"rho", opt.rho}};
  for (double N : opt.bands) {
    TrialGrid grid = opt.grid
                         ? TrialGrid{DomainSpec(kPi, opt.grid, opt.grid), opt.nt,
                                     opt.window, opt.rho}
                         : TrialGrid::for_band(N, opt.nt, opt.window);
    grid.taper_rho = opt.rho;
    for (std::size_t i = 0; i < opt.trials; ++i) {
      const std::uint64_t seed = opt.seed + 1000003ULL * i;
      if (opt.estimate == "strichartz") {
        all.push_back(strichartz_trial(grid, N, seed));
      } else if (opt.estimate == "lemma25") {
        params["b2"] = opt.b2;
        all.push_back(lemma25_trial(grid, N, opt.b2, seed));
      } else if (opt.estimate == "bilinear") {
        params["b1"] = opt.b1;
        all.push_back(bilinear_trial(grid, N, N, opt.b1, seed));
      } else if (opt.estimate == "trilinear") {
        params["s"] = opt.s;
        params["b"] = opt.b;
        params["bprime"] = opt.bprime;
        all.push_back(
            trilinear_trial(grid, XsbParams{opt.s, opt.b}, opt.bprime, N, seed));
      } else {
        throw parameter_error("verify: unknown estimate '" + opt.estimate + "'");
      }
    }
  }
  EnsembleReport rep = ensemble_report(all);
  std::printf("estimate=%s trials=%zu max=%.6g median=%.6g q90=%.6g\n",
              opt.estimate.c_str(), rep.count, rep.max_ratio, rep.median_ratio,
              rep.q90);
  for (const auto& [scale, mx] : rep.scale_max)
    std::printf("  scale %-8g max ratio %.6g\n", scale, mx);
  if (rep.has_slope)
    std::printf("  log-log slope of max ratio vs scale: %.4f\n", rep.slope);
  if (!opt.out.empty()) {
    std::ofstream f(opt.out);
    if (!f) throw io_error("verify: cannot write " + opt.out);
    f << trials_to_json(opt.estimate, params, all, rep) << '\n';
  }
  return kExitOk;
}

int run_simulate(const std::string& config_path, const std::string& output) {
  ExperimentConfig cfg = ExperimentConfig::from_file(config_path);
  if (!output.empty()) cfg.output_dir = output;
  GrowthRecord rec = run_experiment(cfg);
  std::printf("run '%s': %zu rows to t=%.6g, %zu windows\n", cfg.name.c_str(),
              rec.times.size(), rec.times.back(), rec.window_rows.size());
  for (const PowerLawFit& f : rec.fits) {
    if (f.valid)
      std::printf("  H%-4g beta=%.4f (r2=%.4f, bound %.2f)\n", f.order, f.beta,
                  f.r2, f.bound);
    else
      std::printf("  H%-4g fit skipped (too few samples past t_min)\n", f.order);
  }
  if (!cfg.output_dir.empty())
    std::printf("  wrote %s/{series.csv,summary.json,final_field.bin}\n",
                cfg.output_dir.c_str());
  return kExitOk;
}

int run_sweep(const std::string& config_dir, std::size_t jobs,
              const std::string& out) {
  if (!fs::is_directory(config_dir))
    throw parameter_error("sweep: " + config_dir + " is not a directory");
  std::vector<std::string> paths;
  for (const auto& entry : fs::directory_iterator(config_dir)) {
    const std::string ext = entry.path().extension().string();
    if (ext == ".toml" || ext == ".cfg") paths.push_back(entry.path().string());
  }
  std::sort(paths.begin(), paths.end());
  if (paths.empty())
    throw parameter_error("sweep: no .toml/.cfg configs in " + config_dir);
  std::vector<ExperimentConfig> configs;
  for (const std::string& p : paths)
    configs.push_back(ExperimentConfig::from_file(p));
  std::vector<SweepRow> rows = sweep(configs, jobs);
  const std::string table = sweep_table_csv(rows);
  std::fputs(table.c_str(), stdout);
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw io_error("sweep: cannot write " + out);
    f << table;
  }
  bool any_failed = false;
  for (const SweepRow& r : rows) any_failed |= (r.status == "failed");
  return any_failed ? kExitFailure : kExitOk;
}

int run_analyze(const std::string& run_dir) {
  AnalyzeResult res = analyze_run(run_dir);
  std::printf("analyze %s: mass drift %.3g, H1-bound margin %.3f\n",
              run_dir.c_str(), res.mass_drift, res.h1_bound_margin);
  for (const PowerLawFit& f : res.fits)
    if (f.valid)
      std::printf("  H%-4g beta=%.4f (bound %.2f) %s\n", f.order, f.beta,
                  f.bound, f.order > 1.0 && f.beta > f.bound ? "VIOLATION" : "ok");
  for (const std::string& msg : res.failures)
    std::printf("  FAIL: %s\n", msg.c_str());
  std::printf("result: %s\n", res.pass ? "PASS" : "FAIL");
  return res.pass ? kExitOk : kExitAcceptance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cubic NLS on the waveguide: simulation and estimate lab"};
  app.require_subcommand(1);

  std::string config_path, output, config_dir, run_dir;
  std::size_t jobs = 0;
  VerifyOptions vopt;
  std::string sweep_out;

  CLI::App* sim = app.add_subcommand("simulate", "run one experiment config");
  sim->add_option("--config", config_path, "config file")->required();
  sim->add_option("--output", output, "override the output directory");

  CLI::App* verify = app.add_subcommand("verify", "randomized estimate trials");
  verify->add_option("--estimate", vopt.estimate,
                     "strichartz|bilinear|lemma25|trilinear")->required();
  verify->add_option("--trials", vopt.trials, "seeds per band");
  verify->add_option("--seed", vopt.seed, "base seed");
  verify->add_option("--bands", vopt.bands, "frequency bands N")->delimiter(',');
  verify->add_option("--s", vopt.s, "Sobolev exponent s");
  verify->add_option("--b", vopt.b, "modulation exponent b");
  verify->add_option("--bprime", vopt.bprime, "exponent b'");
  verify->add_option("--b1", vopt.b1, "bilinear exponent b1 > 1/2");
  verify->add_option("--b2", vopt.b2, "exponent b2 > 1/4");
  verify->add_option("--nt", vopt.nt, "time samples per window");
  verify->add_option("--window", vopt.window, "time window length");
  verify->add_option("--rho", vopt.rho, "taper fraction");
  verify->add_option("--grid", vopt.grid, "force square grid size");
  verify->add_option("--out", vopt.out, "JSON report path");

  CLI::App* sw = app.add_subcommand("sweep", "run every config in a directory");
  sw->add_option("--config-dir", config_dir, "directory of configs")->required();
  sw->add_option("--jobs", jobs, "parallel workers");
  sw->add_option("--out", sweep_out, "CSV table path");

  CLI::App* an = app.add_subcommand("analyze", "re-check a completed run");
  an->add_option("--run", run_dir, "run output directory")->required();

  try {
    app.parse(argc, argv);
    if (sim->parsed()) return run_simulate(config_path, output);
    if (verify->parsed()) return run_verify(vopt);
    if (sw->parsed()) return run_sweep(config_dir, jobs, sweep_out);
    if (an->parsed()) return run_analyze(run_dir);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParameter;
  } catch (const parameter_error& e) {
    std::fprintf(stderr, "parameter error: %s\n", e.what());
    return kExitParameter;
  } catch (const blowup_error& e) {
    std::fprintf(stderr, "blow-up: %s\n", e.what());
    return kExitBlowup;
  } catch (const contamination_error& e) {
    std::fprintf(stderr, "contamination: %s\n", e.what());
    return kExitBlowup;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  }
  return kExitParameter;
}
