#include "wgnls/growth.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "wgnls/diagnostics.hpp"
#include "wgnls/errors.hpp"
#include "wgnls/evolution.hpp"
#include "wgnls/snapshot.hpp"
#include "wgnls/spacetime.hpp"
#include "wgnls/stats.hpp"
#include "wgnls/transform.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace wgnls {

namespace {

constexpr double kBoundaryWarn = 1e-6;
constexpr double kBoundaryError = 1e-3;
// delocalized data (e.g. plane waves) fills the box uniformly; periodization
// is exact there and the truncation monitor carries no information
constexpr double kDelocalizedFraction = 0.05;

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string hash_hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string order_label(double order) {
  std::ostringstream ss;
  ss << "H" << order;
  return ss.str();
}

double default_gamma(double order) {
  if (!(order > 1.0))
    throw parameter_error("iteration bound: default gamma needs order > 1");
  return 0.45 / (order - 1.0);
}

}  // namespace

ExperimentConfig ExperimentConfig::from_config(const Config& cfg) {
  ExperimentConfig ec;
  ec.name = cfg.get_string("name", "run");
  ec.domain = DomainSpec(cfg.get_double("L", kPi),
                         static_cast<std::size_t>(cfg.get_int("nx", 128)),
                         static_cast<std::size_t>(cfg.get_int("ny", 128)));
  ec.dt = cfg.get_double("dt", 1e-3);
  ec.t_end = cfg.get_double("t_end", 10.0);
  ec.dealias = cfg.get_bool("dealias", true);
  ec.ic.family = cfg.get_string("ic", "plane_wave");
  ec.ic.amplitude = cfg.get_double("ic.amplitude", 1.0);
  ec.ic.mode = cfg.get_int("ic.mode", 1);
  ec.ic.width = cfg.get_double("ic.width", 0.5);
  ec.ic.band = cfg.get_double("ic.band", 4.0);
  ec.ic.seed = static_cast<std::uint64_t>(cfg.get_int("ic.seed", 0));
  ec.orders = cfg.get_list("orders", {1.0, 2.0});
  ec.t_loc = cfg.get_double("t_loc", 1.0);
  ec.record_every = static_cast<std::size_t>(cfg.get_int("record_every", 100));
  ec.t_min_fit = cfg.get_double("t_min", 10.0);
  ec.gamma = cfg.get_double("gamma", -1.0);
  ec.boundary_policy = cfg.get_string("boundary_policy", "error");
  ec.output_dir = cfg.get_string("output", "");
  // energy-level tracking is always on
  bool has_one = false;
  for (double s : ec.orders)
    if (std::abs(s - 1.0) < 1e-12) has_one = true;
  if (!has_one) ec.orders.insert(ec.orders.begin(), 1.0);
  std::sort(ec.orders.begin(), ec.orders.end());
  ec.validate();
  return ec;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  ExperimentConfig ec = from_config(Config::parse_file(path));
  if (ec.name == "run") ec.name = fs::path(path).stem().string();
  return ec;
}

void ExperimentConfig::validate() const {
  if (!(dt > 0.0)) throw parameter_error("config: dt must be positive");
  if (t_end < 0.0) throw parameter_error("config: t_end must be >= 0");
  if (!(t_loc > 0.0)) throw parameter_error("config: t_loc must be positive");
  if (record_every == 0) throw parameter_error("config: record_every must be >= 1");
  for (double s : orders)
    if (s < 0.0) throw parameter_error("config: diagnostic orders must be >= 0");
  if (boundary_policy != "error" && boundary_policy != "warn" &&
      boundary_policy != "off")
    throw parameter_error("config: boundary_policy must be error|warn|off");
  if (ic.family != "plane_wave" && ic.family != "gaussian_torus" &&
      ic.family != "random_low_band")
    throw parameter_error("config: unknown initial-condition family '" +
                          ic.family + "'");
}

std::string ExperimentConfig::canonical_text() const {
  std::ostringstream out;
  out << "L = " << fmt_double(domain.half_length) << '\n'
      << "dealias = " << (dealias ? "true" : "false") << '\n'
      << "dt = " << fmt_double(dt) << '\n'
      << "gamma = " << fmt_double(gamma) << '\n'
      << "ic = " << ic.family << '\n'
      << "ic.amplitude = " << fmt_double(ic.amplitude) << '\n'
      << "ic.band = " << fmt_double(ic.band) << '\n'
      << "ic.mode = " << ic.mode << '\n'
      << "ic.seed = " << ic.seed << '\n'
      << "ic.width = " << fmt_double(ic.width) << '\n'
      << "nx = " << domain.nx << '\n'
      << "ny = " << domain.ny << '\n';
  out << "orders =";
  for (double s : orders) out << ' ' << fmt_double(s);
  out << '\n'
      << "record_every = " << record_every << '\n'
      << "t_end = " << fmt_double(t_end) << '\n'
      << "t_loc = " << fmt_double(t_loc) << '\n'
      << "t_min = " << fmt_double(t_min_fit) << '\n';
  return out.str();
}

std::uint64_t ExperimentConfig::content_hash() const {
  return fnv1a_hash(canonical_text());
}

Field build_initial_condition(const DomainSpec& d, const InitialCondition& ic) {
  Field f(d);
  if (ic.family == "plane_wave") {
    for (std::size_t k = 0; k < d.ny; ++k) {
      const double ph = static_cast<double>(ic.mode) * d.y(k);
      const cplx v = ic.amplitude * cplx(std::cos(ph), std::sin(ph));
      for (std::size_t j = 0; j < d.nx; ++j) f.at(j, k) = v;
    }
  } else if (ic.family == "gaussian_torus") {
    if (!(ic.width > 0.0))
      throw parameter_error("gaussian_torus: width must be positive");
    for (std::size_t k = 0; k < d.ny; ++k) {
      const double ph = static_cast<double>(ic.mode) * d.y(k);
      const cplx v = ic.amplitude * cplx(std::cos(ph), std::sin(ph));
      for (std::size_t j = 0; j < d.nx; ++j) {
        const double x = d.x(j);
        f.at(j, k) = v * std::exp(-x * x / (2.0 * ic.width * ic.width));
      }
    }
  } else if (ic.family == "random_low_band") {
    Spectrum s = random_band_spectrum(d, ic.band, ic.seed);
    for (cplx& z : s.coeffs) z *= ic.amplitude;
    f = inverse_transform(s);
  } else {
    throw parameter_error("unknown initial-condition family '" + ic.family + "'");
  }
  return f;
}

const std::vector<double>& GrowthRecord::norms_at(double order) const {
  for (std::size_t i = 0; i < orders.size(); ++i)
    if (std::abs(orders[i] - order) < 1e-12) return hs[i];
  throw parameter_error("GrowthRecord: order not recorded");
}

std::pair<double, double> fit_power_law(const std::vector<double>& times,
                                        const std::vector<double>& norms,
                                        double t_min) {
  if (times.size() != norms.size())
    throw parameter_error("fit_power_law: mismatched series");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < t_min || times[i] <= 0.0) continue;
    if (!(norms[i] > 0.0))
      throw parameter_error("fit_power_law: norms must be positive");
    lx.push_back(std::log(times[i]));
    ly.push_back(std::log(norms[i]));
  }
  if (lx.size() < 8)
    throw parameter_error("fit_power_law: need >= 8 samples beyond t_min");
  LinFit fit = linear_fit(lx, ly);
  return {fit.slope, fit.r2};
}

IterationBound check_iteration_bound(const GrowthRecord& record, double order,
                                     double gamma) {
  if (record.window_rows.size() < 2)
    throw parameter_error("check_iteration_bound: need >= 2 window endpoints");
  const std::vector<double>& norms = record.norms_at(order);
  IterationBound out;
  out.order = order;
  out.gamma = gamma < 0.0 ? default_gamma(order) : gamma;
  for (std::size_t j = 0; j + 1 < record.window_rows.size(); ++j) {
    const double h0 = norms[record.window_rows[j]];
    const double h1 = norms[record.window_rows[j + 1]];
    if (!(h0 > 0.0))
      throw degenerate_input_error(
          "check_iteration_bound: zero norm at a window endpoint");
    const double gain = h1 * h1 - h0 * h0;
    out.constants.push_back(std::max(0.0, gain) / std::pow(h0, 2.0 - out.gamma));
  }
  out.max_c = *std::max_element(out.constants.begin(), out.constants.end());
  out.median_c = median(out.constants);
  return out;
}

namespace {

void persist_run(const ExperimentConfig& cfg, const GrowthRecord& rec,
                 const Field& final_field) {
  fs::create_directories(cfg.output_dir);
  const fs::path dir(cfg.output_dir);

  {
    std::ofstream csv(dir / "series.csv");
    if (!csv) throw io_error("run_experiment: cannot write series.csv");
    csv << "t,mass,energy,boundary_frac";
    for (double s : rec.orders) csv << ',' << order_label(s);
    csv << '\n';
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
      csv << fmt_double(rec.times[i]) << ',' << fmt_double(rec.mass_series[i])
          << ',' << fmt_double(rec.energy_series[i]) << ','
          << fmt_double(rec.boundary_series[i]);
      for (std::size_t oi = 0; oi < rec.orders.size(); ++oi)
        csv << ',' << fmt_double(rec.hs[oi][i]);
      csv << '\n';
    }
  }

  save_field(final_field, (dir / "final_field.bin").string());

  json j;
  j["name"] = cfg.name;
  j["config_hash"] = hash_hex(cfg.content_hash());
  j["domain"] = {{"L", cfg.domain.half_length}, {"nx", cfg.domain.nx}, {"ny", cfg.domain.ny}};
  j["dt"] = cfg.dt;
  j["t_end"] = cfg.t_end;
  j["dealias"] = cfg.dealias;
  j["ic"] = {{"family", cfg.ic.family}, {"amplitude", cfg.ic.amplitude},
             {"mode", cfg.ic.mode},     {"width", cfg.ic.width},
             {"band", cfg.ic.band},     {"seed", cfg.ic.seed}};
  j["orders"] = cfg.orders;
  j["t_loc"] = cfg.t_loc;
  j["t_min"] = cfg.t_min_fit;
  j["rows"] = rec.times.size();
  j["windows"] = rec.window_rows.size();

  const double m0 = rec.mass_series.front(), e0 = rec.energy_series.front();
  double mass_drift = 0.0, energy_drift = 0.0, h1sq_max = 0.0;
  const std::vector<double>& h1 = rec.norms_at(1.0);
  for (std::size_t i = 0; i < rec.times.size(); ++i) {
    if (m0 > 0.0)
      mass_drift = std::max(mass_drift, std::abs(rec.mass_series[i] - m0) / m0);
    if (e0 > 0.0)
      energy_drift = std::max(energy_drift, std::abs(rec.energy_series[i] - e0) / e0);
    h1sq_max = std::max(h1sq_max, h1[i] * h1[i]);
  }
  j["conservation"] = {{"mass_drift_rel", mass_drift},
                       {"energy_drift_rel", energy_drift}};
  // pointwise weight bound (1+|xi|+|n|)^2 <= 2 + 4(xi^2+n^2) gives
  // H1^2 <= 2M + 8E from the conserved quantities
  const double h1_bound = 8.0 * e0 + 2.0 * m0;
  j["h1_bound"] = {{"h1sq_max", h1sq_max},
                   {"bound", h1_bound},
                   {"ok", h1sq_max <= h1_bound * (1.0 + 1e-9)}};
  j["boundary"] = {{"initial_frac", rec.boundary_series.front()},
                   {"max_delta", rec.max_boundary_delta},
                   {"policy", cfg.boundary_policy}};

  json fits = json::array();
  for (const PowerLawFit& f : rec.fits) {
    fits.push_back({{"order", f.order},
                    {"beta", f.beta},
                    {"r2", f.r2},
                    {"bound", f.bound},
                    {"valid", f.valid}});
  }
  j["fits"] = fits;

  json iter = json::array();
  for (double s : cfg.orders) {
    if (!(s > 1.0) || rec.window_rows.size() < 2) continue;
    IterationBound ib = check_iteration_bound(rec, s, cfg.gamma);
    iter.push_back({{"order", ib.order},
                    {"gamma", ib.gamma},
                    {"max_c", ib.max_c},
                    {"median_c", ib.median_c},
                    {"windows", ib.constants.size()}});
  }
  j["iteration"] = iter;

  std::ofstream out(dir / "summary.json");
  if (!out) throw io_error("run_experiment: cannot write summary.json");
  out << j.dump(2) << '\n';
}

}  // namespace

GrowthRecord run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  Field u0 = build_initial_condition(cfg.domain, cfg.ic);

  GrowthRecord rec;
  rec.orders = cfg.orders;
  rec.t_loc = cfg.t_loc;
  rec.hs.assign(cfg.orders.size(), {});

  const double initial_boundary = boundary_mass_fraction(u0);
  const bool monitor = cfg.boundary_policy != "off" &&
                       initial_boundary < kDelocalizedFraction;
  bool warned = false;

  auto record_row = [&](double t, const Field& f) {
    Spectrum s = forward_transform(f);
    rec.times.push_back(t);
    rec.mass_series.push_back(mass(f));
    rec.energy_series.push_back(energy(f));
    const double frac = boundary_mass_fraction(f);
    rec.boundary_series.push_back(frac);
    for (std::size_t oi = 0; oi < cfg.orders.size(); ++oi)
      rec.hs[oi].push_back(sobolev_norm(s, cfg.orders[oi]));
    if (monitor) {
      const double delta = frac - initial_boundary;
      rec.max_boundary_delta = std::max(rec.max_boundary_delta, delta);
      if (delta > kBoundaryError && cfg.boundary_policy == "error")
        throw contamination_error(
            "run_experiment: boundary mass fraction grew by " +
            fmt_double(delta) + " at t=" + fmt_double(t));
      if (delta > kBoundaryWarn && !warned) {
        std::fprintf(stderr,
                     "warning: boundary mass fraction grew by %.3g at t=%g\n",
                     delta, t);
        warned = true;
      }
    }
  };

  record_row(0.0, u0);
  Field final_field = u0;
  if (cfg.t_end > 0.0) {
    EvolutionState state{u0, 0.0, cfg.dt, cfg.dealias};
    Observer obs{cfg.record_every, record_row};
    state = evolve(std::move(state), cfg.t_end, {obs});
    final_field = std::move(state.field);
  }

  // window endpoints t_j = j * t_loc, snapped to the nearest recorded row
  std::size_t prev = 0;
  for (std::size_t jw = 0;; ++jw) {
    const double tj = static_cast<double>(jw) * cfg.t_loc;
    if (tj > cfg.t_end + 1e-9) break;
    std::size_t best = 0;
    double best_err = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
      const double err = std::abs(rec.times[i] - tj);
      if (err < best_err) {
        best_err = err;
        best = i;
      }
    }
    if (rec.window_rows.empty() || best > prev) {
      rec.window_rows.push_back(best);
      prev = best;
    }
  }

  for (std::size_t oi = 0; oi < cfg.orders.size(); ++oi) {
    PowerLawFit f;
    f.order = cfg.orders[oi];
    f.bound = 2.0 * (cfg.orders[oi] - 1.0) + 0.5;
    try {
      auto [beta, r2] = fit_power_law(rec.times, rec.hs[oi], cfg.t_min_fit);
      f.beta = beta;
      f.r2 = r2;
      f.valid = true;
    } catch (const parameter_error&) {
      f.valid = false;  // not enough samples past t_min
    }
    rec.fits.push_back(f);
  }

  if (!cfg.output_dir.empty()) persist_run(cfg, rec, final_field);
  return rec;
}

std::vector<SweepRow> sweep(const std::vector<ExperimentConfig>& configs,
                            std::size_t workers) {
  if (configs.empty()) throw parameter_error("sweep: no configs");
  if (workers == 0)
    workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, configs.size());

  std::vector<SweepRow> rows(configs.size());
  std::atomic<std::size_t> next{0};

  auto run_one = [&](std::size_t i) {
    const ExperimentConfig& cfg = configs[i];
    SweepRow& row = rows[i];
    row.name = cfg.name;
    row.hash_hex = hash_hex(cfg.content_hash());
    try {
      // resume: a summary written for the identical config is trusted
      if (!cfg.output_dir.empty()) {
        const fs::path summary = fs::path(cfg.output_dir) / "summary.json";
        if (fs::exists(summary)) {
          std::ifstream in(summary);
          json j = json::parse(in);
          if (j.value("config_hash", "") == row.hash_hex) {
            row.status = "skipped";
            for (const auto& jf : j["fits"]) {
              row.fits.push_back({jf["order"], jf["beta"], jf["r2"],
                                  jf["bound"], jf["valid"]});
            }
            for (const auto& ji : j["iteration"])
              row.max_c = std::max(row.max_c, ji["max_c"].get<double>());
            for (const PowerLawFit& f : row.fits)
              if (f.valid && f.order > 1.0 && f.beta > f.bound)
                row.consistent = false;
            return;
          }
        }
      }
      GrowthRecord rec = run_experiment(cfg);
      row.status = "ok";
      row.fits = rec.fits;
      for (double s : cfg.orders) {
        if (!(s > 1.0) || rec.window_rows.size() < 2) continue;
        row.max_c = std::max(row.max_c,
                             check_iteration_bound(rec, s, cfg.gamma).max_c);
      }
      for (const PowerLawFit& f : row.fits)
        if (f.valid && f.order > 1.0 && f.beta > f.bound) row.consistent = false;
    } catch (const std::exception& e) {
      row.status = "failed";
      row.error = e.what();
      row.consistent = false;
    }
  };

  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= configs.size()) break;
        run_one(i);
      }
    });
  for (std::thread& t : pool) t.join();
  return rows;
}

std::string sweep_table_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "name,hash,status,order,beta,r2,bound,max_c,consistent,error\n";
  for (const SweepRow& row : rows) {
    if (row.fits.empty()) {
      out << row.name << ',' << row.hash_hex << ',' << row.status
          << ",,,,," << fmt_double(row.max_c) << ','
          << (row.consistent ? "true" : "false") << ',' << row.error << '\n';
      continue;
    }
    for (const PowerLawFit& f : row.fits) {
      out << row.name << ',' << row.hash_hex << ',' << row.status << ','
          << fmt_double(f.order) << ','
          << (f.valid ? fmt_double(f.beta) : std::string()) << ','
          << (f.valid ? fmt_double(f.r2) : std::string()) << ','
          << fmt_double(f.bound) << ',' << fmt_double(row.max_c) << ','
          << (row.consistent ? "true" : "false") << ',' << row.error << '\n';
    }
  }
  return out.str();
}

AnalyzeResult analyze_run(const std::string& run_dir) {
  const fs::path dir(run_dir);
  std::ifstream sj(dir / "summary.json");
  if (!sj) throw io_error("analyze: missing summary.json in " + run_dir);
  json summary = json::parse(sj);

  std::ifstream csv(dir / "series.csv");
  if (!csv) throw io_error("analyze: missing series.csv in " + run_dir);
  std::string header;
  std::getline(csv, header);
  std::vector<std::string> cols;
  {
    std::istringstream hs(header);
    std::string c;
    while (std::getline(hs, c, ',')) cols.push_back(c);
  }
  std::vector<std::vector<double>> table(cols.size());
  std::string line;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::size_t ci = 0;
    while (std::getline(ls, cell, ',') && ci < cols.size())
      table[ci++].push_back(std::stod(cell));
    if (ci != cols.size()) throw io_error("analyze: ragged series.csv row");
  }
  auto column = [&](const std::string& name) -> const std::vector<double>& {
    for (std::size_t i = 0; i < cols.size(); ++i)
      if (cols[i] == name) return table[i];
    throw io_error("analyze: series.csv lacks column " + name);
  };

  AnalyzeResult res;
  const std::vector<double>& t = column("t");
  const std::vector<double>& m = column("mass");
  const std::vector<double>& e = column("energy");
  const std::vector<double>& h1 = column("H1");
  if (t.empty()) throw io_error("analyze: empty series");

  for (double mi : m)
    if (m.front() > 0.0)
      res.mass_drift = std::max(res.mass_drift,
                                std::abs(mi - m.front()) / m.front());
  if (res.mass_drift > 1e-6) {
    res.pass = false;
    res.failures.push_back("mass drift " + fmt_double(res.mass_drift) +
                           " exceeds 1e-6");
  }

  const double h1_bound = 8.0 * e.front() + 2.0 * m.front();
  double h1sq_max = 0.0;
  for (double v : h1) h1sq_max = std::max(h1sq_max, v * v);
  res.h1_bound_margin = h1_bound > 0.0 ? h1sq_max / h1_bound : 0.0;
  if (h1sq_max > h1_bound * (1.0 + 1e-9)) {
    res.pass = false;
    res.failures.push_back("H1 series violates the conserved-quantity bound");
  }

  const double t_min = summary.value("t_min", 10.0);
  for (double order : summary["orders"].get<std::vector<double>>()) {
    PowerLawFit f;
    f.order = order;
    f.bound = 2.0 * (order - 1.0) + 0.5;
    try {
      auto [beta, r2] = fit_power_law(t, column(order_label(order)), t_min);
      f.beta = beta;
      f.r2 = r2;
      f.valid = true;
    } catch (const parameter_error&) {
      f.valid = false;
    }
    res.fits.push_back(f);
    if (f.valid && order > 1.0 && f.beta > f.bound) {
      res.pass = false;
      res.failures.push_back("fitted exponent " + fmt_double(f.beta) +
                             " at order " + fmt_double(order) +
                             " exceeds bound " + fmt_double(f.bound));
    }
  }
  return res;
}

}  // namespace wgnls
