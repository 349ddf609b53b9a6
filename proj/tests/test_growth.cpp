#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wgnls/diagnostics.hpp"
#include "wgnls/growth.hpp"
#include "wgnls/transform.hpp"

#include "test_util.hpp"

using namespace wgnls;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& leaf) {
  fs::path dir = fs::temp_directory_path() / "wgnls_growth_test" / leaf;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("config parser") {
  Config cfg = Config::parse_string(
      "# comment\n"
      "[run]\n"
      "nx = 64\n"
      "dt = 2.5e-3  # trailing comment\n"
      "name = \"demo\"\n"
      "dealias = off\n"
      "orders = 1, 1.5, 2\n");
  CHECK(cfg.get_int("nx", 0) == 64);
  CHECK(cfg.get_double("dt", 0.0) == 2.5e-3);
  CHECK(cfg.get_string("name", "") == "demo");
  CHECK_FALSE(cfg.get_bool("dealias", true));
  CHECK(cfg.get_list("orders", {}) == std::vector<double>{1.0, 1.5, 2.0});
  CHECK(cfg.get_double("missing", 7.0) == 7.0);
  CHECK_THROWS_AS(cfg.require_string("missing"), parameter_error);
  CHECK_THROWS_AS(cfg.get_int("dt", 0), parameter_error);
  CHECK_THROWS_AS(cfg.get_bool("name", true), parameter_error);
  CHECK_THROWS_AS(Config::parse_string("just some words\n"), parameter_error);
  CHECK_THROWS_AS(Config::parse_file("/nonexistent/path.toml"), io_error);
}

TEST_CASE("config hashing ignores key order") {
  Config a = Config::parse_string("x = 1\ny = 2\n");
  Config b = Config::parse_string("y = 2\nx = 1\n");
  Config c = Config::parse_string("x = 1\ny = 3\n");
  CHECK(a.content_hash() == b.content_hash());
  CHECK(a.content_hash() != c.content_hash());
}

TEST_CASE("experiment config") {
  SUBCASE("defaults and order augmentation") {
    ExperimentConfig ec = ExperimentConfig::from_config(
        Config::parse_string("orders = 2, 1.5\n"));
    CHECK(ec.orders == std::vector<double>{1.0, 1.5, 2.0});
    CHECK(ec.domain.nx == 128);
    CHECK(ec.dealias);
  }
  SUBCASE("t_end = 0 is a valid degenerate run") {
    CHECK_NOTHROW(ExperimentConfig::from_config(Config::parse_string("t_end = 0\n")));
  }
  SUBCASE("rejections") {
    CHECK_THROWS_AS(ExperimentConfig::from_config(Config::parse_string("dt = 0\n")),
                    parameter_error);
    CHECK_THROWS_AS(
        ExperimentConfig::from_config(Config::parse_string("ic = vortex\n")),
        parameter_error);
    CHECK_THROWS_AS(ExperimentConfig::from_config(
                        Config::parse_string("boundary_policy = maybe\n")),
                    parameter_error);
    CHECK_THROWS_AS(
        ExperimentConfig::from_config(Config::parse_string("record_every = 0\n")),
        parameter_error);
    CHECK_THROWS_AS(
        ExperimentConfig::from_config(Config::parse_string("orders = 1, -2\n")),
        parameter_error);
  }
  SUBCASE("name falls back to the file stem") {
    fs::path dir = fresh_dir("cfgname");
    fs::path file = dir / "my_case.toml";
    std::ofstream(file) << "dt = 1e-2\n";
    CHECK(ExperimentConfig::from_file(file.string()).name == "my_case");
    std::ofstream(file) << "name = explicit\n";
    CHECK(ExperimentConfig::from_file(file.string()).name == "explicit");
  }
  SUBCASE("content hash is stable across equivalent configs") {
    ExperimentConfig a =
        ExperimentConfig::from_config(Config::parse_string("dt = 1e-2\nnx = 64\n"));
    ExperimentConfig b =
        ExperimentConfig::from_config(Config::parse_string("nx = 64\ndt = 1e-2\n"));
    CHECK(a.content_hash() == b.content_hash());
    b.dt = 2e-2;
    CHECK(a.content_hash() != b.content_hash());
  }
}

TEST_CASE("initial condition families") {
  const DomainSpec d{kPi, 32, 32};
  SUBCASE("plane wave") {
    InitialCondition ic;
    ic.family = "plane_wave";
    ic.amplitude = 0.5;
    ic.mode = 2;
    Field f = build_initial_condition(d, ic);
    CHECK(mass(f) == doctest::Approx(0.25 * d.area()).epsilon(1e-12));
    Spectrum s = forward_transform(f);
    CHECK(std::abs(s.at(0, 2)) == doctest::Approx(0.5 * std::sqrt(d.area())));
  }
  SUBCASE("gaussian torus stays away from the boundary") {
    InitialCondition ic;
    ic.family = "gaussian_torus";
    ic.width = 0.5;
    Field f = build_initial_condition(d, ic);
    CHECK(boundary_mass_fraction(f) < 1e-10);
    ic.width = 0.0;
    CHECK_THROWS_AS(build_initial_condition(d, ic), parameter_error);
  }
  SUBCASE("random low band is deterministic and band-limited") {
    InitialCondition ic;
    ic.family = "random_low_band";
    ic.band = 3.0;
    ic.seed = 5;
    Field a = build_initial_condition(d, ic);
    Field b = build_initial_condition(d, ic);
    CHECK(testutil::max_abs_diff(a.values, b.values) == 0.0);
    Spectrum s = forward_transform(a);
    FourierGrid g(d);
    for (std::size_t k = 0; k < d.ny; ++k)
      for (std::size_t j = 0; j < d.nx; ++j)
        if (std::abs(g.xi(j)) > 3.0 || std::abs(g.n(k)) > 3.0)
          CHECK(std::abs(s.at(j, k)) < 1e-13);
  }
}

TEST_CASE("power-law fit") {
  std::vector<double> t, h;
  for (int i = 1; i <= 20; ++i) {
    t.push_back(0.5 * i);
    h.push_back(2.0 * std::pow(0.5 * i, 0.75));
  }
  SUBCASE("recovers an exact power law") {
    auto [beta, r2] = fit_power_law(t, h, 1.0);
    CHECK(beta == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(r2 == doctest::Approx(1.0));
  }
  SUBCASE("needs eight samples past t_min") {
    CHECK_THROWS_AS(fit_power_law(t, h, 8.7), parameter_error);
  }
  SUBCASE("rejects nonpositive norms and ragged input") {
    std::vector<double> bad = h;
    bad[15] = 0.0;
    CHECK_THROWS_AS(fit_power_law(t, bad, 1.0), parameter_error);
    bad.pop_back();
    CHECK_THROWS_AS(fit_power_law(t, bad, 1.0), parameter_error);
  }
}

TEST_CASE("iteration bound constants") {
  GrowthRecord rec;
  rec.orders = {1.0, 2.0};
  rec.hs.resize(2);
  const double C = 0.7, gamma = 0.8;
  double h2 = 4.0;  // h0 = 2
  for (int j = 0; j < 6; ++j) {
    rec.times.push_back(static_cast<double>(j));
    rec.window_rows.push_back(static_cast<std::size_t>(j));
    rec.hs[0].push_back(1.0);
    rec.hs[1].push_back(std::sqrt(h2));
    h2 += C * std::pow(std::sqrt(h2), 2.0 - gamma);
  }
  SUBCASE("recovers the recurrence constant exactly") {
    IterationBound ib = check_iteration_bound(rec, 2.0, gamma);
    CHECK(ib.constants.size() == 5);
    for (double c : ib.constants) CHECK(c == doctest::Approx(C).epsilon(1e-12));
    CHECK(ib.max_c == doctest::Approx(C));
    CHECK(ib.median_c == doctest::Approx(C));
  }
  SUBCASE("default gamma is 0.45/(s-1)") {
    CHECK(check_iteration_bound(rec, 2.0, -1.0).gamma == doctest::Approx(0.45));
    GrowthRecord one = rec;
    CHECK_THROWS_AS(check_iteration_bound(one, 1.0, -1.0), parameter_error);
  }
  SUBCASE("norm decrease clamps to zero") {
    GrowthRecord down = rec;
    for (std::size_t i = 0; i < down.hs[1].size(); ++i)
      down.hs[1][i] = 5.0 - static_cast<double>(i) * 0.5;
    IterationBound ib = check_iteration_bound(down, 2.0, 0.5);
    for (double c : ib.constants) CHECK(c == 0.0);
  }
  SUBCASE("degenerate endpoints") {
    GrowthRecord zero = rec;
    zero.hs[1][2] = 0.0;
    CHECK_THROWS_AS(check_iteration_bound(zero, 2.0, 0.5), degenerate_input_error);
    GrowthRecord short_rec;
    short_rec.orders = {2.0};
    short_rec.hs = {{1.0}};
    short_rec.window_rows = {0};
    CHECK_THROWS_AS(check_iteration_bound(short_rec, 2.0, 0.5), parameter_error);
  }
}

TEST_CASE("plane-wave experiment: conserved series and flat exponents") {
  ExperimentConfig cfg;
  cfg.name = "pw";
  cfg.domain = DomainSpec(kPi, 32, 32);
  cfg.dt = 1e-2;
  cfg.t_end = 0.5;
  cfg.t_loc = 0.25;
  cfg.record_every = 5;
  cfg.t_min_fit = 0.01;
  cfg.orders = {1.0, 2.0};

  GrowthRecord rec = run_experiment(cfg);
  CHECK(rec.times.front() == 0.0);
  CHECK(rec.times.back() == doctest::Approx(0.5));
  CHECK(rec.times.size() == 11);
  CHECK(rec.window_rows.size() == 3);  // t = 0, 0.25, 0.5

  const double m0 = rec.mass_series.front();
  for (double m : rec.mass_series) CHECK(m == doctest::Approx(m0).epsilon(1e-10));
  const std::vector<double>& h2 = rec.norms_at(2.0);
  for (double h : h2) CHECK(h == doctest::Approx(h2.front()).epsilon(1e-10));
  for (const PowerLawFit& f : rec.fits) {
    CHECK(f.valid);
    CHECK(std::abs(f.beta) < 1e-8);
    CHECK(f.bound == doctest::Approx(2.0 * (f.order - 1.0) + 0.5));
  }
  CHECK_THROWS_AS(rec.norms_at(3.0), parameter_error);
}

TEST_CASE("boundary contamination monitor") {
  // a centered gaussian disperses into the truncation strip well before t = 3
  ExperimentConfig cfg;
  cfg.name = "gauss";
  cfg.domain = DomainSpec(kPi, 32, 32);
  cfg.dt = 5e-3;
  cfg.t_end = 3.0;
  cfg.t_loc = 1.0;
  cfg.record_every = 20;
  cfg.ic.family = "gaussian_torus";
  cfg.ic.amplitude = 0.2;
  cfg.ic.width = 1.0;

  SUBCASE("policy error throws") {
    cfg.boundary_policy = "error";
    CHECK_THROWS_AS(run_experiment(cfg), contamination_error);
  }
  SUBCASE("policy warn records the excursion and completes") {
    cfg.boundary_policy = "warn";
    GrowthRecord rec = run_experiment(cfg);
    CHECK(rec.times.back() == doctest::Approx(3.0));
    CHECK(rec.max_boundary_delta > 1e-3);
  }
  SUBCASE("policy off does not track the delta") {
    cfg.boundary_policy = "off";
    GrowthRecord rec = run_experiment(cfg);
    CHECK(rec.max_boundary_delta == 0.0);
  }
}

TEST_CASE("experiment output and re-analysis") {
  ExperimentConfig cfg;
  cfg.name = "persist";
  cfg.domain = DomainSpec(kPi, 32, 32);
  cfg.dt = 1e-2;
  cfg.t_end = 1.0;
  cfg.t_loc = 0.5;
  cfg.record_every = 10;
  cfg.t_min_fit = 0.05;
  cfg.orders = {1.0, 2.0};
  cfg.ic.family = "random_low_band";
  cfg.ic.band = 3.0;
  cfg.ic.amplitude = 0.3;
  cfg.ic.seed = 9;

  fs::path dir = fresh_dir("persist_a");
  cfg.output_dir = dir.string();
  run_experiment(cfg);
  CHECK(fs::exists(dir / "series.csv"));
  CHECK(fs::exists(dir / "summary.json"));
  CHECK(fs::exists(dir / "final_field.bin"));

  SUBCASE("repeat runs are byte-identical") {
    fs::path dir2 = fresh_dir("persist_b");
    cfg.output_dir = dir2.string();
    run_experiment(cfg);
    CHECK(read_file(dir / "series.csv") == read_file(dir2 / "series.csv"));
    CHECK(read_file(dir / "summary.json") == read_file(dir2 / "summary.json"));
    CHECK(read_file(dir / "final_field.bin") == read_file(dir2 / "final_field.bin"));
  }

  SUBCASE("analyze passes on an honest run") {
    AnalyzeResult res = analyze_run(dir.string());
    CHECK(res.pass);
    CHECK(res.failures.empty());
    CHECK(res.mass_drift < 1e-6);
    CHECK(res.h1_bound_margin <= 1.0 + 1e-9);
  }

  SUBCASE("analyze flags a tampered mass column") {
    fs::path dir3 = fresh_dir("persist_c");
    fs::copy(dir, dir3, fs::copy_options::recursive);
    std::string csv = read_file(dir3 / "series.csv");
    // double the mass value in the final row only, leaving the baseline alone
    std::istringstream in(csv);
    std::ostringstream out;
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line))
      if (!line.empty()) lines.push_back(line);
    {
      std::string& last = lines.back();
      const auto c1 = last.find(',');
      const auto c2 = last.find(',', c1 + 1);
      const double m = std::stod(last.substr(c1 + 1, c2 - c1 - 1));
      last = last.substr(0, c1 + 1) + std::to_string(2.0 * m) + last.substr(c2);
    }
    for (const std::string& l : lines) out << l << '\n';
    std::ofstream(dir3 / "series.csv") << out.str();
    AnalyzeResult res = analyze_run(dir3.string());
    CHECK_FALSE(res.pass);
    CHECK(!res.failures.empty());
  }

  SUBCASE("analyze requires the run artifacts") {
    CHECK_THROWS_AS(analyze_run((fs::temp_directory_path() / "no_such_run").string()),
                    io_error);
  }
}

TEST_CASE("sweep runs, skips, and records failures") {
  ExperimentConfig good;
  good.name = "good";
  good.domain = DomainSpec(kPi, 32, 32);
  good.dt = 1e-2;
  good.t_end = 0.2;
  good.t_loc = 0.1;
  good.record_every = 5;
  good.output_dir = fresh_dir("sweep_good").string();

  ExperimentConfig bad = good;
  bad.name = "bad";
  bad.ic.family = "gaussian_torus";
  bad.ic.width = -1.0;  // passes validate, fails at construction
  bad.output_dir = fresh_dir("sweep_bad").string();

  std::vector<SweepRow> rows = sweep({good, bad}, 2);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].status == "ok");
  CHECK(rows[1].status == "failed");
  CHECK_FALSE(rows[1].consistent);
  CHECK(!rows[1].error.empty());

  SUBCASE("a completed run is skipped on resume") {
    std::vector<SweepRow> again = sweep({good}, 1);
    CHECK(again[0].status == "skipped");
    CHECK(again[0].hash_hex == rows[0].hash_hex);
  }
  SUBCASE("a changed config is not skipped") {
    ExperimentConfig changed = good;
    changed.dt = 2e-2;
    std::vector<SweepRow> again = sweep({changed}, 1);
    CHECK(again[0].status == "ok");
  }
  SUBCASE("csv table") {
    std::string table = sweep_table_csv(rows);
    CHECK(table.find("name,hash,status") == 0);
    CHECK(table.find("good") != std::string::npos);
    CHECK(table.find("failed") != std::string::npos);
  }
}
