#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wgnls/config.hpp"
#include "wgnls/field.hpp"

namespace wgnls {

// Shipped initial-condition families.  All of them keep the x1-direction
// mass either far from the truncation boundary (gaussian_torus) or exactly
// periodic in x1 (plane_wave, random_low_band), where periodization is exact.
struct InitialCondition {
  std::string family = "plane_wave";  // plane_wave | gaussian_torus | random_low_band
  double amplitude = 1.0;
  long mode = 1;        // torus mode number n
  double width = 0.5;   // gaussian std-dev along x1 (gaussian_torus)
  double band = 4.0;    // frequency band (random_low_band)
  std::uint64_t seed = 0;
};

struct ExperimentConfig {
  std::string name = "run";
  DomainSpec domain{kPi, 128, 128};
  double dt = 1e-3;
  double t_end = 10.0;
  bool dealias = true;
  InitialCondition ic;
  std::vector<double> orders{1.0, 2.0};  // always augmented to contain 1
  double t_loc = 1.0;                    // local-theory window length
  std::size_t record_every = 100;        // diagnostic cadence in steps
  double t_min_fit = 10.0;               // power-law fit window start
  double gamma = -1.0;                   // <0: default 0.45/(s-1)
  std::string boundary_policy = "error";  // error | warn | off
  std::string output_dir;

  static ExperimentConfig from_config(const Config& cfg);
  static ExperimentConfig from_file(const std::string& path);
  void validate() const;
  std::string canonical_text() const;
  std::uint64_t content_hash() const;
};

Field build_initial_condition(const DomainSpec& d, const InitialCondition& ic);

struct PowerLawFit {
  double order = 0.0;
  double beta = 0.0;
  double r2 = 0.0;
  double bound = 0.0;  // 2*(order-1) + 0.5 slack, the consistency ceiling
  bool valid = false;
};

struct GrowthRecord {
  std::vector<double> times;
  std::vector<double> mass_series;
  std::vector<double> energy_series;
  std::vector<double> boundary_series;
  std::vector<double> orders;
  std::vector<std::vector<double>> hs;  // hs[oi][row]
  std::vector<std::size_t> window_rows;  // rows nearest the t_j = j*t_loc endpoints
  double t_loc = 1.0;
  std::vector<PowerLawFit> fits;
  double max_boundary_delta = 0.0;

  const std::vector<double>& norms_at(double order) const;
};

// Least-squares slope of log(norm) vs log(t) over t >= t_min; needs >= 8
// samples past t_min and positive norms.
std::pair<double, double> fit_power_law(const std::vector<double>& times,
                                        const std::vector<double>& norms,
                                        double t_min);

struct IterationBound {
  double order = 0.0;
  double gamma = 0.0;
  std::vector<double> constants;  // C_j per window
  double max_c = 0.0;
  double median_c = 0.0;
};

// Per-window constants C_j = max(0, H_{j+1}^2 - H_j^2) / H_j^{2-gamma} from
// the recorded norm series at the given order.  gamma < 0 selects the
// default 0.45/(order-1).
IterationBound check_iteration_bound(const GrowthRecord& record, double order,
                                     double gamma);

// Evolve to t_end recording diagnostics; persists series.csv, summary.json
// and a final-field snapshot when output_dir is set.  Deterministic per seed.
GrowthRecord run_experiment(const ExperimentConfig& cfg);

struct SweepRow {
  std::string name;
  std::string hash_hex;
  std::string status;  // ok | skipped | failed
  std::string error;
  std::vector<PowerLawFit> fits;
  double max_c = 0.0;
  bool consistent = true;
};

// Run every config (completed runs detected by config hash are skipped);
// individual failures are recorded and the sweep continues.
std::vector<SweepRow> sweep(const std::vector<ExperimentConfig>& configs,
                            std::size_t workers = 0);

std::string sweep_table_csv(const std::vector<SweepRow>& rows);

struct AnalyzeResult {
  bool pass = true;
  std::vector<std::string> failures;
  std::vector<PowerLawFit> fits;
  double mass_drift = 0.0;
  double h1_bound_margin = 0.0;  // max over rows of H1^2 / (8E0 + 2M0)
};

// Re-check a completed run directory: conservation, the H^1 bound implied by
// conserved mass and energy, and growth-exponent consistency.
AnalyzeResult analyze_run(const std::string& run_dir);

}  // namespace wgnls
