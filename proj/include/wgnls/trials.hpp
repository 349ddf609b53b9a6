#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wgnls/spacetime.hpp"

namespace wgnls {

// Discretization shared by all randomized inequality trials.  The spatial
// grid must resolve the tested band (and for products, three times it).
struct TrialGrid {
  DomainSpec domain{kPi, 256, 256};
  std::size_t nt = 16;
  double window = 1.0;
  double taper_rho = 0.25;

  // smallest power-of-two grid that resolves the cubic product of band-N data
  static TrialGrid for_band(double N, std::size_t nt = 16, double window = 1.0);
};

// One randomized inequality test: left side, right side, their ratio, and
// the parameters needed to reproduce it.
struct EstimateTrial {
  double lhs = 0.0;
  double rhs = 0.0;
  std::uint64_t seed = 0;
  std::map<std::string, double> metadata;  // includes "scale" for regression

  double ratio() const;
};

// L^4(I x R x T) norm of the free evolution of random band-N data against
// its L^2 norm, I = [0, window].
EstimateTrial strichartz_trial(const TrialGrid& g, double N, std::uint64_t seed);

// L^4 of a random band-N space-time field against N^{1/4} * X^{0,b2}, b2 > 1/4.
EstimateTrial lemma25_trial(const TrialGrid& g, double N, double b2, std::uint64_t seed);

// L^2 of a product of two random band-limited fields against the product of
// their X^{0,b1} norms, b1 > 1/2.  Scale metadata is N1*N2.
EstimateTrial bilinear_trial(const TrialGrid& g, double N1, double N2, double b1,
                             std::uint64_t seed);

// X^{s,b'-1} norm of u1 * conj(u2) * u3 against the product of the three
// X^{s,b} norms; s > 0 and 1/2 < b <= b'.  Each factor is a tapered free
// evolution of Gaussian data on an independently drawn random dyadic shell
// <= N (scale-uniform sampling; see random_shell_spectrum).
EstimateTrial trilinear_trial(const TrialGrid& g, const XsbParams& p, double bprime,
                              double N, std::uint64_t seed);

struct EnsembleReport {
  std::size_t count = 0;
  double max_ratio = 0.0;
  double median_ratio = 0.0;
  double q25 = 0.0, q75 = 0.0, q90 = 0.0;
  double mean_ratio = 0.0;
  std::vector<std::pair<double, double>> scale_max;  // (scale, max ratio), sorted
  bool has_slope = false;
  double slope = 0.0;  // log(max ratio) vs log(scale), when >= 2 scales
};

EnsembleReport ensemble_report(const std::vector<EstimateTrial>& trials);

// JSON batch output: parameters, per-trial rows, summary.  Deterministic.
std::string trials_to_json(const std::string& estimate,
                           const std::map<std::string, double>& params,
                           const std::vector<EstimateTrial>& trials,
                           const EnsembleReport& report);

}  // namespace wgnls
