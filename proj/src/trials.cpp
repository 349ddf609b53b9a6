#include "wgnls/trials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "wgnls/errors.hpp"
#include "wgnls/evolution.hpp"
#include "wgnls/stats.hpp"
#include "wgnls/transform.hpp"

namespace wgnls {

namespace {

constexpr std::uint64_t kSeedMix1 = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kSeedMix2 = 0xc2b2ae3d27d4eb4fULL;

void require_band_in_grid(const TrialGrid& g, double N) {
  FourierGrid fg(g.domain);
  const double xi_dealias = fg.xi_spacing() * static_cast<double>(g.domain.nx / 3);
  const double n_dealias = static_cast<double>(g.domain.ny / 3);
  if (!(N > 0.0) || N > xi_dealias || N > n_dealias)
    throw parameter_error("trial: band N outside the dealiased grid band");
}

SpaceTimeField tapered_random_field(const TrialGrid& g, double N, std::uint64_t seed) {
  SpaceTimeField u = random_band_field(g.domain, g.nt, g.window, N, seed);
  u.apply_cutoff(CutoffProfile{g.taper_rho});
  return u;
}

// Trilinear ensemble member: tapered free evolution of Gaussian data on a
// random dyadic shell <= N.  Scale-uniform draws keep lopsided frequency
// interactions (the near-extremal ones) represented at every band, so the
// max ratio probes the band-uniform constant rather than generic slack.
SpaceTimeField tapered_shell_field(const TrialGrid& g, double N, std::uint64_t seed) {
  SpaceTimeField u = sample_free_evolution(random_shell_spectrum(g.domain, N, seed),
                                           g.nt, g.window);
  u.apply_cutoff(CutoffProfile{g.taper_rho});
  return u;
}

}  // namespace

TrialGrid TrialGrid::for_band(double N, std::size_t nt, double window) {
  std::size_t n = 64;
  while (static_cast<double>(n) < 8.0 * N) n *= 2;
  TrialGrid g;
  g.domain = DomainSpec(kPi, n, n);
  g.nt = nt;
  g.window = window;
  return g;
}

double EstimateTrial::ratio() const {
  if (rhs > 0.0) return lhs / rhs;
  return lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

EstimateTrial strichartz_trial(const TrialGrid& g, double N, std::uint64_t seed) {
  require_band_in_grid(g, N);
  Spectrum u0 = random_band_spectrum(g.domain, N, seed);

  EstimateTrial trial;
  trial.seed = seed;
  trial.rhs = std::sqrt(u0.l2_norm_sq());

  // midpoint quadrature of the L^4 norm over I = [0, window]
  double acc = 0.0;
  for (std::size_t l = 0; l < g.nt; ++l) {
    const double t = g.window * (static_cast<double>(l) + 0.5) / static_cast<double>(g.nt);
    Field u = inverse_transform(linear_propagate(u0, t));
    for (const cplx& z : u.values) {
      const double a2 = std::norm(z);
      acc += a2 * a2;
    }
  }
  trial.lhs = std::pow(
      acc * g.domain.cell_measure() * g.window / static_cast<double>(g.nt), 0.25);
  trial.metadata = {{"N", N}, {"scale", N}};
  return trial;
}

EstimateTrial lemma25_trial(const TrialGrid& g, double N, double b2, std::uint64_t seed) {
  if (!(b2 > 0.25)) throw parameter_error("lemma25_trial: b2 must exceed 1/4");
  require_band_in_grid(g, N);
  SpaceTimeField u = tapered_random_field(g, N, seed);

  EstimateTrial trial;
  trial.seed = seed;
  trial.lhs = u.lp_norm(4.0);
  trial.rhs = std::pow(N, 0.25) * xsb_norm(u, XsbParams{0.0, b2});
  trial.metadata = {{"N", N}, {"b2", b2}, {"scale", N}};
  return trial;
}

EstimateTrial bilinear_trial(const TrialGrid& g, double N1, double N2, double b1,
                             std::uint64_t seed) {
  if (!(b1 > 0.5)) throw parameter_error("bilinear_trial: b1 must exceed 1/2");
  require_band_in_grid(g, N1);
  require_band_in_grid(g, N2);
  SpaceTimeField u = tapered_random_field(g, N1, seed);
  SpaceTimeField v = tapered_random_field(g, N2, seed ^ kSeedMix1);

  SpaceTimeField w(g.domain, g.nt, g.window);
  for (std::size_t i = 0; i < w.values().size(); ++i)
    w.values()[i] = u.values()[i] * v.values()[i];
  w.mark_cutoff_applied();

  EstimateTrial trial;
  trial.seed = seed;
  trial.lhs = w.lp_norm(2.0);
  trial.rhs = xsb_norm(u, XsbParams{0.0, b1}) * xsb_norm(v, XsbParams{0.0, b1});
  trial.metadata = {{"N1", N1}, {"N2", N2}, {"b1", b1}, {"scale", N1 * N2}};
  return trial;
}

EstimateTrial trilinear_trial(const TrialGrid& g, const XsbParams& p, double bprime,
                              double N, std::uint64_t seed) {
  if (!(p.s > 0.0)) throw parameter_error("trilinear_trial: s must be positive");
  if (!(p.b > 0.5) || !(p.b <= bprime))
    throw parameter_error("trilinear_trial: need 1/2 < b <= b'");
  require_band_in_grid(g, N);

  SpaceTimeField u1 = tapered_shell_field(g, N, seed);
  SpaceTimeField u2 = tapered_shell_field(g, N, seed ^ kSeedMix1);
  SpaceTimeField u3 = tapered_shell_field(g, N, seed ^ kSeedMix2);

  SpaceTimeField w(g.domain, g.nt, g.window);
  for (std::size_t i = 0; i < w.values().size(); ++i)
    w.values()[i] = u1.values()[i] * std::conj(u2.values()[i]) * u3.values()[i];
  w.mark_cutoff_applied();

  EstimateTrial trial;
  trial.seed = seed;
  trial.lhs = xsb_norm(w, XsbParams{p.s, bprime - 1.0});
  trial.rhs = xsb_norm(u1, p) * xsb_norm(u2, p) * xsb_norm(u3, p);
  trial.metadata = {{"N", N}, {"s", p.s}, {"b", p.b}, {"bprime", bprime}, {"scale", N}};
  return trial;
}

EnsembleReport ensemble_report(const std::vector<EstimateTrial>& trials) {
  if (trials.empty()) throw parameter_error("ensemble_report: no trials");

  std::vector<double> ratios;
  ratios.reserve(trials.size());
  std::map<double, double> per_scale;
  bool all_scaled = true;
  for (const EstimateTrial& t : trials) {
    const double r = t.ratio();
    ratios.push_back(r);
    auto it = t.metadata.find("scale");
    if (it == t.metadata.end()) {
      all_scaled = false;
      continue;
    }
    auto [slot, inserted] = per_scale.emplace(it->second, r);
    if (!inserted) slot->second = std::max(slot->second, r);
  }

  EnsembleReport rep;
  rep.count = trials.size();
  rep.max_ratio = *std::max_element(ratios.begin(), ratios.end());
  rep.median_ratio = median(ratios);
  rep.q25 = quantile(ratios, 0.25);
  rep.q75 = quantile(ratios, 0.75);
  rep.q90 = quantile(ratios, 0.90);
  double sum = 0.0;
  for (double r : ratios) sum += r;
  rep.mean_ratio = sum / static_cast<double>(ratios.size());

  if (all_scaled) {
    for (const auto& [scale, mx] : per_scale) rep.scale_max.emplace_back(scale, mx);
    if (per_scale.size() >= 2) {
      std::vector<double> lx, ly;
      for (const auto& [scale, mx] : per_scale) {
        if (scale <= 0.0 || mx <= 0.0) continue;
        lx.push_back(std::log(scale));
        ly.push_back(std::log(mx));
      }
      if (lx.size() >= 2) {
        rep.slope = linear_fit(lx, ly).slope;
        rep.has_slope = true;
      }
    }
  }
  return rep;
}

std::string trials_to_json(const std::string& estimate,
                           const std::map<std::string, double>& params,
                           const std::vector<EstimateTrial>& trials,
                           const EnsembleReport& report) {
  nlohmann::ordered_json j;
  j["estimate"] = estimate;
  j["params"] = params;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const EstimateTrial& t : trials) {
    nlohmann::ordered_json row;
    row["seed"] = t.seed;
    row["lhs"] = t.lhs;
    row["rhs"] = t.rhs;
    row["ratio"] = t.ratio();
    row["metadata"] = t.metadata;
    rows.push_back(row);
  }
  j["trials"] = rows;
  nlohmann::ordered_json s;
  s["count"] = report.count;
  s["max_ratio"] = report.max_ratio;
  s["median_ratio"] = report.median_ratio;
  s["q25"] = report.q25;
  s["q75"] = report.q75;
  s["q90"] = report.q90;
  s["mean_ratio"] = report.mean_ratio;
  if (!report.scale_max.empty()) {
    nlohmann::ordered_json sm = nlohmann::ordered_json::array();
    for (const auto& [scale, mx] : report.scale_max) sm.push_back({scale, mx});
    s["scale_max"] = sm;
  }
  if (report.has_slope) s["slope"] = report.slope;
  j["summary"] = s;
  j["note"] =
      "empirical consistency evidence over a random ensemble; not a proof";
  return j.dump(2);
}

}  // namespace wgnls
