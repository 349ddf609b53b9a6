#pragma once

#include <cstdint>
#include <vector>

#include "wgnls/field.hpp"

namespace wgnls {

// Cosine taper in time: 1 on the central (1-2*rho) portion of the window,
// smooth decay to 0 at both ends.  The Bourgain norm needs global-in-time
// decay, so fields must be tapered before any space-time norm.
struct CutoffProfile {
  double rho = 0.25;  // taper fraction, in (0, 1/2)

  // profile value at relative position theta in [0, 1)
  double operator()(double theta) const;
};

// Space-time exponents.  s >= 0; b may be negative (the trilinear estimate's
// left-hand side uses b'-1 < 0).
struct XsbParams {
  double s = 0.0;
  double b = 0.0;
};

// u sampled at nt uniform times t_l = l*T_w/nt over a window [0, T_w].
// Layout: values[l*nx*ny + k*nx + j], time-major, slices in Field layout.
class SpaceTimeField {
 public:
  SpaceTimeField(const DomainSpec& d, std::size_t nt, double window);

  const DomainSpec& domain() const { return domain_; }
  std::size_t nt() const { return nt_; }
  double window() const { return window_; }
  double time(std::size_t l) const { return window_ * static_cast<double>(l) / static_cast<double>(nt_); }
  bool cutoff_applied() const { return cutoff_applied_; }

  std::vector<cplx>& values() { return values_; }
  const std::vector<cplx>& values() const { return values_; }
  cplx& at(std::size_t l, std::size_t j, std::size_t k) {
    return values_[(l * domain_.ny + k) * domain_.nx + j];
  }

  void set_slice(std::size_t l, const Field& f);

  // Multiply each time slice by the taper; marks the cutoff as applied.
  void apply_cutoff(const CutoffProfile& profile);
  // For data synthesized directly from space-time Fourier coefficients the
  // taper is part of the construction; callers mark the contract satisfied.
  void mark_cutoff_applied() { cutoff_applied_ = true; }

  // Space-time L^p norm by grid quadrature (measure dx*dy*T_w/nt).
  double lp_norm(double p) const;

 private:
  DomainSpec domain_;
  std::size_t nt_;
  double window_;
  bool cutoff_applied_ = false;
  std::vector<cplx> values_;
};

// Discrete Bourgain norm: 3-D Fourier transform (time kernel e^{+i tau t},
// so free evolutions concentrate on the characteristic tau = xi^2 + n^2),
// then the weighted l^2 sum with weights
//   (1 + dist(tau, xi^2 + n^2))^{2b} (1 + |xi| + |n|)^{2s}
// over the tau lattice of spacing 2*pi/T_w, where dist is the circular
// distance modulo the lattice period nt*2*pi/T_w (sampled oscillations
// alias onto the lattice).  Requires the cutoff contract.
double xsb_norm(const SpaceTimeField& u, const XsbParams& p);

// Full weighted space-time coefficient table (for concentration studies);
// same layout as the field, scaled so (s=0,b=0) reproduces the L^2 norm.
std::vector<cplx> spacetime_coefficients(const SpaceTimeField& u);

// Samples of the free evolution of u0 at the window's time grid.
SpaceTimeField sample_free_evolution(const Spectrum& u0, std::size_t nt, double window);

// Random space-time field: i.i.d. unit-variance complex Gaussian coefficients
// on all modes with |xi| <= band and |n| <= band (every tau), transformed to
// physical space.  Deterministic per seed.
SpaceTimeField random_band_field(const DomainSpec& d, std::size_t nt, double window,
                                 double band, std::uint64_t seed);

// Random initial-datum spectrum with Gaussian coefficients in the band.
Spectrum random_band_spectrum(const DomainSpec& d, double band, std::uint64_t seed);

// Random spectrum concentrated on one dyadic shell: the level is drawn
// uniformly from {0, ..., ceil(log2 band)}, then every mode with
// 2^{l-1} < max(|xi|, |n|) <= min(2^l, band) gets a unit Gaussian
// coefficient.  Scale-uniform sampling for band-uniformity studies.
Spectrum random_shell_spectrum(const DomainSpec& d, double band, std::uint64_t seed);

}  // namespace wgnls
