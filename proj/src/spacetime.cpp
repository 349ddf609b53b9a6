#include "wgnls/spacetime.hpp"

#include <fftw3.h>

#include <cmath>
#include <random>

#include "wgnls/errors.hpp"
#include "wgnls/evolution.hpp"
#include "wgnls/transform.hpp"

namespace wgnls {

double CutoffProfile::operator()(double theta) const {
  if (!(rho > 0.0 && rho < 0.5))
    throw parameter_error("CutoffProfile: rho must lie in (0, 1/2)");
  if (theta < 0.0 || theta >= 1.0) return 0.0;
  if (theta < rho) return 0.5 * (1.0 - std::cos(kPi * theta / rho));
  if (theta > 1.0 - rho)
    return 0.5 * (1.0 - std::cos(kPi * (1.0 - theta) / rho));
  return 1.0;
}

SpaceTimeField::SpaceTimeField(const DomainSpec& d, std::size_t nt, double window)
    : domain_(d), nt_(nt), window_(window) {
  if (!is_pow2(nt) || nt < 2)
    throw parameter_error("SpaceTimeField: nt must be a power of two >= 2");
  if (!(window > 0.0))
    throw parameter_error("SpaceTimeField: window must be positive");
  values_.assign(nt * d.size(), cplx(0.0, 0.0));
}

void SpaceTimeField::set_slice(std::size_t l, const Field& f) {
  if (!(f.domain == domain_))
    throw parameter_error("SpaceTimeField: slice domain mismatch");
  std::copy(f.values.begin(), f.values.end(),
            values_.begin() + static_cast<std::ptrdiff_t>(l * domain_.size()));
}

void SpaceTimeField::apply_cutoff(const CutoffProfile& profile) {
  for (std::size_t l = 0; l < nt_; ++l) {
    const double g = profile(static_cast<double>(l) / static_cast<double>(nt_));
    const std::size_t off = l * domain_.size();
    for (std::size_t i = 0; i < domain_.size(); ++i) values_[off + i] *= g;
  }
  cutoff_applied_ = true;
}

double SpaceTimeField::lp_norm(double p) const {
  const double measure =
      domain_.cell_measure() * window_ / static_cast<double>(nt_);
  double acc = 0.0;
  for (const cplx& z : values_) acc += std::pow(std::abs(z), p);
  return std::pow(acc * measure, 1.0 / p);
}

std::vector<cplx> spacetime_coefficients(const SpaceTimeField& u) {
  const DomainSpec& d = u.domain();
  const std::size_t nxy = d.size(), nt = u.nt();
  std::vector<cplx> c = u.values();
  for (std::size_t l = 0; l < nt; ++l) {
    std::vector<cplx> slice(c.begin() + static_cast<std::ptrdiff_t>(l * nxy),
                            c.begin() + static_cast<std::ptrdiff_t>((l + 1) * nxy));
    detail::fft2_raw(slice, d.nx, d.ny, FFTW_FORWARD);
    std::copy(slice.begin(), slice.end(),
              c.begin() + static_cast<std::ptrdiff_t>(l * nxy));
  }
  // time kernel e^{+i tau t} = unnormalized backward DFT over the slices
  detail::fft_time_raw(c, nt, nxy, FFTW_BACKWARD);
  const double scale =
      std::sqrt(d.cell_measure() / static_cast<double>(nxy)) *
      std::sqrt(u.window()) / static_cast<double>(nt);
  for (cplx& z : c) z *= scale;
  return c;
}

double xsb_norm(const SpaceTimeField& u, const XsbParams& p) {
  if (!u.cutoff_applied())
    throw contract_error("xsb_norm: time cutoff has not been applied");
  if (p.s < 0.0) throw parameter_error("xsb_norm: s must be >= 0");

  const DomainSpec& d = u.domain();
  FourierGrid g(d);
  std::vector<cplx> c = spacetime_coefficients(u);

  // spatial tables: characteristic q = xi^2 + n^2 and the H^s weight squared
  std::vector<double> q(d.size()), ws(d.size());
  for (std::size_t k = 0; k < d.ny; ++k)
    for (std::size_t j = 0; j < d.nx; ++j) {
      const std::size_t i = k * d.nx + j;
      q[i] = g.xi(j) * g.xi(j) + g.n(k) * g.n(k);
      ws[i] = std::pow(1.0 + std::abs(g.xi(j)) + std::abs(g.n(k)), 2.0 * p.s);
    }

  // Modulation distance is circular on the discrete tau lattice: a sampled
  // oscillation e^{-iqt} aliases to the bin tau = q mod the lattice period,
  // so |tau - q| is measured modulo nt*dtau.  This keeps free evolutions
  // concentrated near zero distance for every spatial mode.
  const double dtau = 2.0 * kPi / u.window();
  const double period = dtau * static_cast<double>(u.nt());
  double acc = 0.0;
  for (std::size_t l = 0; l < u.nt(); ++l) {
    const double tau = dtau * static_cast<double>(signed_index(l, u.nt()));
    const std::size_t off = l * d.size();
    for (std::size_t i = 0; i < d.size(); ++i) {
      const double dist = std::abs(std::remainder(tau - q[i], period));
      const double wb = std::pow(1.0 + dist, 2.0 * p.b);
      acc += wb * ws[i] * std::norm(c[off + i]);
    }
  }
  return std::sqrt(acc);
}

SpaceTimeField sample_free_evolution(const Spectrum& u0, std::size_t nt, double window) {
  SpaceTimeField u(u0.domain, nt, window);
  for (std::size_t l = 0; l < nt; ++l)
    u.set_slice(l, inverse_transform(linear_propagate(u0, u.time(l))));
  return u;
}

namespace {
// a fresh distribution per generator call keeps draws a pure function of seed
cplx draw_unit_gaussian(std::mt19937_64& rng, std::normal_distribution<double>& normal) {
  const double re = normal(rng), im = normal(rng);
  return cplx(re, im) / std::sqrt(2.0);
}
}  // namespace

Spectrum random_band_spectrum(const DomainSpec& d, double band, std::uint64_t seed) {
  if (!(band > 0.0)) throw parameter_error("random_band_spectrum: band must be positive");
  FourierGrid g(d);
  if (band > g.max_xi() || band > g.max_n())
    throw parameter_error("random_band_spectrum: band exceeds the grid frequencies");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Spectrum s(d);
  for (std::size_t k = 0; k < d.ny; ++k)
    for (std::size_t j = 0; j < d.nx; ++j)
      if (std::abs(g.xi(j)) <= band && std::abs(g.n(k)) <= band)
        s.at(j, k) = draw_unit_gaussian(rng, normal);
  return s;
}

Spectrum random_shell_spectrum(const DomainSpec& d, double band, std::uint64_t seed) {
  if (!(band >= 1.0))
    throw parameter_error("random_shell_spectrum: band must be >= 1");
  FourierGrid g(d);
  if (band > g.max_xi() || band > g.max_n())
    throw parameter_error("random_shell_spectrum: band exceeds the grid frequencies");
  std::mt19937_64 rng(seed);
  const int lmax = static_cast<int>(std::ceil(std::log2(band)));
  const int level = std::uniform_int_distribution<int>(0, lmax)(rng);
  const double lo = level == 0 ? 0.0 : std::pow(2.0, level - 1);
  const double hi = std::min(std::pow(2.0, level), band);
  std::normal_distribution<double> normal(0.0, 1.0);
  Spectrum s(d);
  for (std::size_t k = 0; k < d.ny; ++k)
    for (std::size_t j = 0; j < d.nx; ++j) {
      const double m = std::max(std::abs(g.xi(j)), std::abs(g.n(k)));
      if (m > lo && m <= hi) s.at(j, k) = draw_unit_gaussian(rng, normal);
    }
  return s;
}

SpaceTimeField random_band_field(const DomainSpec& d, std::size_t nt, double window,
                                 double band, std::uint64_t seed) {
  if (!(band > 0.0)) throw parameter_error("random_band_field: band must be positive");
  FourierGrid g(d);
  if (band > g.max_xi() || band > g.max_n())
    throw parameter_error("random_band_field: band exceeds the grid frequencies");

  SpaceTimeField u(d, nt, window);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<cplx>& c = u.values();
  for (std::size_t l = 0; l < nt; ++l) {
    const std::size_t off = l * d.size();
    for (std::size_t k = 0; k < d.ny; ++k)
      for (std::size_t j = 0; j < d.nx; ++j)
        if (std::abs(g.xi(j)) <= band && std::abs(g.n(k)) <= band)
          c[off + k * d.nx + j] = draw_unit_gaussian(rng, normal);
  }

  // synthesize: inverse of the analysis pipeline in spacetime_coefficients
  detail::fft_time_raw(c, nt, d.size(), FFTW_FORWARD);
  for (std::size_t l = 0; l < nt; ++l) {
    std::vector<cplx> slice(c.begin() + static_cast<std::ptrdiff_t>(l * d.size()),
                            c.begin() + static_cast<std::ptrdiff_t>((l + 1) * d.size()));
    detail::fft2_raw(slice, d.nx, d.ny, FFTW_BACKWARD);
    std::copy(slice.begin(), slice.end(),
              c.begin() + static_cast<std::ptrdiff_t>(l * d.size()));
  }
  const double scale = 1.0 / std::sqrt(d.cell_measure() *
                                       static_cast<double>(d.size()) * window);
  for (cplx& z : c) z *= scale;
  return u;
}

}  // namespace wgnls
