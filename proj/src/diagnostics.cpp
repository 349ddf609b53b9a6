#include "wgnls/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "wgnls/errors.hpp"
#include "wgnls/projection.hpp"
#include "wgnls/transform.hpp"

namespace wgnls {

double mass(const Field& f) {
  if (!f.finite()) throw blowup_error("mass: non-finite field", 0.0);
  double s = 0.0;
  for (const cplx& z : f.values) s += std::norm(z);
  return s * f.domain.cell_measure();
}

double energy(const Field& f) {
  if (!f.finite()) throw blowup_error("energy: non-finite field", 0.0);
  Spectrum s = forward_transform(f);
  FourierGrid g(f.domain);
  double grad = 0.0;
  for (std::size_t k = 0; k < f.domain.ny; ++k) {
    const double n2 = g.n(k) * g.n(k);
    for (std::size_t j = 0; j < f.domain.nx; ++j)
      grad += (g.xi(j) * g.xi(j) + n2) * std::norm(s.at(j, k));
  }
  double quartic = 0.0;
  for (const cplx& z : f.values) {
    const double a2 = std::norm(z);
    quartic += a2 * a2;
  }
  return 0.5 * grad + 0.25 * quartic * f.domain.cell_measure();
}

double sobolev_norm(const Spectrum& s, double order) {
  if (order < 0.0) throw parameter_error("sobolev_norm: order must be >= 0");
  FourierGrid g(s.domain);
  std::vector<double> w = sobolev_weights(g, order);
  double acc = 0.0;
  for (std::size_t i = 0; i < s.coeffs.size(); ++i)
    acc += w[i] * w[i] * std::norm(s.coeffs[i]);
  return std::sqrt(acc);
}

namespace {
// shell index: floor(log2(1+|xi|+|n|)), computed via exponent extraction to
// keep the half-open dyadic partition exact at powers of two
int shell_of(double weight1) {
  int k = static_cast<int>(std::floor(std::log2(weight1)));
  // guard the boundary: weight1 exactly 2^k must land in shell k
  while (std::ldexp(1.0, k + 1) <= weight1) ++k;
  while (std::ldexp(1.0, k) > weight1) --k;
  return k;
}
}  // namespace

ShellSpectrum lp_shells(const Spectrum& s) {
  FourierGrid g(s.domain);
  std::vector<double> energies;
  for (std::size_t k = 0; k < s.domain.ny; ++k) {
    const double an = std::abs(g.n(k));
    for (std::size_t j = 0; j < s.domain.nx; ++j) {
      const int sh = shell_of(1.0 + std::abs(g.xi(j)) + an);
      if (sh >= static_cast<int>(energies.size()))
        energies.resize(static_cast<std::size_t>(sh) + 1, 0.0);
      energies[static_cast<std::size_t>(sh)] += std::norm(s.at(j, k));
    }
  }
  ShellSpectrum out;
  out.shells.reserve(energies.size());
  for (std::size_t k = 0; k < energies.size(); ++k)
    out.shells.push_back({static_cast<int>(k), energies[k]});
  return out;
}

double cascade_fraction(const Spectrum& s, int k0) {
  if (k0 < 0) throw parameter_error("cascade_fraction: k0 must be >= 0");
  ShellSpectrum sh = lp_shells(s);
  const double total = sh.total();
  if (total <= 0.0) return 0.0;
  double high = 0.0;
  for (const auto& shell : sh.shells)
    if (shell.k >= k0) high += shell.energy;
  return high / total;
}

double boundary_mass_fraction(const Field& f) {
  const double total = mass(f);
  if (total <= 0.0) return 0.0;
  const double edge = 0.9 * f.domain.half_length;
  double outer = 0.0;
  for (std::size_t k = 0; k < f.domain.ny; ++k)
    for (std::size_t j = 0; j < f.domain.nx; ++j)
      if (std::abs(f.domain.x(j)) >= edge) outer += std::norm(f.at(j, k));
  return outer * f.domain.cell_measure() / total;
}

}  // namespace wgnls
