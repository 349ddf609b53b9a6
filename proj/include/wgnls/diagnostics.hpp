#pragma once

#include <cstddef>
#include <vector>

#include "wgnls/field.hpp"

namespace wgnls {

// Dyadic shell energies: shell k collects lattice points with
// 2^k <= 1 + |xi| + |n| < 2^{k+1}.  Shells partition the grid exactly, so
// the energies sum to the total L^2 mass.
struct ShellSpectrum {
  struct Shell {
    int k = 0;
    double energy = 0.0;
  };
  std::vector<Shell> shells;

  double total() const {
    double s = 0.0;
    for (const Shell& sh : shells) s += sh.energy;
    return s;
  }
};

// M(u) = integral of |u|^2 over [-L,L) x [0,2pi), by grid quadrature.
double mass(const Field& f);

// E(u) = integral of 1/2 |grad u|^2 + 1/4 |u|^4.  Gradient term is computed
// spectrally (multiplier xi^2 + n^2), the quartic term by quadrature.
double energy(const Field& f);

// (sum (1+|xi|+|n|)^{2*order} |c|^2)^{1/2}; equals the L^2 norm at order 0.
double sobolev_norm(const Spectrum& s, double order);

ShellSpectrum lp_shells(const Spectrum& s);

// Fraction of L^2 mass in dyadic shells k >= k0 (0 for the zero spectrum).
double cascade_fraction(const Spectrum& s, int k0);

// Fraction of mass in the outer 10% of [-L, L), the truncation-fidelity
// monitor for the periodized direction.  0 for the zero field.
double boundary_mass_fraction(const Field& f);

}  // namespace wgnls
