#pragma once

#include "wgnls/field.hpp"

namespace wgnls {

// 2/3-rule dealiasing for the cubic nonlinearity: zero every coefficient
// whose signed index exceeds nx/3 (resp. ny/3) in magnitude.  Idempotent.
Spectrum dealias_project(const Spectrum& s);
void dealias_project_inplace(Spectrum& s);

// Sharp low-frequency box projector: keep |xi| <= N and |n| <= N.
// Satisfies the composition law P_{<=N1} P_{<=N2} = P_{<=min(N1,N2)}.
Spectrum project_band(const Spectrum& s, double N);

// Spatial frequency weight (1 + |xi_j| + |n_k|)^s per lattice point, in
// storage order k*nx + j.  The H^s weight is the square of this.
std::vector<double> sobolev_weights(const FourierGrid& g, double s);

}  // namespace wgnls
