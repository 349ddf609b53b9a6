#pragma once

#include <functional>
#include <vector>

#include "wgnls/field.hpp"

namespace wgnls {

// Free Schroedinger flow: multiply each coefficient by exp(-i(xi^2+n^2)t).
// Exactly unitary, and an isometry of every H^s norm.
Spectrum linear_propagate(const Spectrum& s, double t);

struct EvolutionState {
  Field field;
  double t = 0.0;
  double dt = 1e-3;
  bool dealias = true;
};

// Observer invoked every `every_steps` steps (and on the final step) with
// the current time and field.  Observers must not mutate the state.
struct Observer {
  std::size_t every_steps = 1;
  std::function<void(double, const Field&)> fn;
};

// One Strang step: exact linear half-step, exact pointwise nonlinear
// rotation u *= exp(-i|u|^2 dt), exact linear half-step.  Conserves mass to
// roundoff when dealiasing is off; second order in dt otherwise.
// Throws blowup_error on non-finite values or a >1% mass jump in one step.
void step_strang(EvolutionState& state);

// Advance to t_end with repeated Strang steps (final partial step allowed).
EvolutionState evolve(EvolutionState state, double t_end,
                      const std::vector<Observer>& observers = {});

}  // namespace wgnls
