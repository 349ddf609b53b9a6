#include "wgnls/evolution.hpp"

#include <cmath>

#include "wgnls/errors.hpp"
#include "wgnls/projection.hpp"
#include "wgnls/transform.hpp"

namespace wgnls {

namespace {

void free_phase_inplace(Spectrum& s, double t) {
  FourierGrid g(s.domain);
  for (std::size_t k = 0; k < s.domain.ny; ++k) {
    const double n2 = g.n(k) * g.n(k);
    for (std::size_t j = 0; j < s.domain.nx; ++j) {
      const double phase = -(g.xi(j) * g.xi(j) + n2) * t;
      s.at(j, k) *= cplx(std::cos(phase), std::sin(phase));
    }
  }
}

double sum_sq(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const cplx& z : v) s += std::norm(z);
  return s;
}

void step_with_dt(EvolutionState& state, double dt) {
  if (!state.field.finite())
    throw blowup_error("step_strang: non-finite field on entry", state.t);
  const double mass_before = sum_sq(state.field.values);

  Spectrum s = forward_transform(state.field);
  if (state.dealias) dealias_project_inplace(s);
  free_phase_inplace(s, 0.5 * dt);
  Field u = inverse_transform(s);

  // exact nonlinear sub-flow: d/dt u = -i|u|^2 u preserves |u| pointwise
  for (cplx& z : u.values) {
    const double phase = -std::norm(z) * dt;
    z *= cplx(std::cos(phase), std::sin(phase));
  }

  s = forward_transform(u);
  free_phase_inplace(s, 0.5 * dt);
  if (state.dealias) dealias_project_inplace(s);
  state.field = inverse_transform(s);
  state.t += dt;

  if (!state.field.finite())
    throw blowup_error("step_strang: non-finite field", state.t);
  const double mass_after = sum_sq(state.field.values);
  if (mass_before > 0.0 &&
      std::abs(mass_after - mass_before) > 0.01 * mass_before)
    throw blowup_error("step_strang: mass jump exceeds 1% in one step",
                       state.t);
}

}  // namespace

Spectrum linear_propagate(const Spectrum& s, double t) {
  Spectrum out = s;
  free_phase_inplace(out, t);
  return out;
}

void step_strang(EvolutionState& state) {
  if (!(state.dt > 0.0)) throw parameter_error("step_strang: dt must be positive");
  step_with_dt(state, state.dt);
}

EvolutionState evolve(EvolutionState state, double t_end,
                      const std::vector<Observer>& observers) {
  if (t_end < state.t)
    throw parameter_error("evolve: t_end must not precede the current time");
  if (!(state.dt > 0.0)) throw parameter_error("evolve: dt must be positive");

  const double t0 = state.t;
  const double span = t_end - t0;
  if (span <= 0.0) return state;
  const std::size_t nsteps = static_cast<std::size_t>(
      std::ceil(span / state.dt - 1e-12));

  for (std::size_t i = 0; i < nsteps; ++i) {
    const bool last = (i + 1 == nsteps);
    const double target = last ? t_end : t0 + static_cast<double>(i + 1) * state.dt;
    step_with_dt(state, target - state.t);
    state.t = target;  // keep the clock free of accumulation drift
    for (const Observer& obs : observers) {
      if (obs.every_steps == 0 || !obs.fn) continue;
      if ((i + 1) % obs.every_steps == 0 || last) {
        try {
          obs.fn(state.t, state.field);
        } catch (const blowup_error&) {
          throw;
        } catch (const contamination_error&) {
          throw;
        } catch (const std::exception& e) {
          throw std::runtime_error(
              std::string("evolve: observer failed at t=") +
              std::to_string(state.t) + ": " + e.what());
        }
      }
    }
  }
  return state;
}

}  // namespace wgnls
