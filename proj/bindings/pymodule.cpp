// Python bindings: numpy arrays in, numpy arrays out.  Physical fields and
// spectra are 2-D complex128 arrays of shape (ny, nx); space-time samples
// are 3-D arrays of shape (nt, ny, nx).

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wgnls/diagnostics.hpp"
#include "wgnls/evolution.hpp"
#include "wgnls/growth.hpp"
#include "wgnls/projection.hpp"
#include "wgnls/spacetime.hpp"
#include "wgnls/transform.hpp"
#include "wgnls/trials.hpp"

namespace py = pybind11;
using namespace wgnls;

namespace {

using array_c = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

DomainSpec domain_for(const array_c& a, double L) {
  if (a.ndim() != 2) throw parameter_error("expected a 2-D complex array");
  return DomainSpec(L, static_cast<std::size_t>(a.shape(1)),
                    static_cast<std::size_t>(a.shape(0)));
}

Field to_field(const array_c& a, double L) {
  Field f(domain_for(a, L));
  std::copy(a.data(), a.data() + f.values.size(), f.values.begin());
  return f;
}

Spectrum to_spectrum(const array_c& a, double L) {
  Spectrum s(domain_for(a, L));
  std::copy(a.data(), a.data() + s.coeffs.size(), s.coeffs.begin());
  return s;
}

py::array_t<cplx> from_values(const std::vector<cplx>& v, const DomainSpec& d) {
  py::array_t<cplx> out({static_cast<py::ssize_t>(d.ny), static_cast<py::ssize_t>(d.nx)});
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

SpaceTimeField to_spacetime(const array_c& a, double L, double window, double rho) {
  if (a.ndim() != 3) throw parameter_error("expected a 3-D complex array");
  DomainSpec d(L, static_cast<std::size_t>(a.shape(2)),
               static_cast<std::size_t>(a.shape(1)));
  SpaceTimeField u(d, static_cast<std::size_t>(a.shape(0)), window);
  std::copy(a.data(), a.data() + u.values().size(), u.values().begin());
  u.apply_cutoff(CutoffProfile{rho});
  return u;
}

py::dict trial_dict(const EstimateTrial& t) {
  py::dict out;
  out["lhs"] = t.lhs;
  out["rhs"] = t.rhs;
  out["ratio"] = t.ratio();
  out["seed"] = t.seed;
  out["metadata"] = t.metadata;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "cubic NLS on the waveguide R x T: spectral core and estimate lab";

  py::register_exception<parameter_error>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<blowup_error>(m, "BlowupError", PyExc_RuntimeError);
  py::register_exception<contamination_error>(m, "ContaminationError",
                                              PyExc_RuntimeError);

  m.def("forward", [](const array_c& u, double L) {
    Field f = to_field(u, L);
    return from_values(forward_transform(f).coeffs, f.domain);
  }, py::arg("field"), py::arg("L"),
     "Parseval-normalized Fourier coefficients of a physical field");

  m.def("inverse", [](const array_c& c, double L) {
    Spectrum s = to_spectrum(c, L);
    return from_values(inverse_transform(s).values, s.domain);
  }, py::arg("spectrum"), py::arg("L"));

  m.def("dealias", [](const array_c& c, double L) {
    Spectrum s = to_spectrum(c, L);
    return from_values(dealias_project(s).coeffs, s.domain);
  }, py::arg("spectrum"), py::arg("L"), "zero the top third of modes");

  m.def("project_band", [](const array_c& c, double L, double N) {
    Spectrum s = to_spectrum(c, L);
    return from_values(project_band(s, N).coeffs, s.domain);
  }, py::arg("spectrum"), py::arg("L"), py::arg("N"),
     "restrict to |xi| <= N and |n| <= N");

  m.def("propagate", [](const array_c& c, double L, double t) {
    Spectrum s = to_spectrum(c, L);
    return from_values(linear_propagate(s, t).coeffs, s.domain);
  }, py::arg("spectrum"), py::arg("L"), py::arg("t"),
     "free Schroedinger flow on the coefficients");

  m.def("evolve", [](const array_c& u, double L, double dt, double t_end,
                     bool dealias) {
    EvolutionState st{to_field(u, L), 0.0, dt, dealias};
    st = evolve(std::move(st), t_end);
    return from_values(st.field.values, st.field.domain);
  }, py::arg("field"), py::arg("L"), py::arg("dt"), py::arg("t_end"),
     py::arg("dealias") = true, "Strang-split evolution from t = 0 to t_end");

  m.def("mass", [](const array_c& u, double L) { return mass(to_field(u, L)); },
        py::arg("field"), py::arg("L"));
  m.def("energy", [](const array_c& u, double L) { return energy(to_field(u, L)); },
        py::arg("field"), py::arg("L"));
  m.def("sobolev_norm", [](const array_c& c, double L, double order) {
    return sobolev_norm(to_spectrum(c, L), order);
  }, py::arg("spectrum"), py::arg("L"), py::arg("order"));

  m.def("shell_energies", [](const array_c& c, double L) {
    std::vector<std::pair<int, double>> out;
    for (const auto& sh : lp_shells(to_spectrum(c, L)).shells)
      out.emplace_back(sh.k, sh.energy);
    return out;
  }, py::arg("spectrum"), py::arg("L"), "dyadic shell energies as (k, energy)");

  m.def("cascade_fraction", [](const array_c& c, double L, int k0) {
    return cascade_fraction(to_spectrum(c, L), k0);
  }, py::arg("spectrum"), py::arg("L"), py::arg("k0"));

  m.def("boundary_fraction", [](const array_c& u, double L) {
    return boundary_mass_fraction(to_field(u, L));
  }, py::arg("field"), py::arg("L"),
     "fraction of mass in the outer 10% of the truncated direction");

  m.def("xsb_norm", [](const array_c& u, double L, double window, double s,
                       double b, double rho) {
    return xsb_norm(to_spacetime(u, L, window, rho), XsbParams{s, b});
  }, py::arg("samples"), py::arg("L"), py::arg("window"), py::arg("s"),
     py::arg("b"), py::arg("rho") = 0.25,
     "Bourgain norm of tapered space-time samples of shape (nt, ny, nx)");

  m.def("random_band_spectrum", [](double L, std::size_t nx, std::size_t ny,
                                   double band, std::uint64_t seed) {
    DomainSpec d(L, nx, ny);
    return from_values(random_band_spectrum(d, band, seed).coeffs, d);
  }, py::arg("L"), py::arg("nx"), py::arg("ny"), py::arg("band"), py::arg("seed"));

  m.def("random_shell_spectrum", [](double L, std::size_t nx, std::size_t ny,
                                    double band, std::uint64_t seed) {
    DomainSpec d(L, nx, ny);
    return from_values(random_shell_spectrum(d, band, seed).coeffs, d);
  }, py::arg("L"), py::arg("nx"), py::arg("ny"), py::arg("band"), py::arg("seed"),
     "Gaussian data on one random dyadic shell <= band (scale-uniform level)");

  m.def("strichartz_trial", [](double N, std::uint64_t seed, std::size_t grid,
                               std::size_t nt, double window) {
    TrialGrid g = grid ? TrialGrid{DomainSpec(kPi, grid, grid), nt, window, 0.25}
                       : TrialGrid::for_band(N, nt, window);
    return trial_dict(strichartz_trial(g, N, seed));
  }, py::arg("N"), py::arg("seed"), py::arg("grid") = 0, py::arg("nt") = 16,
     py::arg("window") = 1.0);

  m.def("trilinear_trial", [](double s, double b, double bprime, double N,
                              std::uint64_t seed) {
    TrialGrid g = TrialGrid::for_band(N);
    return trial_dict(trilinear_trial(g, XsbParams{s, b}, bprime, N, seed));
  }, py::arg("s"), py::arg("b"), py::arg("bprime"), py::arg("N"), py::arg("seed"));

  m.def("fit_power_law", [](const std::vector<double>& t,
                            const std::vector<double>& h, double t_min) {
    return fit_power_law(t, h, t_min);
  }, py::arg("times"), py::arg("norms"), py::arg("t_min"),
     "least-squares (slope, r2) of log norm vs log t past t_min");

  m.def("simulate", [](const std::string& config_path, const std::string& output) {
    ExperimentConfig cfg = ExperimentConfig::from_file(config_path);
    if (!output.empty()) cfg.output_dir = output;
    GrowthRecord rec = run_experiment(cfg);
    py::dict out;
    out["times"] = rec.times;
    out["mass"] = rec.mass_series;
    out["energy"] = rec.energy_series;
    out["boundary"] = rec.boundary_series;
    py::dict norms;
    for (std::size_t i = 0; i < rec.orders.size(); ++i)
      norms[py::float_(rec.orders[i])] = rec.hs[i];
    out["norms"] = norms;
    py::list fits;
    for (const PowerLawFit& f : rec.fits) {
      py::dict fd;
      fd["order"] = f.order;
      fd["beta"] = f.beta;
      fd["r2"] = f.r2;
      fd["bound"] = f.bound;
      fd["valid"] = f.valid;
      fits.append(fd);
    }
    out["fits"] = fits;
    return out;
  }, py::arg("config_path"), py::arg("output") = std::string(),
     "run an experiment config, returning the recorded series and fits");
}
