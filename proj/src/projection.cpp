#include "wgnls/projection.hpp"

#include <cmath>
#include <cstdlib>

#include "wgnls/errors.hpp"

namespace wgnls {

void dealias_project_inplace(Spectrum& s) {
  const std::size_t nx = s.domain.nx, ny = s.domain.ny;
  const long jmax = static_cast<long>(nx) / 3;
  const long kmax = static_cast<long>(ny) / 3;
  for (std::size_t k = 0; k < ny; ++k) {
    const bool kill_row = std::labs(signed_index(k, ny)) > kmax;
    for (std::size_t j = 0; j < nx; ++j) {
      if (kill_row || std::labs(signed_index(j, nx)) > jmax)
        s.at(j, k) = cplx(0.0, 0.0);
    }
  }
}

Spectrum dealias_project(const Spectrum& s) {
  Spectrum out = s;
  dealias_project_inplace(out);
  return out;
}

Spectrum project_band(const Spectrum& s, double N) {
  if (!(N > 0.0)) throw parameter_error("project_band: N must be positive");
  Spectrum out = s;
  FourierGrid g(s.domain);
  for (std::size_t k = 0; k < s.domain.ny; ++k)
    for (std::size_t j = 0; j < s.domain.nx; ++j)
      if (std::abs(g.xi(j)) > N || std::abs(g.n(k)) > N)
        out.at(j, k) = cplx(0.0, 0.0);
  return out;
}

std::vector<double> sobolev_weights(const FourierGrid& g, double s) {
  if (s < 0.0) throw parameter_error("sobolev_weights: order must be >= 0");
  const DomainSpec& d = g.domain();
  std::vector<double> w(d.size());
  for (std::size_t k = 0; k < d.ny; ++k) {
    const double an = std::abs(g.n(k));
    for (std::size_t j = 0; j < d.nx; ++j)
      w[k * d.nx + j] = std::pow(1.0 + std::abs(g.xi(j)) + an, s);
  }
  return w;
}

}  // namespace wgnls
