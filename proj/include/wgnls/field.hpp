#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "wgnls/domain.hpp"

namespace wgnls {

using cplx = std::complex<double>;

// Layout for both physical samples and Fourier coefficients: index k*nx + j,
// j along x1 (fastest), k along x2.  Spectral indices are in FFT order.
namespace detail {
inline bool all_finite(const std::vector<cplx>& v) {
  for (const cplx& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}
}  // namespace detail

// Samples of u on the physical grid.
struct Field {
  std::vector<cplx> values;
  DomainSpec domain;

  Field() = default;
  explicit Field(const DomainSpec& d) : values(d.size()), domain(d) {}

  cplx& at(std::size_t j, std::size_t k) { return values[k * domain.nx + j]; }
  const cplx& at(std::size_t j, std::size_t k) const { return values[k * domain.nx + j]; }
  bool finite() const { return detail::all_finite(values); }
};

// Fourier coefficients of a Field, scaled so that the discrete Parseval
// identity holds against the physical quadrature measure:
//   sum |u|^2 * dx*dy == sum |coeffs|^2.
struct Spectrum {
  std::vector<cplx> coeffs;
  DomainSpec domain;

  Spectrum() = default;
  explicit Spectrum(const DomainSpec& d) : coeffs(d.size()), domain(d) {}

  cplx& at(std::size_t j, std::size_t k) { return coeffs[k * domain.nx + j]; }
  const cplx& at(std::size_t j, std::size_t k) const { return coeffs[k * domain.nx + j]; }
  bool finite() const { return detail::all_finite(coeffs); }

  double l2_norm_sq() const {
    double s = 0.0;
    for (const cplx& z : coeffs) s += std::norm(z);
    return s;
  }
};

}  // namespace wgnls
