#pragma once

#include <cstddef>
#include <vector>

#include "wgnls/errors.hpp"

namespace wgnls {

inline constexpr double kPi = 3.14159265358979323846;

inline bool is_pow2(std::size_t n) { return n >= 1 && (n & (n - 1)) == 0; }

// FFT-order storage index -> signed lattice index (i < n/2 ? i : i - n).
inline long signed_index(std::size_t i, std::size_t n) {
  return i < n / 2 ? static_cast<long>(i)
                   : static_cast<long>(i) - static_cast<long>(n);
}

// Truncated waveguide [-L, L) x [0, 2*pi), both directions periodic.
// The torus period is fixed to 2*pi; the x1 direction is a periodization of
// the real line, so experiments must keep mass away from |x1| ~ L.
struct DomainSpec {
  double half_length = kPi;  // L
  std::size_t nx = 64;       // samples along x1, power of two
  std::size_t ny = 64;       // samples along x2, power of two

  DomainSpec() = default;
  DomainSpec(double L, std::size_t nx_, std::size_t ny_)
      : half_length(L), nx(nx_), ny(ny_) {
    if (!(half_length > 0.0))
      throw parameter_error("DomainSpec: half_length must be positive");
    if (nx < 8 || !is_pow2(nx))
      throw parameter_error("DomainSpec: nx must be a power of two >= 8");
    if (ny < 8 || !is_pow2(ny))
      throw parameter_error("DomainSpec: ny must be a power of two >= 8");
  }

  std::size_t size() const { return nx * ny; }
  double dx() const { return 2.0 * half_length / static_cast<double>(nx); }
  double dy() const { return 2.0 * kPi / static_cast<double>(ny); }
  double cell_measure() const { return dx() * dy(); }
  double area() const { return 4.0 * kPi * half_length; }
  double x(std::size_t j) const { return -half_length + static_cast<double>(j) * dx(); }
  double y(std::size_t k) const { return static_cast<double>(k) * dy(); }

  bool operator==(const DomainSpec&) const = default;
};

// Dual lattice of the periodized domain: xi_j = (pi/L)*j for signed j,
// n_k integer. Arrays are in FFT storage order.
class FourierGrid {
 public:
  explicit FourierGrid(const DomainSpec& d) : domain_(d) {
    xi_.resize(d.nx);
    for (std::size_t j = 0; j < d.nx; ++j)
      xi_[j] = xi_spacing() * static_cast<double>(signed_index(j, d.nx));
    n_.resize(d.ny);
    for (std::size_t k = 0; k < d.ny; ++k)
      n_[k] = static_cast<double>(signed_index(k, d.ny));
  }

  const DomainSpec& domain() const { return domain_; }
  double xi_spacing() const { return kPi / domain_.half_length; }
  double xi(std::size_t j) const { return xi_[j]; }
  double n(std::size_t k) const { return n_[k]; }
  const std::vector<double>& xi_all() const { return xi_; }
  const std::vector<double>& n_all() const { return n_; }
  double max_xi() const { return xi_spacing() * static_cast<double>(domain_.nx / 2); }
  double max_n() const { return static_cast<double>(domain_.ny / 2); }

 private:
  DomainSpec domain_;
  std::vector<double> xi_, n_;
};

}  // namespace wgnls
