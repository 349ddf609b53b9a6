#include "wgnls/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "wgnls/errors.hpp"

namespace wgnls {
namespace detail {

namespace {

// FFTW plan creation is not thread-safe; execution via the new-array
// interface is.  Plans are cached forever (a handful per process).
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(std::vector<cplx>& v) {
  return reinterpret_cast<fftw_complex*>(v.data());
}

fftw_plan cached_plan_2d(std::size_t nx, std::size_t ny, int sign) {
  static std::map<std::tuple<std::size_t, std::size_t, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex());
  auto key = std::make_tuple(nx, ny, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<cplx> dummy(nx * ny);
  fftw_plan p = fftw_plan_dft_2d(static_cast<int>(ny), static_cast<int>(nx),
                                 as_fftw(dummy), as_fftw(dummy), sign,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, p);
  return p;
}

fftw_plan cached_plan_time(std::size_t nt, std::size_t batch, int sign) {
  static std::map<std::tuple<std::size_t, std::size_t, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex());
  auto key = std::make_tuple(nt, batch, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<cplx> dummy(nt * batch);
  int n = static_cast<int>(nt);
  fftw_plan p = fftw_plan_many_dft(
      1, &n, static_cast<int>(batch), as_fftw(dummy), nullptr,
      static_cast<int>(batch), 1, as_fftw(dummy), nullptr,
      static_cast<int>(batch), 1, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, p);
  return p;
}

}  // namespace

void fft2_raw(std::vector<cplx>& data, std::size_t nx, std::size_t ny, int sign) {
  fftw_plan p = cached_plan_2d(nx, ny, sign);
  fftw_execute_dft(p, as_fftw(data), as_fftw(data));
}

void fft_time_raw(std::vector<cplx>& data, std::size_t nt, std::size_t batch, int sign) {
  fftw_plan p = cached_plan_time(nt, batch, sign);
  fftw_execute_dft(p, as_fftw(data), as_fftw(data));
}

}  // namespace detail

Spectrum forward_transform(const Field& f) {
  if (!f.finite())
    throw blowup_error("forward_transform: non-finite field", 0.0);
  Spectrum s(f.domain);
  s.coeffs = f.values;
  detail::fft2_raw(s.coeffs, f.domain.nx, f.domain.ny, FFTW_FORWARD);
  // c = DFT(u) * sqrt(dx*dy / N): Parseval becomes sum|c|^2 = dx*dy*sum|u|^2.
  const double scale =
      std::sqrt(f.domain.cell_measure() / static_cast<double>(f.domain.size()));
  for (cplx& z : s.coeffs) z *= scale;
  return s;
}

Field inverse_transform(const Spectrum& s) {
  if (!s.finite())
    throw blowup_error("inverse_transform: non-finite spectrum", 0.0);
  Field f(s.domain);
  f.values = s.coeffs;
  detail::fft2_raw(f.values, s.domain.nx, s.domain.ny, FFTW_BACKWARD);
  const double scale =
      1.0 / std::sqrt(s.domain.cell_measure() * static_cast<double>(s.domain.size()));
  for (cplx& z : f.values) z *= scale;
  return f;
}

}  // namespace wgnls
