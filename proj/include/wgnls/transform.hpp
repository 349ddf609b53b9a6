#pragma once

#include "wgnls/field.hpp"

namespace wgnls {

// Discrete Fourier analysis of a field.  Forward kernel e^{-i(xi*x1 + n*x2)},
// coefficients scaled so Parseval holds with the quadrature measure dx*dy.
// Throws blowup_error on non-finite input.
Spectrum forward_transform(const Field& f);

// Exact inverse of forward_transform up to roundoff.
Field inverse_transform(const Spectrum& s);

namespace detail {
// In-place unnormalized 2-D FFT over the k*nx+j layout; sign is FFTW_FORWARD
// or FFTW_BACKWARD.  Plans are cached per (ny, nx, sign) behind a mutex.
void fft2_raw(std::vector<cplx>& data, std::size_t nx, std::size_t ny, int sign);

// Batched unnormalized 1-D FFTs of length nt with stride `batch`, dist 1,
// over a contiguous nt*batch array (time-major space-time layout).
void fft_time_raw(std::vector<cplx>& data, std::size_t nt, std::size_t batch, int sign);
}  // namespace detail

}  // namespace wgnls
