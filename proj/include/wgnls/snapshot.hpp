#pragma once

#include <string>

#include "wgnls/field.hpp"

namespace wgnls {

// Binary snapshot format (little-endian):
//   bytes 0..7   magic "WGNLSNAP"
//   byte  8      format version (1)
//   byte  9      payload kind: 0 = Field (physical), 1 = Spectrum
//   bytes 10..15 zero padding
//   f64  half_length, u64 nx, u64 ny
//   nx*ny (re, im) f64 pairs, row-major with x1 fastest (index k*nx + j;
//   spectral payloads use FFT-order indices)
void save_field(const Field& f, const std::string& path);
void save_spectrum(const Spectrum& s, const std::string& path);
Field load_field(const std::string& path);
Spectrum load_spectrum(const std::string& path);

}  // namespace wgnls
