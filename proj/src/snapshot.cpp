#include "wgnls/snapshot.hpp"

#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "wgnls/errors.hpp"

namespace wgnls {

namespace {

constexpr char kMagic[8] = {'W', 'G', 'N', 'L', 'S', 'N', 'A', 'P'};
constexpr std::uint8_t kVersion = 1;

void write_payload(const std::vector<cplx>& data, const DomainSpec& d,
                   std::uint8_t kind, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("snapshot: cannot open for writing: " + path);
  std::array<char, 16> header{};
  std::memcpy(header.data(), kMagic, 8);
  header[8] = static_cast<char>(kVersion);
  header[9] = static_cast<char>(kind);
  out.write(header.data(), header.size());
  double L = d.half_length;
  std::uint64_t nx = d.nx, ny = d.ny;
  out.write(reinterpret_cast<const char*>(&L), sizeof(L));
  out.write(reinterpret_cast<const char*>(&nx), sizeof(nx));
  out.write(reinterpret_cast<const char*>(&ny), sizeof(ny));
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size() * sizeof(cplx)));
  if (!out) throw io_error("snapshot: short write: " + path);
}

std::pair<std::vector<cplx>, DomainSpec> read_payload(std::uint8_t expect_kind,
                                                      const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("snapshot: cannot open: " + path);
  std::array<char, 16> header{};
  in.read(header.data(), header.size());
  if (!in || std::memcmp(header.data(), kMagic, 8) != 0)
    throw io_error("snapshot: bad magic: " + path);
  if (static_cast<std::uint8_t>(header[8]) != kVersion)
    throw io_error("snapshot: unsupported version: " + path);
  if (static_cast<std::uint8_t>(header[9]) != expect_kind)
    throw io_error("snapshot: wrong payload kind: " + path);
  double L = 0;
  std::uint64_t nx = 0, ny = 0;
  in.read(reinterpret_cast<char*>(&L), sizeof(L));
  in.read(reinterpret_cast<char*>(&nx), sizeof(nx));
  in.read(reinterpret_cast<char*>(&ny), sizeof(ny));
  if (!in) throw io_error("snapshot: truncated header: " + path);
  DomainSpec d(L, static_cast<std::size_t>(nx), static_cast<std::size_t>(ny));
  std::vector<cplx> data(d.size());
  in.read(reinterpret_cast<char*>(data.data()),
          static_cast<std::streamsize>(data.size() * sizeof(cplx)));
  if (!in) throw io_error("snapshot: truncated payload: " + path);
  return {std::move(data), d};
}

}  // namespace

void save_field(const Field& f, const std::string& path) {
  write_payload(f.values, f.domain, 0, path);
}

void save_spectrum(const Spectrum& s, const std::string& path) {
  write_payload(s.coeffs, s.domain, 1, path);
}

Field load_field(const std::string& path) {
  auto [data, d] = read_payload(0, path);
  Field f(d);
  f.values = std::move(data);
  return f;
}

Spectrum load_spectrum(const std::string& path) {
  auto [data, d] = read_payload(1, path);
  Spectrum s(d);
  s.coeffs = std::move(data);
  return s;
}

}  // namespace wgnls
