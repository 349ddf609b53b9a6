#include <doctest.h>

#include <cmath>

#include "wgnls/diagnostics.hpp"
#include "wgnls/transform.hpp"

#include "test_util.hpp"

using namespace wgnls;
using testutil::random_field;

namespace {
const DomainSpec kDom{kPi, 32, 32};
}

TEST_CASE("mass") {
  SUBCASE("constant field integrates to amplitude^2 times the area") {
    Field f(kDom);
    for (cplx& z : f.values) z = cplx(0.0, 1.5);
    CHECK(mass(f) == doctest::Approx(2.25 * kDom.area()).epsilon(1e-13));
  }
  SUBCASE("matches the Parseval sum on random data") {
    Field f = random_field(kDom, 4);
    CHECK(mass(f) ==
          doctest::Approx(forward_transform(f).l2_norm_sq()).epsilon(1e-12));
  }
}

TEST_CASE("energy") {
  SUBCASE("constant field: no gradient, quartic term only") {
    Field f(kDom);
    for (cplx& z : f.values) z = cplx(2.0, 0.0);
    CHECK(energy(f) == doctest::Approx(0.25 * 16.0 * kDom.area()).epsilon(1e-12));
  }
  SUBCASE("small plane wave: gradient term n^2/2 * amp^2 * area") {
    // u = a exp(i 3 x2): E = 1/2 * 9 * a^2 * area + 1/4 * a^4 * area
    const double a = 1e-2;
    Field f(kDom);
    for (std::size_t k = 0; k < kDom.ny; ++k)
      for (std::size_t j = 0; j < kDom.nx; ++j)
        f.at(j, k) = a * cplx(std::cos(3.0 * kDom.y(k)), std::sin(3.0 * kDom.y(k)));
    const double want = (4.5 * a * a + 0.25 * a * a * a * a) * kDom.area();
    CHECK(energy(f) == doctest::Approx(want).epsilon(1e-12));
  }
  SUBCASE("nonnegative on random data") {
    CHECK(energy(random_field(kDom, 8)) >= 0.0);
  }
}

TEST_CASE("sobolev norm") {
  Spectrum s = forward_transform(random_field(kDom, 12));
  SUBCASE("order 0 recovers the l2 norm") {
    CHECK(sobolev_norm(s, 0.0) ==
          doctest::Approx(std::sqrt(s.l2_norm_sq())).epsilon(1e-13));
  }
  SUBCASE("single mode gives the weight exactly") {
    Spectrum one(kDom);
    one.at(2, 1) = cplx(0.0, 3.0);  // weight 1 + 2 + 1 = 4, 4^1.5 = 8
    CHECK(sobolev_norm(one, 1.5) == doctest::Approx(24.0).epsilon(1e-13));
  }
  SUBCASE("monotone in the order") {
    CHECK(sobolev_norm(s, 0.5) <= sobolev_norm(s, 1.0));
    CHECK(sobolev_norm(s, 1.0) <= sobolev_norm(s, 2.5));
  }
  CHECK_THROWS_AS(sobolev_norm(s, -1.0), parameter_error);
}

TEST_CASE("dyadic shells") {
  SUBCASE("single modes land in the right shell, boundaries included") {
    // 1 + |xi| + |n|: (0,0) -> 1 (shell 0), (1,0) -> 2 (shell 1),
    // (2,1) -> 4 (shell 2), (3,3) -> 7 (shell 2), (4,3) -> 8 (shell 3)
    struct Probe { std::size_t j, k; int shell; };
    for (Probe p : {Probe{0, 0, 0}, Probe{1, 0, 1}, Probe{2, 1, 2},
                    Probe{3, 3, 2}, Probe{4, 3, 3}}) {
      Spectrum s(kDom);
      s.at(p.j, p.k) = cplx(1.0, 0.0);
      ShellSpectrum sh = lp_shells(s);
      CHECK(sh.shells[static_cast<std::size_t>(p.shell)].energy ==
            doctest::Approx(1.0));
      CHECK(sh.total() == doctest::Approx(1.0));
    }
  }
  SUBCASE("shells partition the full l2 mass") {
    Spectrum s = forward_transform(random_field(kDom, 19));
    CHECK(lp_shells(s).total() == doctest::Approx(s.l2_norm_sq()).epsilon(1e-12));
  }
}

TEST_CASE("cascade fraction") {
  Spectrum s(kDom);
  s.at(0, 0) = cplx(1.0, 0.0);  // shell 0
  s.at(0, 3) = cplx(2.0, 0.0);  // weight 4, shell 2
  CHECK(cascade_fraction(s, 0) == doctest::Approx(1.0));
  CHECK(cascade_fraction(s, 1) == doctest::Approx(0.8));
  CHECK(cascade_fraction(s, 2) == doctest::Approx(0.8));
  CHECK(cascade_fraction(s, 3) == 0.0);
  CHECK(cascade_fraction(Spectrum(kDom), 1) == 0.0);
  CHECK_THROWS_AS(cascade_fraction(s, -1), parameter_error);
}

TEST_CASE("boundary mass fraction") {
  SUBCASE("uniform field puts one tenth of its mass in the strip") {
    Field f(kDom);
    for (cplx& z : f.values) z = cplx(1.0, 0.0);
    // columns with |x| >= 0.9 L: j = 0, 1, 31 (the grid excludes x = +L)
    CHECK(boundary_mass_fraction(f) == doctest::Approx(3.0 / 32.0));
  }
  SUBCASE("centered bump has negligible boundary mass") {
    Field f(kDom);
    for (std::size_t k = 0; k < kDom.ny; ++k)
      for (std::size_t j = 0; j < kDom.nx; ++j)
        f.at(j, k) = std::exp(-8.0 * kDom.x(j) * kDom.x(j));
    CHECK(boundary_mass_fraction(f) < 1e-12);
  }
  SUBCASE("zero field reports zero") {
    CHECK(boundary_mass_fraction(Field(kDom)) == 0.0);
  }
}
