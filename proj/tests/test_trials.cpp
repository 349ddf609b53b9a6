#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "wgnls/trials.hpp"

#include "test_util.hpp"

using namespace wgnls;

namespace {

TrialGrid small_grid() {
  TrialGrid g;
  g.domain = DomainSpec(kPi, 32, 32);
  g.nt = 8;
  g.window = 1.0;
  return g;
}

}  // namespace

TEST_CASE("grid sizing resolves the cubic product of the band") {
  CHECK(TrialGrid::for_band(4.0).domain.nx == 64);
  CHECK(TrialGrid::for_band(8.0).domain.nx == 64);
  CHECK(TrialGrid::for_band(10.0).domain.nx == 128);
  CHECK(TrialGrid::for_band(16.0).domain.nx == 128);
  CHECK(TrialGrid::for_band(32.0).domain.nx == 256);
  // 2/3 dealiased band of the chosen grid always covers 2N (for products)
  for (double N : {2.0, 5.0, 12.0, 32.0}) {
    TrialGrid g = TrialGrid::for_band(N);
    CHECK(static_cast<double>(g.domain.nx / 3) >= 2.0 * N);
  }
}

TEST_CASE("ratio handles degenerate sides") {
  EstimateTrial t;
  t.lhs = 2.0;
  t.rhs = 4.0;
  CHECK(t.ratio() == 0.5);
  t.rhs = 0.0;
  CHECK(std::isinf(t.ratio()));
  t.lhs = 0.0;
  CHECK(t.ratio() == 0.0);
}

TEST_CASE("strichartz trial") {
  TrialGrid g = small_grid();

  SUBCASE("zero-mode band has a closed-form ratio") {
    // Only (0,0) lies in band 1/2; its free evolution is constant in time,
    // so L^4 over the window is |c| * (window / area)^{1/4} exactly.
    EstimateTrial t = strichartz_trial(g, 0.5, 9);
    const double want = std::pow(g.window / g.domain.area(), 0.25);
    CHECK(t.ratio() == doctest::Approx(want).epsilon(1e-12));
  }
  SUBCASE("deterministic and annotated") {
    EstimateTrial a = strichartz_trial(g, 4.0, 5);
    EstimateTrial b = strichartz_trial(g, 4.0, 5);
    CHECK(a.lhs == b.lhs);
    CHECK(a.rhs == b.rhs);
    CHECK(a.metadata.at("scale") == 4.0);
    CHECK(a.lhs > 0.0);
    CHECK(a.rhs > 0.0);
  }
  SUBCASE("band must fit the dealiased grid") {
    CHECK_THROWS_AS(strichartz_trial(g, 0.0, 1), parameter_error);
    CHECK_THROWS_AS(strichartz_trial(g, 11.0, 1), parameter_error);
  }
}

TEST_CASE("lemma-style L4 trial validates its exponent") {
  TrialGrid g = small_grid();
  CHECK_THROWS_AS(lemma25_trial(g, 4.0, 0.25, 1), parameter_error);
  EstimateTrial t = lemma25_trial(g, 4.0, 0.35, 1);
  CHECK(t.lhs > 0.0);
  CHECK(t.rhs > 0.0);
  CHECK(t.metadata.at("b2") == 0.35);
  EstimateTrial t2 = lemma25_trial(g, 4.0, 0.35, 1);
  CHECK(t.lhs == t2.lhs);
  CHECK(t.rhs == t2.rhs);
}

TEST_CASE("bilinear trial") {
  TrialGrid g = small_grid();
  CHECK_THROWS_AS(bilinear_trial(g, 2.0, 4.0, 0.5, 1), parameter_error);

  EstimateTrial t = bilinear_trial(g, 2.0, 4.0, 0.6, 7);
  CHECK(t.metadata.at("scale") == 8.0);
  CHECK(t.lhs > 0.0);
  CHECK(t.rhs > 0.0);

  SUBCASE("deterministic per seed, distinct across seeds") {
    EstimateTrial a = bilinear_trial(g, 3.0, 3.0, 0.6, 11);
    EstimateTrial b = bilinear_trial(g, 3.0, 3.0, 0.6, 11);
    EstimateTrial c = bilinear_trial(g, 3.0, 3.0, 0.6, 12);
    CHECK(a.lhs == b.lhs);
    CHECK(a.rhs == b.rhs);
    CHECK(a.lhs != c.lhs);
  }
}

TEST_CASE("trilinear trial") {
  TrialGrid g = small_grid();
  CHECK_THROWS_AS(trilinear_trial(g, {0.0, 0.6}, 0.6, 2.0, 1), parameter_error);
  CHECK_THROWS_AS(trilinear_trial(g, {0.5, 0.5}, 0.5, 2.0, 1), parameter_error);
  CHECK_THROWS_AS(trilinear_trial(g, {0.5, 0.7}, 0.6, 2.0, 1), parameter_error);

  EstimateTrial t = trilinear_trial(g, {0.5, 0.55}, 0.55, 2.0, 3);
  CHECK(t.lhs > 0.0);
  CHECK(t.rhs > 0.0);
  CHECK(std::isfinite(t.ratio()));
  EstimateTrial t2 = trilinear_trial(g, {0.5, 0.55}, 0.55, 2.0, 3);
  CHECK(t.lhs == t2.lhs);
  CHECK(t.rhs == t2.rhs);
}

TEST_CASE("ensemble report") {
  auto mk = [](double lhs, double rhs, double scale) {
    EstimateTrial t;
    t.lhs = lhs;
    t.rhs = rhs;
    t.metadata["scale"] = scale;
    return t;
  };
  CHECK_THROWS_AS(ensemble_report({}), parameter_error);

  SUBCASE("summary statistics") {
    std::vector<EstimateTrial> ts{mk(1, 1, 1), mk(3, 1, 1), mk(2, 1, 2), mk(4, 1, 2)};
    EnsembleReport r = ensemble_report(ts);
    CHECK(r.count == 4);
    CHECK(r.max_ratio == 4.0);
    CHECK(r.median_ratio == doctest::Approx(2.5));
    CHECK(r.mean_ratio == doctest::Approx(2.5));
    CHECK(r.scale_max.size() == 2);
    CHECK(r.scale_max[0] == std::pair{1.0, 3.0});
    CHECK(r.scale_max[1] == std::pair{2.0, 4.0});
  }
  SUBCASE("log-log slope across scales") {
    // max ratios 1, 2, 4 at scales 1, 2, 4: exact slope 1
    std::vector<EstimateTrial> ts{mk(1, 1, 1), mk(2, 1, 2), mk(4, 1, 4)};
    EnsembleReport r = ensemble_report(ts);
    CHECK(r.has_slope);
    CHECK(r.slope == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("a single scale yields no slope") {
    std::vector<EstimateTrial> ts{mk(1, 1, 2), mk(2, 1, 2)};
    CHECK_FALSE(ensemble_report(ts).has_slope);
  }
}

TEST_CASE("JSON report round-trips through a parser") {
  TrialGrid g = small_grid();
  std::vector<EstimateTrial> ts{strichartz_trial(g, 2.0, 1),
                                strichartz_trial(g, 4.0, 2)};
  EnsembleReport rep = ensemble_report(ts);
  std::string text = trials_to_json("strichartz", {{"trials", 2.0}}, ts, rep);
  nlohmann::json j = nlohmann::json::parse(text);
  CHECK(j["estimate"] == "strichartz");
  CHECK(j["trials"].size() == 2);
  CHECK(j["trials"][0]["seed"] == 1);
  CHECK(j["trials"][0]["ratio"].get<double>() == doctest::Approx(ts[0].ratio()));
  CHECK(j["summary"]["count"] == 2);
  CHECK(j["summary"].contains("slope"));
  CHECK(j.contains("note"));
}
