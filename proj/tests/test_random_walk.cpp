#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>

#include "dlgraph/random_walk.hpp"

using namespace dlg;

TEST_CASE("zero steps stay at the origin") {
  WalkConfig cfg{DLParams{{2, 2}}, 0, 3, 7, {}, false};
  for (const auto& s : simulate(cfg)) CHECK(s.final_vertex == dl_origin(cfg.params));
}

TEST_CASE("fixed seeds reproduce trajectories and extend cleanly") {
  WalkConfig cfg{DLParams{{2, 3}}, 50, 6, 12345, {}, false};
  const auto a = simulate(cfg);
  const auto b = simulate(cfg);
  for (int t = 0; t < cfg.trials; ++t) CHECK(a[static_cast<std::size_t>(t)].final_vertex == b[static_cast<std::size_t>(t)].final_vertex);

  WalkConfig more = cfg;
  more.trials = 12;
  const auto c = simulate(more);
  for (int t = 0; t < cfg.trials; ++t) CHECK(a[static_cast<std::size_t>(t)].final_vertex == c[static_cast<std::size_t>(t)].final_vertex);
}

TEST_CASE("the Busemann track is a lattice walk") {
  WalkConfig cfg{DLParams{{2, 2, 2}}, 40, 4, 99, {}, true};
  for (const auto& s : simulate(cfg)) {
    REQUIRE(s.hor_track.size() == 41);
    for (std::size_t n = 0; n < s.hor_track.size(); ++n) {
      CHECK(std::accumulate(s.hor_track[n].begin(), s.hor_track[n].end(), 0) == 0);
      if (n == 0) continue;
      int plus = 0, minus = 0;
      for (std::size_t j = 0; j < s.hor_track[n].size(); ++j) {
        const int diff = s.hor_track[n][j] - s.hor_track[n - 1][j];
        if (diff == 1) ++plus;
        if (diff == -1) ++minus;
      }
      CHECK(plus == 1);
      CHECK(minus == 1);
    }
  }
}

TEST_CASE("step law validation") {
  WalkConfig cfg{DLParams{{2, 2}}, 10, 1, 0, {}, false};
  cfg.law = {StepEntry{MoveType{0, 1}, 0, 0.5}, StepEntry{MoveType{1, 0}, 0, 0.4}};
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
  cfg.law.back().prob = 0.5;
  CHECK_NOTHROW(validate_config(cfg));
  cfg.law.back().label = 2;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
  cfg.law.back() = StepEntry{MoveType{1, 1}, 0, 0.5};
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
}

TEST_CASE("closed-form drift for the uniform walk") {
  WalkConfig cfg{DLParams{{2, 3}}, 200, 600, 31, {}, false};
  const DriftReport r = drift(cfg);
  CHECK(r.alpha[0] == doctest::Approx(-0.2));
  CHECK(r.alpha[1] == doctest::Approx(0.2));
  REQUIRE(r.alpha_num.size() == 2);
  CHECK(r.alpha_num[0] + r.alpha_num[1] == 0);  // exact integer identity
  CHECK(r.alpha_den == 5);
  for (int j = 0; j < 2; ++j)
    CHECK(std::abs(r.empirical[static_cast<std::size_t>(j)] - r.alpha[static_cast<std::size_t>(j)]) <=
          3.0 * r.standard_error[static_cast<std::size_t>(j)]);

  // mixed branching on three trees: alpha = (-1/14, -1/14, 2/14)
  WalkConfig mixed{DLParams{{2, 2, 3}}, 500, 2000, 64, {}, false};
  const DriftReport rm = drift(mixed);
  CHECK(rm.alpha_num == std::vector<long>{-1, -1, 2});
  CHECK(rm.alpha_den == 14);
  CHECK(rm.alpha_num[0] + rm.alpha_num[1] + rm.alpha_num[2] == 0);
  for (int j = 0; j < 3; ++j)
    CHECK(std::abs(rm.empirical[static_cast<std::size_t>(j)] - rm.alpha[static_cast<std::size_t>(j)]) <=
          3.0 * rm.standard_error[static_cast<std::size_t>(j)]);

  WalkConfig eq{DLParams{{3, 3, 3}}, 100, 50, 4, {}, false};
  for (double a : drift(eq).alpha) CHECK(a == 0.0);
  for (long n : drift(eq).alpha_num) CHECK(n == 0);
}

TEST_CASE("drift of a custom step law") {
  WalkConfig cfg{DLParams{{2, 2}}, 300, 400, 77, {}, false};
  cfg.law = {StepEntry{MoveType{0, 1}, 0, 0.35}, StepEntry{MoveType{0, 1}, 1, 0.35},
             StepEntry{MoveType{1, 0}, 0, 0.15}, StepEntry{MoveType{1, 0}, 1, 0.15}};
  const DriftReport r = drift(cfg);
  CHECK(r.alpha[0] == doctest::Approx(0.4));
  CHECK(r.alpha[1] == doctest::Approx(-0.4));
  CHECK(std::abs(r.alpha[0] + r.alpha[1]) <= 1e-15);
  for (int j = 0; j < 2; ++j)
    CHECK(std::abs(r.empirical[static_cast<std::size_t>(j)] - r.alpha[static_cast<std::size_t>(j)]) <=
          3.0 * r.standard_error[static_cast<std::size_t>(j)]);
}

TEST_CASE("positive drift stabilizes a boundary prefix, negative sinks") {
  WalkConfig cfg{DLParams{{2, 3}}, 1000, 200, 2024, {}, false};
  const BoundaryReport r = boundary_convergence(cfg);
  CHECK(!r.coords[0].expected_lower);
  CHECK(r.coords[1].expected_lower);
  CHECK(r.coords[1].stabilized_fraction >= 0.95);
  CHECK(r.coords[0].mean_final_busemann < -100.0);  // drift -0.2 over 1000 steps
  CHECK(r.coords[1].mean_final_busemann > 100.0);
  CHECK(r.coords[1].mean_meet_level > 50.0);  // deep common prefix of the ray
}

TEST_CASE("null drift stabilizes nothing") {
  WalkConfig cfg{DLParams{{2, 2}}, 1000, 200, 5150, {}, false};
  const BoundaryReport r = boundary_convergence(cfg);
  for (const auto& c : r.coords) {
    CHECK(!c.expected_lower);
    CHECK(c.stabilized_fraction <= 0.5);
    CHECK(std::abs(c.mean_final_busemann) < 50.0);
  }
}

TEST_CASE("walks drift away from the start") {
  WalkConfig short_cfg{DLParams{{2, 2}}, 50, 300, 8, {}, false};
  WalkConfig long_cfg{DLParams{{2, 2}}, 400, 300, 8, {}, false};
  auto mean_dist = [](const WalkConfig& cfg) {
    double acc = 0.0;
    const DLVertex o = dl_origin(cfg.params);
    for (const auto& s : simulate(cfg)) acc += distance_lower_bound(s.final_vertex, o);
    return acc / cfg.trials;
  };
  const double d_short = mean_dist(short_cfg);
  const double d_long = mean_dist(long_cfg);
  CHECK(d_long > d_short);
  CHECK(d_long > 20.0);

  int returned = 0;
  for (const auto& s : simulate(long_cfg))
    if (s.returned_to_start) ++returned;
  CHECK(returned < long_cfg.trials);  // transience proxy: most walks never come back
}

TEST_CASE("ray approximation points") {
  const DLParams p{{2, 3}};
  // all-zero drift pins every coordinate at horocycle zero
  {
    const DLParams peq{{2, 2}};
    std::vector<BoundaryApproxPoint> xi{BoundaryApproxPoint::omega_end(),
                                        BoundaryApproxPoint::omega_end()};
    const DLVertex v = ray_projection(peq, xi, 17, {0, 0}, 4);
    CHECK(v == dl_origin(peq));
  }
  // uniform walk on two trees with branching 2 and 3: k = (-2, 2) at n = 10
  {
    std::vector<BoundaryApproxPoint> xi{
        BoundaryApproxPoint::omega_end(),
        BoundaryApproxPoint::lower_end(TreeVertex{3, {1, 0, 1}})};
    const DLVertex v = ray_projection(p, xi, 10, {-1, 1}, 5);
    CHECK(v.coords[0] == TreeVertex{-2, {}});
    CHECK(v.coords[1] == TreeVertex{2, {1, 0}});
    // witness too shallow for larger n
    CHECK_THROWS_AS(ray_projection(p, xi, 20, {-1, 1}, 5), std::invalid_argument);
  }
  // the balancing coordinate never ascends when its drift is nonpositive
  {
    const DLParams p3{{3, 2, 2}};
    std::vector<BoundaryApproxPoint> xi{
        BoundaryApproxPoint::lower_end(TreeVertex{5, {1}}), BoundaryApproxPoint::omega_end(),
        BoundaryApproxPoint::omega_end()};
    // uniform drift on DL(3,2,2): alpha = (2/14, -1/14, -1/14)
    for (int n = 0; n <= 12; ++n) {
      const DLVertex v = ray_projection(p3, xi, n, {2, -1, -1}, 14);
      CHECK(v.coords[2].h <= 0);
      int sum = 0;
      for (const auto& c : v.coords) sum += c.h;
      CHECK(sum == 0);
    }
  }
}
