#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "ctxdim/bounds.hpp"
#include "ctxdim/fixtures.hpp"

using namespace ctxdim;

namespace {
std::vector<double> ones(int n) { return std::vector<double>(n, 1.0); }
}  // namespace

TEST_SUITE("bounds") {
  TEST_CASE("Lovasz number of small graphs") {
    CHECK(lovasz_theta(graphs::cycle(5), ones(5)).value == doctest::Approx(std::sqrt(5.0)).epsilon(1e-6));
    CHECK(lovasz_theta(graphs::complete(4), ones(4)).value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(lovasz_theta(graphs::edgeless(4), ones(4)).value == doctest::Approx(4.0).epsilon(1e-6));
    // Weighted: for an edgeless graph the value is the sum of the weights.
    CHECK(lovasz_theta(graphs::edgeless(3), {0.5, 1.0, 2.0}).value == doctest::Approx(3.5).epsilon(1e-6));
  }

  TEST_CASE("seesaw meets the Lovasz number once the dimension is large enough") {
    // Four dimensions suffice for the nine-vertex graph, so the two must agree.
    const Graph g = graphs::gkk();
    const auto theta = lovasz_theta(g, ones(9));
    const auto lo = lower_seesaw(g, ones(9), 4);
    REQUIRE(lo.valid);
    CHECK(lo.value == doctest::Approx(theta.value).epsilon(1e-5));
  }

  TEST_CASE("seesaw on a complete graph returns one") {
    const auto r = lower_seesaw(graphs::complete(3), ones(3), 3);
    REQUIRE(r.valid);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.certificate_error <= kTolReplay);
  }

  TEST_CASE("seesaw penalty must clear the pole") {
    SeesawConfig cfg;
    cfg.eta = 0.4;
    CHECK_THROWS_AS(lower_seesaw(graphs::path(2), ones(2), 2, cfg), std::invalid_argument);
  }

  TEST_CASE("penalized seesaw objective never decreases") {
    std::vector<double> trace;
    SeesawConfig cfg;
    cfg.restarts = 1;
    cfg.trace = &trace;
    lower_seesaw(graphs::cycle(5), ones(5), 2, cfg);
    REQUIRE(trace.size() > 2);
    for (std::size_t k = 1; k < trace.size(); ++k) CHECK(trace[k] >= trace[k - 1] - 1e-12 * std::abs(trace[k]));
  }

  TEST_CASE("lambda-max on an edgeless graph in one dimension") {
    LambdaConfig cfg;
    cfg.restarts = 2;
    const auto r = lower_lambda_max(graphs::edgeless(4), ones(4), 1, cfg);
    REQUIRE(r.valid);
    CHECK(r.value == doctest::Approx(4.0).epsilon(1e-6));
    CHECK_THROWS_AS(lower_lambda_max(graphs::edgeless(2), {1.0, 0.0}, 1), std::invalid_argument);
  }

  TEST_CASE("tilde seesaw on a single vertex") {
    const auto r = lower_tilde_seesaw(Graph(1, {}), {1.0}, 1);
    REQUIRE(r.valid);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("zero-vector witness") {
    const Graph g = graphs::gkk();
    const VectorSystem v = fixtures::gkk_zero_witness();
    const Replay r = replay(g, ones(9), v);
    CHECK(r.defect < 1e-12);
    CHECK(r.value == doctest::Approx(3.3380).epsilon(3e-5));
    CHECK(best_handle_value(v.reps, ones(9)) == doctest::Approx(r.value).epsilon(1e-12));
    // The ray-scaled Gram has X_ii = X_0i.
    const CMatrix x = fixtures::ray_gram(v);
    for (int i = 1; i <= 9; ++i) CHECK(std::abs(x(i, i) - x(0, i)) < 1e-12);
    CHECK(std::abs(x(8, 8)) < 1e-15);
  }

  TEST_CASE("basis identity on K_d gives one") {
    UpperConfig cfg;
    cfg.cliques = {VertexSubset{1, 2, 3}};
    const auto r = upper_ray_sdp(graphs::complete(3), ones(3), 3, cfg);
    REQUIRE(r.valid);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-6));
    cfg.cliques = {VertexSubset{1, 2}};
    CHECK_THROWS_AS(upper_ray_sdp(graphs::complete(3), ones(3), 3, cfg), std::invalid_argument);
    cfg.cliques = {VertexSubset{1, 2, 4}};
    CHECK_THROWS_AS(upper_ray_sdp(graphs::gkk(), ones(9), 3, cfg), std::invalid_argument);
  }

  TEST_CASE("theta cut hygiene") {
    CHECK(round_down4(3.33804) == doctest::Approx(3.338));
    CHECK(round_down4(3.3333333) == doctest::Approx(3.3333));
    UpperConfig cfg;
    cfg.theta_cut = 2.0;
    CHECK_THROWS_AS(upper_tilde_ppt(graphs::cycle(5), ones(5), 2, cfg), std::invalid_argument);
    cfg.verified_lower = 1.99999;
    CHECK_THROWS_AS(upper_tilde_ppt(graphs::cycle(5), ones(5), 2, cfg), std::invalid_argument);
  }

  TEST_CASE("subgraph maximization exposes zero vectors") {
    // In one dimension the path 1-2-3 has no representation, but dropping
    // the middle vertex leaves two parallel vectors.
    const Graph g = graphs::path(3);
    SeesawConfig cfg;
    cfg.restarts = 3;
    const auto full = lower_seesaw(g, ones(3), 1, cfg);
    CHECK_FALSE(full.valid);
    const auto r = tilde_via_subgraphs(g, ones(3), 1, [&](const Graph& h, const std::vector<double>& w) {
      return lower_seesaw(h, w, 1, cfg);
    });
    REQUIRE(r.valid);
    CHECK(r.target == BoundTarget::ThetaTildeD);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(r.subset == VertexSubset{1, 3});
    REQUIRE(r.vectors);
    CHECK(r.vectors->reps[1].norm() == 0.0);
    CHECK_THROWS_AS(tilde_via_subgraphs(graphs::edgeless(13), ones(13), 1, {}), std::invalid_argument);
  }

  TEST_CASE("small PPT relaxations sit between bounds") {
    const Graph g = graphs::cycle(5);
    const auto theta = lovasz_theta(g, ones(5));
    const auto lo = lower_tilde_seesaw(g, ones(5), 2);
    const auto up = upper_tilde_ppt(g, ones(5), 2);
    const auto quad = upper_quad_ppt(g, ones(5), 2);
    REQUIRE(lo.valid);
    REQUIRE(up.valid);
    CHECK(lo.value <= up.value + 2e-3);
    CHECK(up.value <= theta.value + 1e-3);
    CHECK(quad.value >= lower_seesaw(g, ones(5), 2).value - 2e-3);
  }
}
