// Randomized invariants on small graphs.

#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "ctxdim/bounds.hpp"
#include "ctxdim/properties.hpp"
#include "ctxdim/random.hpp"
#include "ctxdim/report.hpp"

using namespace ctxdim;

namespace {

struct Sample {
  Graph g;
  std::vector<double> w;
  int d;
};

std::vector<Sample> samples(int count, std::uint64_t seed) {
  std::vector<Sample> out;
  for (int k = 0; k < count; ++k) {
    auto rng = restart_engine(seed, k);
    const int n = std::uniform_int_distribution<int>(3, 7)(rng);
    const int d = std::uniform_int_distribution<int>(2, 3)(rng);
    auto inst = planted_instance(n, d, 0.5, rng);
    std::vector<double> w(n);
    std::uniform_real_distribution<double> wd(0.2, 1.5);
    for (double& x : w) x = wd(rng);
    out.push_back({inst.behavior.graph, w, d});
  }
  return out;
}

SeesawConfig quick_seesaw() {
  SeesawConfig c;
  c.restarts = 5;
  return c;
}

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("random suite: planted members, consistency, sandwich, full rank, truncation") {
    PropertyConfig cfg;
    cfg.seed = 99;
    cfg.instances = 12;
    cfg.ppt_stride = 6;
    const auto s = property_suite(cfg);
    for (const auto& c : s.checks) {
      INFO(c.name << ": " << c.first_failure);
      CHECK(c.failures == 0);
      CHECK(c.cases > 0);
    }
  }

  TEST_CASE("alpha never exceeds theta") {
    for (const auto& s : samples(20, 5)) {
      const auto t = lovasz_theta(s.g, std::vector<double>(s.g.size(), 1.0));
      CHECK(independence_number(s.g) <= t.value + 1e-6);
    }
  }

  TEST_CASE("lower-bound certificates replay independently") {
    for (const auto& s : samples(10, 6)) {
      const auto r = lower_seesaw(s.g, s.w, s.d, quick_seesaw());
      if (!r.valid) continue;
      const VectorSystem& v = *r.vectors;
      double value = 0.0;
      for (int i = 0; i < v.size(); ++i) value += s.w[i] * std::norm(v.handle.dot(v.reps[i]));
      CHECK(value == doctest::Approx(r.value).epsilon(1e-9));
      double orth = 0.0;
      for (auto [a, b] : s.g.edges()) orth = std::max(orth, std::abs(v.reps[a - 1].dot(v.reps[b - 1])));
      CHECK(orth <= kTolReplay);
    }
  }

  TEST_CASE("a theta_d certificate embeds in d + 1 and counts for the tilde relaxation") {
    for (const auto& s : samples(10, 7)) {
      const auto r = lower_seesaw(s.g, s.w, s.d, quick_seesaw());
      if (!r.valid) continue;
      VectorSystem up = *r.vectors;
      up.dim += 1;
      up.handle.conservativeResize(up.dim);
      up.handle(up.dim - 1) = 0.0;
      for (auto& x : up.reps) {
        x.conservativeResize(up.dim);
        x(up.dim - 1) = 0.0;
      }
      const Replay a = replay(s.g, s.w, up);
      CHECK(a.value == doctest::Approx(r.value).epsilon(1e-12));
      VectorSystem tilde = *r.vectors;
      tilde.allow_zero = true;
      const Replay b = replay(s.g, s.w, tilde);
      CHECK(b.defect <= kTolReplay);
      CHECK(b.value == doctest::Approx(r.value).epsilon(1e-12));
    }
  }

  TEST_CASE("upper bounds stay below theta and clique cuts only tighten") {
    for (const auto& s : samples(15, 8)) {
      const double theta = lovasz_theta(s.g, s.w).value;
      UpperConfig cfg;
      const auto plain = upper_ray_sdp(s.g, s.w, s.d, cfg);
      CHECK(plain.value <= theta + 1e-3);
      cfg.cliques = enumerate_cliques(s.g, s.d);
      if (cfg.cliques.empty()) continue;
      const auto cut = upper_ray_sdp(s.g, s.w, s.d, cfg);
      CHECK(cut.value <= plain.value + 1e-6);
    }
  }

  TEST_CASE("clique cuts tighten the two-copy relaxation") {
    // Triangle plus a pendant vertex, d = 3.
    const Graph g(4, {{1, 2}, {1, 3}, {2, 3}, {3, 4}});
    const std::vector<double> w{1.0, 0.8, 0.6, 1.2};
    UpperConfig cfg;
    const auto plain = upper_tilde_ppt(g, w, 3, cfg);
    cfg.cliques = {VertexSubset{1, 2, 3}};
    const auto cut = upper_tilde_ppt(g, w, 3, cfg);
    REQUIRE(plain.valid);
    REQUIRE(cut.valid);
    CHECK(cut.value <= plain.value + 1e-4);
  }

  TEST_CASE("reports do not depend on the thread count") {
    const Graph g = graphs::cycle(5);
    const std::vector<double> w(5, 1.0);
    SeesawConfig cfg;
    cfg.restarts = 6;
    setenv("CTXDIM_THREADS", "1", 1);
    const std::string serial = report::dump(report::to_json(lower_seesaw(g, w, 2, cfg)));
    setenv("CTXDIM_THREADS", "3", 1);
    const std::string parallel = report::dump(report::to_json(lower_seesaw(g, w, 2, cfg)));
    unsetenv("CTXDIM_THREADS");
    CHECK(serial == parallel);
  }
}
