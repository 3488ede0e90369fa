#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "ctxdim/fixtures.hpp"
#include "ctxdim/membership.hpp"
#include "ctxdim/properties.hpp"
#include "ctxdim/random.hpp"

using namespace ctxdim;

TEST_SUITE("membership") {
  TEST_CASE("behaviors accept rational strings") {
    const auto p = parse_probabilities(R"({"p": ["1/3", 0.25, "2/3"]})");
    REQUIRE(p.size() == 3);
    CHECK(p[0] == 1.0 / 3.0);
    CHECK(p[2] == 2.0 / 3.0);
    CHECK_THROWS(parse_probabilities(R"({"p": ["1/0"]})"));
    CHECK_THROWS(parse_probabilities(R"({"q": []})"));
    CHECK_THROWS(parse_probabilities(R"({"p": ["1/3x"]})"));
  }

  TEST_CASE("validation names the offending entry") {
    Behavior b{graphs::path(2), {0.5, 1.5}};
    CHECK_THROWS_WITH_AS(validate(b), doctest::Contains("p[2]"), std::invalid_argument);
    b.p = {0.5};
    CHECK_THROWS_AS(validate(b), std::invalid_argument);
  }

  TEST_CASE("pins cover the diagonal, the handle row and the edges") {
    const PinSet s = pins_for({graphs::path(3), {0.25, 0.5, 1.0}});
    CHECK(s.dim == 4);
    CHECK(*s.value(0, 0) == 1.0);
    CHECK(*s.value(0, 1) == doctest::Approx(0.5));
    CHECK(*s.value(3, 0) == doctest::Approx(1.0));
    CHECK(*s.value(1, 2) == 0.0);
    CHECK_FALSE(s.value(1, 3).has_value());
    CHECK(s.free == std::vector<std::pair<int, int>>{{1, 3}});
  }

  TEST_CASE("planted vectors have zero certificate error") {
    auto rng = restart_engine(21, 0);
    const auto inst = planted_instance(6, 3, 0.5, rng);
    CHECK(certificate_error(inst.behavior, inst.vectors) < 1e-12);
  }

  TEST_CASE("alternating projections certify p1 in dimension 3") {
    const Verdict v = inner_frobenius(fixtures::gkk(1), 3);
    CHECK(v.status == Status::Inside);
    REQUIRE(v.certificate);
    CHECK(v.certificate->dim == 3);
    CHECK(certificate_error(fixtures::gkk(1), *v.certificate) <= kTolCert);
  }

  TEST_CASE("projector iteration certifies p2 in dimension 3") {
    const Verdict v = inner_projector(fixtures::gkk(2), 3);
    CHECK(v.status == Status::Inside);
    REQUIRE(v.certificate);
    CHECK(certificate_error(fixtures::gkk(2), *v.certificate) <= kTolCert);
  }

  TEST_CASE("inner methods never claim a behavior outside the theta body") {
    // Two exclusive events cannot both have probability 0.9.
    const Behavior b{graphs::path(2), {0.9, 0.9}};
    InnerConfig cfg;
    cfg.restarts = 3;
    CHECK(inner_frobenius(b, 2, cfg).status != Status::Inside);
    const Verdict tb = theta_body_membership(b);
    CHECK(tb.status == Status::Outside);
    CHECK(*tb.eta_max < 0.0);
  }

  TEST_CASE("theta body accepts p1 with a certificate") {
    const Verdict v = theta_body_membership(fixtures::gkk(1));
    CHECK(v.status == Status::Inside);
    CHECK(v.certificate_error <= kTolCert);
  }

  TEST_CASE("PPT relaxation refutes an infeasible pair and spares a feasible one") {
    const Verdict out = outer_ppt({graphs::path(2), {0.9, 0.9}}, 2);
    CHECK(out.status == Status::Outside);
    CHECK(*out.eta_upper < -1e-6);
    const Verdict in = outer_ppt({graphs::path(2), {0.5, 0.5}}, 2);
    CHECK(in.status != Status::Outside);
  }

  TEST_CASE("a behavior needing three dimensions is refuted in two") {
    // A triangle of mutually exclusive events summing to one needs d = 3.
    const Behavior b{graphs::complete(3), {1.0 / 3, 1.0 / 3, 1.0 / 3}};
    CHECK(inner_frobenius(b, 3).status == Status::Inside);
    CHECK(outer_ppt(b, 2).status == Status::Outside);
  }
}
