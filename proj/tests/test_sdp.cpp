#include <doctest.h>

#include <cmath>

#include "ctxdim/sdp.hpp"

using namespace ctxdim;
using namespace ctxdim::sdp;

TEST_SUITE("sdp") {
  TEST_CASE("linear expressions merge and drop noise") {
    LinearExpr e = LinearExpr::var(2, 1.0) + LinearExpr::var(0, 3.0) + LinearExpr::var(2, -1.0);
    e.compress();
    REQUIRE(e.terms.size() == 1);
    CHECK(e.terms[0].var == 0);
    Eigen::VectorXd x(3);
    x << 2.0, 0.0, 5.0;
    CHECK((e + 1.5).evaluate(x) == doctest::Approx(7.5));
  }

  TEST_CASE("elliptope corner") {
    // max X_01 subject to X_00 = X_11 = 1, X >= 0: optimum 1.
    SdpProblem p;
    const int x = p.add_variables(1);
    const int b = p.add_psd_block(2);
    p.add_block_constant(b, 0, 0, 1.0);
    p.add_block_constant(b, 1, 1, 1.0);
    p.add_block_term(b, 0, 1, x, 1.0);
    p.set_objective(LinearExpr::var(x), Sense::Maximize);
    const auto s = solve(p);
    CHECK(s.status == SdpStatus::Optimal);
    CHECK(s.objective == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(s.dual_objective == doctest::Approx(1.0).epsilon(1e-6));
  }

  TEST_CASE("linear constraints and bounds") {
    // max x + y subject to x <= 2, y <= 1, x - y == 0.5 and [[x]] >= 0.
    SdpProblem p;
    const int x = p.add_variables(2);
    const int y = x + 1;
    p.add_constraint(LinearExpr::var(x), Relation::LessEqual, 2.0);
    p.add_constraint(LinearExpr::var(y), Relation::LessEqual, 1.0);
    p.add_constraint(LinearExpr::var(x) - LinearExpr::var(y), Relation::Equal, 0.5);
    const int b = p.add_psd_block(1);
    p.add_block_term(b, 0, 0, x, 1.0);
    p.set_objective(LinearExpr::var(x) + LinearExpr::var(y), Sense::Maximize);
    const auto s = solve(p);
    CHECK(s.status == SdpStatus::Optimal);
    CHECK(s.objective == doctest::Approx(2.5).epsilon(1e-6));
  }

  TEST_CASE("complex block") {
    // max Im X_01 over unit-diagonal Hermitian PSD: optimum 1 at X_01 = i.
    SdpProblem p;
    const int v = p.add_variables(2);
    const int b = p.add_psd_block(2, Field::Complex);
    p.add_block_constant(b, 0, 0, 1.0);
    p.add_block_constant(b, 1, 1, 1.0);
    p.add_block_term(b, 0, 1, v, 1.0);
    p.add_block_term(b, 0, 1, v + 1, cplx(0.0, 1.0));
    p.set_objective(LinearExpr::var(v + 1), Sense::Maximize);
    const auto s = solve(p);
    CHECK(s.objective == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(s.x(v)) < 1e-4);
  }

  TEST_CASE("an infeasible system is never reported optimal") {
    // Certification goes through the feasibility margin, not the plain solve.
    SdpProblem p;
    const int x = p.add_variables(1);
    const int b = p.add_psd_block(1);
    p.add_block_term(b, 0, 0, x, 1.0);
    p.add_constraint(LinearExpr::var(x), Relation::LessEqual, -1.0);
    p.set_objective(LinearExpr::var(x), Sense::Minimize);
    const auto s = solve(p);
    CHECK(s.status != SdpStatus::Optimal);
  }

  TEST_CASE("feasibility margin") {
    SdpProblem p;
    const int x = p.add_variables(1);
    const int b = p.add_psd_block(2);
    p.add_block_constant(b, 0, 0, 1.0);
    p.add_block_constant(b, 1, 1, 1.0);
    p.add_block_term(b, 0, 1, x, 1.0);
    const int blocks[] = {b};
    const auto r = solve_feasibility_eta(p, blocks, {}, 10.0);
    CHECK(r.eta_max == doctest::Approx(1.0).epsilon(1e-6));

    // [[0, 1], [1, 0]] has smallest eigenvalue -1.
    SdpProblem q;
    q.add_variables(1);
    const int c = q.add_psd_block(2);
    q.add_block_constant(c, 0, 1, 1.0);
    const int cblocks[] = {c};
    const auto r2 = solve_feasibility_eta(q, cblocks);
    CHECK(r2.eta_max == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(r2.eta_upper == doctest::Approx(-1.0).epsilon(1e-5));
  }

  TEST_CASE("JSON round trip preserves the problem") {
    SdpProblem p;
    const int x = p.add_variables(2);
    const int b = p.add_psd_block(2, Field::Complex);
    p.add_block_constant(b, 0, 0, 1.0);
    p.add_block_term(b, 0, 1, x, cplx(0.5, -0.25));
    p.add_block_term(b, 1, 1, x + 1, 1.0);
    p.add_constraint(LinearExpr::var(x) + LinearExpr::var(x + 1, 2.0), Relation::GreaterEqual, 0.5);
    p.set_objective(LinearExpr::var(x + 1), Sense::Minimize);
    const SdpProblem q = SdpProblem::from_json(p.to_json());
    CHECK(q.to_json() == p.to_json());
    Eigen::VectorXd v(2);
    v << 0.3, 0.7;
    CHECK((q.block_value(b, v) - p.block_value(b, v)).norm() == 0.0);
  }

  TEST_CASE("warm start reaches the same optimum") {
    SdpProblem p;
    const int x = p.add_variables(1);
    const int b = p.add_psd_block(2);
    p.add_block_constant(b, 0, 0, 1.0);
    p.add_block_constant(b, 1, 1, 2.0);
    p.add_block_term(b, 0, 1, x, 1.0);
    p.set_objective(LinearExpr::var(x), Sense::Maximize);
    const auto cold = solve(p);
    const auto warm = solve(p, {}, &cold);
    CHECK(cold.objective == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
    CHECK(warm.objective == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
    CHECK(warm.iterations <= cold.iterations);
  }
}
