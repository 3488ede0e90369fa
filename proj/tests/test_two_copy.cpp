#include <doctest.h>

#include "ctxdim/hermitian.hpp"
#include "ctxdim/random.hpp"
#include "ctxdim/two_copy.hpp"

using namespace ctxdim;

namespace {

Eigen::VectorXd random_point(const sdp::SdpProblem& p, std::uint64_t seed) {
  auto rng = restart_engine(seed, 0);
  return complex_gaussian(p.num_variables(), 1, rng).col(0).real();
}

}  // namespace

TEST_SUITE("two_copy") {
  TEST_CASE("Phi_V is the swap applied to Phi_I, and both commute with it") {
    sdp::SdpProblem p;
    TwoCopyLift lift(p, 4, 2);
    const Eigen::VectorXd x = random_point(p, 11);
    const Eigen::MatrixXd fi = lift.phi_identity(x), fv = lift.phi_swap(x);
    const Eigen::MatrixXd v = swap_operator(4);
    CHECK((fv - v * fi).norm() < 1e-10);
    CHECK((v * fi - fi * v).norm() < 1e-10);
    CHECK((fi - fi.transpose()).norm() < 1e-12);
  }

  TEST_CASE("entry, partial block and trace agree with the dense matrices") {
    sdp::SdpProblem p;
    const int n = 3;
    TwoCopyLift lift(p, n, 2);
    const Eigen::VectorXd x = random_point(p, 12);
    const Eigen::MatrixXd m = 2.0 * lift.phi_identity(x) + 0.5 * lift.phi_swap(x);
    for (int r = 0; r < n * n; ++r)
      for (int c = 0; c < n * n; ++c) CHECK(lift.entry(2.0, 0.5, r, c).evaluate(x) == doctest::Approx(m(r, c)));
    CHECK(lift.partial_block(2.0, 0.5, 1, 2, 0, 1).evaluate(x) == doctest::Approx(m(2 * n + 0, 1 * n + 1)));
    CHECK(lift.trace(2.0, 0.5).evaluate(x) == doctest::Approx(m.trace()));
  }

  TEST_CASE("cones and face reduction") {
    sdp::SdpProblem p;
    TwoCopyLift lift(p, 3, 2);
    const int before = static_cast<int>(p.constraints().size());
    lift.add_relation({{0, 1, 1.0}});
    CHECK(static_cast<int>(p.constraints().size()) > before);
    const auto cones = lift.add_cones();
    CHECK(cones.size() == 4);
    // vec(|0><1|) and its transpose leave the range.
    CHECK(lift.reduced_rank() == 9 - 2);
  }

  TEST_CASE("without relations the range is the whole space") {
    sdp::SdpProblem p;
    TwoCopyLift lift(p, 3, 2);
    lift.add_cones();
    CHECK(lift.reduced_rank() == 9);
  }
}
