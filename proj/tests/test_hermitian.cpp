#include <doctest.h>

#include <stdexcept>

#include "ctxdim/graph.hpp"
#include "ctxdim/hermitian.hpp"
#include "ctxdim/random.hpp"

using namespace ctxdim;

TEST_SUITE("hermitian") {
  TEST_CASE("eigenvalues come out descending") {
    Eigen::Matrix2cd a;
    a << 1.0, cplx(0, 1), cplx(0, -1), 1.0;  // eigenvalues 2 and 0
    const auto e = eig_hermitian(a);
    CHECK(e.values(0) == doctest::Approx(2.0));
    CHECK(e.values(1) == doctest::Approx(0.0));
    CHECK_THROWS_AS(eig_hermitian(Eigen::Matrix2d{{1, 2}, {0, 1}}), std::invalid_argument);
  }

  TEST_CASE("psd_truncate keeps the largest nonnegative part") {
    Eigen::Matrix3d a = Eigen::Vector3d(3.0, -1.0, 2.0).asDiagonal();
    const Eigen::MatrixXd t = psd_truncate(a, 1);
    CHECK(t(0, 0) == doctest::Approx(3.0));
    CHECK(t.norm() == doctest::Approx(3.0));
    const Eigen::MatrixXd t2 = psd_truncate(a, 3);
    CHECK(t2(2, 2) == doctest::Approx(2.0));
    CHECK(t2(1, 1) == doctest::Approx(0.0));
  }

  TEST_CASE("psd_truncate error equals the discarded spectrum") {
    auto rng = restart_engine(7, 0);
    const CMatrix a = hermitian_part(complex_gaussian(6, 6, rng));
    const auto e = eig_hermitian(a);
    const CMatrix t = psd_truncate(a, 2);
    double expect = 0.0;
    for (int k = 0; k < 6; ++k) {
      const double kept = k < 2 ? std::max(0.0, e.values(k)) : 0.0;
      expect += (e.values(k) - kept) * (e.values(k) - kept);
    }
    CHECK((a - t).squaredNorm() == doctest::Approx(expect).epsilon(1e-10));
  }

  TEST_CASE("Gram round trip") {
    auto rng = restart_engine(3, 1);
    VectorSystem v;
    v.dim = 3;
    v.handle = complex_gaussian(3, 1, rng).col(0).normalized();
    for (int i = 0; i < 5; ++i) v.reps.push_back(complex_gaussian(3, 1, rng).col(0).normalized());
    const CMatrix g = gram_from_vectors(v, false);
    const VectorSystem back = vectors_from_gram(g, 3);
    CHECK((gram_from_vectors(back, false) - g).norm() < 1e-10);
    CHECK_THROWS_AS(vectors_from_gram(g, 2), RankOverflowError);
  }

  TEST_CASE("phase alignment makes overlaps real") {
    auto rng = restart_engine(4, 0);
    VectorSystem v;
    v.dim = 2;
    v.handle = complex_gaussian(2, 1, rng).col(0).normalized();
    v.reps.push_back(complex_gaussian(2, 1, rng).col(0).normalized());
    const CMatrix g = gram_from_vectors(v, true);
    CHECK(std::abs(g(0, 1).imag()) < 1e-12);
    CHECK(g(0, 1).real() >= 0.0);
  }

  TEST_CASE("defects measure normalization and orthogonality") {
    const Graph g = graphs::path(2);
    VectorSystem v;
    v.dim = 2;
    v.handle = CVector::Unit(2, 0);
    v.reps = {CVector::Unit(2, 0), CVector::Unit(2, 1)};
    auto d = vector_system_defects(v, &g);
    CHECK(d.orthogonality < 1e-15);
    CHECK(d.normalization < 1e-15);
    v.reps[1] = CVector::Unit(2, 0);
    d = vector_system_defects(v, &g);
    CHECK(d.orthogonality == doctest::Approx(1.0));
    v.reps[1].setZero();
    CHECK(vector_system_defects(v, &g).has_disallowed_zero);
    v.allow_zero = true;
    CHECK_FALSE(vector_system_defects(v, &g).has_disallowed_zero);
  }

  TEST_CASE("partial transpose and swap") {
    const int n = 3;
    auto rng = restart_engine(5, 0);
    const Eigen::MatrixXd a = complex_gaussian(n, n, rng).real();
    const Eigen::MatrixXd b = complex_gaussian(n, n, rng).real();
    Eigen::MatrixXd ab(n * n, n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) ab.block(i * n, j * n, n, n) = a(i, j) * b;
    Eigen::MatrixXd atb(n * n, n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) atb.block(i * n, j * n, n, n) = a(j, i) * b;
    CHECK((partial_transpose_first(ab, n) - atb).norm() < 1e-12);

    const Eigen::MatrixXd v = swap_operator(n);
    CHECK((v * v - Eigen::MatrixXd::Identity(n * n, n * n)).norm() < 1e-12);
    Eigen::MatrixXd ba(n * n, n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) ba.block(i * n, j * n, n, n) = b(i, j) * a;
    CHECK((v * ab * v - ba).norm() < 1e-12);
  }
}
