#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ctxdim {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr double kTolHermitian = 1e-12;
inline constexpr double kTolNorm = 1e-9;
inline constexpr double kTolOrth = 1e-7;
/// Eigenvalues at or below kRankTol * lambda_max count as zero.
inline constexpr double kRankTol = 1e-7;

/// Hermitian symmetry test, relative to max(1, max |a_ij|).
template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& a, double tol = kTolHermitian) {
  if (a.rows() != a.cols()) return false;
  if (!a.allFinite()) return false;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

/// Eigenvalues sorted in descending order with matching orthonormal columns.
template <typename Scalar>
struct HermitianEigen {
  Eigen::VectorXd values;
  DenseMatrix<Scalar> vectors;
};

template <typename Derived>
HermitianEigen<typename Derived::Scalar> eig_hermitian(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (!is_hermitian(a)) throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");
  DenseMatrix<Scalar> sym = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> solver(sym);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eig_hermitian: eigensolver failed");
  HermitianEigen<Scalar> out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

/// Nearest (Frobenius) PSD matrix of rank at most d: keeps the largest d
/// nonnegative eigenvalues.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> psd_truncate(const Eigen::MatrixBase<Derived>& a, int d) {
  using Scalar = typename Derived::Scalar;
  if (d < 1) throw std::invalid_argument("psd_truncate: rank cap must be at least 1");
  auto eig = eig_hermitian(a);
  DenseMatrix<Scalar> out = DenseMatrix<Scalar>::Zero(a.rows(), a.cols());
  const Eigen::Index keep = std::min<Eigen::Index>(d, a.rows());
  for (Eigen::Index k = 0; k < keep && eig.values(k) >= 0.0; ++k)
    out.noalias() += eig.values(k) * eig.vectors.col(k) * eig.vectors.col(k).adjoint();
  return out;
}

/// Complex Hermitian projection of a possibly slightly asymmetric matrix.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> hermitian_part(const Eigen::MatrixBase<Derived>& a) {
  return (a + a.adjoint()) / 2.0;
}

/// Handle vector |phi> together with one representative per vertex.
///
/// Nonzero vectors are unit length; zero vectors are only allowed when
/// `allow_zero` is set, in which case they are skipped by orthogonality
/// checks.
struct VectorSystem {
  int dim = 0;
  CVector handle;
  std::vector<CVector> reps;
  bool allow_zero = false;

  int size() const { return static_cast<int>(reps.size()); }
};

/// Largest deviations found when checking a VectorSystem.
struct VectorSystemDefects {
  double normalization = 0.0;
  double orthogonality = 0.0;
  bool has_disallowed_zero = false;
};

class Graph;

/// Measures normalization and, when `g` is given, orthogonality on edges.
VectorSystemDefects vector_system_defects(const VectorSystem& v, const Graph* g = nullptr);

/// Throws std::invalid_argument unless the system meets kTolNorm / kTolOrth.
void validate(const VectorSystem& v, const Graph* g = nullptr);

/// Gram matrix of (|phi>, |psi_1>, ..., |psi_n>). With `phase_align`, each
/// |psi_i> is first rotated so that <phi|psi_i> is real and nonnegative.
CMatrix gram_from_vectors(const VectorSystem& v, bool phase_align);

/// Raised by vectors_from_gram when the Gram matrix has too many nonzero
/// eigenvalues for the requested dimension.
class RankOverflowError : public std::runtime_error {
 public:
  RankOverflowError(double excess_mass, double lambda_next)
      : std::runtime_error("vectors_from_gram: rank exceeds the requested dimension (excess eigenvalue mass " +
                           std::to_string(excess_mass) + ")"),
        excess_mass_(excess_mass),
        lambda_next_(lambda_next) {}
  double excess_mass() const { return excess_mass_; }
  double first_excess_eigenvalue() const { return lambda_next_; }

 private:
  double excess_mass_;
  double lambda_next_;
};

/// Factorizes a PSD matrix of numerical rank <= d as the Gram matrix of
/// d-dimensional vectors: |psi_i> = sum_k sqrt(lambda_k) <k|U^dagger|i> |k>.
/// Column 0 becomes the handle. Negative eigenvalues beyond tolerance are
/// rejected with std::invalid_argument.
VectorSystem vectors_from_gram(const CMatrix& x, int d, double rank_tol = kRankTol);

/// Transposes the first tensor factor of an operator on C^block (x) C^block:
/// entry((i,k),(j,l)) -> entry((j,k),(i,l)).
template <typename Derived>
DenseMatrix<typename Derived::Scalar> partial_transpose_first(const Eigen::MatrixBase<Derived>& a, int block) {
  if (block < 1 || a.rows() != Eigen::Index(block) * block || a.cols() != a.rows())
    throw std::invalid_argument("partial_transpose_first: matrix side must equal block^2");
  DenseMatrix<typename Derived::Scalar> out(a.rows(), a.cols());
  for (int i = 0; i < block; ++i)
    for (int j = 0; j < block; ++j)
      out.block(i * block, j * block, block, block) = a.block(j * block, i * block, block, block);
  return out;
}

/// Swap operator V on C^block (x) C^block: V(e_i (x) e_j) = e_j (x) e_i.
Eigen::MatrixXd swap_operator(int block);

}  // namespace ctxdim
