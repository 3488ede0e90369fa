#pragma once

#include <vector>

#include "ctxdim/sdp.hpp"

namespace ctxdim {

/// Symmetrized two-copy variables (Phi_I, Phi_V = V Phi_I) on
/// C^N (x) C^N, real symmetric, registered in an SdpProblem.
///
/// Phi_I commutes with the swap V, so it is parameterized by its restrictions
/// S and A to the symmetric and antisymmetric subspaces:
///
///   Phi_I = Q_S S Q_S^T + Q_A A Q_A^T,   Phi_V = Q_S S Q_S^T - Q_A A Q_A^T.
///
/// Row index of the product basis is a*N + b for |a>|b>.
class TwoCopyLift {
 public:
  TwoCopyLift(sdp::SdpProblem& problem, int n_plus_one, int d);

  int side() const { return n_; }
  int sym_dim() const { return n_ * (n_ + 1) / 2; }
  int anti_dim() const { return n_ * (n_ - 1) / 2; }

  /// (ci * Phi_I + cv * Phi_V) entry at product indices (row, col).
  sdp::LinearExpr entry(double ci, double cv, int row, int col) const;

  /// Entry (k, l) of the partial-trace block Tr_A1[(|i><j| (x) 1) M] with
  /// M = ci * Phi_I + cv * Phi_V, i.e. M(j*N + k, i*N + l).
  sdp::LinearExpr partial_block(double ci, double cv, int i, int j, int k, int l) const;

  /// Tr(ci * Phi_I + cv * Phi_V).
  sdp::LinearExpr trace(double ci, double cv) const;

  /// One term coef * Tr_A1[(|i><j| (x) 1) (d Phi_I + Phi_V)].
  struct BlockTerm {
    int i;
    int j;
    double coef;
  };

  /// Adds the N x N matrix identity sum_terms = 0 as equality constraints.
  ///
  /// Such an identity forces vec(a) (a_ij = coef) and its transpose into the
  /// kernel of B = Phi_I^{T_A} + d Phi_V^{T_A}, because
  /// <K, B K> = sum_ik K_ik <K, Tr_A1[(|i><k| (x) 1)(d Phi_I + Phi_V)]>.
  /// add_cones() uses the recorded identities to restrict B to the
  /// complement of that kernel, which keeps the system strictly feasible.
  void add_relation(const std::vector<BlockTerm>& terms);

  /// Adds Phi_I + Phi_V >= 0, Phi_I - Phi_V >= 0, Phi_I^{T_A} >= 0 and
  /// Phi_I^{T_A} + d Phi_V^{T_A} >= 0. The first two become 2S >= 0 and
  /// 2A >= 0 on the reduced blocks; the last is imposed as U^T B U >= 0 and
  /// B k = 0 for the kernel vectors k implied by add_relation calls. Returns
  /// the block indices in that order.
  std::vector<int> add_cones();

  /// Dimension of the retained range of the last cone (N^2 when no
  /// relations were recorded). Valid after add_cones().
  int reduced_rank() const { return static_cast<int>(range_.cols()); }

  /// Dense Phi_I and Phi_V evaluated at x.
  Eigen::MatrixXd phi_identity(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd phi_swap(const Eigen::VectorXd& x) const;

 private:
  int sym_var(int p, int q) const;
  int anti_var(int p, int q) const;

  sdp::SdpProblem* problem_;
  int n_;
  int d_;
  int sym_first_;
  int anti_first_;
  // For product index r = a*N + b: the pair index and the Q coefficients.
  std::vector<int> sym_pair_;
  std::vector<int> anti_pair_;
  std::vector<double> qs_;
  std::vector<double> qa_;
  std::vector<Eigen::VectorXd> relations_;
  Eigen::MatrixXd range_;
};

}  // namespace ctxdim
