#include "ctxdim/hermitian.hpp"

#include <algorithm>
#include <cmath>

#include "ctxdim/graph.hpp"

namespace ctxdim {

VectorSystemDefects vector_system_defects(const VectorSystem& v, const Graph* g) {
  VectorSystemDefects out;
  auto unit_defect = [&](const CVector& u, bool may_be_zero) {
    double nrm = u.norm();
    if (nrm == 0.0) {
      if (!may_be_zero) out.has_disallowed_zero = true;
      return;
    }
    out.normalization = std::max(out.normalization, std::abs(nrm - 1.0));
  };
  unit_defect(v.handle, false);
  for (const auto& r : v.reps) unit_defect(r, v.allow_zero);
  if (g) {
    if (g->size() != v.size()) throw std::invalid_argument("vector system size does not match the graph");
    for (auto [a, b] : g->edges())
      out.orthogonality = std::max(out.orthogonality, std::abs(v.reps[a - 1].dot(v.reps[b - 1])));
  }
  return out;
}

void validate(const VectorSystem& v, const Graph* g) {
  if (v.handle.size() != v.dim) throw std::invalid_argument("handle vector has the wrong dimension");
  for (const auto& r : v.reps)
    if (r.size() != v.dim) throw std::invalid_argument("representative vector has the wrong dimension");
  auto defects = vector_system_defects(v, g);
  if (defects.has_disallowed_zero) throw std::invalid_argument("vector system contains a zero vector");
  if (defects.normalization > kTolNorm) throw std::invalid_argument("vector system is not normalized");
  if (defects.orthogonality > kTolOrth)
    throw std::invalid_argument("vector system violates orthogonality on an edge");
}

CMatrix gram_from_vectors(const VectorSystem& v, bool phase_align) {
  const int n = v.size();
  CMatrix cols(v.dim, n + 1);
  cols.col(0) = v.handle;
  for (int i = 0; i < n; ++i) {
    CVector r = v.reps[i];
    if (phase_align) {
      cplx overlap = v.handle.dot(r);  // <phi|psi_i>
      if (std::abs(overlap) > 0.0) r *= std::polar(1.0, -std::arg(overlap));
    }
    cols.col(i + 1) = r;
  }
  return cols.adjoint() * cols;
}

VectorSystem vectors_from_gram(const CMatrix& x, int d, double rank_tol) {
  if (d < 1) throw std::invalid_argument("vectors_from_gram: dimension must be at least 1");
  auto eig = eig_hermitian(x);
  const Eigen::Index size = x.rows();
  const double lmax = std::max(eig.values(0), 0.0);
  const double cutoff = rank_tol * std::max(lmax, 1e-300);
  if (eig.values(size - 1) < -rank_tol * std::max(1.0, lmax))
    throw std::invalid_argument("vectors_from_gram: matrix is not positive semidefinite");
  if (size > d && eig.values(d) > cutoff) {
    double excess = 0.0;
    for (Eigen::Index k = d; k < size; ++k) excess += std::max(eig.values(k), 0.0);
    throw RankOverflowError(excess, eig.values(d));
  }
  VectorSystem out;
  out.dim = d;
  CMatrix factor = CMatrix::Zero(d, size);  // column i is |psi_i>
  const Eigen::Index keep = std::min<Eigen::Index>(d, size);
  for (Eigen::Index k = 0; k < keep; ++k) {
    double lam = std::max(eig.values(k), 0.0);
    factor.row(k) = std::sqrt(lam) * eig.vectors.col(k).adjoint();
  }
  out.handle = factor.col(0);
  for (Eigen::Index i = 1; i < size; ++i) {
    out.reps.emplace_back(factor.col(i));
    if (std::real(x(i, i)) < kTolNorm) out.allow_zero = true;
  }
  return out;
}

Eigen::MatrixXd swap_operator(int block) {
  if (block < 1) throw std::invalid_argument("swap_operator: block must be at least 1");
  const int dim = block * block;
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < block; ++i)
    for (int j = 0; j < block; ++j) v(j * block + i, i * block + j) = 1.0;
  return v;
}

}  // namespace ctxdim
