#include "ctxdim/random.hpp"

#include <cmath>

namespace ctxdim {

std::mt19937_64 restart_engine(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

CMatrix complex_gaussian(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CMatrix m(rows, cols);
  // Column-major fill keeps the draw order fixed.
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(r, c) = cplx(re, im);
    }
  return m;
}

CMatrix random_psd(int dim, int rank, std::mt19937_64& rng) {
  const CMatrix l = complex_gaussian(dim, rank, rng);
  return l * l.adjoint();
}

CMatrix haar_frame(int dim, int cols, std::mt19937_64& rng) {
  const CMatrix z = complex_gaussian(dim, dim, rng);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phases of R's diagonal so Q is Haar distributed.
  for (int k = 0; k < dim; ++k) {
    const cplx diag = r(k, k);
    if (std::abs(diag) > 0.0) q.col(k) *= diag / std::abs(diag);
  }
  return q.leftCols(cols);
}

}  // namespace ctxdim
