#include "ctxdim/fixtures.hpp"

#include <cmath>
#include <stdexcept>

namespace ctxdim::fixtures {

std::vector<double> gkk_behavior(int index) {
  switch (index) {
    case 1: return std::vector<double>(9, 1.0 / 3.0);
    case 2: return {1.0 / 2, 1.0 / 4, 1.0 / 4, 1.0 / 2, 0.0, 0.0, 1.0 / 4, 1.0 / 4, 1.0};
    case 3: return {5.0 / 12, 7.0 / 24, 7.0 / 24, 5.0 / 12, 1.0 / 6, 1.0 / 6, 7.0 / 24, 7.0 / 24, 2.0 / 3};
    case 4: return {1.0 / 3, 1.0 / 3, 1.0 / 3, 0.0, 2.0 / 3, 1.0 / 3, 0.0, 0.0, 1.0 / 3};
    default: throw std::invalid_argument("fixture behaviors are numbered 1..4");
  }
}

Behavior gkk(int index) { return {graphs::gkk(), gkk_behavior(index)}; }

Behavior named_behavior(const std::string& name) {
  if (name.size() == 2 && name[0] == 'p' && name[1] >= '1' && name[1] <= '4') return gkk(name[1] - '0');
  throw std::invalid_argument("unknown built-in behavior \"" + name + "\" (expected p1..p4)");
}

VectorSystem gkk_zero_witness(double a) {
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("witness parameter must lie in (0, 1)");
  const double s = std::sqrt(1.0 - a * a);
  const double r = std::sqrt(1.0 + a * a);
  const double h = std::sqrt(0.5);
  const double rows[9][3] = {
      {1, 0, 0},         {0, 1, 0},          {0, 0, 1},
      {0, a, s},         {h, 0, h},          {s, a, 0},
      {a / r, s / r, -a / r}, {0, 0, 0},    {a / r, -s / r, -a / r},
  };
  VectorSystem v;
  v.dim = 3;
  v.allow_zero = true;
  Eigen::Matrix3cd sum = Eigen::Matrix3cd::Zero();
  for (const auto& row : rows) {
    CVector psi(3);
    psi << row[0], row[1], row[2];
    sum += psi * psi.adjoint();
    v.reps.push_back(psi);
  }
  v.handle = eig_hermitian(sum).vectors.col(0);
  return v;
}

CMatrix ray_gram(const VectorSystem& v) {
  VectorSystem scaled = v;
  for (auto& r : scaled.reps) r *= r.dot(v.handle);  // <psi_i|phi> psi_i
  return gram_from_vectors(scaled, false);
}

}  // namespace ctxdim::fixtures
