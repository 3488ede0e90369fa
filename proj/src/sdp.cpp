#include "ctxdim/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>

#include <Eigen/Sparse>
#include <json.hpp>

namespace ctxdim::sdp {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

int svec_size(int dim, Field f) { return f == Field::Real ? dim * (dim + 1) / 2 : dim * dim; }

// Slot of the real part of entry (r, c), r <= c.
int slot_re(int r, int c, Field f) { return f == Field::Real ? c * (c + 1) / 2 + r : c * c + 2 * r; }

void unpack(const double* v, int dim, Field f, Eigen::MatrixXd& re, Eigen::MatrixXd& im) {
  re.resize(dim, dim);
  im.setZero(dim, dim);
  for (int c = 0; c < dim; ++c)
    for (int r = 0; r <= c; ++r) {
      const int s = slot_re(r, c, f);
      if (r == c) {
        re(r, r) = v[s];
      } else {
        re(r, c) = re(c, r) = v[s] / kSqrt2;
        if (f == Field::Complex) {
          im(r, c) = v[s + 1] / kSqrt2;
          im(c, r) = -im(r, c);
        }
      }
    }
}

CMatrix unpack_complex(const double* v, int dim, Field f) {
  Eigen::MatrixXd re, im;
  unpack(v, dim, f, re, im);
  CMatrix out(dim, dim);
  out.real() = re;
  out.imag() = im;
  return out;
}

template <typename M>
void pack(const M& a, int dim, Field f, double* v) {
  for (int c = 0; c < dim; ++c)
    for (int r = 0; r <= c; ++r) {
      const int s = slot_re(r, c, f);
      if (r == c) {
        v[s] = std::real(a(r, r));
      } else {
        v[s] = kSqrt2 * std::real(a(r, c));
        if (f == Field::Complex) v[s + 1] = kSqrt2 * std::imag(a(r, c));
      }
    }
}

// Projection onto the PSD cone: drop the negative eigenvalues, or rebuild
// from the positive ones when they are the minority.
template <typename M>
void project_psd_matrix(M& a) {
  Eigen::SelfAdjointEigenSolver<M> es(a);
  const auto& vals = es.eigenvalues();
  if (vals(0) >= 0.0) return;
  const Eigen::Index n = vals.size();
  Eigen::Index neg = 0;
  while (neg < n && vals(neg) < 0.0) ++neg;
  const auto& vec = es.eigenvectors();
  if (2 * neg <= n) {
    a.noalias() -= vec.leftCols(neg) * vals.head(neg).asDiagonal() * vec.leftCols(neg).adjoint();
  } else {
    const Eigen::Index pos = n - neg;
    a.noalias() = vec.rightCols(pos) * vals.tail(pos).asDiagonal() * vec.rightCols(pos).adjoint();
  }
}

void project_psd(double* v, int dim, Field f) {
  Eigen::MatrixXd re, im;
  unpack(v, dim, f, re, im);
  if (f == Field::Real) {
    project_psd_matrix(re);
    pack(re, dim, f, v);
  } else {
    CMatrix a(dim, dim);
    a.real() = re;
    a.imag() = im;
    project_psd_matrix(a);
    pack(a, dim, f, v);
  }
}

using SpMat = Eigen::SparseMatrix<double>;

// Conic form: minimize c'x  s.t.  b - A x in K, K = {0}^z x R_+^l x PSD blocks.
struct ConicForm {
  int n = 0;
  int zero_rows = 0;
  int nonneg_rows = 0;
  std::vector<int> psd_offset;
  std::vector<int> psd_dim;
  std::vector<Field> psd_field;
  int rows = 0;
  SpMat A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  double obj_constant = 0.0;
  double obj_sign = 1.0;
  std::vector<int> constraint_row;
};

ConicForm compile(const SdpProblem& p) {
  ConicForm cf;
  cf.n = p.num_variables();
  std::vector<Eigen::Triplet<double>> trip;
  std::vector<double> b;

  const auto& cons = p.constraints();
  cf.constraint_row.assign(cons.size(), -1);
  int row = 0;
  auto emit_linear = [&](std::size_t k, double sign) {
    const auto& con = cons[k];
    // Equality / <=:  s = rhs - g(x).  >=:  s = g(x) - rhs.
    for (const auto& t : con.expr.terms) trip.emplace_back(row, t.var, sign * t.coef);
    b.push_back(sign * (con.rhs - con.expr.constant));
    cf.constraint_row[k] = row++;
  };
  for (std::size_t k = 0; k < cons.size(); ++k)
    if (cons[k].relation == Relation::Equal) emit_linear(k, 1.0);
  cf.zero_rows = row;
  for (std::size_t k = 0; k < cons.size(); ++k) {
    if (cons[k].relation == Relation::LessEqual) emit_linear(k, 1.0);
    if (cons[k].relation == Relation::GreaterEqual) emit_linear(k, -1.0);
  }
  cf.nonneg_rows = row - cf.zero_rows;

  for (const auto& blk : p.blocks()) {
    const int off = row;
    const int size = svec_size(blk.dim, blk.field);
    cf.psd_offset.push_back(off);
    cf.psd_dim.push_back(blk.dim);
    cf.psd_field.push_back(blk.field);
    b.resize(b.size() + size, 0.0);
    for (const auto& e : blk.entries) {
      const int s = off + slot_re(e.row, e.col, blk.field);
      const double scale = e.row == e.col ? 1.0 : kSqrt2;
      if (e.var < 0) {
        b[s] += scale * e.coef.real();
        if (e.row != e.col && blk.field == Field::Complex) b[s + 1] += scale * e.coef.imag();
      } else {
        // s = svec(F) = b - A x  =>  A = -svec(F_j).
        trip.emplace_back(s, e.var, -scale * e.coef.real());
        if (e.row != e.col && blk.field == Field::Complex) trip.emplace_back(s + 1, e.var, -scale * e.coef.imag());
      }
    }
    row += size;
  }
  cf.rows = row;
  cf.A.resize(cf.rows, cf.n);
  cf.A.setFromTriplets(trip.begin(), trip.end());
  cf.A.makeCompressed();
  cf.b = Eigen::Map<Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size()));

  cf.obj_sign = p.sense() == Sense::Minimize ? 1.0 : -1.0;
  cf.c = Eigen::VectorXd::Zero(cf.n);
  for (const auto& t : p.objective().terms) cf.c(t.var) += cf.obj_sign * t.coef;
  cf.obj_constant = p.objective().constant;
  return cf;
}

void project_cone(const ConicForm& cf, Eigen::VectorXd& v) {
  v.segment(0, cf.zero_rows).setZero();
  auto nn = v.segment(cf.zero_rows, cf.nonneg_rows);
  nn = nn.cwiseMax(0.0);
  for (std::size_t k = 0; k < cf.psd_offset.size(); ++k)
    project_psd(v.data() + cf.psd_offset[k], cf.psd_dim[k], cf.psd_field[k]);
}

double inf_norm(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

// Ruiz equilibration: A_hat = E A D with E constant on every PSD block.
void equilibrate(const ConicForm& cf, int passes, Eigen::VectorXd& D, Eigen::VectorXd& E) {
  D = Eigen::VectorXd::Ones(cf.n);
  E = Eigen::VectorXd::Ones(cf.rows);
  SpMat work = cf.A;
  for (int pass = 0; pass < passes; ++pass) {
    Eigen::VectorXd col_norm = Eigen::VectorXd::Zero(cf.n);
    Eigen::VectorXd row_norm = Eigen::VectorXd::Zero(cf.rows);
    for (int j = 0; j < work.outerSize(); ++j)
      for (SpMat::InnerIterator it(work, j); it; ++it) {
        const double a = std::abs(it.value());
        col_norm(j) = std::max(col_norm(j), a);
        row_norm(it.row()) = std::max(row_norm(it.row()), a);
      }
    Eigen::VectorXd dc(cf.n), er(cf.rows);
    for (int j = 0; j < cf.n; ++j) dc(j) = col_norm(j) > 0 ? 1.0 / std::sqrt(col_norm(j)) : 1.0;
    for (int i = 0; i < cf.zero_rows + cf.nonneg_rows; ++i)
      er(i) = row_norm(i) > 0 ? 1.0 / std::sqrt(row_norm(i)) : 1.0;
    for (std::size_t k = 0; k < cf.psd_offset.size(); ++k) {
      const int off = cf.psd_offset[k];
      const int size = svec_size(cf.psd_dim[k], cf.psd_field[k]);
      double mean = 0.0;
      int count = 0;
      for (int i = off; i < off + size; ++i)
        if (row_norm(i) > 0) {
          mean += row_norm(i);
          ++count;
        }
      const double f = count ? 1.0 / std::sqrt(mean / count) : 1.0;
      er.segment(off, size).setConstant(f);
    }
    dc = dc.cwiseMax(1e-4).cwiseMin(1e4);
    er = er.cwiseMax(1e-4).cwiseMin(1e4);
    D = (D.array() * dc.array()).cwiseMax(1e-8).cwiseMin(1e8);
    E = (E.array() * er.array()).cwiseMax(1e-8).cwiseMin(1e8);
    work = E.asDiagonal() * cf.A * D.asDiagonal();
  }
}

}  // namespace

LinearExpr& LinearExpr::operator+=(const LinearExpr& o) {
  terms.insert(terms.end(), o.terms.begin(), o.terms.end());
  constant += o.constant;
  return *this;
}

LinearExpr& LinearExpr::operator-=(const LinearExpr& o) {
  for (const auto& t : o.terms) terms.push_back({t.var, -t.coef});
  constant -= o.constant;
  return *this;
}

LinearExpr& LinearExpr::operator*=(double s) {
  for (auto& t : terms) t.coef *= s;
  constant *= s;
  return *this;
}

LinearExpr& LinearExpr::compress() {
  std::map<int, double> acc;
  for (const auto& t : terms) acc[t.var] += t.coef;
  double scale = 1.0;
  for (auto [v, c] : acc) scale = std::max(scale, std::abs(c));
  terms.clear();
  for (auto [v, c] : acc)
    if (std::abs(c) > kDropTol * scale) terms.push_back({v, c});
  return *this;
}

double LinearExpr::evaluate(const Eigen::VectorXd& x) const {
  double v = constant;
  for (const auto& t : terms) v += t.coef * x(t.var);
  return v;
}

LinearExpr operator+(LinearExpr a, const LinearExpr& b) { return a += b; }
LinearExpr operator-(LinearExpr a, const LinearExpr& b) { return a -= b; }
LinearExpr operator*(double s, LinearExpr a) { return a *= s; }

int SdpProblem::add_variables(int count) {
  if (count < 0) throw std::invalid_argument("add_variables: negative count");
  int first = num_vars_;
  num_vars_ += count;
  return first;
}

void SdpProblem::set_objective(LinearExpr f, Sense sense) {
  for (const auto& t : f.terms)
    if (t.var < 0 || t.var >= num_vars_) throw std::invalid_argument("objective references an unknown variable");
  objective_ = std::move(f.compress());
  sense_ = sense;
}

int SdpProblem::add_constraint(LinearExpr lhs, Relation rel, double rhs) {
  for (const auto& t : lhs.terms)
    if (t.var < 0 || t.var >= num_vars_) throw std::invalid_argument("constraint references an unknown variable");
  if (!std::isfinite(rhs) || !std::isfinite(lhs.constant)) throw std::invalid_argument("constraint has a non-finite right-hand side");
  constraints_.push_back({std::move(lhs.compress()), rel, rhs});
  return static_cast<int>(constraints_.size()) - 1;
}

int SdpProblem::add_psd_block(int dim, Field field) {
  if (dim < 1) throw std::invalid_argument("add_psd_block: dimension must be positive");
  blocks_.push_back({dim, field, {}});
  return static_cast<int>(blocks_.size()) - 1;
}

void SdpProblem::add_block_term(int block, int row, int col, int var, cplx coef) {
  auto& blk = blocks_.at(block);
  if (row < 0 || col < 0 || row >= blk.dim || col >= blk.dim) throw std::out_of_range("block entry out of range");
  if (var < -1 || var >= num_vars_) throw std::invalid_argument("block term references an unknown variable");
  if (row > col) {
    std::swap(row, col);
    coef = std::conj(coef);
  }
  if (row == col && coef.imag() != 0.0) throw std::invalid_argument("diagonal block entries must be real");
  if (blk.field == Field::Real && coef.imag() != 0.0)
    throw std::invalid_argument("complex coefficient in a real block");
  if (coef == cplx(0.0)) return;
  blk.entries.push_back({row, col, var, coef});
}

void SdpProblem::add_block_constant(int block, int row, int col, cplx value) { add_block_term(block, row, col, -1, value); }

void SdpProblem::add_block_expr(int block, int row, int col, const LinearExpr& re, const LinearExpr& im) {
  // For row > col the caller describes F(row, col); store its conjugate at (col, row).
  const double im_sign = row > col ? -1.0 : 1.0;
  for (const auto& t : re.terms) add_block_term(block, row, col, t.var, t.coef);
  for (const auto& t : im.terms) add_block_term(block, std::min(row, col), std::max(row, col), t.var, cplx(0.0, im_sign * t.coef));
  if (re.constant != 0.0) add_block_constant(block, row, col, re.constant);
  if (im.constant != 0.0)
    add_block_constant(block, std::min(row, col), std::max(row, col), cplx(0.0, im_sign * im.constant));
}

CMatrix SdpProblem::block_value(int block, const Eigen::VectorXd& x) const {
  const auto& blk = blocks_.at(block);
  CMatrix f = CMatrix::Zero(blk.dim, blk.dim);
  for (const auto& e : blk.entries) {
    cplx v = e.var < 0 ? e.coef : e.coef * x(e.var);
    f(e.row, e.col) += v;
    if (e.row != e.col) f(e.col, e.row) += std::conj(v);
  }
  return f;
}

bool SdpProblem::all_real() const {
  return std::all_of(blocks_.begin(), blocks_.end(), [](const Block& b) { return b.field == Field::Real; });
}

std::string to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::Optimal: return "optimal";
    case SdpStatus::InfeasibleCertified: return "infeasible-certified";
    case SdpStatus::Unbounded: return "unbounded";
    case SdpStatus::MaxIter: return "max-iter";
  }
  return "unknown";
}

SdpSolution solve(const SdpProblem& problem, const SdpSettings& settings, const SdpSolution* warm) {
  const ConicForm cf = compile(problem);
  const int n = cf.n;
  const int m = cf.rows;

  Eigen::VectorXd D, E;
  equilibrate(cf, settings.scaling_passes, D, E);
  const SpMat Ah = E.asDiagonal() * cf.A * D.asDiagonal();
  const SpMat AhT = Ah.transpose();
  const Eigen::VectorXd bh = E.cwiseProduct(cf.b);
  const Eigen::VectorXd ch = D.cwiseProduct(cf.c);

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd s = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
  if (warm && warm->x.size() == n && warm->slack.size() == m && warm->dual.size() == m) {
    x = warm->x.cwiseQuotient(D);
    s = warm->slack.cwiseProduct(E);
    y = warm->dual.cwiseQuotient(E);
  }

  // Equality rows get a stiffer penalty than cone rows.
  Eigen::VectorXd weight = Eigen::VectorXd::Ones(m);
  weight.head(cf.zero_rows).setConstant(settings.equality_rho_scale);
  const SpMat AtA = (AhT * weight.asDiagonal() * Ah).pruned();
  SpMat identity(n, n);
  identity.setIdentity();
  Eigen::SimplicialLDLT<SpMat> ldlt;
  double rho = settings.rho;
  int refactorizations = 0;
  auto factor = [&]() {
    SpMat K = settings.sigma * identity + rho * AtA;
    if (refactorizations == 0) ldlt.analyzePattern(K);
    ldlt.factorize(K);
    if (ldlt.info() != Eigen::Success) throw std::runtime_error("sdp::solve: KKT factorization failed");
    ++refactorizations;
  };
  factor();

  SdpSolution sol;
  const double alpha = settings.alpha;
  Eigen::VectorXd rhs(n), Ax(m), Axr(m), v(m), Aty(n);

  auto unscaled_metrics = [&](double& pres, double& dres, double& gap, double& pobj, double& dobj) {
    const Eigen::VectorXd xu = D.cwiseProduct(x);
    const Eigen::VectorXd su = s.cwiseQuotient(E);
    const Eigen::VectorXd yu = E.cwiseProduct(y);
    const Eigen::VectorXd ax = cf.A * xu;
    const Eigen::VectorXd aty = cf.A.transpose() * yu;
    pres = inf_norm(ax + su - cf.b) / (1.0 + std::max({inf_norm(ax), inf_norm(su), inf_norm(cf.b)}));
    dres = inf_norm(aty + cf.c) / (1.0 + std::max(inf_norm(aty), inf_norm(cf.c)));
    pobj = cf.c.dot(xu);
    dobj = -cf.b.dot(yu);
    gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
  };

  // The iterate is w = (x, s, u) with u = y / (rho * weight); one ADMM sweep
  // is the map w -> T(w).
  const int len = n + 2 * m;
  auto admm_map = [&](const Eigen::VectorXd& w, Eigen::VectorXd& out) {
    const auto xi = w.head(n);
    const auto si = w.segment(n, m);
    const auto ui = w.tail(m);
    rhs = settings.sigma * xi - ch + rho * (AhT * weight.cwiseProduct(bh - si - ui));
    out.resize(len);
    out.head(n) = ldlt.solve(rhs);
    Ax = Ah * out.head(n);
    Axr = alpha * Ax + (1.0 - alpha) * (bh - si);
    v = bh - Axr - ui;
    project_cone(cf, v);
    out.segment(n, m) = v;
    out.tail(m) = ui + Axr + v - bh;
  };

  const int memory = std::max(settings.anderson_memory, 0);
  std::deque<Eigen::VectorXd> dw_hist, dg_hist;
  Eigen::VectorXd w(len), tw(len), g(len), wc(len), tc(len), gc(len);
  w << x, s, y.cwiseQuotient(weight) / rho;
  admm_map(w, tw);
  g = tw - w;

  auto unpack_iterate = [&](const Eigen::VectorXd& z) {
    x = z.head(n);
    s = z.segment(n, m);
    y = rho * weight.cwiseProduct(z.tail(m));
  };

  int it = 1;
  bool converged = false;
  double pres = 0, dres = 0, gap = 0, pobj = 0, dobj = 0;
  int last_rho_update = 0;
  int next_check = settings.check_every;
  while (it < settings.max_iters) {
    bool accelerated = false;
    if (memory > 0 && !dg_hist.empty()) {
      const int k = static_cast<int>(dg_hist.size());
      Eigen::MatrixXd G(len, k), W(len, k);
      for (int j = 0; j < k; ++j) {
        G.col(j) = dg_hist[j];
        W.col(j) = dw_hist[j];
      }
      Eigen::MatrixXd gram = G.transpose() * G;
      gram.diagonal().array() += 1e-10 * std::max(gram.trace(), 1e-300);
      const Eigen::VectorXd gamma = gram.ldlt().solve(G.transpose() * g);
      if (gamma.allFinite()) {
        wc = tw - (W + G) * gamma;
        accelerated = true;
      }
    }
    if (!accelerated) wc = tw;
    admm_map(wc, tc);
    ++it;
    gc = tc - wc;
    if (accelerated && gc.norm() > g.norm()) {
      // Safeguard: fall back to the plain step and restart the history.
      wc = tw;
      admm_map(wc, tc);
      ++it;
      gc = tc - wc;
      dw_hist.clear();
      dg_hist.clear();
    }
    if (memory > 0) {
      dw_hist.push_back(wc - w);
      dg_hist.push_back(gc - g);
      if (static_cast<int>(dg_hist.size()) > memory) {
        dw_hist.pop_front();
        dg_hist.pop_front();
      }
    }
    w.swap(wc);
    tw.swap(tc);
    g.swap(gc);

    if (it >= next_check || it >= settings.max_iters) {
      next_check = it + settings.check_every;
      unpack_iterate(tw);
      unscaled_metrics(pres, dres, gap, pobj, dobj);
      if (settings.verbose > 0 && (it / settings.check_every) % std::max(settings.verbose / settings.check_every, 1) == 0)
        std::fprintf(stderr, "%7d  pobj %+.9e  dobj %+.9e  pres %.2e  dres %.2e  gap %.2e  rho %.2e  |x| %.3e  |y| %.3e\n", it,
                     cf.obj_sign * pobj, cf.obj_sign * dobj, pres, dres, gap, rho, inf_norm(D.cwiseProduct(x)),
                     inf_norm(E.cwiseProduct(y)));
      if (pres <= settings.tol && dres <= settings.tol && gap <= settings.tol) {
        converged = true;
        break;
      }
      if (settings.adaptive_rho && it - last_rho_update >= 5 * settings.check_every) {
        Aty = AhT * y;
        Ax = Ah * x;
        // A lagging duality gap is treated like primal infeasibility: both
        // call for a stiffer penalty.
        const double pr = std::max(
            inf_norm(Ax + s - bh) / std::max({inf_norm(Ax), inf_norm(s), inf_norm(bh), 1e-10}), gap);
        const double dr = inf_norm(Aty + ch) / std::max({inf_norm(Aty), inf_norm(ch), 1e-10});
        const double ratio = std::sqrt(pr / std::max(dr, 1e-300));
        const double new_rho = std::clamp(rho * ratio, 1e-6, 1e6);
        if (new_rho > 5.0 * rho || new_rho < 0.2 * rho) {
          rho = new_rho;
          factor();
          last_rho_update = it;
          w = tw;
          w.tail(m) = y.cwiseQuotient(weight) / rho;
          admm_map(w, tw);
          ++it;
          g = tw - w;
          dw_hist.clear();
          dg_hist.clear();
        }
      }
    }
  }
  unpack_iterate(tw);
  if (!converged) unscaled_metrics(pres, dres, gap, pobj, dobj);

  sol.iterations = std::min(it, settings.max_iters);
  sol.refactorizations = refactorizations;
  sol.status = converged ? SdpStatus::Optimal : SdpStatus::MaxIter;
  sol.x = D.cwiseProduct(x);
  sol.slack = s.cwiseQuotient(E);
  sol.dual = E.cwiseProduct(y);
  sol.primal_residual = pres;
  sol.dual_residual = dres;
  sol.gap = gap;
  sol.objective = cf.obj_sign * pobj + cf.obj_constant;
  sol.dual_objective = cf.obj_sign * dobj + cf.obj_constant;
  sol.constraint_duals.resize(cf.constraint_row.size());
  for (std::size_t k = 0; k < cf.constraint_row.size(); ++k) sol.constraint_duals[k] = sol.dual(cf.constraint_row[k]);
  for (std::size_t k = 0; k < cf.psd_offset.size(); ++k) {
    sol.primal_blocks.push_back(unpack_complex(sol.slack.data() + cf.psd_offset[k], cf.psd_dim[k], cf.psd_field[k]));
    sol.dual_blocks.push_back(unpack_complex(sol.dual.data() + cf.psd_offset[k], cf.psd_dim[k], cf.psd_field[k]));
  }
  return sol;
}

EtaResult solve_feasibility_eta(const SdpProblem& problem, std::span<const int> lhs_blocks, const SdpSettings& settings,
                                double cap) {
  SdpProblem p = problem;
  const int eta = p.add_variables(1);
  for (int b : lhs_blocks) {
    const int dim = p.blocks().at(b).dim;
    for (int i = 0; i < dim; ++i) p.add_block_term(b, i, i, eta, -1.0);
  }
  p.add_constraint(LinearExpr::var(eta), Relation::LessEqual, cap);
  p.set_objective(LinearExpr::var(eta), Sense::Maximize);
  EtaResult out;
  out.solution = solve(p, settings);
  out.eta_max = out.solution.x(eta);
  out.eta_upper = out.solution.dual_objective;
  return out;
}

double replay_primal_residual(const SdpProblem& problem, const Eigen::VectorXd& x) {
  const ConicForm cf = compile(problem);
  Eigen::VectorXd slack = cf.b - cf.A * x;
  Eigen::VectorXd proj = slack;
  project_cone(cf, proj);
  const Eigen::VectorXd ax = cf.A * x;
  return inf_norm(slack - proj) / (1.0 + std::max({inf_norm(ax), inf_norm(proj), inf_norm(cf.b)}));
}

namespace {

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::Equal: return "==";
    case Relation::GreaterEqual: return ">=";
    case Relation::LessEqual: return "<=";
  }
  return "?";
}

nlohmann::json expr_json(const LinearExpr& e) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : e.terms) terms.push_back({t.var, t.coef});
  return {{"terms", terms}, {"constant", e.constant}};
}

LinearExpr expr_from(const nlohmann::json& j) {
  LinearExpr e;
  for (const auto& t : j.at("terms")) e.add(t.at(0).get<int>(), t.at(1).get<double>());
  e.constant = j.value("constant", 0.0);
  return e;
}

}  // namespace

std::string SdpProblem::to_json() const {
  nlohmann::json j;
  j["variables"] = num_vars_;
  j["objective"] = expr_json(objective_);
  j["objective"]["sense"] = sense_ == Sense::Minimize ? "min" : "max";
  j["constraints"] = nlohmann::json::array();
  for (const auto& c : constraints_) {
    auto cj = expr_json(c.expr);
    cj["relation"] = relation_name(c.relation);
    cj["rhs"] = c.rhs;
    j["constraints"].push_back(cj);
  }
  j["blocks"] = nlohmann::json::array();
  for (const auto& b : blocks_) {
    nlohmann::json bj;
    bj["dim"] = b.dim;
    bj["field"] = b.field == Field::Real ? "real" : "complex";
    bj["entries"] = nlohmann::json::array();
    for (const auto& e : b.entries) bj["entries"].push_back({e.row, e.col, e.var, e.coef.real(), e.coef.imag()});
    j["blocks"].push_back(bj);
  }
  return j.dump();
}

SdpProblem SdpProblem::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  SdpProblem p;
  p.add_variables(j.at("variables").get<int>());
  const auto& o = j.at("objective");
  p.set_objective(expr_from(o), o.value("sense", "min") == "max" ? Sense::Maximize : Sense::Minimize);
  for (const auto& c : j.at("constraints")) {
    const auto rel = c.at("relation").get<std::string>();
    Relation r = rel == "==" ? Relation::Equal : rel == ">=" ? Relation::GreaterEqual : Relation::LessEqual;
    if (rel != "==" && rel != ">=" && rel != "<=") throw std::invalid_argument("unknown relation " + rel);
    p.add_constraint(expr_from(c), r, c.at("rhs").get<double>());
  }
  for (const auto& b : j.at("blocks")) {
    const int blk = p.add_psd_block(b.at("dim").get<int>(), b.at("field") == "complex" ? Field::Complex : Field::Real);
    for (const auto& e : b.at("entries"))
      p.add_block_term(blk, e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>(),
                       cplx(e.at(3).get<double>(), e.at(4).get<double>()));
  }
  return p;
}

}  // namespace ctxdim::sdp
