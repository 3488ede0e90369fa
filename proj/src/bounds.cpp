#include "ctxdim/bounds.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "ctxdim/parallel.hpp"
#include "ctxdim/random.hpp"
#include "ctxdim/two_copy.hpp"

namespace ctxdim {

namespace {

using Clock = std::chrono::steady_clock;
using sdp::LinearExpr;
using sdp::Relation;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Representatives with |r|^2 below this are treated as zero vectors by the
// ray extraction; their contribution to the value is at most this.
constexpr double kZeroMass = 1e-5;

void check_inputs(const Graph& g, const std::vector<double>& w, int d) {
  if (static_cast<int>(w.size()) != g.size())
    throw std::invalid_argument("weight vector has " + std::to_string(w.size()) + " entries but the graph has " +
                                std::to_string(g.size()) + " vertices");
  for (double x : w)
    if (!std::isfinite(x)) throw std::invalid_argument("weights must be finite");
  if (d < 1) throw std::invalid_argument("dimension must be at least 1");
}

double max_abs(const std::vector<double>& w) {
  double m = 0.0;
  for (double x : w) m = std::max(m, std::abs(x));
  return m;
}

struct Candidate {
  double value;
  double defect;
  VectorSystem vectors;
};

// Best candidate by value; ties keep the lowest restart index.
std::optional<Candidate> pick_best(std::vector<std::optional<Candidate>>& found) {
  std::optional<Candidate> best;
  for (auto& c : found)
    if (c && (!best || c->value > best->value)) best = std::move(c);
  return best;
}

void fill_lower(BoundReport& out, std::optional<Candidate> best, const char* failure) {
  if (!best) {
    out.valid = false;
    out.note = failure;
    return;
  }
  out.valid = true;
  out.value = best->value;
  out.certificate_error = best->defect;
  out.vectors = std::move(best->vectors);
}

// Sets the handle to the maximizing phi and replays the system. Returns a
// candidate only when the replay passes.
std::optional<Candidate> certify(const Graph& g, const std::vector<double>& w, VectorSystem v) {
  CVector phi;
  best_handle_value(v.reps, w, &phi);
  v.handle = phi;
  const Replay r = replay(g, w, v);
  if (!(r.defect <= kTolReplay)) return std::nullopt;
  return Candidate{r.value, r.defect, std::move(v)};
}

// Unit vectors from a rank-<=d Gram of (phi, psi_1..psi_n).
std::optional<VectorSystem> unit_vectors(const CMatrix& y, int d) {
  try {
    VectorSystem v = vectors_from_gram(psd_truncate(hermitian_part(y), d), d);
    for (auto& r : v.reps) {
      const double nrm = r.norm();
      if (nrm < 1e-3) return std::nullopt;
      r /= nrm;
    }
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

// Vectors from a ray-form Gram (X_ii = X_0i); small ones become zero.
std::optional<VectorSystem> ray_vectors(const CMatrix& y, int d) {
  try {
    VectorSystem v = vectors_from_gram(psd_truncate(hermitian_part(y), d), d);
    v.allow_zero = true;
    for (auto& r : v.reps) {
      const double mass = r.squaredNorm();
      if (mass < kZeroMass) r.setZero();
      else r /= std::sqrt(mass);
    }
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

double objective_change(double obj, double prev) { return std::abs(obj - prev) / std::max(1.0, std::abs(obj)); }

// Real (n+1) x (n+1) block with X_00 = 1, X_ii = X_0i = t_i, zeros on
// edges. Returns the index of t_1; t_i is at t_first + i - 1.
struct RayBlock {
  int block;
  int t_first;
};

RayBlock add_ray_block(sdp::SdpProblem& p, const Graph& g, sdp::Field field) {
  const int n = g.size();
  const int blk = p.add_psd_block(n + 1, field);
  p.add_block_constant(blk, 0, 0, 1.0);
  const int t0 = p.add_variables(n);
  for (int i = 1; i <= n; ++i) {
    p.add_block_term(blk, i, i, t0 + i - 1, 1.0);
    p.add_block_term(blk, 0, i, t0 + i - 1, 1.0);
  }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      if (g.adjacent(i, j)) continue;
      const int v = p.add_variables(field == sdp::Field::Complex ? 2 : 1);
      p.add_block_term(blk, i, j, v, 1.0);
      if (field == sdp::Field::Complex) p.add_block_term(blk, i, j, v + 1, cplx(0.0, 1.0));
    }
  return {blk, t0};
}

void check_clique(const Graph& g, const VertexSubset& c, int d) {
  validate_subset(g, c);
  if (c.size() != d)
    throw std::invalid_argument("basis identity needs a clique of exactly " + std::to_string(d) + " vertices");
  for (int a = 0; a < c.size(); ++a)
    for (int b = a + 1; b < c.size(); ++b)
      if (!g.adjacent(c.members[a], c.members[b]))
        throw std::invalid_argument("vertices " + std::to_string(c.members[a]) + " and " +
                                    std::to_string(c.members[b]) + " of a listed clique are not adjacent");
}

void fill_upper(BoundReport& out, const sdp::SdpSolution& sol) {
  out.primal_value = sol.objective;
  out.solver_status = sdp::to_string(sol.status);
  out.primal_residual = sol.primal_residual;
  out.dual_residual = sol.dual_residual;
  out.gap = sol.gap;
  out.iterations = sol.iterations;
  // Neither objective is exact at finite accuracy; report the larger.
  out.value = std::max(sol.objective, sol.dual_objective);
  out.valid = sol.status == sdp::SdpStatus::Optimal || sol.max_residual() <= kTolUpperResidual;
  if (!out.valid) out.note = "solver stopped with residual " + std::to_string(sol.max_residual());
}

}  // namespace

std::string to_string(BoundKind k) { return k == BoundKind::Lower ? "lower" : "upper"; }

std::string to_string(BoundTarget t) {
  switch (t) {
    case BoundTarget::Theta: return "theta";
    case BoundTarget::ThetaD: return "theta_d";
    case BoundTarget::ThetaTildeD: return "theta_tilde_d";
  }
  return "?";
}

double round_down4(double x) { return std::floor(x * 1e4) / 1e4; }

double best_handle_value(const std::vector<CVector>& psi, const std::vector<double>& w, CVector* phi) {
  if (psi.empty()) throw std::invalid_argument("best_handle_value: empty vector system");
  const Eigen::Index dim = psi.front().size();
  CMatrix s = CMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < psi.size(); ++i)
    if (psi[i].norm() > 0.0) s.noalias() += w[i] * psi[i] * psi[i].adjoint();
  const auto eig = eig_hermitian(hermitian_part(s));
  if (phi) *phi = eig.vectors.col(0);
  return eig.values(0);
}

Replay replay(const Graph& g, const std::vector<double>& w, const VectorSystem& v) {
  Replay out;
  const auto defects = vector_system_defects(v, &g);
  out.defect = defects.has_disallowed_zero ? std::numeric_limits<double>::infinity()
                                           : std::max(defects.normalization, defects.orthogonality);
  for (int i = 0; i < v.size(); ++i) out.value += w[i] * std::norm(v.handle.dot(v.reps[i]));
  return out;
}

BoundReport lovasz_theta(const Graph& g, const std::vector<double>& w, const sdp::SdpSettings& settings) {
  check_inputs(g, w, 1);
  const auto t0 = Clock::now();
  sdp::SdpProblem p;
  const RayBlock rb = add_ray_block(p, g, sdp::Field::Real);
  LinearExpr obj;
  for (int i = 0; i < g.size(); ++i) obj.add(rb.t_first + i, w[i]);
  p.set_objective(obj, sdp::Sense::Maximize);
  const auto sol = sdp::solve(p, settings);

  BoundReport out;
  out.kind = BoundKind::Upper;
  out.target = BoundTarget::Theta;
  out.method = "lovasz_theta";
  out.dim = g.size() + 1;
  out.seed = settings.seed;
  fill_upper(out, sol);
  out.seconds = seconds_since(t0);
  return out;
}

BoundReport lower_seesaw(const Graph& g, const std::vector<double>& w, int d, const SeesawConfig& cfg) {
  check_inputs(g, w, d);
  const auto t0 = Clock::now();
  const int n = g.size();
  const double eta = std::isnan(cfg.eta) ? 10.0 * std::max(max_abs(w), 0.1) : cfg.eta;
  for (double x : w)
    if (!(eta > x / 2.0)) throw std::invalid_argument("seesaw penalty eta must exceed max_i w_i / 2");

  // Closed-form maximizer over the pinned X for fixed Y; with `polish` the
  // pure Frobenius projection onto the pinned set.
  auto pin = [&](const CMatrix& y, bool polish) {
    CMatrix x = y;
    x(0, 0) = 1.0;
    for (int i = 1; i <= n; ++i) {
      x(i, i) = 1.0;
      const cplx c = polish ? y(0, i) : 2.0 * eta * y(0, i) / (2.0 * eta - w[i - 1]);
      x(0, i) = c;
      x(i, 0) = std::conj(c);
    }
    for (auto [a, b] : g.edges()) x(a, b) = x(b, a) = 0.0;
    return x;
  };

  std::vector<std::optional<Candidate>> found(cfg.restarts);
  std::vector<int> iterations(cfg.restarts, 0);
  parallel_for(cfg.restarts, [&](int r) {
    auto rng = restart_engine(cfg.seed, r);
    CMatrix y = random_psd(n + 1, d, rng);
    y /= y.diagonal().real().mean();
    double prev = -std::numeric_limits<double>::infinity();
    int it = 0;
    for (; it < cfg.max_iters; ++it) {
      const CMatrix x = pin(y, false);
      y = psd_truncate(x, d);
      double obj = -eta * (x - y).squaredNorm();
      for (int i = 1; i <= n; ++i) obj += w[i - 1] * std::norm(x(0, i));
      if (cfg.trace && r == 0) cfg.trace->push_back(obj);
      if (objective_change(obj, prev) <= cfg.tol) break;
      prev = obj;
    }
    for (int k = 0; k < cfg.polish_iters; ++k, ++it) {
      const CMatrix x = pin(y, true);
      y = psd_truncate(x, d);
      if ((x - y).norm() <= 1e-13) break;
    }
    iterations[r] = it;
    if (auto v = unit_vectors(y, d)) found[r] = certify(g, w, std::move(*v));
  });

  BoundReport out;
  out.kind = BoundKind::Lower;
  out.target = BoundTarget::ThetaD;
  out.method = "seesaw";
  out.dim = d;
  out.params["eta"] = eta;
  out.seed = cfg.seed;
  out.restarts = cfg.restarts;
  for (int it : iterations) out.iterations += it;
  fill_lower(out, pick_best(found), "no restart reached a rank-d certificate");
  out.seconds = seconds_since(t0);
  return out;
}

BoundReport lower_lambda_max(const Graph& g, const std::vector<double>& w, int d, const LambdaConfig& cfg) {
  check_inputs(g, w, d);
  const auto t0 = Clock::now();
  const int n = g.size();
  double wmin = std::numeric_limits<double>::infinity();
  for (double x : w) {
    if (!(x > 0.0)) throw std::invalid_argument("the lambda-max method needs strictly positive weights");
    wmin = std::min(wmin, x);
  }
  const double eps = std::isnan(cfg.epsilon) ? wmin / 10.0 : cfg.epsilon;
  if (!(eps > 0.0)) throw std::invalid_argument("spectrum offset epsilon must be positive");

  // M >= 0 with M_ii = w_i and zeros on edges.
  sdp::SdpProblem base;
  const int blk = base.add_psd_block(n, sdp::Field::Complex);
  for (int i = 0; i < n; ++i) base.add_block_constant(blk, i, i, w[i]);
  std::vector<std::pair<int, int>> free;
  std::vector<int> first_var;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      if (g.adjacent(i, j)) continue;
      const int v = base.add_variables(2);
      base.add_block_term(blk, i - 1, j - 1, v, 1.0);
      base.add_block_term(blk, i - 1, j - 1, v + 1, cplx(0.0, 1.0));
      free.emplace_back(i - 1, j - 1);
      first_var.push_back(v);
    }
  Eigen::VectorXd spectrum = Eigen::VectorXd::Zero(n);
  spectrum.head(std::min(d, n)).setOnes();
  spectrum(0) += eps;

  std::vector<std::optional<Candidate>> found(cfg.restarts);
  std::vector<int> iterations(cfg.restarts, 0);
  parallel_for(cfg.restarts, [&](int r) {
    auto rng = restart_engine(cfg.seed, r);
    const CMatrix u0 = haar_frame(n, n, rng);
    CMatrix x = u0 * spectrum.cast<cplx>().asDiagonal() * u0.adjoint();
    sdp::SdpProblem problem = base;
    sdp::SdpSolution warm;
    bool have_warm = false;
    CMatrix m;
    HermitianEigen<cplx> eig;
    double prev = -std::numeric_limits<double>::infinity();
    int it = 0;
    for (; it < cfg.max_iters; ++it) {
      // Tr(MX) = sum_i w_i X_ii + sum_{a<b} 2 Re(M_ab X_ba).
      LinearExpr obj;
      for (int i = 0; i < n; ++i) obj.constant += w[i] * x(i, i).real();
      for (std::size_t k = 0; k < free.size(); ++k) {
        const cplx xba = x(free[k].second, free[k].first);
        obj.add(first_var[k], 2.0 * xba.real());
        obj.add(first_var[k] + 1, -2.0 * xba.imag());
      }
      problem.set_objective(obj, sdp::Sense::Maximize);
      auto sol = sdp::solve(problem, cfg.solver, have_warm ? &warm : nullptr);
      m = problem.block_value(blk, sol.x);
      warm = std::move(sol);
      have_warm = true;
      eig = eig_hermitian(hermitian_part(m));
      x = eig.vectors * spectrum.cast<cplx>().asDiagonal() * eig.vectors.adjoint();
      const double value = spectrum.dot(eig.values);
      if (objective_change(value, prev) <= cfg.tol) break;
      prev = value;
    }
    iterations[r] = std::min(it + 1, cfg.max_iters);
    const double lmax = eig.values(0);
    if (n > d && eig.values(d) > kRankTol * lmax) return;
    // M = V^dagger V with V = Lambda^(1/2) U^dagger; psi_i = v_i / |v_i|.
    const int keep = std::min(d, n);
    VectorSystem v;
    v.dim = d;
    for (int i = 0; i < n; ++i) {
      CVector r = CVector::Zero(d);
      for (int k = 0; k < keep; ++k) r(k) = std::sqrt(std::max(0.0, eig.values(k))) * std::conj(eig.vectors(i, k));
      const double nrm = r.norm();
      if (nrm == 0.0) return;
      v.reps.push_back(r / nrm);
    }
    found[r] = certify(g, w, std::move(v));
  });

  BoundReport out;
  out.kind = BoundKind::Lower;
  out.target = BoundTarget::ThetaD;
  out.method = "lambda_max";
  out.dim = d;
  out.params["epsilon"] = eps;
  out.seed = cfg.seed;
  out.restarts = cfg.restarts;
  for (int it : iterations) out.iterations += it;
  fill_lower(out, pick_best(found), "no restart ended with a rank-d matrix");
  out.seconds = seconds_since(t0);
  return out;
}

BoundReport lower_tilde_seesaw(const Graph& g, const std::vector<double>& w, int d, const TildeSeesawConfig& cfg) {
  check_inputs(g, w, d);
  const auto t0 = Clock::now();
  const int n = g.size();
  const int side = n + 1;
  const bool projector = cfg.variant == TildeVariant::Projector;
  // A large trace penalty freezes the projector iteration near its start.
  const double scale = std::max(max_abs(w), 0.1);
  const double eta = std::isnan(cfg.eta) ? (projector ? scale : 10.0 * scale) : cfg.eta;
  if (!(eta > 0.0)) throw std::invalid_argument("tilde seesaw penalty eta must be positive");

  auto pin = [&](const CMatrix& y, bool polish) {
    CMatrix x = y;
    x(0, 0) = 1.0;
    for (int i = 1; i <= n; ++i) {
      const double shift = polish ? 0.0 : w[i - 1] / (2.0 * eta);
      const double t = (shift + y(i, i).real() + 2.0 * y(0, i).real()) / 3.0;
      x(i, i) = x(0, i) = x(i, 0) = t;
    }
    for (auto [a, b] : g.edges()) x(a, b) = x(b, a) = 0.0;
    return x;
  };

  // Projector variant: max sum_i w_i t_i - eta Tr(PX) over the ray set.
  sdp::SdpProblem base;
  RayBlock rb{};
  if (projector) rb = add_ray_block(base, g, sdp::Field::Complex);

  std::vector<std::optional<Candidate>> found(cfg.restarts);
  std::vector<int> iterations(cfg.restarts, 0);
  parallel_for(cfg.restarts, [&](int r) {
    auto rng = restart_engine(cfg.seed, r);
    CMatrix y;
    int it = 0;
    if (!projector) {
      y = random_psd(side, d, rng);
      y /= y(0, 0).real();
      double prev = -std::numeric_limits<double>::infinity();
      for (; it < cfg.max_iters; ++it) {
        const CMatrix x = pin(y, false);
        y = psd_truncate(x, d);
        double obj = -eta * (x - y).squaredNorm();
        for (int i = 1; i <= n; ++i) obj += w[i - 1] * x(i, i).real();
        if (objective_change(obj, prev) <= cfg.tol) break;
        prev = obj;
      }
    } else {
      const int tail = side - d;
      CMatrix frame = haar_frame(side, std::max(tail, 0), rng);
      CMatrix proj = frame * frame.adjoint();
      sdp::SdpProblem problem = base;
      sdp::SdpSolution warm;
      bool have_warm = false;
      const int iters = std::max(1, cfg.max_iters / 25);
      double window_start = std::numeric_limits<double>::infinity();
      for (; it < iters; ++it) {
        // Tr(PX) over the parameterized block: constants, t_i, free entries.
        LinearExpr obj(-eta * proj(0, 0).real());
        for (int i = 1; i <= n; ++i)
          obj.add(rb.t_first + i - 1, w[i - 1] - eta * (proj(i, i).real() + 2.0 * proj(i, 0).real()));
        int v = rb.t_first + n;
        for (int a = 1; a <= n; ++a)
          for (int b = a + 1; b <= n; ++b) {
            if (g.adjacent(a, b)) continue;
            const cplx pba = proj(b, a);
            obj.add(v, -2.0 * eta * pba.real());
            obj.add(v + 1, 2.0 * eta * pba.imag());
            v += 2;
          }
        problem.set_objective(obj, sdp::Sense::Maximize);
        auto sol = sdp::solve(problem, cfg.solver, have_warm ? &warm : nullptr);
        y = hermitian_part(problem.block_value(rb.block, sol.x));
        warm = std::move(sol);
        have_warm = true;
        if (tail <= 0) break;
        const double res = std::max(0.0, (y * proj).trace().real());
        const auto eig = eig_hermitian(y);
        proj = eig.vectors.rightCols(tail) * eig.vectors.rightCols(tail).adjoint();
        if (res <= 1e-10) break;
        if ((it + 1) % 10 == 0) {
          if (res > (1.0 - 1e-3) * window_start) break;
          window_start = res;
        }
      }
      y = psd_truncate(y, d);
    }
    for (int k = 0; k < cfg.polish_iters; ++k, ++it) {
      const CMatrix x = pin(y, true);
      y = psd_truncate(x, d);
      if ((x - y).norm() <= 1e-13) break;
    }
    iterations[r] = it;
    if (auto v = ray_vectors(y, d)) found[r] = certify(g, w, std::move(*v));
  });

  BoundReport out;
  out.kind = BoundKind::Lower;
  out.target = BoundTarget::ThetaTildeD;
  out.method = projector ? "tilde_seesaw_projector" : "tilde_seesaw_frobenius";
  out.dim = d;
  out.params["eta"] = eta;
  out.seed = cfg.seed;
  out.restarts = cfg.restarts;
  for (int it : iterations) out.iterations += it;
  fill_lower(out, pick_best(found), "no restart reached a rank-d certificate");
  out.seconds = seconds_since(t0);
  return out;
}

void build_quad_ppt(sdp::SdpProblem& problem, const Graph& g, const std::vector<double>& w, int d) {
  check_inputs(g, w, d);
  const int side = g.size() + 1;
  const double ci = double(d) * d, cv = d;
  TwoCopyLift lift(problem, side, d);
  // M = d^2 Phi_I + d Phi_V stands for X (x) X with X the Gram matrix.
  problem.add_constraint(lift.trace(ci, cv), Relation::Equal, double(side) * side);
  for (auto [a, b] : g.edges()) lift.add_relation({{a, b, 1.0}});
  // X_ii = 1: every diagonal block equals the average one.
  for (int i = 0; i < side; ++i) {
    std::vector<TwoCopyLift::BlockTerm> terms{{i, i, 1.0}};
    for (int a = 0; a < side; ++a) terms.push_back({a, a, -1.0 / side});
    lift.add_relation(terms);
  }
  lift.add_cones();
  // |X_0i|^2 = (X (x) X)(i0, 0i).
  LinearExpr obj;
  for (int i = 1; i < side; ++i) obj += w[i - 1] * lift.entry(ci, cv, i * side, i);
  problem.set_objective(obj.compress(), sdp::Sense::Maximize);
}

void build_tilde_ppt(sdp::SdpProblem& problem, const Graph& g, const std::vector<double>& w, int d,
                     const std::vector<VertexSubset>& cliques, std::optional<double> theta_cut) {
  check_inputs(g, w, d);
  const int side = g.size() + 1;
  const double ci = double(d) * d, cv = d;
  TwoCopyLift lift(problem, side, d);
  problem.add_constraint(lift.entry(ci, cv, 0, 0), Relation::Equal, 1.0);
  for (auto [a, b] : g.edges()) lift.add_relation({{a, b, 1.0}});
  for (int i = 1; i < side; ++i) lift.add_relation({{0, i, 1.0}, {i, i, -1.0}});
  for (const auto& c : cliques) {
    check_clique(g, c, d);
    std::vector<TwoCopyLift::BlockTerm> terms{{0, 0, -1.0}};
    for (int i : c.members) terms.push_back({i, i, 1.0});
    lift.add_relation(terms);
  }
  lift.add_cones();
  if (theta_cut) {
    // (sum_i w_i X_ii - theta) X >= 0, symmetrized.
    const int blk = problem.add_psd_block(side);
    for (int k = 0; k < side; ++k)
      for (int l = k; l < side; ++l) {
        LinearExpr e;
        for (int i = 1; i < side; ++i)
          e += 0.5 * w[i - 1] * (lift.partial_block(ci, cv, i, i, k, l) + lift.partial_block(ci, cv, i, i, l, k));
        e -= 0.5 * *theta_cut * (lift.partial_block(ci, cv, 0, 0, k, l) + lift.partial_block(ci, cv, 0, 0, l, k));
        problem.add_block_expr(blk, k, l, e.compress());
      }
  }
  LinearExpr obj;
  for (int i = 1; i < side; ++i) obj += w[i - 1] * lift.entry(ci, cv, i, i);
  problem.set_objective(obj.compress(), sdp::Sense::Maximize);
}

BoundReport upper_quad_ppt(const Graph& g, const std::vector<double>& w, int d, const UpperConfig& cfg) {
  const auto t0 = Clock::now();
  sdp::SdpProblem problem;
  build_quad_ppt(problem, g, w, d);
  const auto sol = sdp::solve(problem, cfg.two_copy);
  BoundReport out;
  out.kind = BoundKind::Upper;
  out.target = BoundTarget::ThetaD;
  out.method = "quad_ppt";
  out.dim = d;
  out.seed = cfg.two_copy.seed;
  fill_upper(out, sol);
  out.seconds = seconds_since(t0);
  return out;
}

BoundReport upper_tilde_ppt(const Graph& g, const std::vector<double>& w, int d, const UpperConfig& cfg) {
  const auto t0 = Clock::now();
  if (cfg.theta_cut) {
    if (!cfg.verified_lower)
      throw std::invalid_argument("a theta cut needs the verified lower bound it was taken from");
    if (*cfg.theta_cut > round_down4(*cfg.verified_lower) + 1e-12)
      throw std::invalid_argument("theta cut " + std::to_string(*cfg.theta_cut) +
                                  " exceeds the verified lower bound rounded down to four decimals");
  }
  sdp::SdpProblem problem;
  build_tilde_ppt(problem, g, w, d, cfg.cliques, cfg.theta_cut);
  const auto sol = sdp::solve(problem, cfg.two_copy);
  BoundReport out;
  out.kind = BoundKind::Upper;
  // Basis identities hold only without zero vectors.
  out.target = cfg.cliques.empty() ? BoundTarget::ThetaTildeD : BoundTarget::ThetaD;
  out.method = "tilde_ppt";
  out.dim = d;
  out.cliques = cfg.cliques;
  out.theta_cut = cfg.theta_cut;
  if (cfg.verified_lower) out.params["verified_lower"] = *cfg.verified_lower;
  out.seed = cfg.two_copy.seed;
  fill_upper(out, sol);
  out.seconds = seconds_since(t0);
  return out;
}

BoundReport upper_ray_sdp(const Graph& g, const std::vector<double>& w, int d, const UpperConfig& cfg) {
  check_inputs(g, w, d);
  const auto t0 = Clock::now();
  sdp::SdpProblem p;
  const RayBlock rb = add_ray_block(p, g, sdp::Field::Real);
  for (const auto& c : cfg.cliques) {
    check_clique(g, c, d);
    LinearExpr e;
    for (int i : c.members) e.add(rb.t_first + i - 1, 1.0);
    p.add_constraint(e, Relation::Equal, 1.0);
  }
  LinearExpr obj;
  for (int i = 0; i < g.size(); ++i) obj.add(rb.t_first + i, w[i]);
  p.set_objective(obj, sdp::Sense::Maximize);
  const auto sol = sdp::solve(p, cfg.solver);

  BoundReport out;
  out.kind = BoundKind::Upper;
  out.target = cfg.cliques.empty() ? BoundTarget::ThetaTildeD : BoundTarget::ThetaD;
  out.method = "ray_sdp";
  out.dim = d;
  out.cliques = cfg.cliques;
  out.seed = cfg.solver.seed;
  fill_upper(out, sol);
  out.seconds = seconds_since(t0);
  return out;
}

BoundReport tilde_via_subgraphs(const Graph& g, const std::vector<double>& w, int d, const SubgraphBound& op,
                                int max_vertices) {
  check_inputs(g, w, d);
  const int n = g.size();
  if (n > max_vertices)
    throw std::invalid_argument("subgraph enumeration is capped at " + std::to_string(max_vertices) + " vertices");
  if (n == 0) throw std::invalid_argument("subgraph enumeration needs at least one vertex");
  const auto t0 = Clock::now();
  const int count = (1 << n) - 1;
  std::vector<BoundReport> terms(count);
  std::vector<VertexSubset> subsets(count);
  parallel_for(count, [&](int k) {
    const unsigned mask = static_cast<unsigned>(k) + 1;
    std::vector<int> members;
    std::vector<double> ws;
    for (int v = 1; v <= n; ++v)
      if (mask & (1u << (v - 1))) {
        members.push_back(v);
        ws.push_back(w[v - 1]);
      }
    subsets[k] = VertexSubset(members);
    terms[k] = op(induced_subgraph(g, subsets[k]).graph, ws);
  });

  int best = -1;
  bool all_valid = true;
  for (int k = 0; k < count; ++k) {
    if (!terms[k].valid) {
      all_valid = false;
      continue;
    }
    if (best < 0 || terms[k].value > terms[best].value) best = k;
  }
  BoundReport out;
  if (best >= 0) out = terms[best];
  out.target = BoundTarget::ThetaTildeD;
  out.method = (best >= 0 ? terms[best].method : std::string("none")) + "_via_subgraphs";
  out.dim = d;
  if (best < 0) {
    out.valid = false;
    out.note = "no subgraph produced a bound";
  } else {
    out.subset = subsets[best];
    if (out.kind == BoundKind::Upper && !all_valid) {
      // An upper bound must cover every subgraph.
      out.valid = false;
      out.note = "some subgraph produced no upper bound";
    }
    if (out.kind == BoundKind::Lower && out.vectors) {
      // Lift to the full graph with zero vectors off the subset.
      const VectorSystem& sub = *out.vectors;
      VectorSystem full;
      full.dim = sub.dim;
      full.handle = sub.handle;
      full.allow_zero = true;
      full.reps.assign(n, CVector::Zero(sub.dim));
      for (int k = 0; k < out.subset->size(); ++k) full.reps[out.subset->members[k] - 1] = sub.reps[k];
      const Replay r = replay(g, w, full);
      out.value = r.value;
      out.certificate_error = r.defect;
      out.valid = r.defect <= kTolReplay;
      out.vectors = std::move(full);
    }
  }
  out.seconds = seconds_since(t0);
  return out;
}

GapReport gap_report(const Graph& g, const std::vector<double>& w, int d, const GapConfig& cfg) {
  check_inputs(g, w, d);
  GapReport out;
  out.dim = d;
  out.alpha = independence_number(g);
  out.theta = lovasz_theta(g, w, cfg.solver);

  auto best_of = [](const std::vector<BoundReport>& list, bool lower) {
    std::optional<double> best;
    for (const auto& r : list)
      if (r.valid && (!best || (lower ? r.value > *best : r.value < *best))) best = r.value;
    return best;
  };

  SeesawConfig ss;
  ss.seed = cfg.seed;
  out.lower_theta_d.push_back(lower_seesaw(g, w, d, ss));
  if (std::all_of(w.begin(), w.end(), [](double x) { return x > 0.0; })) {
    LambdaConfig lc;
    lc.seed = cfg.seed;
    lc.solver = cfg.solver;
    out.lower_theta_d.push_back(lower_lambda_max(g, w, d, lc));
  }
  for (auto variant : {TildeVariant::Frobenius, TildeVariant::Projector}) {
    TildeSeesawConfig tc;
    tc.variant = variant;
    tc.seed = cfg.seed;
    tc.solver = cfg.solver;
    out.lower_theta_tilde_d.push_back(lower_tilde_seesaw(g, w, d, tc));
  }
  out.best_lower_theta_d = best_of(out.lower_theta_d, true);
  // Every theta_d lower bound is also one for theta_tilde_d.
  {
    auto tilde = best_of(out.lower_theta_tilde_d, true);
    if (out.best_lower_theta_d && (!tilde || *out.best_lower_theta_d > *tilde)) tilde = out.best_lower_theta_d;
    out.best_lower_theta_tilde_d = tilde;
  }

  out.upper_theta_tilde_d.push_back(out.theta);
  const auto cliques = d <= g.size() ? enumerate_cliques(g, d) : std::vector<VertexSubset>{};
  UpperConfig uc;
  uc.solver = cfg.solver;
  uc.two_copy = cfg.two_copy;
  if (!cliques.empty()) {
    uc.cliques = cliques;
    out.upper_theta_d.push_back(upper_ray_sdp(g, w, d, uc));
  }
  if (!cfg.skip_ppt) {
    uc.cliques.clear();
    out.upper_theta_tilde_d.push_back(upper_tilde_ppt(g, w, d, uc));
    if (!cliques.empty()) {
      uc.cliques = cliques;
      out.upper_theta_d.push_back(upper_tilde_ppt(g, w, d, uc));
      if (out.best_lower_theta_d) {
        uc.theta_cut = round_down4(*out.best_lower_theta_d);
        uc.verified_lower = out.best_lower_theta_d;
        out.upper_theta_d.push_back(upper_tilde_ppt(g, w, d, uc));
      }
    }
    if (out.best_lower_theta_tilde_d) {
      uc.cliques.clear();
      uc.theta_cut = round_down4(*out.best_lower_theta_tilde_d);
      uc.verified_lower = out.best_lower_theta_tilde_d;
      out.upper_theta_tilde_d.push_back(upper_tilde_ppt(g, w, d, uc));
    }
  }
  out.best_upper_theta_tilde_d = best_of(out.upper_theta_tilde_d, false);
  // theta_d <= theta_tilde_d, so tilde upper bounds apply as well.
  {
    auto up = best_of(out.upper_theta_d, false);
    if (out.best_upper_theta_tilde_d && (!up || *out.best_upper_theta_tilde_d < *up)) up = out.best_upper_theta_tilde_d;
    out.best_upper_theta_d = up;
  }
  out.separation_certified = out.best_lower_theta_tilde_d && out.best_upper_theta_d &&
                             *out.best_lower_theta_tilde_d > *out.best_upper_theta_d;
  return out;
}

}  // namespace ctxdim
