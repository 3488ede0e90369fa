#include "ctxdim/membership.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "ctxdim/random.hpp"
#include "ctxdim/two_copy.hpp"

namespace ctxdim {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  std::size_t used = 0;
  if (slash == std::string::npos) {
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("malformed probability \"" + s + "\"");
    return v;
  }
  const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  const long double a = std::stold(num, &used);
  if (used != num.size()) throw std::invalid_argument("malformed probability \"" + s + "\"");
  const long double b = std::stold(den, &used);
  if (used != den.size() || b == 0.0L) throw std::invalid_argument("malformed probability \"" + s + "\"");
  return static_cast<double>(a / b);
}

// Scales every vector to unit length and rotates each representative so
// that <phi|psi_i> is real and nonnegative.
void normalize_and_align(VectorSystem& v) {
  v.handle.normalize();
  for (auto& r : v.reps) {
    const double nrm = r.norm();
    if (nrm > 0.0) r /= nrm;
    const cplx overlap = v.handle.dot(r);
    if (std::abs(overlap) > 0.0) r *= std::polar(1.0, -std::arg(overlap));
  }
  v.allow_zero = false;
}

// Vectors from a PSD matrix of rank about d, or nothing if the tail mass
// is too large for the replay to pass.
std::optional<VectorSystem> extract_system(const CMatrix& x, int d) {
  const CMatrix y = psd_truncate(hermitian_part(x), d);
  try {
    VectorSystem v = vectors_from_gram(y, d);
    for (const auto& r : v.reps)
      if (r.norm() == 0.0) return std::nullopt;
    if (v.handle.norm() == 0.0) return std::nullopt;
    normalize_and_align(v);
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

CMatrix apply_pins(const PinSet& pins, CMatrix x) {
  for (const auto& pin : pins.pins) {
    x(pin.row, pin.col) = pin.value;
    x(pin.col, pin.row) = pin.value;
  }
  return x;
}

void finish_inside(Verdict& v, const Behavior& b, std::optional<VectorSystem> sys) {
  if (!sys) return;
  const double err = certificate_error(b, *sys);
  if (err <= kTolCert) {
    v.status = Status::Inside;
    v.certificate_error = err;
    v.certificate = std::move(sys);
  }
}

}  // namespace

void validate(const Behavior& b) {
  if (b.size() != b.graph.size())
    throw std::invalid_argument("behavior has " + std::to_string(b.size()) + " entries but the graph has " +
                                std::to_string(b.graph.size()) + " vertices");
  for (int i = 0; i < b.size(); ++i) {
    const double p = b.p[i];
    if (!std::isfinite(p) || p < 0.0 || p > 1.0)
      throw std::invalid_argument("behavior entry p[" + std::to_string(i + 1) + "] is outside [0, 1]");
  }
}

std::vector<double> parse_probabilities(std::string_view json) {
  const auto doc = nlohmann::json::parse(json);
  if (!doc.is_object() || !doc.contains("p") || !doc["p"].is_array())
    throw std::invalid_argument("behavior JSON needs an array field \"p\"");
  std::vector<double> out;
  for (const auto& e : doc["p"]) {
    if (e.is_number()) out.push_back(e.get<double>());
    else if (e.is_string()) out.push_back(parse_rational(e.get<std::string>()));
    else throw std::invalid_argument("behavior field \"p\" must hold numbers or strings");
  }
  return out;
}

std::optional<double> PinSet::value(int row, int col) const {
  if (row > col) std::swap(row, col);
  for (const auto& pin : pins)
    if (pin.row == row && pin.col == col) return pin.value;
  return std::nullopt;
}

PinSet pins_for(const Behavior& b) {
  validate(b);
  const int n = b.size();
  PinSet out;
  out.dim = n + 1;
  for (int r = 0; r <= n; ++r)
    for (int c = r; c <= n; ++c) {
      if (r == c) out.pins.push_back({r, c, 1.0});
      else if (r == 0) out.pins.push_back({0, c, std::sqrt(b.p[c - 1])});
      else if (b.graph.adjacent(r, c)) out.pins.push_back({r, c, 0.0});
      else out.free.emplace_back(r, c);
    }
  return out;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Inside: return "Inside";
    case Status::Outside: return "Outside";
    case Status::Inconclusive: return "Inconclusive";
  }
  return "?";
}

double certificate_error(const Behavior& b, const VectorSystem& v) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (v.size() != b.size() || v.handle.size() != v.dim) return kInf;
  double err = std::abs(v.handle.norm() - 1.0);
  for (int i = 0; i < v.size(); ++i) {
    const CVector& r = v.reps[i];
    if (r.size() != v.dim || r.norm() == 0.0) return kInf;
    err = std::max(err, std::abs(r.norm() - 1.0));
    err = std::max(err, std::abs(std::norm(v.handle.dot(r)) - b.p[i]));
  }
  for (auto [i, j] : b.graph.edges()) err = std::max(err, std::abs(v.reps[i - 1].dot(v.reps[j - 1])));
  return err;
}

Verdict inner_frobenius(const Behavior& b, int d, const InnerConfig& cfg) {
  if (d < 1) throw std::invalid_argument("inner_frobenius: dimension must be at least 1");
  const auto t0 = Clock::now();
  const PinSet pins = pins_for(b);
  Verdict out;
  out.method = "inner_frobenius";
  out.seed = cfg.seed;
  out.residual = std::numeric_limits<double>::infinity();

  for (int r = 0; r < cfg.restarts; ++r) {
    auto rng = restart_engine(cfg.seed, r);
    CMatrix y = random_psd(pins.dim, d, rng);
    double res = std::numeric_limits<double>::infinity();
    double window_start = res;
    int it = 0;
    for (; it < cfg.max_iters; ++it) {
      const CMatrix x = apply_pins(pins, y);
      y = psd_truncate(x, d);
      res = (x - y).norm();
      if (cfg.trace && r == 0) cfg.trace->push_back(res);
      if (res <= cfg.tol_zero) break;
      if ((it + 1) % cfg.stall_window == 0) {
        if (res > (1.0 - cfg.stall_ratio) * window_start) break;
        window_start = res;
      }
    }
    out.iterations += std::min(it + 1, cfg.max_iters);
    out.restarts = r + 1;
    out.residual = std::min(out.residual, res);
    if (res <= cfg.tol_zero) {
      finish_inside(out, b, extract_system(y, d));
      if (out.status == Status::Inside) break;
    }
  }
  out.seconds = seconds_since(t0);
  return out;
}

Verdict inner_projector(const Behavior& b, int d, const InnerConfig& cfg) {
  if (d < 1) throw std::invalid_argument("inner_projector: dimension must be at least 1");
  const auto t0 = Clock::now();
  const PinSet pins = pins_for(b);
  const int dim = pins.dim;
  Verdict out;
  out.method = "inner_projector";
  out.seed = cfg.seed;
  out.residual = std::numeric_limits<double>::infinity();

  // X block with constants on the pins and (re, im) variables elsewhere.
  sdp::SdpProblem problem;
  const int blk = problem.add_psd_block(dim, sdp::Field::Complex);
  for (const auto& pin : pins.pins) problem.add_block_constant(blk, pin.row, pin.col, pin.value);
  std::vector<int> first_var;
  for (auto [r, c] : pins.free) {
    const int v = problem.add_variables(2);
    first_var.push_back(v);
    problem.add_block_term(blk, r, c, v, 1.0);
    problem.add_block_term(blk, r, c, v + 1, cplx(0.0, 1.0));
  }

  const int tail = dim - d;
  for (int r = 0; r < cfg.restarts; ++r) {
    auto rng = restart_engine(cfg.seed, r);
    if (tail <= 0) {
      // No rank restriction: any pinned PSD X works.
      Verdict tb = theta_body_membership(b, {cfg.solver});
      out.status = tb.status == Status::Inside ? Status::Inside : Status::Inconclusive;
      out.certificate = tb.certificate;
      out.certificate_error = tb.certificate_error;
      out.residual = 0.0;
      out.restarts = 1;
      break;
    }
    CMatrix frame = haar_frame(dim, tail, rng);
    CMatrix proj = frame * frame.adjoint();
    sdp::SdpSolution warm;
    bool have_warm = false;
    double res = std::numeric_limits<double>::infinity();
    double window_start = res;
    CMatrix x;
    int it = 0;
    const int iters = std::max(1, cfg.max_iters / 40);
    for (; it < iters; ++it) {
      // Tr(XP) = sum_rc X_rc P_cr; each free pair contributes 2 Re(X_rc P_cr).
      sdp::LinearExpr obj;
      for (const auto& pin : pins.pins) {
        const double mult = pin.row == pin.col ? 1.0 : 2.0;
        obj.constant += mult * pin.value * proj(pin.col, pin.row).real();
      }
      for (std::size_t k = 0; k < pins.free.size(); ++k) {
        auto [rr, cc] = pins.free[k];
        const cplx pcr = proj(cc, rr);
        obj.add(first_var[k], 2.0 * pcr.real());
        obj.add(first_var[k] + 1, -2.0 * pcr.imag());
      }
      problem.set_objective(obj, sdp::Sense::Minimize);
      auto sol = sdp::solve(problem, cfg.solver, have_warm ? &warm : nullptr);
      warm = sol;
      have_warm = true;
      x = hermitian_part(sol.primal_blocks[blk]);
      auto eig = eig_hermitian(x);
      res = std::max(0.0, (x * proj).trace().real());
      if (cfg.trace && r == 0) cfg.trace->push_back(res);
      proj = eig.vectors.rightCols(tail) * eig.vectors.rightCols(tail).adjoint();
      if (res <= cfg.tol_zero) break;
      if ((it + 1) % std::max(1, cfg.stall_window / 20) == 0) {
        if (res > (1.0 - cfg.stall_ratio) * window_start) break;
        window_start = res;
      }
    }
    out.iterations += std::min(it + 1, iters);
    out.restarts = r + 1;
    out.residual = std::min(out.residual, res);
    if (res <= cfg.tol_zero) {
      finish_inside(out, b, extract_system(x, d));
      if (out.status == Status::Inside) break;
    }
  }
  out.seconds = seconds_since(t0);
  return out;
}

std::vector<int> build_outer_ppt(sdp::SdpProblem& problem, const Behavior& b, int d) {
  if (d < 1) throw std::invalid_argument("outer_ppt: dimension must be at least 1");
  const PinSet pins = pins_for(b);
  const int side = pins.dim;
  TwoCopyLift lift(problem, side, d);
  problem.add_constraint(lift.trace(double(d) * d, d), sdp::Relation::Equal, double(side) * side);
  for (const auto& pin : pins.pins) {
    // Tr_A1[(|i><j| x 1) M] = (mu_ij / (n+1)) Tr_A1[M],  M = d Phi_I + Phi_V.
    std::vector<TwoCopyLift::BlockTerm> terms{{pin.row, pin.col, 1.0}};
    if (pin.value != 0.0)
      for (int a = 0; a < side; ++a) terms.push_back({a, a, -pin.value / side});
    lift.add_relation(terms);
  }
  return lift.add_cones();
}

Verdict outer_ppt(const Behavior& b, int d, const OuterConfig& cfg) {
  const auto t0 = Clock::now();
  sdp::SdpProblem problem;
  const auto cones = build_outer_ppt(problem, b, d);
  const auto res = sdp::solve_feasibility_eta(problem, cones, cfg.solver);
  Verdict out;
  out.method = "outer_ppt";
  out.seed = cfg.solver.seed;
  out.eta_max = res.eta_max;
  out.eta_upper = res.eta_upper;
  out.solver_residual = res.solution.max_residual();
  out.iterations = res.solution.iterations;
  // Both the primal margin and its dual bound must sit below -margin.
  if (res.solution.status == sdp::SdpStatus::Optimal && res.eta_max < -cfg.margin && res.eta_upper < -cfg.margin)
    out.status = Status::Outside;
  out.seconds = seconds_since(t0);
  return out;
}

Verdict theta_body_membership(const Behavior& b, const OuterConfig& cfg) {
  const auto t0 = Clock::now();
  const PinSet pins = pins_for(b);
  sdp::SdpProblem problem;
  const int blk = problem.add_psd_block(pins.dim);
  for (const auto& pin : pins.pins) problem.add_block_constant(blk, pin.row, pin.col, pin.value);
  for (auto [r, c] : pins.free) problem.add_block_term(blk, r, c, problem.add_variables(1), 1.0);
  const int block_list[] = {blk};
  const auto res = sdp::solve_feasibility_eta(problem, block_list, cfg.solver);

  Verdict out;
  out.method = "theta_body";
  out.seed = cfg.solver.seed;
  out.eta_max = res.eta_max;
  out.eta_upper = res.eta_upper;
  out.solver_residual = res.solution.max_residual();
  out.iterations = res.solution.iterations;
  if (res.solution.status == sdp::SdpStatus::Optimal) {
    if (res.eta_max < -cfg.margin && res.eta_upper < -cfg.margin) {
      out.status = Status::Outside;
    } else if (res.eta_max >= -cfg.margin) {
      // The original block (without the eta shift) is X itself.
      const CMatrix x = problem.block_value(blk, res.solution.x.head(problem.num_variables()));
      finish_inside(out, b, extract_system(x, pins.dim));
    }
  }
  out.seconds = seconds_since(t0);
  return out;
}

}  // namespace ctxdim
