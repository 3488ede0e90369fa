#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ctxdim/hermitian.hpp"

namespace ctxdim::sdp {

enum class Field { Real, Complex };
enum class Relation { Equal, GreaterEqual, LessEqual };
enum class Sense { Minimize, Maximize };

struct Term {
  int var;
  double coef;
};

inline constexpr double kDropTol = 1e-13;

/// Sparse affine form  sum_k coef_k * x_{var_k} + constant.
struct LinearExpr {
  std::vector<Term> terms;
  double constant = 0.0;

  LinearExpr() = default;
  LinearExpr(double c) : constant(c) {}  // NOLINT(google-explicit-constructor)
  static LinearExpr var(int index, double coef = 1.0) {
    LinearExpr e;
    e.terms.push_back({index, coef});
    return e;
  }

  LinearExpr& add(int index, double coef) {
    terms.push_back({index, coef});
    return *this;
  }
  LinearExpr& operator+=(const LinearExpr& o);
  LinearExpr& operator-=(const LinearExpr& o);
  LinearExpr& operator*=(double s);
  /// Merges repeated variables and drops coefficients at or below
  /// kDropTol * max(1, max |coef|) (cancellation noise).
  LinearExpr& compress();

  double evaluate(const Eigen::VectorXd& x) const;
};

LinearExpr operator+(LinearExpr a, const LinearExpr& b);
LinearExpr operator-(LinearExpr a, const LinearExpr& b);
LinearExpr operator*(double s, LinearExpr a);

/// A semidefinite program in affine form:
///
///   minimize / maximize  f(x)
///   subject to           g_k(x) (==, >=, <=) rhs_k
///                        F_b(x) = F_b0 + sum_j x_j F_bj  PSD   for every block b
///
/// The variables x are free reals. Each PSD block is real symmetric or
/// complex Hermitian; entries are given on or above the diagonal and the
/// lower triangle is implied. A block carrying only the identity map on its
/// own variables is the usual "X >= 0" primal block.
class SdpProblem {
 public:
  struct Constraint {
    LinearExpr expr;
    Relation relation;
    double rhs;
  };
  struct BlockEntry {
    int row;
    int col;
    int var;  // -1 for the constant part
    cplx coef;
  };
  struct Block {
    int dim;
    Field field;
    std::vector<BlockEntry> entries;
  };

  /// Appends `count` variables and returns the index of the first.
  int add_variables(int count);
  int num_variables() const { return num_vars_; }

  void set_objective(LinearExpr f, Sense sense);
  const LinearExpr& objective() const { return objective_; }
  Sense sense() const { return sense_; }

  /// Returns the constraint index.
  int add_constraint(LinearExpr lhs, Relation rel, double rhs);
  const std::vector<Constraint>& constraints() const { return constraints_; }

  /// Returns the block index.
  int add_psd_block(int dim, Field field = Field::Real);
  /// F(row, col) += coef * x_var (and the conjugate at (col, row)).
  void add_block_term(int block, int row, int col, int var, cplx coef);
  void add_block_constant(int block, int row, int col, cplx value);
  /// F(row, col) += re(x) + i*im(x).
  void add_block_expr(int block, int row, int col, const LinearExpr& re, const LinearExpr& im = {});
  const std::vector<Block>& blocks() const { return blocks_; }

  /// Evaluates F_b(x) as a dense Hermitian matrix.
  CMatrix block_value(int block, const Eigen::VectorXd& x) const;
  bool all_real() const;

  std::string to_json() const;
  static SdpProblem from_json(const std::string& text);

 private:
  int num_vars_ = 0;
  LinearExpr objective_;
  Sense sense_ = Sense::Minimize;
  std::vector<Constraint> constraints_;
  std::vector<Block> blocks_;
};

struct SdpSettings {
  /// Relative primal residual, dual residual and duality gap target.
  double tol = 1e-8;
  int max_iters = 100000;
  double rho = 0.1;
  /// Penalty multiplier for equality rows relative to cone rows.
  double equality_rho_scale = 1e3;
  /// Over-relaxation parameter in (0, 2).
  double alpha = 1.6;
  /// Proximal regularization of the x-update.
  double sigma = 1e-6;
  int scaling_passes = 10;
  bool adaptive_rho = true;
  int check_every = 10;
  /// Anderson acceleration memory (0 disables).
  int anderson_memory = 10;
  /// Print residuals to stderr every `verbose` iterations (0 = silent).
  int verbose = 0;
  /// Recorded for provenance; the iteration itself uses no randomness.
  std::uint64_t seed = 0;
};

enum class SdpStatus { Optimal, InfeasibleCertified, Unbounded, MaxIter };

std::string to_string(SdpStatus s);

struct SdpSolution {
  SdpStatus status = SdpStatus::MaxIter;
  Eigen::VectorXd x;
  /// Conic slack and multiplier vectors, rows ordered as equalities,
  /// inequalities, then PSD blocks in svec layout.
  Eigen::VectorXd slack;
  Eigen::VectorXd dual;
  /// Conic multiplier of each add_constraint row (nonnegative for
  /// inequalities), in the order the constraints were added.
  std::vector<double> constraint_duals;
  /// PSD projections of F_b(x) and the matching dual matrices.
  std::vector<CMatrix> primal_blocks;
  std::vector<CMatrix> dual_blocks;
  double objective = 0.0;
  double dual_objective = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
  int iterations = 0;
  int refactorizations = 0;

  double max_residual() const { return std::max({primal_residual, dual_residual, gap}); }
};

/// Operator-splitting (ADMM) solve with Ruiz equilibration, over-relaxation
/// and adaptive penalty. `warm` may carry x/slack/dual from a previous solve
/// of a problem with identical structure.
SdpSolution solve(const SdpProblem& problem, const SdpSettings& settings = {}, const SdpSolution* warm = nullptr);

struct EtaResult {
  /// max eta such that every listed block satisfies F_b(x) >= eta * I,
  /// capped at `cap`.
  double eta_max = 0.0;
  /// Dual objective: an upper bound on eta_max up to the dual residual.
  double eta_upper = 0.0;
  SdpSolution solution;
};

/// Feasibility margin of the constraint system of `problem` (its objective is
/// ignored). A negative eta_max means the original system is infeasible.
EtaResult solve_feasibility_eta(const SdpProblem& problem, std::span<const int> lhs_blocks,
                                const SdpSettings& settings = {}, double cap = 1.0);

/// Relative residuals of `x` against the problem data, the same quantities
/// the solver reports as primal_residual (constraints and PSD blocks).
double replay_primal_residual(const SdpProblem& problem, const Eigen::VectorXd& x);

}  // namespace ctxdim::sdp
