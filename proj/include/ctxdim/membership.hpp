#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctxdim/graph.hpp"
#include "ctxdim/hermitian.hpp"
#include "ctxdim/sdp.hpp"

namespace ctxdim {

/// Probability vector on the vertices of an exclusivity graph.
struct Behavior {
  Graph graph;
  std::vector<double> p;

  int size() const { return static_cast<int>(p.size()); }
};

/// Throws std::invalid_argument unless p has one entry in [0, 1] per vertex.
void validate(const Behavior& b);

/// Parses {"p": [...]}; entries may be numbers or rational strings "a/b".
std::vector<double> parse_probabilities(std::string_view json);

/// Known entries of the (n+1) x (n+1) Gram matrix of (phi, psi_1..psi_n):
/// X_0i = sqrt(p_i), X_ii = 1, X_ij = 0 on edges. Row/column 0 is phi.
struct PinSet {
  struct Pin {
    int row;
    int col;
    double value;
  };
  int dim = 0;
  /// Upper-triangle pins (row <= col), sorted by (row, col).
  std::vector<Pin> pins;
  /// Upper-triangle off-diagonal positions left free.
  std::vector<std::pair<int, int>> free;

  std::optional<double> value(int row, int col) const;
};

PinSet pins_for(const Behavior& b);

enum class Status { Inside, Outside, Inconclusive };
std::string to_string(Status s);

struct Verdict {
  Status status = Status::Inconclusive;
  std::string method;
  /// Inside: the replayed vector system.
  std::optional<VectorSystem> certificate;
  /// Inside: largest replay defect of the certificate.
  double certificate_error = 0.0;
  /// Outer and theta-body paths: feasibility margin and its dual bound.
  std::optional<double> eta_max;
  std::optional<double> eta_upper;
  /// Inner paths: best final ||X - Y||_F or Tr(XP) over restarts.
  double residual = 0.0;
  /// Solver residual of the SDP behind eta_max.
  double solver_residual = 0.0;
  int iterations = 0;
  int restarts = 0;
  std::uint64_t seed = 0;
  double seconds = 0.0;
};

/// Certificates are accepted when every defect is at most this.
inline constexpr double kTolCert = 1e-6;

/// Largest of: normalization defect, orthogonality defect on edges, and
/// | |<phi|psi_i>|^2 - p_i |. Zero vectors are rejected.
double certificate_error(const Behavior& b, const VectorSystem& v);

struct InnerConfig {
  int restarts = 20;
  int max_iters = 20000;
  /// Success threshold on ||X - Y||_F (Frobenius) or Tr(XP) (projector).
  double tol_zero = 1e-7;
  /// A restart stops early once the residual improves by less than this
  /// factor over `stall_window` iterations.
  double stall_ratio = 1e-3;
  int stall_window = 500;
  std::uint64_t seed = 1;
  sdp::SdpSettings solver = {};
  /// Optional per-iteration residual trace of the first restart.
  std::vector<double>* trace = nullptr;
};

/// Alternating projections between the pinned affine set and the PSD
/// matrices of rank <= d.
Verdict inner_frobenius(const Behavior& b, int d, const InnerConfig& cfg = {});

/// Alternates min Tr(XP) over pinned PSD X (an SDP) with P set to the
/// projector onto the n+1-d smallest eigenvectors of X.
Verdict inner_projector(const Behavior& b, int d, const InnerConfig& cfg = {});

struct OuterConfig {
  sdp::SdpSettings solver = {};
  /// eta_max below -margin is reported as Outside.
  double margin = 1e-6;
};

/// Positive-partial-transpose relaxation of the two-copy feasibility
/// problem, solved in eta-max form. Can only answer Outside or Inconclusive.
Verdict outer_ppt(const Behavior& b, int d, const OuterConfig& cfg = {});

/// Feasibility of {X >= 0, pins} without a rank cap, in eta-max form.
Verdict theta_body_membership(const Behavior& b, const OuterConfig& cfg = {});

/// Builds the two-copy feasibility system; exposed for tests and dumps.
/// Returns the blocks that carry eta.
std::vector<int> build_outer_ppt(sdp::SdpProblem& problem, const Behavior& b, int d);

}  // namespace ctxdim
