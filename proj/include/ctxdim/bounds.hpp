#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctxdim/graph.hpp"
#include "ctxdim/hermitian.hpp"
#include "ctxdim/sdp.hpp"

namespace ctxdim {

enum class BoundKind { Lower, Upper };
/// theta: unrestricted weighted Lovasz number. theta_d: dimension-restricted
/// value. theta_tilde_d: its ray relaxation that admits zero vectors.
enum class BoundTarget { Theta, ThetaD, ThetaTildeD };

std::string to_string(BoundKind k);
std::string to_string(BoundTarget t);

struct BoundReport {
  BoundKind kind = BoundKind::Lower;
  BoundTarget target = BoundTarget::ThetaD;
  std::string method;
  /// False when the method found no certifiable bound; `value` is then
  /// meaningless and `note` says why.
  bool valid = false;
  double value = 0.0;
  std::string note;

  // Lower bounds: the replayed vector system and its defects.
  std::optional<VectorSystem> vectors;
  double certificate_error = 0.0;

  // Upper bounds: solver outcome. `value` is the dual objective, which
  // bounds the primal from above up to the dual residual.
  std::optional<double> primal_value;
  std::string solver_status;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
  int iterations = 0;

  // Configuration snapshot.
  int dim = 0;
  std::map<std::string, double> params;
  std::vector<VertexSubset> cliques;
  std::optional<double> theta_cut;
  /// Induced-subgraph searches record the maximizing subset.
  std::optional<VertexSubset> subset;
  std::uint64_t seed = 0;
  int restarts = 0;
  double seconds = 0.0;
};

/// Certificates and replayed values must agree to this.
inline constexpr double kTolReplay = 1e-6;

/// max_phi sum_i w_i |<phi|psi_i>|^2 = lambda_max(sum_i w_i |psi_i><psi_i|),
/// skipping zero vectors. Also returns the maximizing phi.
double best_handle_value(const std::vector<CVector>& psi, const std::vector<double>& w, CVector* phi = nullptr);

/// Replays sum_i w_i |<phi|psi_i>|^2 and the orthogonality / normalization
/// defects of `v` on `g`. Zero vectors are accepted only if v.allow_zero.
struct Replay {
  double value = 0.0;
  double defect = 0.0;
};
Replay replay(const Graph& g, const std::vector<double>& w, const VectorSystem& v);

/// Weighted Lovasz number: max sum_i w_i X_ii over X >= 0 with X_00 = 1,
/// X_ii = X_0i and X_ij = 0 on edges.
BoundReport lovasz_theta(const Graph& g, const std::vector<double>& w, const sdp::SdpSettings& settings = {});

struct SeesawConfig {
  /// Penalty weight; NaN selects 10 * max |w_i|.
  double eta = std::numeric_limits<double>::quiet_NaN();
  int restarts = 20;
  int max_iters = 5000;
  int polish_iters = 500;
  /// Relative change of the penalized objective that ends a restart.
  double tol = 1e-12;
  std::uint64_t seed = 1;
  /// Optional penalized-objective trace of the first restart.
  std::vector<double>* trace = nullptr;
};

/// Penalty seesaw between the pinned X (closed form) and rank-d PSD Y.
BoundReport lower_seesaw(const Graph& g, const std::vector<double>& w, int d, const SeesawConfig& cfg = {});

struct LambdaConfig {
  /// Spectrum offset; NaN selects min |w_i| / 10.
  double epsilon = std::numeric_limits<double>::quiet_NaN();
  int restarts = 50;
  int max_iters = 300;
  double tol = 1e-10;
  std::uint64_t seed = 1;
  sdp::SdpSettings solver = {};
};

/// Alternates max Tr(MX) over M >= 0 (M_ii = w_i, zero on edges) with X of
/// spectrum (1+eps, 1 x (d-1), 0 ...) aligned to M. Requires w_i > 0.
BoundReport lower_lambda_max(const Graph& g, const std::vector<double>& w, int d, const LambdaConfig& cfg = {});

enum class TildeVariant { Frobenius, Projector };

struct TildeSeesawConfig {
  TildeVariant variant = TildeVariant::Frobenius;
  /// NaN selects 10 * max |w_i| (Frobenius) or max |w_i| (projector).
  double eta = std::numeric_limits<double>::quiet_NaN();
  int restarts = 20;
  int max_iters = 5000;
  int polish_iters = 500;
  double tol = 1e-12;
  std::uint64_t seed = 1;
  sdp::SdpSettings solver = {};
};

/// Lower bound on the ray relaxation (zero vectors allowed).
BoundReport lower_tilde_seesaw(const Graph& g, const std::vector<double>& w, int d, const TildeSeesawConfig& cfg = {});

/// Settings for the two-copy relaxations (100 x 100 blocks on the
/// nine-vertex graph): a fixed penalty converges far better there than the
/// adaptive one, and the iteration cap keeps a solve under 90 s.
inline sdp::SdpSettings two_copy_settings() {
  sdp::SdpSettings s;
  s.tol = 1e-5;
  s.max_iters = 20000;
  s.rho = 300.0;
  s.adaptive_rho = false;
  s.anderson_memory = 0;
  return s;
}

/// Upper bounds from solves that stop at the iteration cap are still
/// reported when every residual is below this.
inline constexpr double kTolUpperResidual = 1e-3;

struct UpperConfig {
  /// Small SDPs (theta, ray relaxation).
  sdp::SdpSettings solver = {};
  sdp::SdpSettings two_copy = two_copy_settings();
  /// d-cliques for the basis identity (upper_tilde_ppt, upper_ray_sdp).
  std::vector<VertexSubset> cliques;
  /// Lower-bound cut sum_i w_i X_ii >= theta.
  std::optional<double> theta_cut;
  /// Verified lower bound backing theta_cut. Required whenever theta_cut is
  /// set; the cut may not exceed it rounded down to four decimals.
  std::optional<double> verified_lower;
};

/// Two-copy PPT relaxation of the quadratic form of theta_d.
BoundReport upper_quad_ppt(const Graph& g, const std::vector<double>& w, int d, const UpperConfig& cfg = {});

/// Two-copy PPT relaxation of the ray form, with optional clique and
/// lower-bound cuts. With cliques the bound applies to theta_d only.
BoundReport upper_tilde_ppt(const Graph& g, const std::vector<double>& w, int d, const UpperConfig& cfg = {});

/// Rank-free ray SDP with basis identities sum_{i in C} X_0i = 1 for each
/// supplied clique; every clique must have exactly d vertices.
BoundReport upper_ray_sdp(const Graph& g, const std::vector<double>& w, int d, const UpperConfig& cfg = {});

/// Builders behind the PPT bounds; exposed for tests and problem dumps.
void build_quad_ppt(sdp::SdpProblem& problem, const Graph& g, const std::vector<double>& w, int d);
void build_tilde_ppt(sdp::SdpProblem& problem, const Graph& g, const std::vector<double>& w, int d,
                     const std::vector<VertexSubset>& cliques, std::optional<double> theta_cut);

/// x rounded down to four decimals.
double round_down4(double x);

using SubgraphBound = std::function<BoundReport(const Graph&, const std::vector<double>&)>;

/// Maximizes a theta_d bound over all nonempty induced subgraphs. The
/// result bounds theta_tilde_d. Throws if g has more than `max_vertices`.
BoundReport tilde_via_subgraphs(const Graph& g, const std::vector<double>& w, int d, const SubgraphBound& op,
                                int max_vertices = 12);

struct GapConfig {
  std::uint64_t seed = 1;
  sdp::SdpSettings solver = {};
  sdp::SdpSettings two_copy = two_copy_settings();
  /// Skip the two-copy relaxations (they dominate the running time).
  bool skip_ppt = false;
};

struct GapReport {
  int dim = 0;
  int alpha = 0;
  BoundReport theta;
  std::vector<BoundReport> lower_theta_d;
  std::vector<BoundReport> lower_theta_tilde_d;
  std::vector<BoundReport> upper_theta_d;
  std::vector<BoundReport> upper_theta_tilde_d;
  std::optional<double> best_lower_theta_d;
  std::optional<double> best_upper_theta_d;
  std::optional<double> best_lower_theta_tilde_d;
  std::optional<double> best_upper_theta_tilde_d;
  /// Verified tilde lower bound strictly above the verified theta_d upper bound.
  bool separation_certified = false;
};

GapReport gap_report(const Graph& g, const std::vector<double>& w, int d, const GapConfig& cfg = {});

}  // namespace ctxdim
