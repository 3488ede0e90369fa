#include "ctxdim/properties.hpp"

#include <algorithm>
#include <cmath>

#include "ctxdim/bounds.hpp"
#include "ctxdim/random.hpp"

namespace ctxdim {

namespace {

constexpr double kSandwichSlack = 2e-3;
constexpr double kFullRankTol = 1e-4;

CVector random_unit(int d, std::mt19937_64& rng) {
  CVector v = complex_gaussian(d, 1, rng).col(0);
  return v / v.norm();
}

void record(PropertyCheck& c, bool ok, const std::string& what) {
  ++c.cases;
  if (ok) return;
  ++c.failures;
  if (c.first_failure.empty()) c.first_failure = what;
}

std::string describe(int index, const Graph& g, int d) {
  return "instance " + std::to_string(index) + " (n = " + std::to_string(g.size()) + ", " +
         std::to_string(g.edge_count()) + " edges, d = " + std::to_string(d) + ")";
}

}  // namespace

PlantedInstance planted_instance(int n, int d, double edge_prob, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(edge_prob);
  std::vector<CVector> psi;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    // Orthonormal basis of the span of the accepted neighbours.
    std::vector<CVector> basis;
    for (int j = 0; j < i; ++j) {
      if (!coin(rng) || static_cast<int>(basis.size()) + 1 >= d) continue;
      CVector r = psi[j];
      for (const auto& b : basis) r -= b.dot(r) * b;
      if (r.norm() < 1e-8) continue;
      basis.push_back(r / r.norm());
      edges.emplace_back(j + 1, i + 1);
    }
    CVector v = complex_gaussian(d, 1, rng).col(0);
    for (const auto& b : basis) v -= b.dot(v) * b;
    psi.push_back(v / v.norm());
  }
  PlantedInstance out;
  out.dim = d;
  out.vectors.dim = d;
  out.vectors.handle = random_unit(d, rng);
  out.vectors.reps = psi;
  out.behavior.graph = Graph(n, edges);
  for (const auto& r : psi) out.behavior.p.push_back(std::norm(out.vectors.handle.dot(r)));
  return out;
}

PropertySummary property_suite(const PropertyConfig& cfg) {
  PropertyCheck planted{"a", "inner methods certify planted members", 0, 0, ""};
  PropertyCheck contradiction{"b", "no Inside/Outside contradiction", 0, 0, ""};
  PropertyCheck sandwich{"c", "every lower bound <= every upper bound + 2e-3", 0, 0, ""};
  PropertyCheck full_rank{"d", "bounds at d = n + 1 match theta within 1e-4", 0, 0, ""};
  PropertyCheck truncation{"e", "psd_truncate beats random-search oracle", 0, 0, ""};

  for (int k = 0; k < cfg.instances; ++k) {
    auto rng = restart_engine(cfg.seed, static_cast<std::uint64_t>(k));
    const int n = std::uniform_int_distribution<int>(3, cfg.max_vertices)(rng);
    const int d = std::uniform_int_distribution<int>(2, 3)(rng);
    const double q = std::uniform_real_distribution<double>(0.2, 0.7)(rng);
    const PlantedInstance inst = planted_instance(n, d, q, rng);
    const Graph& g = inst.behavior.graph;
    const std::string where = describe(k, g, d);
    const bool heavy = k % cfg.ppt_stride == 0 && n <= cfg.ppt_max_vertices;

    // Membership of the planted behavior and of a random perturbation.
    InnerConfig ic;
    ic.seed = cfg.seed + k;
    ic.restarts = 10;
    Verdict in = inner_frobenius(inst.behavior, d, ic);
    if (in.status != Status::Inside) in = inner_projector(inst.behavior, d, ic);
    record(planted, in.status == Status::Inside && in.certificate_error <= kTolCert, where);

    Behavior noisy = inst.behavior;
    std::uniform_real_distribution<double> jitter(-0.3, 0.3);
    for (double& p : noisy.p) p = std::clamp(p + jitter(rng), 0.0, 1.0);
    for (const Behavior* b : std::initializer_list<const Behavior*>{&inst.behavior, &noisy}) {
      InnerConfig quick = ic;
      quick.restarts = 3;
      const Verdict inner = b == &inst.behavior ? in : inner_frobenius(*b, d, quick);
      const Verdict body = theta_body_membership(*b);
      bool ok = !(inner.status == Status::Inside && body.status == Status::Outside);
      if (heavy) {
        const Verdict outer = outer_ppt(*b, d);
        ok = ok && !(inner.status == Status::Inside && outer.status == Status::Outside);
      }
      record(contradiction, ok, where);
    }

    // Bounds with random positive weights.
    std::vector<double> w(n);
    std::uniform_real_distribution<double> wdist(0.2, 1.5);
    for (double& x : w) x = wdist(rng);
    SeesawConfig sc;
    sc.seed = cfg.seed + k;
    sc.restarts = 10;
    LambdaConfig lc;
    lc.seed = cfg.seed + k;
    lc.restarts = 3;
    lc.max_iters = 100;
    TildeSeesawConfig tc;
    tc.seed = cfg.seed + k;
    tc.restarts = 10;
    std::vector<BoundReport> lower_d{lower_seesaw(g, w, d, sc), lower_lambda_max(g, w, d, lc)};
    std::vector<BoundReport> lower_tilde{lower_tilde_seesaw(g, w, d, tc)};
    const BoundReport theta = lovasz_theta(g, w);
    std::vector<BoundReport> upper_d;
    std::vector<BoundReport> upper_tilde{theta};
    UpperConfig uc;
    uc.cliques = enumerate_cliques(g, d);
    if (!uc.cliques.empty()) upper_d.push_back(upper_ray_sdp(g, w, d, uc));
    if (heavy) {
      upper_d.push_back(upper_tilde_ppt(g, w, d, uc));
      uc.cliques.clear();
      upper_tilde.push_back(upper_tilde_ppt(g, w, d, uc));
      upper_d.push_back(upper_quad_ppt(g, w, d, uc));
    }
    // theta_d <= theta_tilde_d: lower bounds on theta_d count for both, upper
    // bounds on theta_tilde_d count for both.
    lower_tilde.insert(lower_tilde.end(), lower_d.begin(), lower_d.end());
    upper_d.insert(upper_d.end(), upper_tilde.begin(), upper_tilde.end());
    bool ok = true;
    std::string worst;
    auto compare = [&](const std::vector<BoundReport>& lows, const std::vector<BoundReport>& ups) {
      for (const auto& lo : lows)
        for (const auto& up : ups)
          if (lo.valid && up.valid && lo.value > up.value + kSandwichSlack) {
            ok = false;
            if (worst.empty()) worst = lo.method + " " + std::to_string(lo.value) + " > " + up.method + " " +
                                       std::to_string(up.value);
          }
    };
    compare(lower_d, upper_d);
    compare(lower_tilde, upper_tilde);
    record(sandwich, ok, where + (worst.empty() ? "" : ": " + worst));

    // No rank restriction at d = n + 1.
    SeesawConfig full = sc;
    full.restarts = 20;
    const BoundReport lo = lower_seesaw(g, w, n + 1, full);
    const bool match = lo.valid && theta.valid && std::abs(lo.value - theta.value) <= kFullRankTol;
    record(full_rank, match,
           where + ": seesaw " + std::to_string(lo.value) + " vs theta " + std::to_string(theta.value));

    // Eckart-Young: no rank-<=d PSD candidate is closer than the truncation.
    const int m = n + 1;
    const CMatrix g0 = complex_gaussian(m, m, rng);
    const CMatrix a = hermitian_part(g0);
    const CMatrix t = psd_truncate(a, d);
    const double best = (a - t).norm();
    bool beaten = false;
    for (int trial = 0; trial < 200 && !beaten; ++trial) {
      CMatrix cand;
      if (trial % 2 == 0) {
        cand = random_psd(m, d, rng) * (a.norm() / m);
      } else {
        const CMatrix h = complex_gaussian(m, m, rng);
        cand = psd_truncate(hermitian_part(CMatrix(t + 1e-2 * hermitian_part(h))), d);
      }
      beaten = (a - cand).norm() < best - 1e-12;
    }
    record(truncation, !beaten, where);
  }
  return {{planted, contradiction, sandwich, full_rank, truncation}};
}

}  // namespace ctxdim
