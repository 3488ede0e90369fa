#include "ctxdim/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace ctxdim::report {

json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;  // no negative zero
}

namespace {

json optional_number(const std::optional<double>& x) { return x ? number(*x) : json(nullptr); }

json subset_json(const VertexSubset& s) { return s.members; }

json complex_vector(const CVector& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back({number(v(k).real()), number(v(k).imag())});
  return out;
}

}  // namespace

json to_json(const Graph& g) {
  json edges = json::array();
  for (auto [a, b] : g.edges()) edges.push_back({a, b});
  return {{"n", g.size()}, {"edges", edges}};
}

json to_json(const VectorSystem& v) {
  json reps = json::array();
  for (const auto& r : v.reps) reps.push_back(complex_vector(r));
  return {{"dim", v.dim}, {"allow_zero", v.allow_zero}, {"handle", complex_vector(v.handle)}, {"vectors", reps}};
}

json to_json(const Verdict& v) {
  json out;
  out["status"] = to_string(v.status);
  out["method"] = v.method;
  out["certificate_error"] = number(v.certificate_error);
  out["eta_max"] = optional_number(v.eta_max);
  out["eta_upper"] = optional_number(v.eta_upper);
  out["residual"] = number(v.residual);
  out["solver_residual"] = number(v.solver_residual);
  out["iterations"] = v.iterations;
  out["restarts"] = v.restarts;
  out["seed"] = v.seed;
  out["certificate"] = v.certificate ? to_json(*v.certificate) : json(nullptr);
  return out;
}

json to_json(const BoundReport& r) {
  json out;
  out["kind"] = to_string(r.kind);
  out["target"] = to_string(r.target);
  out["method"] = r.method;
  out["valid"] = r.valid;
  out["value"] = r.valid ? number(r.value) : json(nullptr);
  if (!r.note.empty()) out["note"] = r.note;
  out["dim"] = r.dim;
  if (r.kind == BoundKind::Lower) {
    out["certificate_error"] = number(r.certificate_error);
    out["certificate"] = r.vectors ? to_json(*r.vectors) : json(nullptr);
  } else {
    out["primal_value"] = optional_number(r.primal_value);
    out["solver"] = {{"status", r.solver_status},
                     {"primal_residual", number(r.primal_residual)},
                     {"dual_residual", number(r.dual_residual)},
                     {"gap", number(r.gap)}};
  }
  out["iterations"] = r.iterations;
  json params = json::object();
  for (const auto& [k, v] : r.params) params[k] = number(v);
  json cuts = json::object();
  json cl = json::array();
  for (const auto& c : r.cliques) cl.push_back(subset_json(c));
  cuts["cliques"] = cl;
  cuts["theta_cut"] = optional_number(r.theta_cut);
  out["config"] = {{"params", params}, {"cuts", cuts}, {"seed", r.seed}, {"restarts", r.restarts}};
  if (r.subset) out["subset"] = subset_json(*r.subset);
  return out;
}

json to_json(const GapReport& r) {
  auto list = [](const std::vector<BoundReport>& v) {
    json a = json::array();
    for (const auto& b : v) a.push_back(to_json(b));
    return a;
  };
  json out;
  out["dim"] = r.dim;
  out["alpha"] = r.alpha;
  out["theta"] = r.theta.valid ? number(r.theta.value) : json(nullptr);
  out["best"] = {{"lower_theta_d", optional_number(r.best_lower_theta_d)},
                 {"upper_theta_d", optional_number(r.best_upper_theta_d)},
                 {"lower_theta_tilde_d", optional_number(r.best_lower_theta_tilde_d)},
                 {"upper_theta_tilde_d", optional_number(r.best_upper_theta_tilde_d)}};
  out["separation_certified"] = r.separation_certified;
  out["bounds"] = {{"theta", to_json(r.theta)},
                   {"lower_theta_d", list(r.lower_theta_d)},
                   {"lower_theta_tilde_d", list(r.lower_theta_tilde_d)},
                   {"upper_theta_d", list(r.upper_theta_d)},
                   {"upper_theta_tilde_d", list(r.upper_theta_tilde_d)}};
  return out;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

std::string gap_table(const GapReport& r) {
  std::ostringstream os;
  auto cell = [](const std::optional<double>& x) {
    if (!x) return std::string("-");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", *x);
    return std::string(buf);
  };
  os << "d = " << r.dim << ", alpha = " << r.alpha << ", theta = "
     << cell(r.theta.valid ? std::optional<double>(r.theta.value) : std::nullopt) << "\n";
  os << "              lower       upper\n";
  os << "theta_d       " << cell(r.best_lower_theta_d) << "    " << cell(r.best_upper_theta_d) << "\n";
  os << "theta_tilde_d " << cell(r.best_lower_theta_tilde_d) << "    " << cell(r.best_upper_theta_tilde_d) << "\n";
  os << "separation theta_tilde_d > theta_d: " << (r.separation_certified ? "certified" : "not certified") << "\n";
  auto rows = [&](const char* label, const std::vector<BoundReport>& list) {
    for (const auto& b : list)
      os << "  " << label << " " << b.method << ": " << (b.valid ? cell(b.value) : "no bound")
         << (b.theta_cut ? " (theta cut " + cell(b.theta_cut) + ")" : "")
         << (b.cliques.empty() ? "" : " (" + std::to_string(b.cliques.size()) + " cliques)") << "\n";
  };
  rows("lower theta_d      ", r.lower_theta_d);
  rows("lower theta_tilde_d", r.lower_theta_tilde_d);
  rows("upper theta_d      ", r.upper_theta_d);
  rows("upper theta_tilde_d", r.upper_theta_tilde_d);
  return os.str();
}

}  // namespace ctxdim::report
