// Command-line front end: graph parameters, membership verdicts, bounds,
// gap reports and the reproduction suite.

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "ctxdim/bounds.hpp"
#include "ctxdim/fixtures.hpp"
#include "ctxdim/report.hpp"
#include "ctxdim/reproduce.hpp"

using namespace ctxdim;
using report::json;

namespace {

struct RunConfig {
  std::string command;
  std::string graph = "builtin:gkk";
  std::string behavior;
  int dim = 3;
  std::string weights;
  std::optional<double> eta;
  std::optional<double> epsilon;
  std::optional<double> theta_cut;
  std::string cliques = "none";
  std::string method;
  std::uint64_t seed = 1;
  std::optional<double> tol;
  bool json_out = false;
  std::string out;
  std::vector<int> only;
  std::vector<int> perturb;
  int property_instances = 100;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int parse_count(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  const int n = std::stoi(s, &used);
  if (used != s.size() || n < 1) throw std::invalid_argument("bad " + what + " \"" + s + "\"");
  return n;
}

Graph load_graph(const std::string& spec) {
  if (spec.rfind("builtin:", 0) != 0) return parse_graph(read_file(spec));
  const std::string name = spec.substr(8);
  if (name == "gkk") return graphs::gkk();
  if (name == "c5") return graphs::cycle(5);
  const auto colon = name.find(':');
  if (colon != std::string::npos) {
    const std::string family = name.substr(0, colon);
    const int n = parse_count(name.substr(colon + 1), "vertex count");
    if (family == "cycle") return graphs::cycle(n);
    if (family == "path") return graphs::path(n);
    if (family == "complete") return graphs::complete(n);
    if (family == "edgeless") return graphs::edgeless(n);
  }
  throw std::invalid_argument("--graph: unknown built-in \"" + name +
                              "\" (gkk, c5, cycle:N, path:N, complete:N, edgeless:N)");
}

Behavior load_behavior(const Graph& g, const std::string& spec) {
  if (spec.empty()) throw std::invalid_argument("--behavior is required for this command");
  Behavior b;
  if (spec.size() == 2 && spec[0] == 'p' && spec[1] >= '1' && spec[1] <= '4') {
    b = fixtures::named_behavior(spec);
    if (!(b.graph == g)) throw std::invalid_argument("--behavior " + spec + " belongs to builtin:gkk");
    return b;
  }
  b.graph = g;
  b.p = parse_probabilities(read_file(spec));
  validate(b);
  return b;
}

std::vector<double> load_weights(const Graph& g, const std::string& spec) {
  if (spec.empty()) return std::vector<double>(g.size(), 1.0);
  std::vector<double> w;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    w.push_back(std::stod(item, &used));
    if (used != item.size()) throw std::invalid_argument("--weights: malformed entry \"" + item + "\"");
  }
  if (static_cast<int>(w.size()) != g.size())
    throw std::invalid_argument("--weights: expected " + std::to_string(g.size()) + " entries");
  return w;
}

// "none", "auto" (all d-cliques) or an explicit list "1,2,3;4,7,8".
std::vector<VertexSubset> load_cliques(const Graph& g, int d, const std::string& spec) {
  if (spec == "none") return {};
  if (spec == "auto") return d <= g.size() ? enumerate_cliques(g, d) : std::vector<VertexSubset>{};
  std::vector<VertexSubset> out;
  std::stringstream groups(spec);
  std::string group;
  while (std::getline(groups, group, ';')) {
    std::vector<int> members;
    std::stringstream ss(group);
    std::string item;
    while (std::getline(ss, item, ',')) members.push_back(parse_count(item, "clique vertex"));
    out.emplace_back(members);
  }
  return out;
}

sdp::SdpSettings solver_settings(const RunConfig& c, sdp::SdpSettings s) {
  if (c.tol) s.tol = *c.tol;
  s.seed = c.seed;
  return s;
}

json config_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["graph"] = c.graph;
  if (!c.behavior.empty()) j["behavior"] = c.behavior;
  j["dim"] = c.dim;
  j["weights"] = c.weights.empty() ? json("ones") : json(c.weights);
  j["eta"] = c.eta ? report::number(*c.eta) : json(nullptr);
  j["epsilon"] = c.epsilon ? report::number(*c.epsilon) : json(nullptr);
  j["theta_cut"] = c.theta_cut ? report::number(*c.theta_cut) : json(nullptr);
  j["cliques"] = c.cliques;
  j["method"] = c.method;
  j["seed"] = c.seed;
  j["tol"] = c.tol ? report::number(*c.tol) : json(nullptr);
  return j;
}

// Best verified lower bound to back a theta cut: theta_d methods when the
// cut is combined with basis identities, tilde methods otherwise.
BoundReport backing_lower(const Graph& g, const std::vector<double>& w, int d, bool for_theta_d,
                          const RunConfig& c) {
  SeesawConfig sc;
  sc.seed = c.seed;
  if (c.eta) sc.eta = *c.eta;
  BoundReport best = lower_seesaw(g, w, d, sc);
  if (!for_theta_d) {
    for (auto variant : {TildeVariant::Frobenius, TildeVariant::Projector}) {
      TildeSeesawConfig tc;
      tc.variant = variant;
      tc.seed = c.seed;
      auto r = lower_tilde_seesaw(g, w, d, tc);
      if (r.valid && (!best.valid || r.value > best.value)) best = std::move(r);
    }
  }
  if (!best.valid) throw std::runtime_error("no verified lower bound is available to back --theta-cut");
  return best;
}

void emit(const RunConfig& c, const json& doc, const std::string& text) {
  const std::string body = report::dump(doc);
  if (!c.out.empty()) {
    std::ofstream f(c.out);
    if (!f) throw std::runtime_error("cannot write " + c.out);
    f << body;
  }
  if (c.json_out) std::cout << body;
  else std::cout << text;
}

std::string bound_text(const BoundReport& r) {
  std::ostringstream os;
  os.precision(10);
  os << to_string(r.kind) << " bound on " << to_string(r.target) << " (" << r.method << "): ";
  if (r.valid) os << r.value;
  else os << "none (" << r.note << ")";
  os << "\n";
  return os.str();
}

int run(RunConfig& c) {
  const Graph g = load_graph(c.graph);
  json doc;
  doc["config"] = config_json(c);

  if (c.command == "alpha") {
    const int a = independence_number(g);
    doc["alpha"] = a;
    json s = maximum_independent_set(g).members;
    doc["independent_set"] = s;
    emit(c, doc, "alpha = " + std::to_string(a) + "\n");
    return 0;
  }
  if (c.command == "theta") {
    const auto w = load_weights(g, c.weights);
    const auto r = lovasz_theta(g, w, solver_settings(c, {}));
    doc["report"] = report::to_json(r);
    emit(c, doc, bound_text(r));
    return 0;
  }
  if (c.command == "member") {
    const Behavior b = load_behavior(g, c.behavior);
    InnerConfig ic;
    ic.seed = c.seed;
    ic.solver = solver_settings(c, {});
    OuterConfig oc;
    oc.solver = solver_settings(c, {});
    const std::string m = c.method.empty() ? "auto" : c.method;
    Verdict v;
    if (m == "frobenius") v = inner_frobenius(b, c.dim, ic);
    else if (m == "projector") v = inner_projector(b, c.dim, ic);
    else if (m == "ppt") v = outer_ppt(b, c.dim, oc);
    else if (m == "theta-body") v = theta_body_membership(b, oc);
    else if (m == "auto") {
      v = inner_frobenius(b, c.dim, ic);
      if (v.status != Status::Inside) v = inner_projector(b, c.dim, ic);
      if (v.status != Status::Inside) v = outer_ppt(b, c.dim, oc);
    } else {
      throw std::invalid_argument("--method for member: auto, frobenius, projector, ppt, theta-body");
    }
    doc["verdict"] = report::to_json(v);
    emit(c, doc, "status: " + to_string(v.status) + " (" + v.method + ")\n");
    return 0;
  }
  if (c.command == "lower") {
    const auto w = load_weights(g, c.weights);
    const std::string m = c.method.empty() ? "seesaw" : c.method;
    BoundReport r;
    SeesawConfig sc;
    sc.seed = c.seed;
    if (c.eta) sc.eta = *c.eta;
    TildeSeesawConfig tc;
    tc.seed = c.seed;
    tc.solver = solver_settings(c, {});
    if (c.eta) tc.eta = *c.eta;
    if (m == "seesaw") {
      r = lower_seesaw(g, w, c.dim, sc);
    } else if (m == "lambda") {
      LambdaConfig lc;
      lc.seed = c.seed;
      lc.solver = solver_settings(c, {});
      if (c.epsilon) lc.epsilon = *c.epsilon;
      r = lower_lambda_max(g, w, c.dim, lc);
    } else if (m == "tilde" || m == "tilde-projector") {
      tc.variant = m == "tilde" ? TildeVariant::Frobenius : TildeVariant::Projector;
      r = lower_tilde_seesaw(g, w, c.dim, tc);
    } else if (m == "subgraphs") {
      sc.restarts = 5;
      const int d = c.dim;
      r = tilde_via_subgraphs(g, w, d, [&](const Graph& h, const std::vector<double>& wh) {
        return lower_seesaw(h, wh, d, sc);
      });
    } else {
      throw std::invalid_argument("--method for lower: seesaw, lambda, tilde, tilde-projector, subgraphs");
    }
    doc["report"] = report::to_json(r);
    emit(c, doc, bound_text(r));
    return 0;
  }
  if (c.command == "upper") {
    const auto w = load_weights(g, c.weights);
    const std::string m = c.method.empty() ? "tilde-ppt" : c.method;
    UpperConfig uc;
    uc.solver = solver_settings(c, uc.solver);
    uc.two_copy = solver_settings(c, uc.two_copy);
    uc.cliques = load_cliques(g, c.dim, c.cliques);
    BoundReport r;
    if (m == "tilde-ppt") {
      if (c.theta_cut) {
        const BoundReport lo = backing_lower(g, w, c.dim, !uc.cliques.empty(), c);
        uc.theta_cut = c.theta_cut;
        uc.verified_lower = lo.value;
        doc["theta_cut_backing"] = report::to_json(lo);
      }
      r = upper_tilde_ppt(g, w, c.dim, uc);
    } else if (m == "quad-ppt") {
      r = upper_quad_ppt(g, w, c.dim, uc);
    } else if (m == "ray") {
      r = upper_ray_sdp(g, w, c.dim, uc);
    } else {
      throw std::invalid_argument("--method for upper: tilde-ppt, quad-ppt, ray");
    }
    doc["report"] = report::to_json(r);
    emit(c, doc, bound_text(r));
    return 0;
  }
  if (c.command == "gap") {
    const auto w = load_weights(g, c.weights);
    GapConfig gc;
    gc.seed = c.seed;
    gc.solver = solver_settings(c, gc.solver);
    gc.two_copy = solver_settings(c, gc.two_copy);
    const GapReport r = gap_report(g, w, c.dim, gc);
    doc["gap"] = report::to_json(r);
    emit(c, doc, report::gap_table(r));
    return 0;
  }
  if (c.command == "reproduce") {
    ReproduceConfig rc;
    rc.seed = c.seed;
    rc.only = c.only;
    rc.perturb = c.perturb;
    rc.property_instances = c.property_instances;
    const auto rows = reproduce(rc);
    emit(c, to_json(rows, rc), summary_table(rows));
    return all_pass(rows) ? 0 : 1;
  }
  throw std::invalid_argument("unknown command " + c.command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dimension-restricted quantum correlations on exclusivity graphs"};
  app.require_subcommand(1);
  RunConfig c;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--graph", c.graph, "builtin:gkk, builtin:c5, builtin:cycle:N, ... or a graph file");
    sub->add_option("--seed", c.seed, "Seed for every randomized step");
    sub->add_option("--tol", c.tol, "Solver tolerance");
    sub->add_flag("--json", c.json_out, "Print the JSON report instead of a summary");
    sub->add_option("--out", c.out, "Also write the JSON report to this file");
  };
  auto bounds = [&](CLI::App* sub) {
    common(sub);
    sub->add_option("--dim", c.dim, "Dimension d")->check(CLI::PositiveNumber);
    sub->add_option("--weights", c.weights, "Comma-separated vertex weights (default all ones)");
    sub->add_option("--method", c.method, "Method selector");
  };

  auto* alpha = app.add_subcommand("alpha", "Independence number");
  common(alpha);
  auto* theta = app.add_subcommand("theta", "Weighted Lovasz number");
  common(theta);
  theta->add_option("--weights", c.weights, "Comma-separated vertex weights (default all ones)");
  auto* member = app.add_subcommand("member", "Is a behavior realizable in dimension d?");
  bounds(member);
  member->add_option("--behavior", c.behavior, "p1..p4 or a JSON file {\"p\": [...]}")->required();
  auto* lower = app.add_subcommand("lower", "Lower bound on the restricted Lovasz number");
  bounds(lower);
  lower->add_option("--eta", c.eta, "Seesaw penalty");
  lower->add_option("--epsilon", c.epsilon, "Spectrum offset of the lambda-max method");
  auto* upper = app.add_subcommand("upper", "Upper bound on the restricted Lovasz number");
  bounds(upper);
  upper->add_option("--cliques", c.cliques, "none, auto, or explicit \"1,2,3;4,7,8\"");
  upper->add_option("--theta-cut", c.theta_cut, "Lower-bound cut (must be verified, rounded down)");
  upper->add_option("--eta", c.eta, "Penalty of the seesaw backing --theta-cut");
  auto* gap = app.add_subcommand("gap", "All bounds and the separation check");
  bounds(gap);
  auto* repro = app.add_subcommand("reproduce", "Run the acceptance suite");
  common(repro);
  repro->add_option("--only", c.only, "Criteria to run")->delimiter(',');
  repro->add_option("--perturb", c.perturb, "Corrupt these criteria (negative control)")->delimiter(',');
  repro->add_option("--property-instances", c.property_instances, "Random instances for criterion 9");

  CLI11_PARSE(app, argc, argv);
  c.command = app.get_subcommands().front()->get_name();
  try {
    return run(c);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
