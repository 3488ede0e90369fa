#include "ctxdim/two_copy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ctxdim {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

TwoCopyLift::TwoCopyLift(sdp::SdpProblem& problem, int n_plus_one, int d) : problem_(&problem), n_(n_plus_one), d_(d) {
  if (n_ < 1) throw std::invalid_argument("TwoCopyLift: side must be positive");
  if (d_ < 1) throw std::invalid_argument("TwoCopyLift: dimension must be at least 1");
  const int ns = sym_dim();
  const int na = anti_dim();
  sym_first_ = problem.add_variables(ns * (ns + 1) / 2);
  anti_first_ = problem.add_variables(na * (na + 1) / 2);

  std::vector<int> sym_index(n_ * n_, -1), anti_index(n_ * n_, -1);
  int ps = 0, pa = 0;
  for (int a = 0; a < n_; ++a)
    for (int b = a; b < n_; ++b) {
      sym_index[a * n_ + b] = ps++;
      if (a != b) anti_index[a * n_ + b] = pa++;
    }
  sym_pair_.resize(n_ * n_);
  anti_pair_.resize(n_ * n_);
  qs_.resize(n_ * n_);
  qa_.resize(n_ * n_);
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) {
      const int r = a * n_ + b;
      const int lo = std::min(a, b), hi = std::max(a, b);
      sym_pair_[r] = sym_index[lo * n_ + hi];
      anti_pair_[r] = a == b ? -1 : anti_index[lo * n_ + hi];
      qs_[r] = a == b ? 1.0 : kInvSqrt2;
      qa_[r] = a < b ? kInvSqrt2 : (a > b ? -kInvSqrt2 : 0.0);
    }
}

int TwoCopyLift::sym_var(int p, int q) const {
  if (p > q) std::swap(p, q);
  return sym_first_ + q * (q + 1) / 2 + p;
}

int TwoCopyLift::anti_var(int p, int q) const {
  if (p > q) std::swap(p, q);
  return anti_first_ + q * (q + 1) / 2 + p;
}

sdp::LinearExpr TwoCopyLift::entry(double ci, double cv, int row, int col) const {
  sdp::LinearExpr e;
  const double s = (ci + cv) * qs_[row] * qs_[col];
  if (s != 0.0) e.add(sym_var(sym_pair_[row], sym_pair_[col]), s);
  if (anti_pair_[row] >= 0 && anti_pair_[col] >= 0) {
    const double a = (ci - cv) * qa_[row] * qa_[col];
    if (a != 0.0) e.add(anti_var(anti_pair_[row], anti_pair_[col]), a);
  }
  return e;
}

sdp::LinearExpr TwoCopyLift::partial_block(double ci, double cv, int i, int j, int k, int l) const {
  return entry(ci, cv, j * n_ + k, i * n_ + l);
}

sdp::LinearExpr TwoCopyLift::trace(double ci, double cv) const {
  sdp::LinearExpr t;
  for (int r = 0; r < n_ * n_; ++r) t += entry(ci, cv, r, r);
  return t.compress();
}

void TwoCopyLift::add_relation(const std::vector<BlockTerm>& terms) {
  Eigen::VectorXd a = Eigen::VectorXd::Zero(n_ * n_);
  for (const auto& t : terms) {
    if (t.i < 0 || t.j < 0 || t.i >= n_ || t.j >= n_) throw std::out_of_range("add_relation: block index out of range");
    a(t.i * n_ + t.j) += t.coef;
  }
  for (int k = 0; k < n_; ++k)
    for (int l = 0; l < n_; ++l) {
      sdp::LinearExpr e;
      for (const auto& t : terms) e += t.coef * partial_block(d_, 1.0, t.i, t.j, k, l);
      e.compress();
      if (!e.terms.empty()) problem_->add_constraint(std::move(e), sdp::Relation::Equal, 0.0);
    }
  if (a.cwiseAbs().maxCoeff() == 0.0) return;
  relations_.push_back(a);
  Eigen::VectorXd at(n_ * n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) at(j * n_ + i) = a(i * n_ + j);
  relations_.push_back(at);
}

namespace {

int find_root(std::vector<int>& parent, int v) {
  while (parent[v] != v) v = parent[v] = parent[parent[v]];
  return v;
}

}  // namespace

std::vector<int> TwoCopyLift::add_cones() {
  std::vector<int> out;
  const int ns = sym_dim();
  const int na = anti_dim();
  int b = problem_->add_psd_block(ns);
  for (int q = 0; q < ns; ++q)
    for (int p = 0; p <= q; ++p) problem_->add_block_term(b, p, q, sym_var(p, q), 2.0);
  out.push_back(b);
  if (na > 0) {
    b = problem_->add_psd_block(na);
    for (int q = 0; q < na; ++q)
      for (int p = 0; p <= q; ++p) problem_->add_block_term(b, p, q, anti_var(p, q), 2.0);
    out.push_back(b);
  }

  const int dim = n_ * n_;
  // PT entry ((i,k),(j,l)) of ci Phi_I + cv Phi_V is M((j,k),(i,l)).
  auto pt_entry = [&](double cv, int r, int c) {
    const int i = r / n_, k = r % n_, j = c / n_, l = c % n_;
    return entry(1.0, cv, j * n_ + k, i * n_ + l);
  };

  b = problem_->add_psd_block(dim);
  for (int c = 0; c < dim; ++c)
    for (int r = 0; r <= c; ++r) {
      const sdp::LinearExpr e = pt_entry(0.0, r, c).compress();
      for (const auto& t : e.terms) problem_->add_block_term(b, r, c, t.var, t.coef);
    }
  out.push_back(b);

  // Split the coordinates touched by relations into connected components
  // and take kernel / range bases per component, so both stay sparse.
  std::vector<int> parent(dim);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<bool> touched(dim, false);
  for (const auto& a : relations_) {
    int first = -1;
    for (int p = 0; p < dim; ++p) {
      if (a(p) == 0.0) continue;
      touched[p] = true;
      if (first < 0) first = p;
      else parent[find_root(parent, p)] = find_root(parent, first);
    }
  }
  std::vector<Eigen::VectorXd> kernel, range;
  std::vector<std::vector<int>> members(dim);
  for (int p = 0; p < dim; ++p) {
    if (touched[p]) members[find_root(parent, p)].push_back(p);
    else range.push_back(Eigen::VectorXd::Unit(dim, p));
  }
  for (int root = 0; root < dim; ++root) {
    const auto& mem = members[root];
    if (mem.empty()) continue;
    std::vector<const Eigen::VectorXd*> rel;
    for (const auto& a : relations_)
      if (a(mem.front()) != 0.0 || std::any_of(mem.begin(), mem.end(), [&](int p) { return a(p) != 0.0; }))
        rel.push_back(&a);
    Eigen::MatrixXd local(mem.size(), rel.size());
    for (std::size_t c = 0; c < rel.size(); ++c)
      for (std::size_t r = 0; r < mem.size(); ++r) local(r, c) = (*rel[c])(mem[r]);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(local, Eigen::ComputeFullU);
    const auto& sv = svd.singularValues();
    int rank = 0;
    while (rank < sv.size() && sv(rank) > 1e-10 * sv(0)) ++rank;
    for (int c = 0; c < static_cast<int>(mem.size()); ++c) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
      for (std::size_t r = 0; r < mem.size(); ++r)
        if (std::abs(svd.matrixU()(r, c)) > 1e-14) v(mem[r]) = svd.matrixU()(r, c);
      (c < rank ? kernel : range).push_back(std::move(v));
    }
  }

  const double cv = d_;
  auto support = [](const Eigen::VectorXd& v) {
    std::vector<int> idx;
    for (int p = 0; p < v.size(); ++p)
      if (v(p) != 0.0) idx.push_back(p);
    return idx;
  };
  for (const auto& k : kernel) {
    const auto sk = support(k);
    for (int r = 0; r < dim; ++r) {
      sdp::LinearExpr e;
      for (int q : sk) e += k(q) * pt_entry(cv, r, q);
      e.compress();
      if (!e.terms.empty()) problem_->add_constraint(std::move(e), sdp::Relation::Equal, 0.0);
    }
  }

  const int rdim = static_cast<int>(range.size());
  range_.resize(dim, rdim);
  std::vector<std::vector<int>> supp(rdim);
  for (int a = 0; a < rdim; ++a) {
    range_.col(a) = range[a];
    supp[a] = support(range[a]);
  }
  b = problem_->add_psd_block(std::max(rdim, 1));
  for (int bcol = 0; bcol < rdim; ++bcol)
    for (int arow = 0; arow <= bcol; ++arow) {
      sdp::LinearExpr e;
      for (int p : supp[arow])
        for (int q : supp[bcol]) e += (range_(p, arow) * range_(q, bcol)) * pt_entry(cv, p, q);
      e.compress();
      for (const auto& t : e.terms)
        if (std::abs(t.coef) > 1e-14) problem_->add_block_term(b, arow, bcol, t.var, t.coef);
    }
  out.push_back(b);
  return out;
}

Eigen::MatrixXd TwoCopyLift::phi_identity(const Eigen::VectorXd& x) const {
  const int dim = n_ * n_;
  Eigen::MatrixXd m(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) m(r, c) = entry(1.0, 0.0, r, c).evaluate(x);
  return m;
}

Eigen::MatrixXd TwoCopyLift::phi_swap(const Eigen::VectorXd& x) const {
  const int dim = n_ * n_;
  Eigen::MatrixXd m(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) m(r, c) = entry(0.0, 1.0, r, c).evaluate(x);
  return m;
}

}  // namespace ctxdim
