#include "adjrmat/adjoint_tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace adjrmat {
namespace {

constexpr double kDropTol = 1e-14;

void check(bool ok, const std::string& what) {
  if (!ok) throw VerificationError(what);
}

CVector pure_tensor(const CVector& x, const CVector& y) {
  CVector out(x.size() * y.size());
  for (Eigen::Index a = 0; a < x.size(); ++a) out.segment(a * y.size(), y.size()) = x(a) * y;
  return out;
}

CMatrix basis_rows(const SunBasis& basis) {
  const int n = basis.n;
  CMatrix g(basis.dim(), n * n);
  for (int a = 0; a < basis.dim(); ++a) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) g(a, i * n + j) = basis.generators[a](i, j);
    }
  }
  return g;
}

std::string dynkin_label(const Weight& w, int parity) {
  std::string s = "(";
  bool wide = false;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) wide |= (w[i] - w[i + 1]) > 9;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (wide && i > 0) s += ',';
    s += std::to_string(w[i] - w[i + 1]);
  }
  s += ')';
  s += parity > 0 ? 's' : 'a';
  return s;
}

double rayleigh(const SparseOp& op, const CVector& v) {
  return (v.dot(op * v) / v.squaredNorm()).real();
}

// Collects orbit vectors with their weights; orthogonalization only runs
// against vectors of equal weight, which are the only ones that can overlap.
class OrbitBuilder {
 public:
  OrbitBuilder(const LoweringOperators& low, const Tolerance& tol) : low_(low), tol_(tol) {}

  void seed(const CVector& hw, Weight w) {
    cols_.push_back(hw / hw.norm());
    index_[w].push_back(0);
    weights_.push_back(std::move(w));
  }

  // Candidate obtained by lowering column `parent` with operator `op`,
  // reduced against its weight space. Returns {raw norm, residual norm}.
  std::pair<double, double> candidate(int parent, int op, CVector& c, Weight& w) const {
    c = low_.ops[static_cast<std::size_t>(op)] * cols_[static_cast<std::size_t>(parent)];
    w = weights_[static_cast<std::size_t>(parent)];
    const auto [i, j] = low_.pairs[static_cast<std::size_t>(op)];
    w[static_cast<std::size_t>(i - 1)] -= 1;
    w[static_cast<std::size_t>(j - 1)] += 1;
    const double raw = c.norm();
    if (auto it = index_.find(w); it != index_.end()) {
      for (int pass = 0; pass < 2; ++pass) {
        for (int k : it->second) {
          const auto& q = cols_[static_cast<std::size_t>(k)];
          c -= q.dot(c) * q;
        }
      }
    }
    return {raw, c.norm()};
  }

  int add(const CVector& c, double res, Weight w, LoweringStep step) {
    const int idx = static_cast<int>(cols_.size());
    cols_.push_back(c / res);
    index_[w].push_back(idx);
    weights_.push_back(std::move(w));
    steps_.push_back(step);
    norms_.push_back(res);
    return idx;
  }

  int size() const { return static_cast<int>(cols_.size()); }

  void finish(Submodule& sm) {
    const Eigen::Index len = cols_.front().size();
    sm.basis.resize(len, static_cast<Eigen::Index>(cols_.size()));
    for (std::size_t k = 0; k < cols_.size(); ++k) sm.basis.col(static_cast<Eigen::Index>(k)) = cols_[k];
    sm.weights = std::move(weights_);
    sm.steps = std::move(steps_);
    sm.step_norms = std::move(norms_);
  }

 private:
  const LoweringOperators& low_;
  const Tolerance& tol_;
  std::vector<CVector> cols_;
  std::vector<Weight> weights_;
  std::map<Weight, std::vector<int>> index_;
  std::vector<LoweringStep> steps_;
  std::vector<double> norms_;
};

void certify(const AdjointRep& rep, Submodule& sm, int parity, const Tolerance& tol) {
  const double bound = tol.abs_tol * rep.dim;
  const CMatrix ob = rep.omega * sm.basis;
  sm.omega_eigenvalue = sm.basis.col(0).dot(ob.col(0)).real();
  const double omega_res = max_abs(ob - sm.omega_eigenvalue * sm.basis);
  check(omega_res <= bound, "submodule " + sm.label + ": Omega residual " +
                                std::to_string(omega_res) + " on its basis");
  const double parity_res = max_abs(swap_rows(sm.basis, rep.dim) - double(parity) * sm.basis);
  check(parity_res <= bound, "submodule " + sm.label + ": exchange parity violated");
  sm.exchange_parity = parity;
}

}  // namespace

CMatrix AdjointRep::ad(const CMatrix& x) const {
  if (x.rows() != basis.n || x.cols() != basis.n) {
    throw std::invalid_argument("ad: expected an n x n matrix");
  }
  if (std::abs(x.trace()) > 1e-10 * std::max(1.0, x.norm())) {
    throw std::invalid_argument("ad: argument is not traceless");
  }
  const CVector w = coordinates(basis, x);
  CMatrix out = CMatrix::Zero(dim, dim);
  for (int a = 0; a < dim; ++a) {
    if (w(a) != 0.0) out += w(a) * S[static_cast<std::size_t>(a)];
  }
  return out;
}

AdjointRep adjoint_rep(SunBasis basis, const Tolerance& tol) {
  AdjointRep rep;
  rep.dim = basis.dim();
  const int dim = rep.dim;
  rep.S.assign(static_cast<std::size_t>(dim), CMatrix::Zero(dim, dim));
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      for (int c = 0; c < dim; ++c) rep.S[a](b, c) = basis.f(a, c, b);
    }
  }
  rep.basis = std::move(basis);

  const double bound = tol.abs_tol * dim;
  CMatrix casimir = CMatrix::Zero(dim, dim);
  for (int a = 0; a < dim; ++a) {
    check(is_hermitian(rep.S[a], tol.abs_tol), "adjoint matrix is not Hermitian");
    casimir += rep.S[a] * rep.S[a];
    for (int b = a + 1; b < dim; ++b) {
      CMatrix r = commutator(rep.S[a], rep.S[b]);
      for (int c = 0; c < dim; ++c) {
        const cplx f = rep.basis.f(a, b, c);
        if (f != 0.0) r -= f * rep.S[c];
      }
      check(max_abs(r) <= bound, "adjoint matrices violate the representation property");
    }
  }
  check(max_abs(casimir - 2.0 * rep.n() * CMatrix::Identity(dim, dim)) <= bound,
        "adjoint Casimir is not 2n");

  rep.omega.resize(dim * dim, dim * dim);
  for (int a = 0; a < dim; ++a) {
    const SparseOp s = to_sparse(rep.S[a], kDropTol);
    rep.omega += kron(s, s);
  }
  rep.omega.prune(cplx(0.0), kDropTol);
  rep.omega.makeCompressed();
  return rep;
}

CMatrix casimir_op(const AdjointRep& rep) {
  return CMatrix(rep.omega);
}

CMatrix permutation_op(int dim) {
  CMatrix p = CMatrix::Zero(dim * dim, dim * dim);
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) p(b * dim + a, a * dim + b) = 1.0;
  }
  return p;
}

CVector swap_factors(const CVector& v, int dim) {
  CVector out(v.size());
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) out(b * dim + a) = v(a * dim + b);
  }
  return out;
}

CMatrix swap_rows(const CMatrix& m, int dim) {
  CMatrix out(m.rows(), m.cols());
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) out.row(b * dim + a) = m.row(a * dim + b);
  }
  return out;
}

CMatrix swap_cols(const CMatrix& m, int dim) {
  CMatrix out(m.rows(), m.cols());
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) out.col(b * dim + a) = m.col(a * dim + b);
  }
  return out;
}

// With v[a*d + b], the column-major d x d view M has M(b, a) = v[a*d + b];
// (A ⊗ B) v corresponds to M -> B M A^T.
CVector apply_left(const CMatrix& a, const CVector& v) {
  const Eigen::Index d = a.rows();
  CVector out(v.size());
  Eigen::Map<const CMatrix> m(v.data(), d, d);
  Eigen::Map<CMatrix>(out.data(), d, d).noalias() = m * a.transpose();
  return out;
}

CVector apply_right(const CMatrix& b, const CVector& v) {
  const Eigen::Index d = b.rows();
  CVector out(v.size());
  Eigen::Map<const CMatrix> m(v.data(), d, d);
  Eigen::Map<CMatrix>(out.data(), d, d).noalias() = b * m;
  return out;
}

CVector apply_kron(const CMatrix& a, const CMatrix& b, const CVector& v) {
  const Eigen::Index d = a.rows();
  CVector out(v.size());
  Eigen::Map<const CMatrix> m(v.data(), d, d);
  Eigen::Map<CMatrix>(out.data(), d, d).noalias() = b * m * a.transpose();
  return out;
}

SparseOp diagonal_action(const AdjointRep& rep, const CMatrix& x) {
  return kron_sum(rep.ad(x), kDropTol);
}

std::string_view component_key(Component c) {
  switch (c) {
    case Component::Top: return "(20..02)s";
    case Component::AntiLeft: return "(20..010)a";
    case Component::AntiRight: return "(010..02)a";
    case Component::Middle: return "(010..010)s";
    case Component::AdjointSym: return "(10..01)s";
    case Component::AdjointAnti: return "(10..01)a";
    case Component::Singlet: return "(0..0)s";
  }
  return "?";
}

std::vector<Component> components_for(int n) {
  std::vector<Component> out{Component::Top, Component::AntiLeft, Component::AntiRight};
  if (n > 3) out.push_back(Component::Middle);
  out.insert(out.end(), {Component::AdjointSym, Component::AdjointAnti, Component::Singlet});
  return out;
}

const HighestWeightVector& HighestWeightSet::get(Component c) const {
  for (const auto& v : vectors) {
    if (v.component == c) return v;
  }
  throw std::invalid_argument("no highest-weight vector " + std::string(component_key(c)) +
                              " for n = " + std::to_string(n));
}

const HighestWeightVector& HighestWeightSet::get(std::string_view label) const {
  for (const auto& v : vectors) {
    if (v.label == label || component_key(v.component) == label) return v;
  }
  throw std::invalid_argument("unknown highest-weight label '" + std::string(label) + "'");
}

TensorVector from_fundamental(const SunBasis& basis, const CMatrix& x) {
  const int n = basis.n;
  const int dim = basis.dim();
  CMatrix y(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) y(i * n + j, k * n + l) = x(i * n + k, j * n + l);
  const CMatrix g = basis_rows(basis);
  const CMatrix v = g.conjugate() * y * g.adjoint();
  TensorVector out(dim * dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) out(a * dim + b) = v(a, b);
  return out;
}

CMatrix to_fundamental(const SunBasis& basis, const TensorVector& v) {
  const int n = basis.n;
  const int dim = basis.dim();
  CMatrix vm(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) vm(a, b) = v(a * dim + b);
  const CMatrix g = basis_rows(basis);
  const CMatrix y = g.transpose() * vm * g;
  CMatrix x(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) x(i * n + k, j * n + l) = y(i * n + j, k * n + l);
  return x;
}

Weight measure_weight(const AdjointRep& rep, const TensorVector& v, const Tolerance& tol) {
  const int n = rep.n();
  Weight w(static_cast<std::size_t>(n));
  const double vn = v.norm();
  check(vn > 0.0, "weight of the zero vector is undefined");
  for (int k = 1; k <= n; ++k) {
    CMatrix h = unit_matrix(n, k, k);
    h -= CMatrix::Identity(n, n) / static_cast<double>(n);
    const SparseOp op = diagonal_action(rep, h);
    const double r = rayleigh(op, v);
    const double res = (op * v - r * v).norm();
    check(res <= tol.abs_tol * rep.dim * vn, "vector is not a weight vector");
    const double rounded = std::round(r);
    check(std::abs(r - rounded) <= 1e-6, "non-integral weight");
    w[static_cast<std::size_t>(k - 1)] = static_cast<int>(rounded);
  }
  return w;
}

HighestWeightSet highest_weight_vectors(const AdjointRep& rep, const Tolerance& tol) {
  const SunBasis& basis = rep.basis;
  const int n = basis.n;
  const int dim = basis.dim();
  const auto coords = [&](int i, int j) { return *matrix_unit(basis, i, j).coords; };

  HighestWeightSet set;
  set.n = n;
  const CVector e1n = coords(1, n);

  const auto push = [&](Component c, TensorVector v, int parity) {
    HighestWeightVector h;
    h.component = c;
    h.parity = parity;
    check(max_abs(swap_factors(v, dim) - double(parity) * v) <= tol.abs_tol * v.norm(),
          "highest-weight vector " + std::string(component_key(c)) + " has wrong exchange parity");
    h.weight = measure_weight(rep, v, tol);
    h.label = dynkin_label(h.weight, parity);
    h.omega_eigenvalue = rayleigh(rep.omega, v);
    h.vector = std::move(v);
    set.vectors.push_back(std::move(h));
  };

  push(Component::Top, pure_tensor(e1n, e1n), 1);
  {
    const CVector e = coords(1, n - 1);
    push(Component::AntiLeft, pure_tensor(e, e1n) - pure_tensor(e1n, e), -1);
  }
  {
    const CVector e = coords(2, n);
    push(Component::AntiRight, pure_tensor(e, e1n) - pure_tensor(e1n, e), -1);
  }
  if (n > 3) {
    const TensorVector x =
        pure_tensor(coords(2, n - 1), e1n) - pure_tensor(coords(1, n - 1), coords(2, n));
    push(Component::Middle, x + swap_factors(x, dim), 1);
  }

  // Omega and 1 ⊗ e_1n as n^2 x n^2 matrices of fundamental ⊗ fundamental.
  CMatrix omega_f = CMatrix::Zero(n * n, n * n);
  for (const auto& g : basis.generators) omega_f += kron(g, g);
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix e1n_m = unit_matrix(n, 1, n);
  const CMatrix right = kron(id, e1n_m);
  const double sq = std::sqrt(double(n * n - 4));

  const auto expand = [&](const CMatrix& x, const char* what) {
    TensorVector v = from_fundamental(basis, x);
    const double res = max_abs(x - to_fundamental(basis, v));
    check(res <= tol.abs_tol, std::string(what) + " is not an element of su(n) ⊗ su(n)");
    return v;
  };
  const CMatrix xs = double(n) * (omega_f * right + right * omega_f - (2.0 / n) * kron(e1n_m, id));
  const CMatrix xa = sq * (omega_f * right - right * omega_f);
  push(Component::AdjointSym, expand(xs, "n({Omega, 1⊗e_1n} - (2/n) e_1n⊗1)"), 1);
  push(Component::AdjointAnti, expand(xa, "sqrt(n^2-4) [Omega, 1⊗e_1n]"), -1);

  TensorVector singlet = TensorVector::Zero(dim * dim);
  for (int a = 0; a < dim; ++a) singlet(a * dim + a) = 1.0;
  push(Component::Singlet, singlet, 1);

  set.v_s_alt = TensorVector::Zero(dim * dim);
  set.v_a_alt = TensorVector::Zero(dim * dim);
  for (int a = 0; a < dim; ++a) {
    if (e1n(a) == 0.0) continue;
    for (int b = 0; b < dim; ++b) {
      for (int c = 0; c < dim; ++c) {
        set.v_s_alt(b * dim + c) += double(n) * e1n(a) * basis.d(a, b, c);
        set.v_a_alt(b * dim + c) += sq * e1n(a) * basis.f(a, b, c);
      }
    }
  }
  return set;
}

LoweringOperators lowering_operators(const AdjointRep& rep) {
  LoweringOperators low;
  const int n = rep.n();
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      low.pairs.emplace_back(i, j);
      low.ops.push_back(diagonal_action(rep, unit_matrix(n, j, i)));
    }
  }
  return low;
}

Submodule generate_submodule(const AdjointRep& rep, const TensorVector& hwv, int parity,
                             const Tolerance& tol) {
  tol.validate();
  if (hwv.size() != rep.pair_dim() || hwv.norm() == 0.0) {
    throw std::invalid_argument("generate_submodule: highest-weight vector must be a nonzero "
                                "element of V ⊗ V");
  }
  const LoweringOperators low = lowering_operators(rep);
  const int limit = rep.pair_dim();
  Submodule sm;
  sm.hw_vector = hwv;
  OrbitBuilder orbit(low, tol);
  Weight w0 = measure_weight(rep, hwv, tol);
  sm.label = dynkin_label(w0, parity);
  orbit.seed(hwv, std::move(w0));

  std::vector<int> frontier{0};
  int level = 0;
  CVector c;
  Weight w;
  while (!frontier.empty()) {
    if (++level > limit) throw VerificationError("orbit of " + sm.label + " did not close");
    std::vector<int> next;
    for (int p : frontier) {
      for (int k = 0; k < static_cast<int>(low.ops.size()); ++k) {
        const auto [raw, res] = orbit.candidate(p, k, c, w);
        if (raw <= tol.rank_tol || res <= tol.rank_tol * std::max(1.0, raw)) continue;
        next.push_back(orbit.add(c, res, w, {p, k}));
        if (orbit.size() > limit) throw VerificationError("orbit of " + sm.label + " did not close");
      }
    }
    frontier = std::move(next);
  }
  orbit.finish(sm);
  certify(rep, sm, parity, tol);
  return sm;
}

Submodule replay_submodule(const AdjointRep& rep, const TensorVector& hwv, int parity,
                           const Submodule& model, const Tolerance& tol) {
  const LoweringOperators low = lowering_operators(rep);
  Submodule sm;
  sm.hw_vector = hwv;
  OrbitBuilder orbit(low, tol);
  Weight w0 = measure_weight(rep, hwv, tol);
  check(w0 == model.weights.front(), "replay: highest weights differ");
  sm.label = dynkin_label(w0, parity);
  orbit.seed(hwv, std::move(w0));
  CVector c;
  Weight w;
  for (std::size_t k = 0; k < model.steps.size(); ++k) {
    const auto step = model.steps[k];
    const auto [raw, res] = orbit.candidate(step.parent, step.op, c, w);
    (void)raw;
    const double expect = model.step_norms[k];
    check(std::abs(res - expect) <= tol.rank_tol * std::max(1.0, expect),
          "replay of " + model.label + " onto " + sm.label + " is not isometric");
    orbit.add(c, res, w, step);
  }
  orbit.finish(sm);
  certify(rep, sm, parity, tol);
  return sm;
}

bool Decomposition::has(Component c) const {
  return std::any_of(submodules.begin(), submodules.end(),
                     [c](const Submodule& s) { return s.component == c; });
}

const Submodule& Decomposition::get(Component c) const {
  for (const auto& s : submodules) {
    if (s.component == c) return s;
  }
  throw std::invalid_argument("decomposition has no component " + std::string(component_key(c)));
}

CMatrix Decomposition::iso_s_to_a() const {
  return get(Component::AdjointAnti).basis * get(Component::AdjointSym).basis.adjoint();
}

CMatrix Decomposition::joint_basis() const {
  CMatrix b(pair_dim(), pair_dim());
  Eigen::Index col = 0;
  for (const auto& s : submodules) {
    b.middleCols(col, s.dim()) = s.basis;
    col += s.dim();
  }
  return b;
}

Decomposition build_decomposition(const AdjointRep& rep, const Tolerance& tol) {
  tol.validate();
  Decomposition dec;
  dec.rep = rep;
  dec.hw = highest_weight_vectors(rep, tol);

  const auto& vs = dec.hw.get(Component::AdjointSym).vector;
  const auto& va = dec.hw.get(Component::AdjointAnti).vector;
  check(std::abs(vs.norm() - va.norm()) <= tol.abs_tol * vs.norm(),
        "adjoint highest-weight vectors differ in norm");

  for (Component c : components_for(rep.n())) {
    const auto& h = dec.hw.get(c);
    Submodule sm = c == Component::AdjointAnti
                       ? replay_submodule(rep, h.vector, h.parity, dec.get(Component::AdjointSym), tol)
                       : generate_submodule(rep, h.vector, h.parity, tol);
    sm.component = c;
    sm.label = h.label;
    dec.submodules.push_back(std::move(sm));
  }

  int total = 0;
  for (const auto& s : dec.submodules) total += s.dim();
  check(total == rep.pair_dim(), "submodule dimensions sum to " + std::to_string(total) +
                                     ", expected " + std::to_string(rep.pair_dim()));

  // Vectors of distinct weight are orthogonal; compare within weight spaces.
  std::map<Weight, std::vector<std::pair<int, int>>> by_weight;
  for (int s = 0; s < static_cast<int>(dec.submodules.size()); ++s) {
    const auto& sm = dec.submodules[static_cast<std::size_t>(s)];
    for (int k = 0; k < sm.dim(); ++k) by_weight[sm.weights[static_cast<std::size_t>(k)]].emplace_back(s, k);
  }
  double orth = 0.0;
  for (const auto& [wt, members] : by_weight) {
    CMatrix block(rep.pair_dim(), static_cast<Eigen::Index>(members.size()));
    for (std::size_t m = 0; m < members.size(); ++m) {
      block.col(static_cast<Eigen::Index>(m)) =
          dec.submodules[static_cast<std::size_t>(members[m].first)].basis.col(members[m].second);
    }
    const CMatrix gram = block.adjoint() * block;
    orth = std::max(orth, max_abs(gram - CMatrix::Identity(gram.rows(), gram.cols())));
  }
  dec.orthogonality_residual = orth;
  check(orth <= tol.abs_tol, "submodule bases are not mutually orthogonal");

  const CMatrix joint = dec.joint_basis();
  CMatrix sum = joint * joint.adjoint();
  sum.diagonal().array() -= 1.0;
  dec.completeness_residual = max_abs(sum);
  check(dec.completeness_residual <= tol.abs_tol,
        "projectors do not resolve the identity (residual " +
            std::to_string(dec.completeness_residual) + ")");
  return dec;
}

}  // namespace adjrmat
