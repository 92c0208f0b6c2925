#include "adjrmat/yangian_action.hpp"

#include <cmath>
#include <string>

namespace adjrmat {
namespace {

void require_traceless(const CMatrix& x, int n) {
  if (x.rows() != n || x.cols() != n) throw std::invalid_argument("expected an n x n matrix");
  if (std::abs(x.trace()) > 1e-10 * std::max(1.0, x.norm())) {
    throw std::invalid_argument("level-1 generator must be traceless");
  }
}

double relative(const CVector& r, const CVector& v) {
  const double vn = v.norm();
  return vn == 0.0 ? r.norm() : r.norm() / vn;
}

nlohmann::json cjson(cplx z) { return complex_to_json(z); }

}  // namespace

CMatrix quadratic_term(const AdjointRep& rep, const CMatrix& x) {
  const int n = rep.n();
  const int dim = rep.dim;
  require_traceless(x, n);
  const auto& basis = rep.basis;
  // tr(x {I^a, I^b}) = sum_c d^{abc} tr(x I^c) for traceless x
  CVector t(dim);
  for (int c = 0; c < dim; ++c) t(c) = (basis.generators[c].transpose().cwiseProduct(x)).sum();
  CMatrix out = CMatrix::Zero(dim, dim);
  for (int a = 0; a < dim; ++a) {
    CMatrix inner = CMatrix::Zero(dim, dim);
    for (int b = 0; b < dim; ++b) {
      cplx coef = 0.0;
      for (int c = 0; c < dim; ++c) coef += basis.d(a, b, c) * t(c);
      if (std::abs(coef) > 1e-15) inner += coef * rep.S[b];
    }
    out.noalias() += rep.S[a] * inner;
  }
  return out;
}

CVector Level1Operator::apply(const CVector& v) const {
  CVector out = apply_left(left, v) + apply_right(right, v);
  out += 0.5 * (apply_left(ad_x, *omega * v) - *omega * apply_left(ad_x, v));
  return out;
}

CMatrix Level1Operator::dense() const {
  const Eigen::Index d = left.rows();
  const CMatrix id = CMatrix::Identity(d, d);
  const CMatrix xl = kron(ad_x, id);
  const CMatrix om(*omega);
  CMatrix out = kron(left, id) + kron(id, right);
  out += 0.5 * (xl * om - om * xl);
  return out;
}

Level1Operator YangianTwoSiteAction::level1(const CMatrix& x) const {
  const CMatrix t = quadratic_term(*rep, x);
  Level1Operator op;
  op.ad_x = rep->ad(x);
  op.left = mu * op.ad_x + 0.25 * t;
  op.right = lambda * op.ad_x + 0.25 * t;
  op.omega = &rep->omega;
  return op;
}

CMatrix level1_action(const AdjointRep& rep, const CMatrix& x, cplx mu, cplx lambda) {
  return YangianTwoSiteAction(rep, mu, lambda).level1(x).dense();
}

double anticommutator_residual(const AdjointRep& rep, const TensorVector& v, const CMatrix& x) {
  if (v.size() != rep.pair_dim()) throw std::invalid_argument("vector is not in V ⊗ V");
  const CMatrix t = quadratic_term(rep, x);
  return (apply_left(t, v) + apply_right(t, v)).norm();
}

double verify_anticommutator_identity(const AdjointRep& rep, const HighestWeightSet& hw,
                                      std::string_view label, const CMatrix& x) {
  const auto& v = hw.get(label).vector;
  const double vn = v.norm();
  const double r = anticommutator_residual(rep, v, x);
  return vn == 0.0 ? r : r / vn;
}

std::vector<CheckResult> anticommutator_checks(const AdjointRep& rep, const HighestWeightSet& hw,
                                               double threshold) {
  const int n = rep.n();
  std::vector<CheckResult> out;
  const auto run = [&](const char* id, Component c, int i, int j) {
    const std::string key(component_key(c));
    const double r = verify_anticommutator_identity(rep, hw, key, unit_matrix(n, i, j));
    out.push_back(CheckResult::make(
        id,
        "sum tr(e_" + std::to_string(i) + std::to_string(j) +
            "{I^a,I^b}) (S^aS^b ⊗ 1 + 1 ⊗ S^aS^b) annihilates v" + key,
        r, threshold));
  };
  run("anticommutator.left", Component::AntiLeft, n - 1, n);
  run("anticommutator.right", Component::AntiRight, 1, 2);
  return out;
}

std::vector<CheckResult> verify_hw_relations(const AdjointRep& rep, const HighestWeightSet& hw,
                                             cplx mu, cplx lambda, double threshold) {
  const int n = rep.n();
  const double nd = n;
  const double sq = std::sqrt(nd * nd - 4.0);
  const YangianTwoSiteAction act(rep, mu, lambda);
  const Level1Operator j1n = act.level1(unit_matrix(n, 1, n));
  const Level1Operator jlast = act.level1(unit_matrix(n, n - 1, n));
  const Level1Operator jfirst = act.level1(unit_matrix(n, 1, n - 1));

  const auto& top = hw.get(Component::Top).vector;
  const auto& vs = hw.get(Component::AdjointSym).vector;
  const auto& va = hw.get(Component::AdjointAnti).vector;
  const auto& singlet = hw.get(Component::Singlet).vector;

  const cplx d = lambda - mu;
  const cplx c_ex6 = nd * (nd - 2.0);
  const cplx c_ex7 = sq * (nd + 2.0 - 2.0 * mu + 2.0 * lambda);
  const cplx c_ex8 = nd * (d * d + 2.0 * lambda - nd * mu + nd * nd / 4.0);
  const cplx c_ex9 = sq / 4.0 *
                     (nd * (nd + 4.0) - (6.0 * nd + 4.0) * mu + 4.0 * mu * mu +
                      (2.0 * nd - 4.0) * lambda - 4.0 * lambda * lambda);
  const cplx c_singlet = -2.0 * (mu - lambda - 1.0) * (mu - lambda - nd);

  const nlohmann::json params = {{"mu", cjson(mu)}, {"lambda", cjson(lambda)}};
  std::vector<CheckResult> out;
  const auto add = [&](const char* id, const char* claim, const CVector& lhs, cplx c,
                       const CVector& v) {
    nlohmann::json detail = params;
    detail["coefficient"] = cjson(c);
    out.push_back(CheckResult::make(id, claim, relative(lhs - c * top, v), threshold, detail));
  };
  add("hw.single_s", "J(e_1n) v_s = n(n-2) v_top", j1n.apply(vs), c_ex6, vs);
  add("hw.single_a", "J(e_1n) v_a = sqrt(n^2-4)(n+2-2mu+2lambda) v_top", j1n.apply(va), c_ex7, va);
  add("hw.double_s", "J(e_(n-1)n) J(e_1(n-1)) v_s = n[(lambda-mu)^2+2lambda-n mu+n^2/4] v_top",
      jlast.apply(jfirst.apply(vs)), c_ex8, vs);
  add("hw.double_a",
      "J(e_(n-1)n) J(e_1(n-1)) v_a = sqrt(n^2-4)/4 [n(n+4)-(6n+4)mu+4mu^2+(2n-4)lambda-4lambda^2] "
      "v_top",
      jlast.apply(jfirst.apply(va)), c_ex9, va);
  add("hw.singlet", "J(e_1n) J(e_1n) Omega = -2(mu-lambda-1)(mu-lambda-n) v_top",
      j1n.apply(j1n.apply(singlet)), c_singlet, singlet);
  return out;
}

}  // namespace adjrmat
