#pragma once

// Evaluation action of the Yangian on V_mu ⊗ V_lambda, V = adjoint of su(n):
//   J(x)_{mu,lambda} = (mu ad x + T(x)/4) ⊗ 1 + 1 ⊗ (lambda ad x + T(x)/4)
//                      + 1/2 [ad x ⊗ 1, Omega],
// with T(x) = sum_{a,b} tr(x {I^a, I^b}) S^a S^b (trace in the fundamental).

#include <string_view>
#include <vector>

#include "adjrmat/adjoint_tensor.hpp"
#include "adjrmat/report.hpp"

namespace adjrmat {

/// Largest rank for which the identities below were established by explicit
/// evaluation; larger n is computed the same way but flagged.
inline constexpr int kMaxVerifiedRank = 7;
inline bool beyond_verified_range(int n) { return n > kMaxVerifiedRank; }

/// sum_{a,b} tr(x {I^a, I^b}) S^a S^b. Rejects non-traceless x.
CMatrix quadratic_term(const AdjointRep& rep, const CMatrix& x);

/// J(x)_{mu,lambda} in factored form: left ⊗ 1 + 1 ⊗ right + 1/2 [ad_x ⊗ 1, Omega].
struct Level1Operator {
  CMatrix left;
  CMatrix right;
  CMatrix ad_x;
  const SparseOp* omega = nullptr;  // owned by the AdjointRep

  CVector apply(const CVector& v) const;
  CMatrix dense() const;
};

struct YangianTwoSiteAction {
  const AdjointRep* rep = nullptr;
  cplx mu;
  cplx lambda;

  YangianTwoSiteAction(const AdjointRep& r, cplx mu_, cplx lambda_)
      : rep(&r), mu(mu_), lambda(lambda_) {}

  /// Delta(x); independent of (mu, lambda).
  SparseOp level0(const CMatrix& x) const { return diagonal_action(*rep, x); }
  Level1Operator level1(const CMatrix& x) const;
};

/// Dense J(x)_{mu,lambda}; x must be traceless.
CMatrix level1_action(const AdjointRep& rep, const CMatrix& x, cplx mu, cplx lambda);

/// |(T(x) ⊗ 1 + 1 ⊗ T(x)) v|; 0 for v = 0.
double anticommutator_residual(const AdjointRep& rep, const TensorVector& v, const CMatrix& x);

/// The residual above for the highest-weight vector named by `label` (a
/// component key such as "(20..010)a" or a measured Dynkin label), divided
/// by |v|. Throws std::invalid_argument for an unknown label.
double verify_anticommutator_identity(const AdjointRep& rep, const HighestWeightSet& hw,
                                      std::string_view label, const CMatrix& x);

/// Both substitutions: (e_{(n-1)n}, (20..010)a) and (e_12, (010..02)a).
std::vector<CheckResult> anticommutator_checks(const AdjointRep& rep, const HighestWeightSet& hw,
                                               double threshold);

/// Single and double level-1 actions on the adjoint pair and on the singlet,
/// each compared with its closed-form multiple of e_1n ⊗ e_1n. Residuals are
/// relative to the norm of the vector acted on.
std::vector<CheckResult> verify_hw_relations(const AdjointRep& rep, const HighestWeightSet& hw,
                                             cplx mu, cplx lambda, double threshold);

}  // namespace adjrmat
