#include "adjrmat/yangian_action.hpp"
#include "doctest.h"

using namespace adjrmat;

TEST_CASE("anticommutator identity on the antisymmetric highest-weight vectors") {
  for (int n : {4, 5, 6}) {
    CAPTURE(n);
    const AdjointRep rep = adjoint_rep(build_basis(n));
    const HighestWeightSet hw = highest_weight_vectors(rep);
    for (const auto& c : anticommutator_checks(rep, hw, 1e-8)) {
      CAPTURE(c.id);
      CHECK(c.pass);
    }
    // The adjoint-pair vector is not annihilated.
    CHECK(verify_anticommutator_identity(rep, hw, "(10..01)s", unit_matrix(n, 1, 2)) > 1e-3);
  }
}

TEST_CASE("level-1 relations on highest-weight vectors at random (mu, lambda)") {
  const AdjointRep rep = adjoint_rep(build_basis(4));
  const HighestWeightSet hw = highest_weight_vectors(rep);
  Rng rng(11);
  for (int k = 0; k < 4; ++k) {
    const cplx mu = rng.in_disk(3.0), la = rng.in_disk(3.0);
    for (const auto& c : verify_hw_relations(rep, hw, mu, la, 1e-8)) {
      CAPTURE(c.id);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("factored level-1 operator matches its dense form") {
  const AdjointRep rep = adjoint_rep(build_basis(4));
  const CMatrix x = unit_matrix(4, 1, 3);
  const YangianTwoSiteAction act(rep, cplx(0.3, -1), cplx(2, 0.5));
  const Level1Operator j = act.level1(x);
  const CMatrix dense = j.dense();
  CHECK(max_abs(dense - level1_action(rep, x, act.mu, act.lambda)) < 1e-12);
  Rng rng(4);
  const CVector v = rng.unit_vector(rep.pair_dim());
  CHECK((j.apply(v) - dense * v).norm() < 1e-12);
}

TEST_CASE("level-1 action shifts by the evaluation parameters") {
  // J_{mu+t, lambda+t}(x) - J_{mu, lambda}(x) = t Δ(x)
  const AdjointRep rep = adjoint_rep(build_basis(3));
  const CMatrix x = unit_matrix(3, 2, 1);
  const cplx t(0.7, -0.2);
  const CMatrix diff = level1_action(rep, x, 1.0 + t, -0.5 + t) - level1_action(rep, x, 1.0, -0.5);
  CHECK(max_abs(diff - t * CMatrix(diagonal_action(rep, x))) < 1e-12);
}

TEST_CASE("quadratic term rejects a traced argument") {
  const AdjointRep rep = adjoint_rep(build_basis(3));
  CHECK_THROWS_AS(quadratic_term(rep, CMatrix::Identity(3, 3)), std::invalid_argument);
  CHECK(beyond_verified_range(8));
  CHECK_FALSE(beyond_verified_range(7));
}
