#include "adjrmat/adjoint_tensor.hpp"
#include "doctest.h"

using namespace adjrmat;

namespace {

Decomposition decompose(int n) { return build_decomposition(adjoint_rep(build_basis(n))); }

}  // namespace

TEST_CASE("adjoint matrices: Casimir 2n and the representation property") {
  const AdjointRep rep = adjoint_rep(build_basis(4));
  CMatrix cas = CMatrix::Zero(rep.dim, rep.dim);
  for (const auto& s : rep.S) cas += s * s;
  CHECK(max_abs(cas - 8.0 * CMatrix::Identity(rep.dim, rep.dim)) < 1e-12);
  // S^a is ad(I^a): ad(x) applied to coordinates of y gives coordinates of [x, y].
  Rng rng(1);
  const CVector w = rng.unit_vector(rep.dim);
  const CMatrix y = from_coordinates(rep.basis, w);
  const CMatrix& x = rep.basis.generators[3];
  CHECK((rep.S[3] * w - coordinates(rep.basis, commutator(x, y))).norm() < 1e-13);
  CHECK_THROWS_AS(rep.ad(CMatrix::Identity(4, 4)), std::invalid_argument);
}

TEST_CASE("n = 3: six modules 27, 10, 10, 8, 8, 1") {
  const Decomposition dec = decompose(3);
  std::vector<int> dims;
  for (const auto& sm : dec.submodules) dims.push_back(sm.dim());
  CHECK(dims == std::vector<int>{27, 10, 10, 8, 8, 1});
  CHECK_FALSE(dec.has(Component::Middle));
}

TEST_CASE("Omega eigenvalues, parities and completeness for n = 4, 5") {
  for (int n : {4, 5}) {
    CAPTURE(n);
    const Decomposition dec = decompose(n);
    const std::vector<double> omega{2, 0, 0, -2, -double(n), -double(n), -2.0 * n};
    const std::vector<int> parity{1, -1, -1, 1, 1, -1, 1};
    REQUIRE(dec.submodules.size() == 7);
    int total = 0;
    CMatrix sum = CMatrix::Zero(dec.pair_dim(), dec.pair_dim());
    for (std::size_t k = 0; k < 7; ++k) {
      const Submodule& sm = dec.submodules[k];
      CHECK(std::abs(sm.omega_eigenvalue - omega[k]) < 1e-8);
      CHECK(sm.exchange_parity == parity[k]);
      // every basis vector, not just the highest one
      const CMatrix ob = dec.rep.omega * sm.basis;
      CHECK(max_abs(ob - omega[k] * sm.basis) < 1e-9);
      CHECK(max_abs(swap_rows(sm.basis, dec.rep.dim) - double(parity[k]) * sm.basis) < 1e-12);
      total += sm.dim();
      sum += sm.projector();
    }
    CHECK(total == (n * n - 1) * (n * n - 1));
    CHECK(max_abs(sum - CMatrix::Identity(dec.pair_dim(), dec.pair_dim())) < 1e-9);
  }
}

TEST_CASE("n = 4 dimensions") {
  const Decomposition dec = decompose(4);
  std::vector<int> dims;
  for (const auto& sm : dec.submodules) dims.push_back(sm.dim());
  CHECK(dims == std::vector<int>{84, 45, 45, 20, 15, 15, 1});
}

TEST_CASE("highest-weight vectors are killed by raising operators") {
  const AdjointRep rep = adjoint_rep(build_basis(4));
  const HighestWeightSet hw = highest_weight_vectors(rep);
  for (const auto& v : hw.vectors) {
    CAPTURE(v.label);
    for (int i = 1; i < 4; ++i) {
      const SparseOp raise = diagonal_action(rep, unit_matrix(4, i, i + 1));
      CHECK((raise * v.vector).norm() < 1e-12 * std::max(1.0, v.vector.norm()));
    }
  }
  CHECK(hw.get("(20..02)s").label == "(202)s");
  CHECK(hw.get("(101)a").component == Component::AdjointAnti);
  CHECK_THROWS_AS(hw.get("(999)s"), std::invalid_argument);
}

TEST_CASE("adjoint-pair vectors: equal norms; alternative forms agree up to sign") {
  const AdjointRep rep = adjoint_rep(build_basis(5));
  const HighestWeightSet hw = highest_weight_vectors(rep);
  const CVector& vs = hw.get(Component::AdjointSym).vector;
  const CVector& va = hw.get(Component::AdjointAnti).vector;
  CHECK(std::abs(vs.norm() - va.norm()) < 1e-12 * vs.norm());
  CHECK((hw.v_s_alt - vs).norm() < 1e-12 * vs.norm());
  CHECK((hw.v_a_alt + va).norm() < 1e-12 * va.norm());
}

TEST_CASE("iso_s_to_a intertwines the diagonal action") {
  const Decomposition dec = decompose(4);
  const CMatrix iso = dec.iso_s_to_a();
  for (int a : {0, 5, 14}) {
    const SparseOp delta = diagonal_action(dec.rep, dec.rep.basis.generators[a]);
    CHECK(max_abs(delta * iso - iso * delta) < 1e-12);
  }
  const CMatrix& bs = dec.get(Component::AdjointSym).basis;
  const CMatrix& ba = dec.get(Component::AdjointAnti).basis;
  CHECK(max_abs(iso * bs - ba) < 1e-12);
}

TEST_CASE("swap helpers agree with the permutation matrix") {
  Rng rng(2);
  const int d = 3;
  const CMatrix m = rng.random_matrix(d * d, d * d);
  const CMatrix p = permutation_op(d);
  CHECK(max_abs(swap_rows(m, d) - p * m) == 0.0);
  CHECK(max_abs(swap_cols(m, d) - m * p) == 0.0);
  const CVector v = rng.unit_vector(d * d);
  CHECK((swap_factors(v, d) - p * v).norm() == 0.0);
}
