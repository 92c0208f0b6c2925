#pragma once

// Adjoint representation of su(n), the two-site operators on V ⊗ V
// (V = adjoint, dim n^2-1), the highest-weight vectors of the irreducible
// factors of V ⊗ V and their orbit-generated bases.
//
// A vector of V ⊗ V is stored by its coordinates v[a*dim + b] in the basis
// I^a ⊗ I^b; the first tensor factor is the major index, matching kron().

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "adjrmat/liealg.hpp"
#include "adjrmat/numerics.hpp"

namespace adjrmat {

/// Coordinates of an element of su(n) ⊗ su(n) (or of V ⊗ V).
using TensorVector = CVector;

struct AdjointRep {
  SunBasis basis;
  /// S[a] is the matrix of ad(I^a) in the basis {I^b}:
  /// (S^a)_{bc} = tr(I^b [I^a, I^c]) = f^{acb}.
  std::vector<CMatrix> S;
  /// sum_a S^a ⊗ S^a on V ⊗ V.
  SparseOp omega;
  int dim = 0;

  /// Matrix of ad(x) for a traceless n x n matrix x (rejects trace != 0).
  CMatrix ad(const CMatrix& x) const;
  int n() const { return basis.n; }
  int pair_dim() const { return dim * dim; }
};

/// Builds the adjoint matrices and checks hermiticity, the representation
/// property [S^a, S^b] = sum_c f^{abc} S^c and sum_a S^a S^a = 2n.
AdjointRep adjoint_rep(SunBasis basis, const Tolerance& tol = {});

/// Dense Casimir operator sum_a S^a ⊗ S^a.
CMatrix casimir_op(const AdjointRep& rep);

/// Swap of the two tensor factors of C^dim ⊗ C^dim.
CMatrix permutation_op(int dim);
CVector swap_factors(const CVector& v, int dim);
/// sigma * m and m * sigma without forming sigma.
CMatrix swap_rows(const CMatrix& m, int dim);
CMatrix swap_cols(const CMatrix& m, int dim);

/// (a ⊗ 1) v, (1 ⊗ b) v and (a ⊗ b) v for v in C^d ⊗ C^d.
CVector apply_left(const CMatrix& a, const CVector& v);
CVector apply_right(const CMatrix& b, const CVector& v);
CVector apply_kron(const CMatrix& a, const CMatrix& b, const CVector& v);

/// Diagonal (level-0) action Delta(x) = ad(x) ⊗ 1 + 1 ⊗ ad(x), sparse.
SparseOp diagonal_action(const AdjointRep& rep, const CMatrix& x);

/// The seven irreducible factors of adjoint ⊗ adjoint in the order used
/// throughout; `Middle` does not occur for n = 3.
enum class Component {
  Top,          // (20…02)_s
  AntiLeft,     // (20…010)_a
  AntiRight,    // (010…02)_a
  Middle,       // (010…010)_s
  AdjointSym,   // (10…01)_s
  AdjointAnti,  // (10…01)_a
  Singlet,      // (0…0)_s
};

/// n-independent key such as "(20..010)a".
std::string_view component_key(Component c);
std::vector<Component> components_for(int n);

using Weight = std::vector<int>;  // eigenvalues of ad(e_kk), k = 1..n

struct HighestWeightVector {
  Component component;
  std::string label;  // Dynkin label measured from the weight, e.g. "(202)s"
  TensorVector vector;
  int parity = 1;
  Weight weight;
  double omega_eigenvalue = 0.0;  // measured
};

struct HighestWeightSet {
  int n = 0;
  std::vector<HighestWeightVector> vectors;
  /// v_s = n sum w^a d^{abc} I^b ⊗ I^c and v_a = sqrt(n^2-4) sum w^a f^{abc}
  /// I^b ⊗ I^c with e_1n = sum w^a I^a. The first agrees with the Table form
  /// of v_s; the second is the negative of sqrt(n^2-4) [Omega, 1 ⊗ e_1n].
  TensorVector v_s_alt;
  TensorVector v_a_alt;

  const HighestWeightVector& get(Component c) const;
  const HighestWeightVector& get(std::string_view label) const;
};

/// Coordinates of an element of su(n) ⊗ su(n) from its n^2 x n^2 matrix in
/// fundamental ⊗ fundamental, and back.
TensorVector from_fundamental(const SunBasis& basis, const CMatrix& x);
CMatrix to_fundamental(const SunBasis& basis, const TensorVector& v);

/// Table of highest-weight vectors. Products with Omega are taken as
/// n^2 x n^2 matrices in fundamental ⊗ fundamental and re-expanded; an
/// expansion residual above tol.abs_tol throws VerificationError.
HighestWeightSet highest_weight_vectors(const AdjointRep& rep, const Tolerance& tol = {});

/// Weight of a weight vector; throws VerificationError if v is not one.
Weight measure_weight(const AdjointRep& rep, const TensorVector& v, const Tolerance& tol = {});

/// Lowering operators Delta(e_ji), i < j, in lexicographic order of (i, j).
struct LoweringOperators {
  std::vector<std::pair<int, int>> pairs;  // 1-based (i, j), i < j
  std::vector<SparseOp> ops;
};
LoweringOperators lowering_operators(const AdjointRep& rep);

struct LoweringStep {
  int parent = 0;  // column the operator acted on
  int op = 0;      // index into LoweringOperators
};

struct Submodule {
  Component component = Component::Top;
  std::string label;
  TensorVector hw_vector;
  CMatrix basis;  // orthonormal columns; column 0 is hw_vector / |hw_vector|
  std::vector<Weight> weights;             // weight of each column
  std::vector<LoweringStep> steps;         // steps[k] produced column k + 1
  std::vector<double> step_norms;          // residual norm before normalizing
  double omega_eigenvalue = 0.0;
  int exchange_parity = 1;

  int dim() const { return static_cast<int>(basis.cols()); }
  CMatrix projector() const { return basis * basis.adjoint(); }
  CVector project(const CVector& v) const { return basis * (basis.adjoint() * v); }
};

/// Orbit of `hwv` under all lowering operators: breadth-first by word length,
/// operators in lexicographic order, each candidate orthonormalized (two
/// passes) against the collected vectors of the same weight and kept when
/// the residual exceeds tol.rank_tol relative to the candidate. Checks the
/// Omega eigenvalue and the exchange parity on every basis vector.
Submodule generate_submodule(const AdjointRep& rep, const TensorVector& hwv, int parity,
                             const Tolerance& tol = {});

/// Rebuilds the orbit of `hwv` with exactly the lowering words of `model`,
/// so that column k of the result is the image of column k of `model` under
/// the equivariant isometry mapping model.hw_vector to hwv.
Submodule replay_submodule(const AdjointRep& rep, const TensorVector& hwv, int parity,
                           const Submodule& model, const Tolerance& tol = {});

struct Decomposition {
  AdjointRep rep;
  HighestWeightSet hw;
  std::vector<Submodule> submodules;  // order of components_for(n)
  double completeness_residual = 0.0;   // max |sum P - 1|
  double orthogonality_residual = 0.0;  // max |B^† B - 1| over all bases

  int n() const { return rep.n(); }
  int pair_dim() const { return rep.pair_dim(); }
  bool has(Component c) const;
  const Submodule& get(Component c) const;
  /// Equivariant partial isometry im(P_s) -> im(P_a), B_a B_s^†.
  CMatrix iso_s_to_a() const;
  /// All bases side by side (a unitary matrix).
  CMatrix joint_basis() const;
};

/// Generates every submodule, the adjoint pair by replay, and checks
/// dimensions, completeness and mutual orthogonality.
Decomposition build_decomposition(const AdjointRep& rep, const Tolerance& tol = {});

}  // namespace adjrmat
