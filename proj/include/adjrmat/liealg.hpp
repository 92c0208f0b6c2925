#pragma once

// The orthonormal Hermitian basis of su(n) (generalized Gell-Mann matrices
// scaled to unit trace norm), its structure constants f and d-symbols, and
// matrix units e_ij.

#include <optional>
#include <vector>

#include "adjrmat/numerics.hpp"

namespace adjrmat {

/// Dense rank-3 array indexed (a, b, c), all indices in [0, dim).
class Rank3 {
 public:
  Rank3() = default;
  explicit Rank3(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim) * dim * dim) {}

  int dim() const { return dim_; }
  cplx& operator()(int a, int b, int c) { return data_[index(a, b, c)]; }
  cplx operator()(int a, int b, int c) const { return data_[index(a, b, c)]; }

 private:
  std::size_t index(int a, int b, int c) const {
    return (static_cast<std::size_t>(a) * dim_ + b) * dim_ + c;
  }
  int dim_ = 0;
  std::vector<cplx> data_;
};

struct StructureConstants {
  Rank3 f;  // f^{abc} = tr(I^c [I^a, I^b]), purely imaginary
  Rank3 d;  // d^{abc} = tr(I^c {I^a, I^b}), real
};

/// Generators are ordered: symmetric off-diagonal (E_ij + E_ji)/sqrt2 for
/// i<j lexicographic, then antisymmetric (-i E_ij + i E_ji)/sqrt2 in the same
/// order, then the n-1 diagonal generators of increasing support. With n = 3
/// these are the Gell-Mann matrices divided by sqrt2, in a different order.
struct SunBasis {
  int n = 0;
  std::vector<CMatrix> generators;
  Rank3 f;
  Rank3 d;

  int dim() const { return n * n - 1; }

  // 1-based matrix indices i < j; 1-based k in [1, n-1]. Returns 0-based
  // generator positions.
  int symmetric_index(int i, int j) const;
  int antisymmetric_index(int i, int j) const;
  int cartan_index(int k) const;
};

/// Builds the basis and its structure constants and checks orthonormality,
/// hermiticity, tracelessness, the (anti)symmetry and reality of f and d,
/// and the commutator/anticommutator reconstruction identities.
/// Throws std::invalid_argument for n < 3 and VerificationError if a check
/// fails at `tol.abs_tol`.
SunBasis build_basis(int n, const Tolerance& tol = {});

StructureConstants structure_constants(const SunBasis& basis);

/// Coordinates w^a = tr((I^a)^† x) of an n x n matrix (exact for traceless x).
CVector coordinates(const SunBasis& basis, const CMatrix& x);
CMatrix from_coordinates(const SunBasis& basis, const CVector& w);

struct MatrixUnit {
  int i = 0;  // 1-based
  int j = 0;
  CMatrix matrix;
  std::optional<CVector> coords;  // e_ij = sum_a coords[a] I^a, for i != j
};

/// e_ij with 1-based indices. Coordinates are computed when requested; they
/// are rejected for i == j because e_ii is not traceless.
MatrixUnit matrix_unit(const SunBasis& basis, int i, int j, bool with_coords = true);

/// e_ij as a plain n x n matrix (1-based).
CMatrix unit_matrix(int n, int i, int j);

}  // namespace adjrmat
