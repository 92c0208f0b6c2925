#pragma once

// Dense complex linear algebra used by every other module: matrix aliases,
// Kronecker products, Gram-Schmidt, the general eigensolver and the JSON
// matrix format.

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "json.hpp"

namespace adjrmat {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using SparseOp = Eigen::SparseMatrix<cplx>;

/// Raised when a construction fails one of its own consistency checks
/// (a residual above its threshold). The message names the check.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerance {
  double abs_tol = 1e-9;   // operator identities
  double rank_tol = 1e-8;  // basis generation

  /// Throws std::invalid_argument unless both values are strictly positive.
  void validate() const;
};

CMatrix kron(const CMatrix& a, const CMatrix& b);
SparseOp kron(const SparseOp& a, const SparseOp& b);

/// a ⊗ 1 + 1 ⊗ a on C^d ⊗ C^d, returned sparse.
SparseOp kron_sum(const CMatrix& a, double drop_tol = 0.0);
SparseOp to_sparse(const CMatrix& a, double drop_tol = 0.0);

/// Modified Gram-Schmidt with one re-orthogonalization pass. A vector whose
/// residual after projection is at most rank_tol * max(1, |input|) is dropped;
/// survivors keep their input order.
std::vector<CVector> orthonormalize(std::span<const CVector> vectors,
                                    const Tolerance& tol = {});

struct EigenPair {
  cplx value;
  CVector vector;  // unit 2-norm right eigenvector
};

/// All eigenpairs of a general square matrix (Hessenberg reduction followed
/// by shifted QR, via LAPACK zgeev). Every pair is checked against
/// |m v - value v| <= abs_tol * |m|_F.
std::vector<EigenPair> eig_general(const CMatrix& m, const Tolerance& tol = {});

/// Eigenvalues only; same algorithm without the eigenvector back-transform.
std::vector<cplx> eigenvalues_general(const CMatrix& m);

double max_abs(const CMatrix& m);
bool all_finite(const CMatrix& m);
bool is_hermitian(const CMatrix& m, double tol);
bool is_unitary(const CMatrix& m, double tol);
bool is_projector(const CMatrix& m, double tol);

/// Commutator [a, b].
CMatrix commutator(const CMatrix& a, const CMatrix& b);

// {"rows": R, "cols": C, "data": [[re, im], ...]}, row-major.
nlohmann::json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json complex_to_json(cplx z);

/// Deterministic generator for spectral parameters and probe vectors. Draws
/// are derived from the raw 64-bit engine output only, so a seed reproduces
/// the same numbers on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  double uniform();  // [0, 1)
  double uniform(double lo, double hi);
  /// Uniform point of the closed complex disk of the given radius.
  cplx in_disk(double radius);
  /// Random unit vector of C^dim.
  CVector unit_vector(Eigen::Index dim);
  CMatrix random_matrix(Eigen::Index rows, Eigen::Index cols);

 private:
  std::mt19937_64 engine_;
};

}  // namespace adjrmat
