#pragma once

// Local Hamiltonian h = R'(0)σ, its spin-operator form, periodic chains
// H = sum_i h_{i,i+1} and the transfer matrix t(λ) = tr_0 R_01(λ) ... R_0N(λ).

#include <vector>

#include "adjrmat/rmatrix.hpp"

namespace adjrmat {

/// Schur data of h on the submodules: 0 on the top module, 2 on both
/// antisymmetric modules, 4 on the middle one, (2+2n)/n on the singlet and
/// the block O on the adjoint pair.
SchurCoefficients hamiltonian_schur(int n);
Block2 o_block(int n);

struct LocalHamiltonian {
  int n = 0;
  CMatrix h;  // I'(0) = R'(0)σ
  Block2 O_block;
  double assembly_residual = 0.0;  // max |analytic - direct assembly|
  double fd_residual = 0.0;        // max |analytic - central difference|
};

/// Builds h from the exact derivatives of the coefficients and checks it
/// against the direct assembly (tol.abs_tol) and a central difference of
/// R(λ)σ with step 1e-5 (1e-6). Throws VerificationError on disagreement.
LocalHamiltonian local_h(const Decomposition& dec, const Tolerance& tol = {});

inline constexpr double kFiniteDifferenceStep = 1e-5;
inline constexpr double kFiniteDifferenceTol = 1e-6;

/// Factor relating the spin-operator form to h: 8/3 for n = 3, 8/(6+n^2)
/// otherwise.
double spinform_scale(int n);

/// Q = sum S^a ⊗ S^a, C_A = sum d^{abc} (S^aS^b ⊗ S^c - S^a ⊗ S^bS^c),
/// K = sum d^{abc} d^{def} S^aS^dS^e ⊗ S^fS^bS^c, with S^a the matrix
/// (S^a)_{bc} = f^{abc}, which is -ad(I^a).
struct SpinOperators {
  CMatrix Q;
  CMatrix C_A;
  CMatrix K;
};
SpinOperators spin_operators(const AdjointRep& rep);

/// The polynomial in Q plus the K and [K, C_A] terms; the n = 3 form differs
/// from the general one.
CMatrix spinform_h(const SpinOperators& ops, int n);
/// Coefficient of [K, C_A] in spinform_h.
double commutator_coefficient(int n);

/// Least-squares fit target ≈ scale · h + c · 1 over complex (scale, c).
struct SpinformFit {
  cplx scale;
  cplx constant;
  double residual = 0.0;  // max-abs after the fit
  double expected_scale = 0.0;
};
SpinformFit fit_spinform(const CMatrix& target, const CMatrix& h, int n);

/// A two-site operator acting on sites (i, j), 0-based, of an N-site chain
/// whose site 0 is the most significant tensor factor.
CMatrix embed_two_site(const CMatrix& op, int dim, int sites, int i, int j);
/// sum_i x on site i.
CMatrix embed_total(const CMatrix& x, int dim, int sites);

inline constexpr long kMaxChainDim = 10000;

/// Periodic chain sum_{i} h_{i,i+1}, site N+1 = site 1. Rejects N < 2 and
/// dim^N above kMaxChainDim.
CMatrix chain_H(const CMatrix& h, int dim, int sites);

/// max over generators of |[H, sum_i S^a_i]|.
double chain_symmetry_residual(const CMatrix& H, const AdjointRep& rep, int sites);

/// tr_0 [R_01(λ) R_02(λ) ... R_0N(λ)] on the chain, auxiliary space first in
/// each R. Rejects dim^N above kMaxChainDim.
CMatrix transfer_matrix(const Decomposition& dec, cplx lambda, int sites);

/// |[t(λ), t(μ)]|_F / (|t(λ)|_F |t(μ)|_F).
double commutation_check(const Decomposition& dec, cplx lambda, cplx mu, int sites);
/// |[A, B]|_F / (|A|_F |B|_F).
double relative_commutator(const CMatrix& a, const CMatrix& b);

/// Cyclic shift sending the state on site i to site i+1 (mod N).
CMatrix shift_operator(int dim, int sites);

struct SpectrumDiagnostics {
  std::vector<cplx> eigenvalues;  // sorted by (real, imag)
  double max_imag = 0.0;
  int complex_count = 0;  // |Im| > complex_threshold
  double complex_threshold = 1e-6;
};
SpectrumDiagnostics spectrum_diagnostics(const CMatrix& m, double complex_threshold = 1e-6);

/// Spectrum of an operator that commutes with the su(n) action, from its
/// compressions B_X^† m B_X to the diagonal submodules and to the joint
/// adjoint pair. off_block is the largest entry of m between different
/// blocks, which must vanish for the union to be the spectrum of m.
struct BlockSpectrum {
  std::vector<cplx> eigenvalues;  // sorted by (real, imag)
  double off_block = 0.0;
};
BlockSpectrum block_spectrum(const Decomposition& dec, const CMatrix& m);

/// |h - h^†|_F.
double hermiticity_defect(const CMatrix& m);

}  // namespace adjrmat
