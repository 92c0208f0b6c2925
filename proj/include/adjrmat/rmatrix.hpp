#pragma once

// Intertwiner I(λ) and R-matrix R(λ) = I(λ)σ on V ⊗ V (V = adjoint of su(n)),
// assembled from Schur coefficients on the submodules of V ⊗ V.
//
// The 2x2 blocks act on the ordered pair {v_s, v_a} by columns:
//   X v_s = X11 v_s + X21 v_a,   X v_a = X12 v_s + X22 v_a,
// extended equivariantly with the isometry iso = B_a B_s^†.

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "adjrmat/adjoint_tensor.hpp"
#include "adjrmat/report.hpp"

namespace adjrmat {

inline constexpr double kPoleGuard = 0.1;

/// Evaluation too close to one of the poles {1, n}.
class PoleError : public std::invalid_argument {
 public:
  PoleError(double pole, cplx lambda);
  double pole;
};

/// Throws PoleError if |lambda - p| < kPoleGuard for p in {1, n}.
void check_poles(int n, cplx lambda);
bool near_pole(int n, cplx lambda);

using Block2 = Eigen::Matrix2cd;

struct CoefficientSet {
  int n = 0;
  cplx lambda;
  cplx f1, f2, f3, f4;
  Block2 M;
};

/// Closed forms f1 = f2 = (1+λ)/(1-λ), f3 = f1^2, f4 = f1 (n+λ)/(n-λ) and
/// M(λ) over the common denominator 2(n-λ)(1-λ)^2.
CoefficientSet coefficients(int n, cplx lambda);
/// Exact λ-derivatives of the closed forms.
CoefficientSet coefficient_derivatives(int n, cplx lambda);
/// The 2x2 block of R(λ): M with its second column negated.
Block2 r_block(int n, cplx lambda);

struct SchurCoefficients {
  cplx top = 1.0;
  cplx anti_left = 1.0;
  cplx anti_right = 1.0;
  cplx middle = 1.0;  // ignored for n = 3
  cplx singlet = 1.0;
  Block2 block = Block2::Identity();
};

SchurCoefficients intertwiner_schur(const CoefficientSet& c);
/// Coefficients of R = Iσ written directly: antisymmetric modules change sign.
SchurCoefficients rmatrix_schur(int n, cplx lambda);

/// Dense sum_X c_X P_X + block, via one product W B^† with the joint basis B.
CMatrix assemble(const Decomposition& dec, const SchurCoefficients& c);
/// The same operator applied to the columns of v without forming it.
CMatrix apply_schur(const Decomposition& dec, const SchurCoefficients& c, const CMatrix& v);

CMatrix build_intertwiner(const Decomposition& dec, cplx lambda);
/// I(λ)σ, checked entrywise against the direct assembly within tol.abs_tol;
/// throws VerificationError on disagreement.
CMatrix build_R(const Decomposition& dec, cplx lambda, const Tolerance& tol = {});
/// σ I(λ).
CMatrix build_R_tilde(const Decomposition& dec, cplx lambda);

/// Spectral parameter uniform in |λ| <= radius with the pole regions removed.
cplx sample_spectral(Rng& rng, int n, double radius = 3.0);

/// Coefficients recovered from the intertwining relation on highest-weight
/// vectors, with no use of the closed forms. Each f is the ratio of the
/// projections of J_{0,λ}(y) v and J_{λ,0}(y) v onto the module they reach
/// (the top one, except for f3 which is anchored on the derived f1); M
/// solves the 2x2 systems from y = J(e_1n) and y = J(e_(n-1)n) J(e_1(n-1)).
struct DerivedCoefficients {
  cplx requested;  // sample as given
  cplx lambda;     // sample actually used (moved if a system was singular)
  cplx f1, f2, f4;
  std::optional<cplx> f3;  // absent for n = 3
  Block2 M;
};
DerivedCoefficients derive_coefficients(const Decomposition& dec, cplx lambda, Rng& rng);
std::vector<DerivedCoefficients> derive_coefficients(const Decomposition& dec,
                                                     const std::vector<cplx>& samples, Rng& rng);

/// Largest deviation of derived from closed-form coefficients.
double coefficient_deviation(int n, const DerivedCoefficients& d);

/// max over basis generators I^a of |I Δ(x) - Δ(x) I| and
/// |I J_{0,λ}(x) - J_{λ,0}(x) I|, each relative to |I| |Δ(x)| resp. |I| |J(x)|.
struct IntertwiningResidual {
  double level0 = 0.0;
  double level1 = 0.0;
};
IntertwiningResidual intertwining_residual(const Decomposition& dec, cplx lambda);

/// The same relations applied to `probes` random unit vectors; each entry is
/// the largest |I A v - B I v| / |I A v| over generators and probes.
IntertwiningResidual intertwining_residual_probes(const Decomposition& dec, cplx lambda,
                                                  int probes, Rng& rng);

/// max |I(λ) I(-λ) - 1|.
double inversion_residual(const Decomposition& dec, cplx lambda);
/// max over random unit vectors v of |I(λ) I(-λ) v - v|, through the
/// submodule bases.
double inversion_residual_probes(const Decomposition& dec, cplx lambda, int probes, Rng& rng);

enum class RKind { R, RTilde };
enum class YbeMode { Dense, MatrixFree };

/// R12(λ) R13(λ+μ) R23(μ) - R23(μ) R13(λ+μ) R12(λ) on V^{⊗3}. Dense mode
/// (n <= 4) returns |LHS - RHS|_F / |LHS|_F; matrix-free mode applies both
/// sides to `probes` random unit vectors, with each R applied through the
/// submodule bases, and returns the largest relative residual. Rejects λ, μ
/// or λ+μ near a pole.
double ybe_residual(const Decomposition& dec, cplx lambda, cplx mu, YbeMode mode, RKind kind,
                    int probes, Rng& rng);

/// Remainder |R(λ) - (1 + 2/λ) 1 + Ω/λ|_F at each λ (|λ| >= 10).
struct AsymptoticReport {
  std::vector<double> lambdas;
  std::vector<double> remainders;
  std::vector<double> ratios;  // remainder(λ_k) / remainder(λ_{k+1})
  double omega_norm = 0.0;
};
AsymptoticReport asymptotic_check(const Decomposition& dec, const std::vector<double>& lambdas);

/// <v_i, X v_j> / |v_s|^2 on the ordered pair {v_s, v_a}.
Block2 block_on_hw_pair(const Decomposition& dec, const CMatrix& x);

}  // namespace adjrmat
