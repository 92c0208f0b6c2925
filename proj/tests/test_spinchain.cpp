#include "adjrmat/spinchain.hpp"
#include "doctest.h"

using namespace adjrmat;

namespace {

Decomposition decompose(int n) { return build_decomposition(adjoint_rep(build_basis(n))); }

}  // namespace

TEST_CASE("n = 3 local Hamiltonian coefficients") {
  const Decomposition dec = decompose(3);
  const LocalHamiltonian lh = local_h(dec);
  CHECK(lh.assembly_residual < 1e-9);
  CHECK(lh.fd_residual < 1e-6);
  const auto coef = [&](Component c) {
    const CVector& v = dec.hw.get(c).vector;
    return v.dot(lh.h * v) / v.squaredNorm();
  };
  CHECK(std::abs(coef(Component::Top)) < 1e-12);
  CHECK(std::abs(coef(Component::AntiLeft) - 2.0) < 1e-12);
  CHECK(std::abs(coef(Component::AntiRight) - 2.0) < 1e-12);
  CHECK(std::abs(coef(Component::Singlet) - 8.0 / 3.0) < 1e-12);
  const Block2 o = block_on_hw_pair(dec, lh.h);
  CHECK(std::abs(o(0, 0) - 25.0 / 6.0) < 1e-12);
  CHECK(std::abs(o(1, 1) - 0.5) < 1e-12);
  CHECK(std::abs(o(0, 1) * o(1, 0) + 5.0 / 4.0) < 1e-12);
}

TEST_CASE("h is not Hermitian but has a real two-site spectrum") {
  for (int n : {3, 4}) {
    CAPTURE(n);
    const CMatrix h = local_h(decompose(n)).h;
    CHECK(hermiticity_defect(h) > 0.1);
    CHECK(spectrum_diagnostics(h).max_imag < 1e-8);
  }
}

TEST_CASE("block spectrum equals the dense spectrum") {
  const Decomposition dec = decompose(4);
  const CMatrix h = local_h(dec).h;
  const BlockSpectrum bs = block_spectrum(dec, h);
  const auto dense = spectrum_diagnostics(h).eigenvalues;
  CHECK(bs.off_block < 1e-12);
  REQUIRE(bs.eigenvalues.size() == dense.size());
  double worst = 0.0;
  for (std::size_t k = 0; k < dense.size(); ++k) {
    worst = std::max(worst, std::abs(bs.eigenvalues[k].real() - dense[k].real()));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("spin-operator form equals the scaled h plus a constant") {
  for (int n : {3, 4}) {
    CAPTURE(n);
    const Decomposition dec = decompose(n);
    const SpinOperators ops = spin_operators(dec.rep);
    CHECK(max_abs(ops.K - ops.K.adjoint()) < 1e-10);
    CHECK(commutator(ops.K, ops.C_A).norm() > 0.1);
    const SpinformFit fit = fit_spinform(spinform_h(ops, n), local_h(dec).h, n);
    CHECK(fit.residual < 1e-9);
    CHECK(std::abs(fit.scale - fit.expected_scale) < 1e-9);
  }
  CHECK(spinform_scale(3) == doctest::Approx(8.0 / 3.0));
  CHECK(spinform_scale(4) == doctest::Approx(8.0 / 22.0));
}

TEST_CASE("chain Hamiltonian: embedding, symmetry, complex spectrum at n = 3, N = 3") {
  const Decomposition dec = decompose(3);
  const CMatrix h = local_h(dec).h;
  const CMatrix H2 = chain_H(h, 8, 2);
  // periodic two-site chain: h_12 + h_21
  CHECK(max_abs(H2 - (h + swap_rows(swap_cols(h, 8), 8))) < 1e-12);
  const CMatrix H = chain_H(h, 8, 3);
  CHECK(chain_symmetry_residual(H, dec.rep, 3) < 1e-9);
  const SpectrumDiagnostics sd = spectrum_diagnostics(H);
  CHECK(sd.max_imag > 1e-6);
  CHECK(sd.complex_count > 0);
  CHECK_THROWS_AS(chain_H(h, 8, 1), std::invalid_argument);
  CHECK_THROWS_AS(chain_H(h, 8, 5), std::invalid_argument);
}

TEST_CASE("transfer matrices commute; t(0) is a shift; t generates H") {
  const Decomposition dec = decompose(3);
  for (int sites : {2, 3}) {
    CAPTURE(sites);
    CHECK(commutation_check(dec, cplx(0.4, 0.3), cplx(-1.3, 0.8), sites) < 1e-8);
    const CMatrix t0 = transfer_matrix(dec, 0.0, sites);
    const CMatrix u = shift_operator(8, sites);
    CHECK(std::min(max_abs(t0 - u), max_abs(t0 - u.adjoint())) < 1e-12);
    const CMatrix H = chain_H(local_h(dec).h, 8, sites);
    CHECK(relative_commutator(transfer_matrix(dec, cplx(0.9, -0.4), sites), H) < 1e-8);
  }
}

TEST_CASE("shift operator is a unitary of order N") {
  const CMatrix u = shift_operator(3, 4);
  CHECK(is_unitary(u, 1e-14));
  CMatrix p = CMatrix::Identity(81, 81);
  for (int k = 0; k < 4; ++k) p = u * p;
  CHECK(max_abs(p - CMatrix::Identity(81, 81)) == 0.0);
}

TEST_CASE("embed_two_site on adjacent sites is a Kronecker product") {
  Rng rng(6);
  const CMatrix op = rng.random_matrix(4, 4);
  const CMatrix id = CMatrix::Identity(2, 2);
  CHECK(max_abs(embed_two_site(op, 2, 3, 0, 1) - kron(op, id)) < 1e-15);
  CHECK(max_abs(embed_two_site(op, 2, 3, 1, 2) - kron(id, op)) < 1e-15);
}
