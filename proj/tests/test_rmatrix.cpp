#include "adjrmat/rmatrix.hpp"
#include "doctest.h"

using namespace adjrmat;

namespace {

Decomposition decompose(int n) { return build_decomposition(adjoint_rep(build_basis(n))); }

}  // namespace

TEST_CASE("closed-form coefficients at fixed points") {
  const CoefficientSet c0 = coefficients(4, 0.0);
  CHECK(std::abs(c0.f1 - 1.0) < 1e-15);
  CHECK(std::abs(c0.f4 - 1.0) < 1e-15);
  CHECK(max_abs(c0.M - Block2::Identity()) < 1e-15);

  const CoefficientSet c2 = coefficients(4, 2.0);
  CHECK(std::abs(c2.f1 + 3.0) < 1e-14);
  CHECK(std::abs(c2.f3 - 9.0) < 1e-14);
  CHECK(std::abs(c2.f4 + 9.0) < 1e-14);
}

TEST_CASE("R block against the rational matrix over 2(n-λ)(1-λ)^2") {
  for (int n : {3, 4, 6}) {
    for (cplx l : {cplx(0.5, 0), cplx(-1.2, 0.4), cplx(0, 2)}) {
      const cplx den = 2.0 * (double(n) - l) * (1.0 - l) * (1.0 - l);
      const cplx p = double(n * n + 2) * l - 2.0 * l * l * l;
      const cplx off = -double(n) * std::sqrt(double(n * n - 4)) * l / den;
      const Block2 r = r_block(n, l);
      CHECK(std::abs(r(0, 0) - (2.0 * n + p) / den) < 1e-13);
      CHECK(std::abs(r(1, 1) - (-2.0 * n + p) / den) < 1e-13);
      // the off-diagonal sign depends on the phase of v_a; the product does not
      CHECK(std::abs(r(0, 1) * r(1, 0) - off * off) < 1e-13);
    }
  }
}

TEST_CASE("exact derivatives agree with central differences") {
  const cplx l(0.3, 0.2), h = 1e-6;
  const CoefficientSet d = coefficient_derivatives(5, l);
  const CoefficientSet p = coefficients(5, l + h), m = coefficients(5, l - h);
  CHECK(std::abs(d.f1 - (p.f1 - m.f1) / (2.0 * h)) < 1e-7);
  CHECK(std::abs(d.f4 - (p.f4 - m.f4) / (2.0 * h)) < 1e-7);
  CHECK(max_abs(d.M - (p.M - m.M) / (2.0 * h)) < 1e-7);
}

TEST_CASE("poles are rejected") {
  CHECK_THROWS_AS(check_poles(4, 1.05), PoleError);
  CHECK_THROWS_AS(check_poles(4, cplx(4.0, 0.01)), PoleError);
  CHECK_NOTHROW(check_poles(4, 2.0));
  CHECK(near_pole(3, 3.0));
  const Decomposition dec = decompose(3);
  CHECK_THROWS_AS(build_R(dec, 1.0), PoleError);
}

TEST_CASE("n = 3: identity, inversion, intertwining, Yang-Baxter") {
  const Decomposition dec = decompose(3);
  const int d2 = dec.pair_dim();
  CHECK(max_abs(build_intertwiner(dec, 0.0) - CMatrix::Identity(d2, d2)) < 1e-12);
  CHECK(max_abs(build_R(dec, 0.0) - permutation_op(dec.rep.dim)) < 1e-12);
  Rng rng(7);
  for (int k = 0; k < 3; ++k) {
    const cplx l = sample_spectral(rng, 3);
    if (near_pole(3, -l)) continue;
    CHECK(inversion_residual(dec, l) < 1e-10);
    const IntertwiningResidual r = intertwining_residual(dec, l);
    CHECK(r.level0 < 1e-10);
    CHECK(r.level1 < 1e-10);
  }
  CHECK(ybe_residual(dec, 0.4, cplx(-0.7, 1.1), YbeMode::Dense, RKind::R, 0, rng) < 1e-10);
  CHECK(ybe_residual(dec, 0.4, cplx(-0.7, 1.1), YbeMode::Dense, RKind::RTilde, 0, rng) < 1e-10);
  CHECK(ybe_residual(dec, 0.4, cplx(-0.7, 1.1), YbeMode::MatrixFree, RKind::R, 4, rng) < 1e-10);
}

TEST_CASE("a perturbed block breaks Yang-Baxter") {
  // sanity of the residual itself: a wrong off-diagonal sign is detected
  const Decomposition dec = decompose(3);
  const cplx l = 0.4, m = cplx(-0.7, 1.1);
  const auto with_flip = [&](cplx x) {
    SchurCoefficients c = rmatrix_schur(3, x);
    c.block(0, 1) = -c.block(0, 1);
    return assemble(dec, c);
  };
  const int d = dec.rep.dim;
  const CMatrix id = CMatrix::Identity(d, d);
  const CMatrix p23 = kron(id, permutation_op(d));
  const CMatrix r12 = kron(with_flip(l), id);
  const CMatrix r23 = kron(id, with_flip(m));
  const CMatrix r13 = p23 * kron(with_flip(l + m), id) * p23;
  const CMatrix lhs = r12 * r13 * r23, rhs = r23 * r13 * r12;
  CHECK((lhs - rhs).norm() / lhs.norm() > 1e-3);
}

TEST_CASE("apply_schur equals the assembled operator") {
  const Decomposition dec = decompose(4);
  Rng rng(3);
  const SchurCoefficients c = rmatrix_schur(4, cplx(0.2, 0.9));
  const CMatrix v = rng.random_matrix(dec.pair_dim(), 3);
  CHECK(max_abs(apply_schur(dec, c, v) - assemble(dec, c) * v) < 1e-12);
}

TEST_CASE("derived coefficients reproduce the closed forms, n = 4") {
  const Decomposition dec = decompose(4);
  Rng rng(5);
  for (cplx l : {cplx(0, 1), cplx(2, 1), cplx(-0.3, 0)}) {
    const DerivedCoefficients d = derive_coefficients(dec, l, rng);
    CHECK(d.f3.has_value());
    CHECK(coefficient_deviation(4, d) < 1e-8);
  }
}

TEST_CASE("matrix-free Yang-Baxter and intertwining probes, n = 5") {
  const Decomposition dec = decompose(5);
  Rng rng(8);
  CHECK(ybe_residual(dec, cplx(0.6, 0.3), cplx(-1.1, 0.2), YbeMode::MatrixFree, RKind::R, 3, rng) <
        1e-9);
  const IntertwiningResidual r = intertwining_residual_probes(dec, cplx(1.5, 0.7), 3, rng);
  CHECK(r.level0 < 1e-9);
  CHECK(r.level1 < 1e-9);
  CHECK_THROWS_AS(ybe_residual(dec, 0.5, 0.5, YbeMode::Dense, RKind::R, 1, rng),
                  std::invalid_argument);
}

TEST_CASE("large-λ expansion") {
  const Decomposition dec = decompose(3);
  const AsymptoticReport a = asymptotic_check(dec, {1e2, 1e3, 1e6});
  CHECK(a.ratios[0] > 100.0 / 1.5);
  CHECK(a.ratios[0] < 100.0 * 1.5);
  CHECK(a.remainders[2] < 1e-9 * a.omega_norm);
}
