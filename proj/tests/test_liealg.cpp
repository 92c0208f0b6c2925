#include <cmath>

#include "adjrmat/liealg.hpp"
#include "doctest.h"

using namespace adjrmat;

namespace {

// Gell-Mann matrices, standard normalization tr(λa λb) = 2 δ.
std::vector<CMatrix> gell_mann() {
  const cplx i(0, 1);
  std::vector<CMatrix> g(9, CMatrix::Zero(3, 3));
  g[1] << 0, 1, 0, 1, 0, 0, 0, 0, 0;
  g[2] << 0, -i, 0, i, 0, 0, 0, 0, 0;
  g[3] << 1, 0, 0, 0, -1, 0, 0, 0, 0;
  g[4] << 0, 0, 1, 0, 0, 0, 1, 0, 0;
  g[5] << 0, 0, -i, 0, 0, 0, i, 0, 0;
  g[6] << 0, 0, 0, 0, 0, 1, 0, 1, 0;
  g[7] << 0, 0, 0, 0, 0, -i, 0, i, 0;
  g[8] << 1, 0, 0, 0, 1, 0, 0, 0, -2;
  g[8] /= std::sqrt(3.0);
  return g;
}

}  // namespace

TEST_CASE("n = 3 generators are the Gell-Mann matrices over sqrt 2") {
  const SunBasis b = build_basis(3);
  const auto g = gell_mann();
  const double s = std::sqrt(2.0);
  CHECK(max_abs(b.generators[b.symmetric_index(1, 2)] - g[1] / s) < 1e-15);
  CHECK(max_abs(b.generators[b.antisymmetric_index(1, 2)] - g[2] / s) < 1e-15);
  CHECK(max_abs(b.generators[b.cartan_index(1)] - g[3] / s) < 1e-15);
  CHECK(max_abs(b.generators[b.symmetric_index(2, 3)] - g[6] / s) < 1e-15);
  CHECK(max_abs(b.generators[b.antisymmetric_index(1, 3)] - g[5] / s) < 1e-15);
  CHECK(max_abs(b.generators[b.cartan_index(2)] - g[8] / s) < 1e-15);
}

TEST_CASE("n = 3 structure constants against the textbook table") {
  // With I = λ/sqrt2: f^{abc} = i sqrt2 f_std and d^{abc} = sqrt2 d_std.
  const SunBasis b = build_basis(3);
  const int s12 = b.symmetric_index(1, 2), a12 = b.antisymmetric_index(1, 2);
  const int c1 = b.cartan_index(1), c2 = b.cartan_index(2);
  const int s13 = b.symmetric_index(1, 3), a13 = b.antisymmetric_index(1, 3);
  const double r2 = std::sqrt(2.0);
  CHECK(std::abs(b.f(s12, a12, c1) - cplx(0, r2)) < 1e-14);   // f_123 = 1
  CHECK(std::abs(b.f(s13, a13, c2) - cplx(0, r2 * std::sqrt(3.0) / 2)) < 1e-14);  // f_458
  CHECK(std::abs(b.d(s12, s12, c2) - r2 / std::sqrt(3.0)) < 1e-14);  // d_118
  CHECK(std::abs(b.d(c2, c2, c2) + r2 / std::sqrt(3.0)) < 1e-14);    // d_888
  CHECK(std::abs(b.d(s13, s13, c1) - r2 / 2.0) < 1e-14);             // d_443 = 1/2
}

TEST_CASE("orthonormality, Jacobi identity and sum rules for n = 3..7") {
  for (int n = 3; n <= 7; ++n) {
    CAPTURE(n);
    const SunBasis b = build_basis(n);
    const int D = b.dim();
    REQUIRE(D == n * n - 1);
    double ortho = 0.0;
    for (int a = 0; a < D; ++a) {
      for (int c = 0; c < D; ++c) {
        const cplx t = (b.generators[a] * b.generators[c]).trace();
        ortho = std::max(ortho, std::abs(t - (a == c ? 1.0 : 0.0)));
      }
    }
    CHECK(ortho < 1e-12);

    double dd = 0.0, ff = 0.0;
    const double dd_want = (2.0 * n * n - 8.0) / n, ff_want = -2.0 * n;
    for (int a = 0; a < D; ++a) {
      for (int e = 0; e < D; ++e) {
        cplx sd = 0.0, sf = 0.0;
        for (int x = 0; x < D; ++x) {
          for (int y = 0; y < D; ++y) {
            sd += b.d(a, x, y) * b.d(e, x, y);
            sf += b.f(a, x, y) * b.f(e, x, y);
          }
        }
        dd = std::max(dd, std::abs(sd - (a == e ? dd_want : 0.0)));
        ff = std::max(ff, std::abs(sf - (a == e ? ff_want : 0.0)));
      }
    }
    CHECK(dd < 1e-9);
    CHECK(ff < 1e-9);

    // sum_e f^{abe} f^{ecg} + cyclic(a,b,c) = 0, spot-checked on a slice.
    double jac = 0.0;
    for (int a = 0; a < std::min(D, 6); ++a) {
      for (int bb = 0; bb < D; ++bb) {
        for (int c = 0; c < D; ++c) {
          for (int g = 0; g < D; ++g) {
            cplx s = 0.0;
            for (int e = 0; e < D; ++e) {
              s += b.f(a, bb, e) * b.f(e, c, g) + b.f(bb, c, e) * b.f(e, a, g) +
                   b.f(c, a, e) * b.f(e, bb, g);
            }
            jac = std::max(jac, std::abs(s));
          }
        }
      }
    }
    CHECK(jac < 1e-9);
  }
}

TEST_CASE("f is antisymmetric and imaginary, d symmetric and real") {
  const SunBasis b = build_basis(4);
  double worst = 0.0;
  for (int a = 0; a < b.dim(); ++a) {
    for (int c = 0; c < b.dim(); ++c) {
      for (int e = 0; e < b.dim(); ++e) {
        worst = std::max({worst, std::abs(b.f(a, c, e) + b.f(c, a, e)),
                          std::abs(b.f(a, c, e) - b.f(c, e, a)), std::abs(b.f(a, c, e).real()),
                          std::abs(b.d(a, c, e) - b.d(c, a, e)),
                          std::abs(b.d(a, c, e) - b.d(e, c, a)), std::abs(b.d(a, c, e).imag())});
      }
    }
  }
  CHECK(worst < 1e-14);
}

TEST_CASE("coordinates round trip and matrix units") {
  const SunBasis b = build_basis(5);
  const MatrixUnit e = matrix_unit(b, 1, 5);
  REQUIRE(e.coords);
  CHECK(max_abs(from_coordinates(b, *e.coords) - unit_matrix(5, 1, 5)) < 1e-14);
  CHECK_THROWS_AS(matrix_unit(b, 2, 2, true), std::invalid_argument);
  CHECK_THROWS_AS(build_basis(2), std::invalid_argument);
}
