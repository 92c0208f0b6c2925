#include <algorithm>

#include "adjrmat/json_io.hpp"
#include "adjrmat/numerics.hpp"
#include "doctest.h"

using namespace adjrmat;

namespace {

std::vector<cplx> sorted(std::vector<cplx> v) {
  std::sort(v.begin(), v.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return v;
}

}  // namespace

TEST_CASE("kron of 2x2 blocks") {
  CMatrix a(2, 2), b(2, 2);
  a << 1, 2, 3, 4;
  b << 0, 1, 1, 0;
  const CMatrix k = kron(a, b);
  CMatrix want(4, 4);
  want << 0, 1, 0, 2,
          1, 0, 2, 0,
          0, 3, 0, 4,
          3, 0, 4, 0;
  CHECK(max_abs(k - want) == 0.0);
  CHECK(max_abs(CMatrix(kron(to_sparse(a), to_sparse(b))) - want) == 0.0);
}

TEST_CASE("kron_sum is a ⊗ 1 + 1 ⊗ a") {
  Rng rng(3);
  const CMatrix a = rng.random_matrix(3, 3);
  const CMatrix id = CMatrix::Identity(3, 3);
  CHECK(max_abs(CMatrix(kron_sum(a)) - (kron(a, id) + kron(id, a))) < 1e-15);
}

TEST_CASE("orthonormalize drops dependent vectors and keeps order") {
  CVector e0 = CVector::Zero(3), e1 = CVector::Zero(3);
  e0(0) = 2.0;
  e1(1) = cplx(0, 1);
  const CVector dep = 3.0 * e0 - e1;
  const std::vector<CVector> in{e0, dep, e1};
  const auto out = orthonormalize(in);
  REQUIRE(out.size() == 2);
  CHECK(std::abs(out[0](0) - 1.0) < 1e-15);
  CHECK(std::abs(out[0].dot(out[1])) < 1e-15);
  CHECK(std::abs(out[1].norm() - 1.0) < 1e-15);
}

TEST_CASE("eig_general on matrices with known spectra") {
  SUBCASE("real companion matrix, eigenvalues -1 and -2") {
    CMatrix m(2, 2);
    m << 0, 1, -2, -3;
    const auto ev = sorted(eigenvalues_general(m));
    CHECK(std::abs(ev[0] - cplx(-2, 0)) < 1e-13);
    CHECK(std::abs(ev[1] - cplx(-1, 0)) < 1e-13);
  }
  SUBCASE("rotation generator, eigenvalues ±i") {
    CMatrix m(2, 2);
    m << 0, -1, 1, 0;
    const auto pairs = eig_general(m);
    REQUIRE(pairs.size() == 2);
    for (const auto& p : pairs) {
      CHECK(std::abs(std::abs(p.value.imag()) - 1.0) < 1e-13);
      CHECK((m * p.vector - p.value * p.vector).norm() < 1e-13);
    }
  }
  SUBCASE("upper triangular, eigenvalues on the diagonal") {
    Rng rng(9);
    CMatrix m = rng.random_matrix(6, 6).triangularView<Eigen::Upper>();
    std::vector<cplx> diag;
    for (int k = 0; k < 6; ++k) diag.push_back(m(k, k));
    const auto ev = sorted(eigenvalues_general(m));
    diag = sorted(diag);
    for (int k = 0; k < 6; ++k) CHECK(std::abs(ev[k] - diag[k]) < 1e-12);
  }
}

TEST_CASE("predicates") {
  CMatrix p = CMatrix::Zero(2, 2);
  p(0, 0) = 1.0;
  CHECK(is_projector(p, 1e-14));
  CHECK(is_hermitian(p, 1e-14));
  CMatrix u(2, 2);
  u << 0, cplx(0, 1), 1, 0;
  CHECK(is_unitary(u, 1e-14));
  CHECK_FALSE(is_hermitian(u, 1e-14));
  CMatrix bad = p;
  bad(1, 1) = NAN;
  CHECK_FALSE(all_finite(bad));
}

TEST_CASE("Tolerance rejects non-positive values") {
  CHECK_THROWS_AS((Tolerance{0.0, 1e-8}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((Tolerance{1e-9, -1.0}.validate()), std::invalid_argument);
  CHECK_NOTHROW(Tolerance{}.validate());
}

TEST_CASE("matrix JSON round trip is exact") {
  Rng rng(5);
  const CMatrix m = rng.random_matrix(3, 4);
  const CMatrix back = matrix_from_json(nlohmann::json::parse(dump_json(matrix_to_json(m))));
  CHECK(max_abs(back - m) == 0.0);
}

TEST_CASE("Rng is reproducible and in range") {
  Rng a(42), b(42);
  for (int k = 0; k < 100; ++k) {
    const cplx z = a.in_disk(3.0);
    CHECK(z == b.in_disk(3.0));
    CHECK(std::abs(z) <= 3.0);
  }
  const CVector v = a.unit_vector(7);
  CHECK(std::abs(v.norm() - 1.0) < 1e-15);
}

TEST_CASE("dump_json prints 17 significant digits") {
  const std::string s = dump_json(nlohmann::json{{"x", 0.1}, {"y", 1.0}}, -1);
  CHECK(s.find("0.10000000000000001") != std::string::npos);
  CHECK(s.find("1.0") != std::string::npos);
}
