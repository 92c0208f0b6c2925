#include "adjrmat/liealg.hpp"

#include <cmath>
#include <string>

namespace adjrmat {
namespace {

int pair_position(int n, int i, int j) {
  if (i < 1 || j > n || i >= j) {
    throw std::invalid_argument("expected 1 <= i < j <= n, got (" + std::to_string(i) +
                                "," + std::to_string(j) + ")");
  }
  int pos = 0;
  for (int r = 1; r < i; ++r) pos += n - r;
  return pos + (j - i - 1);
}

void check(bool ok, const std::string& what) {
  if (!ok) throw VerificationError("su(n) basis check failed: " + what);
}

}  // namespace

int SunBasis::symmetric_index(int i, int j) const {
  return pair_position(n, i, j);
}

int SunBasis::antisymmetric_index(int i, int j) const {
  return n * (n - 1) / 2 + pair_position(n, i, j);
}

int SunBasis::cartan_index(int k) const {
  if (k < 1 || k >= n) throw std::invalid_argument("cartan index out of range");
  return n * (n - 1) + k - 1;
}

CMatrix unit_matrix(int n, int i, int j) {
  if (i < 1 || i > n || j < 1 || j > n) {
    throw std::invalid_argument("matrix unit index out of range");
  }
  CMatrix e = CMatrix::Zero(n, n);
  e(i - 1, j - 1) = 1.0;
  return e;
}

StructureConstants structure_constants(const SunBasis& basis) {
  const int dim = basis.dim();
  const auto& g = basis.generators;
  StructureConstants sc{Rank3(dim), Rank3(dim)};
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      const CMatrix ab = g[a] * g[b];
      const CMatrix ba = g[b] * g[a];
      const CMatrix comm = ab - ba;
      const CMatrix anti = ab + ba;
      for (int c = 0; c < dim; ++c) {
        // tr(I^c X) = sum_ij I^c_ji X_ij
        sc.f(a, b, c) = (g[c].transpose().cwiseProduct(comm)).sum();
        sc.d(a, b, c) = (g[c].transpose().cwiseProduct(anti)).sum();
      }
    }
  }
  return sc;
}

SunBasis build_basis(int n, const Tolerance& tol) {
  if (n < 3) throw std::invalid_argument("su(n) basis requires n >= 3, got " + std::to_string(n));
  tol.validate();
  SunBasis basis;
  basis.n = n;
  const double s = 1.0 / std::sqrt(2.0);
  const cplx I(0.0, 1.0);
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      basis.generators.push_back(s * (unit_matrix(n, i, j) + unit_matrix(n, j, i)));
    }
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      basis.generators.push_back(s * (-I * unit_matrix(n, i, j) + I * unit_matrix(n, j, i)));
    }
  }
  for (int k = 1; k < n; ++k) {
    CMatrix h = CMatrix::Zero(n, n);
    for (int r = 0; r < k; ++r) h(r, r) = 1.0;
    h(k, k) = -static_cast<double>(k);
    basis.generators.push_back(h / std::sqrt(static_cast<double>(k * (k + 1))));
  }

  const int dim = basis.dim();
  const auto& g = basis.generators;
  for (int a = 0; a < dim; ++a) {
    check(is_hermitian(g[a], tol.abs_tol), "generator is not Hermitian");
    check(std::abs(g[a].trace()) <= tol.abs_tol, "generator is not traceless");
    for (int b = 0; b < dim; ++b) {
      const cplx ip = (g[a].adjoint() * g[b]).trace();
      check(std::abs(ip - (a == b ? 1.0 : 0.0)) <= tol.abs_tol, "trace form not orthonormal");
    }
  }

  auto sc = structure_constants(basis);
  basis.f = std::move(sc.f);
  basis.d = std::move(sc.d);

  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      for (int c = 0; c < dim; ++c) {
        const cplx f = basis.f(a, b, c);
        const cplx d = basis.d(a, b, c);
        check(std::abs(f.real()) <= tol.abs_tol, "f is not purely imaginary");
        check(std::abs(d.imag()) <= tol.abs_tol, "d is not real");
        check(std::abs(f + basis.f(b, a, c)) <= tol.abs_tol &&
                  std::abs(f - basis.f(b, c, a)) <= tol.abs_tol,
              "f is not totally antisymmetric");
        check(std::abs(d - basis.d(b, a, c)) <= tol.abs_tol &&
                  std::abs(d - basis.d(b, c, a)) <= tol.abs_tol,
              "d is not totally symmetric");
      }
      CMatrix comm = g[a] * g[b] - g[b] * g[a];
      CMatrix anti = g[a] * g[b] + g[b] * g[a];
      if (a == b) anti -= (2.0 / n) * CMatrix::Identity(n, n);
      for (int c = 0; c < dim; ++c) {
        comm -= basis.f(a, b, c) * g[c];
        anti -= basis.d(a, b, c) * g[c];
      }
      check(max_abs(comm) <= tol.abs_tol, "commutator reconstruction");
      check(max_abs(anti) <= tol.abs_tol, "anticommutator reconstruction");
    }
  }
  return basis;
}

CVector coordinates(const SunBasis& basis, const CMatrix& x) {
  CVector w(basis.dim());
  for (int a = 0; a < basis.dim(); ++a) {
    w(a) = (basis.generators[a].conjugate().cwiseProduct(x)).sum();
  }
  return w;
}

CMatrix from_coordinates(const SunBasis& basis, const CVector& w) {
  CMatrix x = CMatrix::Zero(basis.n, basis.n);
  for (int a = 0; a < basis.dim(); ++a) x += w(a) * basis.generators[a];
  return x;
}

MatrixUnit matrix_unit(const SunBasis& basis, int i, int j, bool with_coords) {
  MatrixUnit u{i, j, unit_matrix(basis.n, i, j), std::nullopt};
  if (with_coords) {
    if (i == j) {
      throw std::invalid_argument("e_ii is not traceless; it has no su(n) coordinates");
    }
    u.coords = coordinates(basis, u.matrix);
  }
  return u;
}

}  // namespace adjrmat
