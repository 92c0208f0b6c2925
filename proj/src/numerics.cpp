#include "adjrmat/numerics.hpp"

#include <cmath>
#include <sstream>

#include <lapacke.h>

namespace adjrmat {

void Tolerance::validate() const {
  if (!(abs_tol > 0.0) || !(rank_tol > 0.0)) {
    throw std::invalid_argument("tolerances must be strictly positive");
  }
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

SparseOp kron(const SparseOp& a, const SparseOp& b) {
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (int ka = 0; ka < a.outerSize(); ++ka) {
    for (SparseOp::InnerIterator ia(a, ka); ia; ++ia) {
      for (int kb = 0; kb < b.outerSize(); ++kb) {
        for (SparseOp::InnerIterator ib(b, kb); ib; ++ib) {
          trips.emplace_back(static_cast<int>(ia.row() * b.rows() + ib.row()),
                             static_cast<int>(ia.col() * b.cols() + ib.col()),
                             ia.value() * ib.value());
        }
      }
    }
  }
  SparseOp out(a.rows() * b.rows(), a.cols() * b.cols());
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

SparseOp to_sparse(const CMatrix& a, double drop_tol) {
  std::vector<Eigen::Triplet<cplx>> trips;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (std::abs(a(i, j)) > drop_tol) {
        trips.emplace_back(static_cast<int>(i), static_cast<int>(j), a(i, j));
      }
    }
  }
  SparseOp out(a.rows(), a.cols());
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

SparseOp kron_sum(const CMatrix& a, double drop_tol) {
  const Eigen::Index d = a.rows();
  SparseOp as = to_sparse(a, drop_tol);
  SparseOp id(d, d);
  id.setIdentity();
  SparseOp out = kron(as, id);
  out += kron(id, as);
  out.makeCompressed();
  return out;
}

std::vector<CVector> orthonormalize(std::span<const CVector> vectors,
                                    const Tolerance& tol) {
  tol.validate();
  std::vector<CVector> out;
  if (vectors.empty()) return out;
  const Eigen::Index len = vectors.front().size();
  for (const auto& v : vectors) {
    if (v.size() != len) {
      throw std::invalid_argument("orthonormalize: vectors differ in length");
    }
    CVector r = v;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : out) r -= q.dot(r) * q;
    }
    const double res = r.norm();
    if (res <= tol.rank_tol * std::max(1.0, v.norm())) continue;
    out.push_back(r / res);
  }
  return out;
}

namespace {

lapack_complex_double* lp(cplx* p) {
  return reinterpret_cast<lapack_complex_double*>(p);
}

void require_square(const CMatrix& m, const char* who) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(who) + ": matrix is not square");
  }
  if (!all_finite(m)) {
    throw std::invalid_argument(std::string(who) + ": non-finite entries");
  }
}

}  // namespace

std::vector<EigenPair> eig_general(const CMatrix& m, const Tolerance& tol) {
  require_square(m, "eig_general");
  const auto n = static_cast<lapack_int>(m.rows());
  if (n == 0) return {};
  CMatrix a = m;
  CVector w(n);
  CMatrix vr(n, n);
  const lapack_int info =
      LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'V', n, lp(a.data()), n, lp(w.data()),
                    nullptr, 1, lp(vr.data()), n);
  if (info != 0) {
    throw ConvergenceError("eig_general: QR iteration did not converge for a " +
                           std::to_string(n) + "x" + std::to_string(n) + " matrix");
  }
  const double bound = tol.abs_tol * std::max(1.0, m.norm());
  std::vector<EigenPair> out;
  out.reserve(static_cast<std::size_t>(n));
  for (lapack_int k = 0; k < n; ++k) {
    CVector v = vr.col(k);
    v /= v.norm();
    const double res = (m * v - w(k) * v).norm();
    if (!(res <= bound)) {
      throw ConvergenceError("eig_general: eigenpair residual " + std::to_string(res) +
                             " exceeds bound for a " + std::to_string(n) + "x" +
                             std::to_string(n) + " matrix");
    }
    out.push_back({w(k), std::move(v)});
  }
  return out;
}

std::vector<cplx> eigenvalues_general(const CMatrix& m) {
  require_square(m, "eigenvalues_general");
  const auto n = static_cast<lapack_int>(m.rows());
  if (n == 0) return {};
  CMatrix a = m;
  CVector w(n);
  const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, lp(a.data()), n,
                                        lp(w.data()), nullptr, 1, nullptr, 1);
  if (info != 0) {
    throw ConvergenceError("eigenvalues_general: QR iteration did not converge for a " +
                           std::to_string(n) + "x" + std::to_string(n) + " matrix");
  }
  return {w.data(), w.data() + n};
}

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool all_finite(const CMatrix& m) {
  return m.allFinite();
}

bool is_hermitian(const CMatrix& m, double tol) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

bool is_unitary(const CMatrix& m, double tol) {
  return m.rows() == m.cols() &&
         max_abs(m.adjoint() * m - CMatrix::Identity(m.rows(), m.cols())) <= tol;
}

bool is_projector(const CMatrix& m, double tol) {
  return is_hermitian(m, tol) && max_abs(m * m - m) <= tol;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  return a * b - b * a;
}

nlohmann::json complex_to_json(cplx z) {
  return nlohmann::json::array({z.real(), z.imag()});
}

nlohmann::json matrix_to_json(const CMatrix& m) {
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(complex_to_json(m(i, j)));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

CMatrix matrix_from_json(const nlohmann::json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (rows < 0 || cols < 0 || data.size() != static_cast<std::size_t>(rows * cols)) {
    throw std::invalid_argument("matrix json: data length does not match rows*cols");
  }
  CMatrix m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index c = 0; c < cols; ++c, ++k) {
      const auto& e = data[k];
      if (!e.is_array() || e.size() != 2) {
        throw std::invalid_argument("matrix json: entries must be [re, im] pairs");
      }
      m(i, c) = cplx(e[0].get<double>(), e[1].get<double>());
    }
  }
  if (!all_finite(m)) throw std::invalid_argument("matrix json: non-finite entry");
  return m;
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

cplx Rng::in_disk(double radius) {
  for (;;) {
    const double x = uniform(-1.0, 1.0);
    const double y = uniform(-1.0, 1.0);
    if (x * x + y * y <= 1.0) return radius * cplx(x, y);
  }
}

CVector Rng::unit_vector(Eigen::Index dim) {
  CVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = cplx(uniform(-1, 1), uniform(-1, 1));
  return v / v.norm();
}

CMatrix Rng::random_matrix(Eigen::Index rows, Eigen::Index cols) {
  CMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = cplx(uniform(-1, 1), uniform(-1, 1));
  }
  return m;
}

}  // namespace adjrmat
