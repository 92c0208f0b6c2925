#include "adjrmat/spinchain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace adjrmat {
namespace {

long checked_chain_dim(int dim, int sites) {
  if (sites < 2) throw std::invalid_argument("a chain needs at least 2 sites");
  long total = 1;
  for (int k = 0; k < sites; ++k) {
    total *= dim;
    if (total > kMaxChainDim) {
      double need = std::pow(double(dim), sites);
      throw std::invalid_argument("chain dimension " + std::to_string(dim) + "^" +
                                  std::to_string(sites) + " = " +
                                  std::to_string(static_cast<long long>(need)) + " exceeds " +
                                  std::to_string(kMaxChainDim));
    }
  }
  return total;
}

std::vector<int> digits(long s, int dim, int sites) {
  std::vector<int> d(static_cast<std::size_t>(sites));
  for (int k = sites - 1; k >= 0; --k) {
    d[static_cast<std::size_t>(k)] = static_cast<int>(s % dim);
    s /= dim;
  }
  return d;
}

long compose(const std::vector<int>& d, int dim) {
  long s = 0;
  for (int x : d) s = s * dim + x;
  return s;
}

}  // namespace

Block2 o_block(int n) {
  const double nd = n;
  const double s = std::sqrt(nd * nd - 4.0);
  Block2 o;
  o << (2.0 + nd) * (2.0 + nd) / (2.0 * nd), 0.5 * s,
      -0.5 * s, 2.0 - nd / 2.0;
  return o;
}

SchurCoefficients hamiltonian_schur(int n) {
  SchurCoefficients c;
  c.top = 0.0;
  c.anti_left = 2.0;
  c.anti_right = 2.0;
  c.middle = 4.0;
  c.singlet = (2.0 + 2.0 * n) / n;
  c.block = o_block(n);
  return c;
}

LocalHamiltonian local_h(const Decomposition& dec, const Tolerance& tol) {
  const int n = dec.n();
  const int dim = dec.rep.dim;
  LocalHamiltonian lh;
  lh.n = n;
  lh.O_block = o_block(n);
  SchurCoefficients dc = intertwiner_schur(coefficient_derivatives(n, 0.0));
  dc.top = 0.0;
  lh.h = assemble(dec, dc);

  lh.assembly_residual = max_abs(lh.h - assemble(dec, hamiltonian_schur(n)));
  if (!(lh.assembly_residual <= tol.abs_tol)) {
    throw VerificationError("h from exact derivatives disagrees with its direct assembly by " +
                            std::to_string(lh.assembly_residual));
  }
  const double e = kFiniteDifferenceStep;
  const CMatrix fd =
      (swap_cols(build_R(dec, e, tol), dim) - swap_cols(build_R(dec, -e, tol), dim)) / (2.0 * e);
  lh.fd_residual = max_abs(lh.h - fd);
  if (!(lh.fd_residual <= kFiniteDifferenceTol)) {
    throw VerificationError("h disagrees with the central difference of R(λ)σ by " +
                            std::to_string(lh.fd_residual));
  }
  return lh;
}

double spinform_scale(int n) {
  return n == 3 ? 8.0 / 3.0 : 8.0 / (6.0 + double(n) * n);
}

SpinOperators spin_operators(const AdjointRep& rep) {
  const int dim = rep.dim;
  const auto& d = rep.basis.d;
  std::vector<CMatrix> s(static_cast<std::size_t>(dim));
  for (int a = 0; a < dim; ++a) s[a] = -rep.S[a];
  const CMatrix id = CMatrix::Identity(dim, dim);

  // dd[a*dim + b] = sum_c d^{abc} S^c
  std::vector<CMatrix> dd(static_cast<std::size_t>(dim) * dim);
  std::vector<bool> nonzero(dd.size(), false);
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      CMatrix m = CMatrix::Zero(dim, dim);
      for (int c = 0; c < dim; ++c) {
        const double v = d(a, b, c).real();
        if (v != 0.0 && std::abs(v) > 1e-14) {
          m += v * s[c];
          nonzero[a * dim + b] = true;
        }
      }
      dd[a * dim + b] = std::move(m);
    }
  }
  // y[a] = sum_{b,c} d^{abc} S^b S^c
  std::vector<CMatrix> y(static_cast<std::size_t>(dim), CMatrix::Zero(dim, dim));
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      if (nonzero[a * dim + b]) y[a].noalias() += s[b] * dd[a * dim + b];
    }
  }

  SpinOperators ops;
  ops.Q = casimir_op(rep);
  const Eigen::Index len = Eigen::Index(dim) * dim;
  ops.C_A = CMatrix::Zero(len, len);
  CMatrix w = CMatrix::Zero(len, len);
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      if (!nonzero[a * dim + b]) continue;
      const CMatrix ab = s[a] * s[b];
      ops.C_A += kron(ab, dd[a * dim + b]);
      w += kron(ab, dd[a * dim + b]);
    }
    ops.C_A -= kron(s[a], y[a]);
  }
  ops.K = CMatrix::Zero(len, len);
  for (int a = 0; a < dim; ++a) {
    const SparseOp left = kron(to_sparse(s[a], 1e-14), to_sparse(id));
    const SparseOp right = kron(to_sparse(id), to_sparse(y[a], 1e-14));
    const CMatrix lw = left * w;
    ops.K.noalias() += lw * right;
  }
  return ops;
}

double commutator_coefficient(int n) {
  if (n == 3) return 1.0 / 324.0;
  const double nd = n;
  return 1.0 / (4.0 * nd * nd * nd * (6.0 + nd * nd));
}

CMatrix spinform_h(const SpinOperators& ops, int n) {
  if (n < 3) throw std::invalid_argument("spin-operator form requires n >= 3");
  const CMatrix& q = ops.Q;
  const CMatrix q2 = q * q;
  const CMatrix q3 = q2 * q;
  const CMatrix kc = commutator(ops.K, ops.C_A);
  if (n == 3) {
    return q - 7.0 / 9.0 * q2 - 2.0 / 9.0 * q3 - 11.0 / 81.0 * ops.K + commutator_coefficient(3) * kc;
  }
  const double nd = n;
  const double g = 6.0 + nd * nd;
  const CMatrix q4 = q3 * q;
  return q + (2.0 - nd * nd) / (nd * g) * q2 - 3.0 / g * q3 - 1.0 / (nd * g) * q4 -
         (2.0 + nd * nd) / (nd * nd * nd * g) * ops.K + commutator_coefficient(n) * kc;
}

SpinformFit fit_spinform(const CMatrix& target, const CMatrix& h, int n) {
  if (target.rows() != h.rows() || target.cols() != h.cols() || h.rows() != h.cols()) {
    throw std::invalid_argument("fit_spinform: operators must be square and of equal size");
  }
  // Normal equations for the columns vec(h), vec(1).
  const double len = static_cast<double>(h.rows());
  Block2 g;
  g << h.squaredNorm(), std::conj(h.trace()), h.trace(), len;
  Eigen::Vector2cd rhs;
  rhs << (h.conjugate().cwiseProduct(target)).sum(), target.trace();
  const Eigen::Vector2cd x = g.fullPivLu().solve(rhs);
  SpinformFit fit;
  fit.scale = x(0);
  fit.constant = x(1);
  CMatrix r = target - x(0) * h;
  r.diagonal().array() -= x(1);
  fit.residual = max_abs(r);
  fit.expected_scale = spinform_scale(n);
  return fit;
}

CMatrix embed_two_site(const CMatrix& op, int dim, int sites, int i, int j) {
  const long total = checked_chain_dim(dim, sites);
  if (i == j || i < 0 || j < 0 || i >= sites || j >= sites) {
    throw std::invalid_argument("embed_two_site: sites must be distinct and in range");
  }
  CMatrix out = CMatrix::Zero(total, total);
  for (long s = 0; s < total; ++s) {
    auto d = digits(s, dim, sites);
    const int p = d[i] * dim + d[j];
    for (int q = 0; q < dim * dim; ++q) {
      const cplx v = op(q, p);
      if (v == 0.0) continue;
      d[i] = q / dim;
      d[j] = q % dim;
      out(compose(d, dim), s) += v;
    }
  }
  return out;
}

CMatrix embed_total(const CMatrix& x, int dim, int sites) {
  const long total = checked_chain_dim(dim, sites);
  CMatrix out = CMatrix::Zero(total, total);
  for (long s = 0; s < total; ++s) {
    auto d = digits(s, dim, sites);
    for (int k = 0; k < sites; ++k) {
      const int orig = d[k];
      for (int q = 0; q < dim; ++q) {
        const cplx v = x(q, orig);
        if (v == 0.0) continue;
        d[k] = q;
        out(compose(d, dim), s) += v;
      }
      d[k] = orig;
    }
  }
  return out;
}

CMatrix chain_H(const CMatrix& h, int dim, int sites) {
  const long total = checked_chain_dim(dim, sites);
  CMatrix out = CMatrix::Zero(total, total);
  for (int i = 0; i < sites; ++i) out += embed_two_site(h, dim, sites, i, (i + 1) % sites);
  return out;
}

double chain_symmetry_residual(const CMatrix& H, const AdjointRep& rep, int sites) {
  double worst = 0.0;
  for (const auto& s : rep.S) {
    worst = std::max(worst, max_abs(commutator(H, embed_total(s, rep.dim, sites))));
  }
  return worst;
}

CMatrix transfer_matrix(const Decomposition& dec, cplx lambda, int sites) {
  const int dim = dec.rep.dim;
  checked_chain_dim(dim, sites);
  const CMatrix r = build_R(dec, lambda);
  const auto block = [&](int a, int g) { return r.block(a * dim, g * dim, dim, dim); };

  // tail[g*dim + b]: operator-valued entry (g, b) of R_0k ... R_0N.
  std::vector<CMatrix> tail(static_cast<std::size_t>(dim) * dim);
  for (int g = 0; g < dim; ++g)
    for (int b = 0; b < dim; ++b) tail[g * dim + b] = block(g, b);
  for (int k = sites - 2; k >= 1; --k) {
    std::vector<CMatrix> next(tail.size());
    for (int a = 0; a < dim; ++a) {
      for (int b = 0; b < dim; ++b) {
        CMatrix acc = CMatrix::Zero(dim * tail[0].rows(), dim * tail[0].cols());
        for (int g = 0; g < dim; ++g) acc += kron(block(a, g), tail[g * dim + b]);
        next[a * dim + b] = std::move(acc);
      }
    }
    tail = std::move(next);
  }
  CMatrix t = CMatrix::Zero(dim * tail[0].rows(), dim * tail[0].cols());
  for (int a = 0; a < dim; ++a)
    for (int g = 0; g < dim; ++g) t += kron(block(a, g), tail[g * dim + a]);
  return t;
}

double relative_commutator(const CMatrix& a, const CMatrix& b) {
  return commutator(a, b).norm() / (a.norm() * b.norm());
}

double commutation_check(const Decomposition& dec, cplx lambda, cplx mu, int sites) {
  return relative_commutator(transfer_matrix(dec, lambda, sites), transfer_matrix(dec, mu, sites));
}

CMatrix shift_operator(int dim, int sites) {
  const long total = checked_chain_dim(dim, sites);
  CMatrix u = CMatrix::Zero(total, total);
  for (long s = 0; s < total; ++s) {
    const auto d = digits(s, dim, sites);
    std::vector<int> moved(d.size());
    for (int k = 0; k < sites; ++k) moved[(k + 1) % sites] = d[k];
    u(compose(moved, dim), s) = 1.0;
  }
  return u;
}

BlockSpectrum block_spectrum(const Decomposition& dec, const CMatrix& m) {
  std::vector<CMatrix> blocks;
  for (const auto& sm : dec.submodules) {
    if (sm.component == Component::AdjointAnti) continue;
    if (sm.component == Component::AdjointSym) {
      CMatrix pair(dec.pair_dim(), 2 * sm.dim());
      pair << sm.basis, dec.get(Component::AdjointAnti).basis;
      blocks.push_back(std::move(pair));
    } else {
      blocks.push_back(sm.basis);
    }
  }
  BlockSpectrum out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const CMatrix mb = m * blocks[i];
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      const CMatrix c = blocks[j].adjoint() * mb;
      if (i == j) {
        const auto ev = eigenvalues_general(c);
        out.eigenvalues.insert(out.eigenvalues.end(), ev.begin(), ev.end());
      } else {
        out.off_block = std::max(out.off_block, max_abs(c));
      }
    }
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

SpectrumDiagnostics spectrum_diagnostics(const CMatrix& m, double complex_threshold) {
  SpectrumDiagnostics sd;
  sd.complex_threshold = complex_threshold;
  sd.eigenvalues = eigenvalues_general(m);
  std::sort(sd.eigenvalues.begin(), sd.eigenvalues.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  for (cplx z : sd.eigenvalues) {
    sd.max_imag = std::max(sd.max_imag, std::abs(z.imag()));
    if (std::abs(z.imag()) > complex_threshold) ++sd.complex_count;
  }
  return sd;
}

double hermiticity_defect(const CMatrix& m) {
  return (m - m.adjoint()).norm();
}

}  // namespace adjrmat
