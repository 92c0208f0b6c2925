#include "adjrmat/rmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "adjrmat/yangian_action.hpp"

namespace adjrmat {
namespace {

std::string format_complex(cplx z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
  return buf;
}

cplx schur_coefficient(const SchurCoefficients& c, Component comp) {
  switch (comp) {
    case Component::Top: return c.top;
    case Component::AntiLeft: return c.anti_left;
    case Component::AntiRight: return c.anti_right;
    case Component::Middle: return c.middle;
    case Component::Singlet: return c.singlet;
    default: return 0.0;
  }
}

enum class Legs { L12, L13, L23 };

// Row permutation bringing the spectator leg of `legs` to the major position:
// new row s*D^2 + p*D + q holds old row (a, b, c) with (p, q) the acted pair.
std::vector<Eigen::Index> leg_permutation(int d, Legs legs) {
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(d) * d * d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      for (int c = 0; c < d; ++c) {
        const Eigen::Index old = (Eigen::Index(a) * d + b) * d + c;
        Eigen::Index now = old;
        if (legs == Legs::L12) now = (Eigen::Index(c) * d + a) * d + b;
        if (legs == Legs::L13) now = (Eigen::Index(b) * d + a) * d + c;
        perm[static_cast<std::size_t>(old)] = now;
      }
    }
  }
  return perm;
}

// Two-site operator acting on the columns of a D^2 x m matrix.
using TwoSite = std::function<CMatrix(const CMatrix&)>;

// (two-site op on `legs`) applied to the columns of x, rows indexed (a, b, c).
// All spectator slices of all columns go through `op` in one call.
CMatrix apply_legs(const TwoSite& op, const CMatrix& x, int d, Legs legs) {
  const Eigen::Index d2 = Eigen::Index(d) * d;
  const Eigen::Index m = x.cols();
  const auto perm = leg_permutation(d, legs);
  CMatrix y(d2, d * m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const Eigen::Index p = perm[static_cast<std::size_t>(i)];
      y(p % d2, (p / d2) * m + j) = x(i, j);
    }
  }
  const CMatrix z = op(y);
  CMatrix out(x.rows(), m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const Eigen::Index p = perm[static_cast<std::size_t>(i)];
      out(i, j) = z(p % d2, (p / d2) * m + j);
    }
  }
  return out;
}

TwoSite dense_two_site(const Decomposition& dec, cplx lambda, RKind kind) {
  const CMatrix r = kind == RKind::R ? build_R(dec, lambda) : build_R_tilde(dec, lambda);
  return [r](const CMatrix& v) -> CMatrix { return r * v; };
}

// R = Iσ and R~ = σI applied through the submodule bases, never formed.
TwoSite schur_two_site(const Decomposition& dec, cplx lambda, RKind kind) {
  const SchurCoefficients c = intertwiner_schur(coefficients(dec.n(), lambda));
  const int d = dec.rep.dim;
  return [&dec, c, d, kind](const CMatrix& v) -> CMatrix {
    if (kind == RKind::R) return apply_schur(dec, c, swap_rows(v, d));
    return swap_rows(apply_schur(dec, c, v), d);
  };
}

}  // namespace

PoleError::PoleError(double p, cplx lambda)
    : std::invalid_argument("spectral parameter " + format_complex(lambda) + " is within " +
                            std::to_string(kPoleGuard) + " of the pole at " +
                            std::to_string(static_cast<int>(p))),
      pole(p) {}

bool near_pole(int n, cplx lambda) {
  return std::abs(lambda - 1.0) < kPoleGuard || std::abs(lambda - double(n)) < kPoleGuard;
}

void check_poles(int n, cplx lambda) {
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) {
    throw std::invalid_argument("spectral parameter is not finite");
  }
  for (double p : {1.0, double(n)}) {
    if (std::abs(lambda - p) < kPoleGuard) throw PoleError(p, lambda);
  }
}

CoefficientSet coefficients(int n, cplx l) {
  check_poles(n, l);
  const double nd = n;
  const double s = std::sqrt(nd * nd - 4.0);
  CoefficientSet c;
  c.n = n;
  c.lambda = l;
  c.f1 = (1.0 + l) / (1.0 - l);
  c.f2 = c.f1;
  c.f3 = c.f1 * c.f1;
  c.f4 = c.f1 * (nd + l) / (nd - l);
  const cplx den = 2.0 * (nd - l) * (1.0 - l) * (1.0 - l);
  const cplx l3 = l * l * l;
  c.M << 2.0 * nd + (nd * nd + 2.0) * l - 2.0 * l3, nd * s * l,
      -nd * s * l, 2.0 * nd - (nd * nd + 2.0) * l + 2.0 * l3;
  c.M /= den;
  return c;
}

CoefficientSet coefficient_derivatives(int n, cplx l) {
  check_poles(n, l);
  const double nd = n;
  const double s = std::sqrt(nd * nd - 4.0);
  const cplx f1 = (1.0 + l) / (1.0 - l);
  const cplx df1 = 2.0 / ((1.0 - l) * (1.0 - l));
  const cplx g = (nd + l) / (nd - l);
  const cplx dg = 2.0 * nd / ((nd - l) * (nd - l));
  CoefficientSet c;
  c.n = n;
  c.lambda = l;
  c.f1 = df1;
  c.f2 = df1;
  c.f3 = 2.0 * f1 * df1;
  c.f4 = df1 * g + f1 * dg;

  const cplx l3 = l * l * l;
  const cplx den = 2.0 * (nd - l) * (1.0 - l) * (1.0 - l);
  const cplx dden = -2.0 * (1.0 - l) * ((1.0 - l) + 2.0 * (nd - l));
  Block2 a, da;
  a << 2.0 * nd + (nd * nd + 2.0) * l - 2.0 * l3, nd * s * l,
      -nd * s * l, 2.0 * nd - (nd * nd + 2.0) * l + 2.0 * l3;
  da << (nd * nd + 2.0) - 6.0 * l * l, nd * s,
      -nd * s, -(nd * nd + 2.0) + 6.0 * l * l;
  c.M = (da * den - a * dden) / (den * den);
  return c;
}

Block2 r_block(int n, cplx lambda) {
  Block2 b = coefficients(n, lambda).M;
  b.col(1) *= -1.0;
  return b;
}

SchurCoefficients intertwiner_schur(const CoefficientSet& c) {
  SchurCoefficients s;
  s.top = 1.0;
  s.anti_left = c.f1;
  s.anti_right = c.f2;
  s.middle = c.f3;
  s.singlet = c.f4;
  s.block = c.M;
  return s;
}

SchurCoefficients rmatrix_schur(int n, cplx lambda) {
  const CoefficientSet c = coefficients(n, lambda);
  SchurCoefficients s;
  s.top = 1.0;
  s.anti_left = -c.f1;
  s.anti_right = -c.f2;
  s.middle = c.f3;
  s.singlet = c.f4;
  s.block = r_block(n, lambda);
  return s;
}

CMatrix assemble(const Decomposition& dec, const SchurCoefficients& c) {
  const Eigen::Index len = dec.pair_dim();
  const auto& bs = dec.get(Component::AdjointSym).basis;
  const auto& ba = dec.get(Component::AdjointAnti).basis;
  CMatrix w(len, len);
  Eigen::Index col = 0;
  for (const auto& sm : dec.submodules) {
    auto block = w.middleCols(col, sm.dim());
    if (sm.component == Component::AdjointSym) {
      block = c.block(0, 0) * bs + c.block(1, 0) * ba;
    } else if (sm.component == Component::AdjointAnti) {
      block = c.block(0, 1) * bs + c.block(1, 1) * ba;
    } else {
      block = schur_coefficient(c, sm.component) * sm.basis;
    }
    col += sm.dim();
  }
  CMatrix out(len, len);
  out.noalias() = w * dec.joint_basis().adjoint();
  return out;
}

CMatrix apply_schur(const Decomposition& dec, const SchurCoefficients& c, const CMatrix& v) {
  CMatrix out = CMatrix::Zero(v.rows(), v.cols());
  const auto& bs = dec.get(Component::AdjointSym).basis;
  const auto& ba = dec.get(Component::AdjointAnti).basis;
  for (const auto& sm : dec.submodules) {
    if (sm.component == Component::AdjointSym || sm.component == Component::AdjointAnti) continue;
    out.noalias() += sm.basis * (schur_coefficient(c, sm.component) * (sm.basis.adjoint() * v));
  }
  const CMatrix ps = bs.adjoint() * v;
  const CMatrix pa = ba.adjoint() * v;
  out.noalias() += bs * (c.block(0, 0) * ps + c.block(0, 1) * pa);
  out.noalias() += ba * (c.block(1, 0) * ps + c.block(1, 1) * pa);
  return out;
}

CMatrix build_intertwiner(const Decomposition& dec, cplx lambda) {
  return assemble(dec, intertwiner_schur(coefficients(dec.n(), lambda)));
}

CMatrix build_R(const Decomposition& dec, cplx lambda, const Tolerance& tol) {
  const CMatrix r = swap_cols(build_intertwiner(dec, lambda), dec.rep.dim);
  const CMatrix direct = assemble(dec, rmatrix_schur(dec.n(), lambda));
  const double diff = max_abs(r - direct);
  if (!(diff <= tol.abs_tol)) {
    throw VerificationError("R(λ) = I(λ)σ disagrees with its direct assembly by " +
                            std::to_string(diff));
  }
  return r;
}

CMatrix build_R_tilde(const Decomposition& dec, cplx lambda) {
  return swap_rows(build_intertwiner(dec, lambda), dec.rep.dim);
}

cplx sample_spectral(Rng& rng, int n, double radius) {
  for (;;) {
    const cplx z = rng.in_disk(radius);
    if (!near_pole(n, z)) return z;
  }
}

DerivedCoefficients derive_coefficients(const Decomposition& dec, cplx requested, Rng& rng) {
  const auto& rep = dec.rep;
  const int n = dec.n();
  const auto& top = dec.get(Component::Top);
  const auto& hw = dec.hw;
  const CVector& t = hw.get(Component::Top).vector;
  const CVector& vs = hw.get(Component::AdjointSym).vector;
  const CVector& va = hw.get(Component::AdjointAnti).vector;
  const CMatrix e1n = unit_matrix(n, 1, n);
  const CMatrix elast = unit_matrix(n, n - 1, n);
  const CMatrix efirst = unit_matrix(n, 1, n - 1);
  const CMatrix e12 = unit_matrix(n, 1, 2);

  const auto attempt = [&](cplx l) -> std::optional<DerivedCoefficients> {
    const YangianTwoSiteAction in(rep, 0.0, l);
    const YangianTwoSiteAction out(rep, l, 0.0);
    bool singular = false;
    // Solve c_X P_X J_in v = c P_X J_out v for c, given the coefficient c_X of
    // the module X that J(y) v reaches.
    const auto ratio = [&](const Submodule& anchor, cplx anchor_coef, const CVector& u_in,
                           const CVector& u_out, const CVector& v) {
      const CVector p_in = anchor.project(u_in);
      const CVector p_out = anchor.project(u_out);
      if (p_out.norm() <= 1e-8 * v.norm()) {
        singular = true;
        return cplx(0.0);
      }
      return anchor_coef * p_out.dot(p_in) / p_out.squaredNorm();
    };
    const auto single = [&](Component c, const CMatrix& x, const Submodule& anchor, cplx coef) {
      const CVector& v = hw.get(c).vector;
      return ratio(anchor, coef, in.level1(x).apply(v), out.level1(x).apply(v), v);
    };

    DerivedCoefficients d;
    d.requested = requested;
    d.lambda = l;
    d.f1 = single(Component::AntiLeft, elast, top, 1.0);
    d.f2 = single(Component::AntiRight, e12, top, 1.0);
    // J(e_12) maps the middle hwv into the (20..010)a module.
    if (n > 3) d.f3 = single(Component::Middle, e12, dec.get(Component::AntiLeft), d.f1);
    {
      const CVector& v = hw.get(Component::Singlet).vector;
      const Level1Operator ji = in.level1(e1n);
      const Level1Operator jo = out.level1(e1n);
      d.f4 = ratio(top, 1.0, ji.apply(ji.apply(v)), jo.apply(jo.apply(v)), v);
    }

    // Rows: y = J(e_1n), y = J(e_(n-1)n) J(e_1(n-1)); columns: v_s, v_a.
    const Level1Operator ji1 = in.level1(e1n), jo1 = out.level1(e1n);
    const Level1Operator jil = in.level1(elast), jol = out.level1(elast);
    const Level1Operator jif = in.level1(efirst), jof = out.level1(efirst);
    const double tt = t.squaredNorm();
    const auto coord = [&](const CVector& w) { return t.dot(w) / tt; };
    Block2 a, b;
    for (int j = 0; j < 2; ++j) {
      const CVector& v = j == 0 ? vs : va;
      a(0, j) = coord(ji1.apply(v));
      a(1, j) = coord(jil.apply(jif.apply(v)));
      b(0, j) = coord(jo1.apply(v));
      b(1, j) = coord(jol.apply(jof.apply(v)));
    }
    const double bnorm = b.norm();
    if (std::abs(b.determinant()) <= 1e-10 * bnorm * bnorm) singular = true;
    if (singular) return std::nullopt;
    d.M = b.inverse() * a;
    return d;
  };

  check_poles(n, requested);
  cplx l = requested;
  for (int k = 0; k < 32; ++k) {
    if (!near_pole(n, l)) {
      if (auto d = attempt(l)) return *d;
    }
    l = requested + 0.05 * rng.in_disk(1.0);
  }
  throw VerificationError("coefficient systems stay singular near λ = " + format_complex(requested));
}

std::vector<DerivedCoefficients> derive_coefficients(const Decomposition& dec,
                                                     const std::vector<cplx>& samples, Rng& rng) {
  std::vector<DerivedCoefficients> out;
  out.reserve(samples.size());
  for (cplx l : samples) out.push_back(derive_coefficients(dec, l, rng));
  return out;
}

double coefficient_deviation(int n, const DerivedCoefficients& d) {
  const CoefficientSet c = coefficients(n, d.lambda);
  const auto rel = [](cplx got, cplx want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); };
  double dev = std::max({rel(d.f1, c.f1), rel(d.f2, c.f2), rel(d.f4, c.f4)});
  if (d.f3) dev = std::max(dev, rel(*d.f3, c.f3));
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) dev = std::max(dev, rel(d.M(i, j), c.M(i, j)));
  }
  return dev;
}

IntertwiningResidual intertwining_residual(const Decomposition& dec, cplx lambda) {
  const auto& rep = dec.rep;
  const CMatrix in = build_intertwiner(dec, lambda);
  const double in_norm = in.norm();
  const YangianTwoSiteAction a_in(rep, 0.0, lambda);
  const YangianTwoSiteAction a_out(rep, lambda, 0.0);
  IntertwiningResidual r;
  for (const auto& x : rep.basis.generators) {
    const CMatrix d0(a_in.level0(x));
    const CMatrix c0 = in * d0 - d0 * in;
    r.level0 = std::max(r.level0, c0.norm() / (in_norm * d0.norm()));
    const CMatrix j_in = a_in.level1(x).dense();
    const CMatrix j_out = a_out.level1(x).dense();
    const CMatrix c1 = in * j_in - j_out * in;
    r.level1 = std::max(r.level1, c1.norm() / (in_norm * j_in.norm()));
  }
  return r;
}

IntertwiningResidual intertwining_residual_probes(const Decomposition& dec, cplx lambda,
                                                  int probes, Rng& rng) {
  const auto& rep = dec.rep;
  const SchurCoefficients sc = intertwiner_schur(coefficients(dec.n(), lambda));
  const YangianTwoSiteAction a_in(rep, 0.0, lambda);
  const YangianTwoSiteAction a_out(rep, lambda, 0.0);
  CMatrix v(dec.pair_dim(), probes);
  for (int k = 0; k < probes; ++k) v.col(k) = rng.unit_vector(dec.pair_dim());
  const CMatrix iv = apply_schur(dec, sc, v);
  const auto worst = [](const CMatrix& lhs, const CMatrix& rhs) {
    double w = 0.0;
    for (Eigen::Index k = 0; k < lhs.cols(); ++k) {
      w = std::max(w, (lhs.col(k) - rhs.col(k)).norm() / lhs.col(k).norm());
    }
    return w;
  };
  IntertwiningResidual r;
  for (const auto& x : rep.basis.generators) {
    const SparseOp d0 = a_in.level0(x);
    r.level0 = std::max(r.level0, worst(apply_schur(dec, sc, d0 * v), d0 * iv));
    const Level1Operator j_in = a_in.level1(x);
    const Level1Operator j_out = a_out.level1(x);
    CMatrix jv(v.rows(), v.cols()), jiv(v.rows(), v.cols());
    for (int k = 0; k < probes; ++k) {
      jv.col(k) = j_in.apply(v.col(k));
      jiv.col(k) = j_out.apply(iv.col(k));
    }
    r.level1 = std::max(r.level1, worst(apply_schur(dec, sc, jv), jiv));
  }
  return r;
}

double inversion_residual(const Decomposition& dec, cplx lambda) {
  CMatrix p = build_intertwiner(dec, lambda) * build_intertwiner(dec, -lambda);
  p.diagonal().array() -= 1.0;
  return max_abs(p);
}

double inversion_residual_probes(const Decomposition& dec, cplx lambda, int probes, Rng& rng) {
  CMatrix v(dec.pair_dim(), probes);
  for (int k = 0; k < probes; ++k) v.col(k) = rng.unit_vector(dec.pair_dim());
  const SchurCoefficients plus = intertwiner_schur(coefficients(dec.n(), lambda));
  const SchurCoefficients minus = intertwiner_schur(coefficients(dec.n(), -lambda));
  const CMatrix w = apply_schur(dec, plus, apply_schur(dec, minus, v)) - v;
  return w.colwise().norm().maxCoeff();
}

double ybe_residual(const Decomposition& dec, cplx lambda, cplx mu, YbeMode mode, RKind kind,
                    int probes, Rng& rng) {
  const int n = dec.n();
  for (cplx z : {lambda, mu, lambda + mu}) check_poles(n, z);
  if (mode == YbeMode::Dense && n > 4) {
    throw std::invalid_argument("dense Yang-Baxter check is limited to n <= 4");
  }
  if (mode == YbeMode::MatrixFree && probes < 1) {
    throw std::invalid_argument("matrix-free Yang-Baxter check needs at least one probe");
  }
  const int d = dec.rep.dim;
  const Eigen::Index len = Eigen::Index(d) * d * d;
  const auto make = mode == YbeMode::Dense ? dense_two_site : schur_two_site;
  const TwoSite r_l = make(dec, lambda, kind);
  const TwoSite r_lm = make(dec, lambda + mu, kind);
  const TwoSite r_m = make(dec, mu, kind);

  CMatrix x;
  if (mode == YbeMode::Dense) {
    x = CMatrix::Identity(len, len);
  } else {
    x.resize(len, probes);
    for (int k = 0; k < probes; ++k) x.col(k) = rng.unit_vector(len);
  }
  const CMatrix lhs =
      apply_legs(r_l, apply_legs(r_lm, apply_legs(r_m, x, d, Legs::L23), d, Legs::L13), d, Legs::L12);
  const CMatrix rhs =
      apply_legs(r_m, apply_legs(r_lm, apply_legs(r_l, x, d, Legs::L12), d, Legs::L13), d, Legs::L23);
  if (mode == YbeMode::Dense) return (lhs - rhs).norm() / lhs.norm();
  double worst = 0.0;
  for (int k = 0; k < probes; ++k) {
    worst = std::max(worst, (lhs.col(k) - rhs.col(k)).norm() / lhs.col(k).norm());
  }
  return worst;
}

AsymptoticReport asymptotic_check(const Decomposition& dec, const std::vector<double>& lambdas) {
  const CMatrix omega = casimir_op(dec.rep);
  AsymptoticReport rep;
  rep.omega_norm = omega.norm();
  for (double l : lambdas) {
    if (std::abs(l) < 10.0) throw std::invalid_argument("asymptotic check needs |λ| >= 10");
    CMatrix rem = build_R(dec, l) + omega / l;
    rem.diagonal().array() -= 1.0 + 2.0 / l;
    rep.lambdas.push_back(l);
    rep.remainders.push_back(rem.norm());
  }
  for (std::size_t k = 0; k + 1 < rep.remainders.size(); ++k) {
    rep.ratios.push_back(rep.remainders[k] / rep.remainders[k + 1]);
  }
  return rep;
}

Block2 block_on_hw_pair(const Decomposition& dec, const CMatrix& x) {
  const CVector& vs = dec.hw.get(Component::AdjointSym).vector;
  const CVector& va = dec.hw.get(Component::AdjointAnti).vector;
  const double nn = vs.squaredNorm();
  const CVector xs = x * vs;
  const CVector xa = x * va;
  Block2 b;
  b << vs.dot(xs) / nn, vs.dot(xa) / nn, va.dot(xs) / nn, va.dot(xa) / nn;
  return b;
}

}  // namespace adjrmat
