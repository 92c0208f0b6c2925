#include "adjrmat/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "adjrmat/json_io.hpp"
#include "adjrmat/rmatrix.hpp"
#include "adjrmat/spinchain.hpp"
#include "adjrmat/yangian_action.hpp"

namespace adjrmat {
namespace {

using nlohmann::json;
using Checks = std::vector<CheckResult>;

constexpr double kRelTol = 1e-8;
constexpr double kSigmaTol = 1e-12;
constexpr double kBoundaryTol = 1e-10;
constexpr double kRealTol = 1e-8;
constexpr double kFitTol = 1e-9;
constexpr double kSu3EigTol = 1e-9;
constexpr double kSu3CoefTol = 1e-10;
constexpr double kTransferTol = 1e-8;
constexpr double kTransferHTol = 1e-7;
constexpr double kComplexThreshold = 1e-6;
constexpr double kNonHermitianBound = 0.1;
constexpr double kCommutatorBound = 0.1;
constexpr std::size_t kMaxProjectorExport = 256;  // pair dimension

Decomposition make_decomposition(int n, const Tolerance& tol) {
  return build_decomposition(adjoint_rep(build_basis(n, tol), tol), tol);
}

std::string range_label(int n) {
  return beyond_verified_range(n) ? "extrapolated (n > 7)" : "verified (n <= 7)";
}

json cj(cplx z) { return complex_to_json(z); }

// Runs f; a failed internal consistency check becomes a failing entry.
void guarded(Checks& out, const std::string& id, const std::string& claim,
             const std::function<void()>& f) {
  try {
    f();
  } catch (const VerificationError& e) {
    out.push_back(CheckResult::failure(id, claim, e.what()));
  } catch (const ConvergenceError& e) {
    out.push_back(CheckResult::failure(id, claim, e.what()));
  }
}

std::uint64_t suite_seed(std::uint64_t seed, const std::string& suite) {
  static const std::vector<std::string> order{"identities", "intertwiner", "ybe",
                                              "hamiltonian", "su3", "chain"};
  const auto it = std::find(order.begin(), order.end(), suite);
  return seed + static_cast<std::uint64_t>(it - order.begin());
}

cplx sample_invertible(Rng& rng, int n) {
  for (;;) {
    const cplx z = sample_spectral(rng, n);
    if (!near_pole(n, -z)) return z;
  }
}

std::pair<cplx, cplx> sample_pair(Rng& rng, int n) {
  for (;;) {
    const cplx l = sample_spectral(rng, n);
    const cplx m = sample_spectral(rng, n);
    if (!near_pole(n, l + m)) return {l, m};
  }
}

int chain_sites(const RunConfig& c, int fallback) { return c.sites > 0 ? c.sites : fallback; }

// ---------------------------------------------------------------- suites

Checks suite_identities(const Decomposition& dec, const RunConfig& cfg, Rng& rng) {
  const int n = dec.n();
  Checks out = anticommutator_checks(dec.rep, dec.hw, kRelTol);
  for (int k = 0; k < cfg.samples; ++k) {
    const cplx mu = rng.in_disk(3.0);
    const cplx la = rng.in_disk(3.0);
    for (auto& c : verify_hw_relations(dec.rep, dec.hw, mu, la, kRelTol)) {
      c.id += "[" + std::to_string(k) + "]";
      out.push_back(std::move(c));
    }
  }
  for (auto& c : out) c.detail["range"] = range_label(n);
  return out;
}

Checks suite_intertwiner(const Decomposition& dec, const RunConfig& cfg, Rng& rng) {
  const int n = dec.n();
  Checks out;
  {
    CMatrix i0 = build_intertwiner(dec, 0.0);
    i0.diagonal().array() -= 1.0;
    out.push_back(CheckResult::make("intertwiner.identity_at_zero", "I(0) = 1", max_abs(i0), kSigmaTol));
  }
  const bool dense = n <= 4;
  for (int k = 0; k < cfg.samples; ++k) {
    const cplx l = sample_invertible(rng, n);
    const json d = {{"lambda", cj(l)}};
    const std::string tag = "[" + std::to_string(k) + "]";
    json di = d;
    di["mode"] = n <= 5 ? "dense" : "probes";
    out.push_back(CheckResult::make(
        "intertwiner.inversion" + tag, "I(λ) I(-λ) = 1",
        n <= 5 ? inversion_residual(dec, l) : inversion_residual_probes(dec, l, cfg.probes, rng),
        kRelTol, di));
    const IntertwiningResidual r = dense ? intertwining_residual(dec, l)
                                         : intertwining_residual_probes(dec, l, cfg.probes, rng);
    json dm = d;
    dm["mode"] = dense ? "dense" : "probes";
    out.push_back(CheckResult::make("intertwiner.level0" + tag, "I(λ) Δ(x) = Δ(x) I(λ) for all I^a",
                                    r.level0, kRelTol, dm));
    out.push_back(CheckResult::make("intertwiner.level1" + tag,
                                    "I(λ) J(x)_{0,λ} = J(x)_{λ,0} I(λ) for all I^a", r.level1,
                                    kRelTol, dm));
  }
  std::vector<cplx> samples{cplx(0.0, 1.0), cplx(2.0, 1.0), cplx(-0.3, 0.0)};
  for (int k = 0; k < cfg.samples; ++k) samples.push_back(sample_spectral(rng, n));
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const DerivedCoefficients d = derive_coefficients(dec, samples[k], rng);
    json detail = {{"lambda", cj(d.lambda)},
                   {"f1", cj(d.f1)},
                   {"f2", cj(d.f2)},
                   {"f4", cj(d.f4)},
                   {"M", {cj(d.M(0, 0)), cj(d.M(0, 1)), cj(d.M(1, 0)), cj(d.M(1, 1))}}};
    if (d.f3) detail["f3"] = cj(*d.f3);
    out.push_back(CheckResult::make("intertwiner.derived[" + std::to_string(k) + "]",
                                    "coefficients recovered from the intertwining relation match "
                                    "f1..f4 and M(λ)",
                                    coefficient_deviation(n, d), kRelTol, detail));
  }
  return out;
}

Checks suite_ybe(const Decomposition& dec, const RunConfig& cfg, Rng& rng) {
  const int n = dec.n();
  YbeMode mode = n <= 4 ? YbeMode::Dense : YbeMode::MatrixFree;
  if (cfg.mode == ModeFlag::Dense) mode = YbeMode::Dense;
  if (cfg.mode == ModeFlag::MatrixFree) mode = YbeMode::MatrixFree;
  if (mode == YbeMode::Dense && n > 4) throw UsageError("--dense is limited to n <= 4");
  const char* mode_name = mode == YbeMode::Dense ? "dense" : "matrix-free";

  Checks out;
  out.push_back(CheckResult::make("ybe.r_at_zero", "R(0) = σ",
                                  max_abs(build_R(dec, 0.0, cfg.tol) - permutation_op(dec.rep.dim)),
                                  kSigmaTol));
  cplx first = 0.5;
  for (int k = 0; k < cfg.samples; ++k) {
    const auto [l, m] = sample_pair(rng, n);
    if (k == 0) first = l;
    const std::string tag = "[" + std::to_string(k) + "]";
    json d = {{"lambda", cj(l)}, {"mu", cj(m)}, {"mode", mode_name}};
    if (mode == YbeMode::MatrixFree) d["probes"] = cfg.probes;
    out.push_back(CheckResult::make("ybe.R" + tag, "R12(λ)R13(λ+μ)R23(μ) = R23(μ)R13(λ+μ)R12(λ)",
                                    ybe_residual(dec, l, m, mode, RKind::R, cfg.probes, rng),
                                    kRelTol, d));
    if (k == 0) d["r_minus_r_tilde"] = (build_R(dec, l) - build_R_tilde(dec, l)).norm();
    out.push_back(CheckResult::make("ybe.R_tilde" + tag, "Yang-Baxter equation for σ I(λ)",
                                    ybe_residual(dec, l, m, mode, RKind::RTilde, cfg.probes, rng),
                                    kRelTol, d));
  }
  if (cfg.mu) {
    check_poles(n, cfg.lambda);
    check_poles(n, *cfg.mu);
    check_poles(n, cfg.lambda + *cfg.mu);
    out.push_back(CheckResult::make(
        "ybe.requested", "Yang-Baxter equation at the requested (λ, μ)",
        ybe_residual(dec, cfg.lambda, *cfg.mu, mode, RKind::R, cfg.probes, rng), kRelTol,
        {{"lambda", cj(cfg.lambda)}, {"mu", cj(*cfg.mu)}, {"mode", mode_name}}));
  }
  out.push_back(CheckResult::make(
      "ybe.mu_zero", "Yang-Baxter equation at μ = 0",
      ybe_residual(dec, first, 0.0, mode, RKind::R, cfg.probes, rng), kBoundaryTol,
      {{"lambda", cj(first)}, {"mode", mode_name}}));

  const AsymptoticReport a = asymptotic_check(dec, {1e2, 1e3, 1e6});
  const json ad = {{"lambdas", a.lambdas}, {"remainders", a.remainders}, {"ratio", a.ratios[0]}};
  out.push_back(CheckResult::make("ybe.asymptotic_ratio",
                                  "R(λ) - (1+2/λ) + Ω/λ decays like 1/λ^2 (ratio within 1.5x of 100)",
                                  std::abs(std::log10(a.ratios[0] / 100.0)), std::log10(1.5), ad));
  out.push_back(CheckResult::make("ybe.asymptotic_remainder", "remainder at λ = 1e6 below 1e-9 |Ω|",
                                  a.remainders[2] / a.omega_norm, 1e-9, ad));
  return out;
}

std::vector<cplx> expected_h_spectrum(const Decomposition& dec) {
  const SchurCoefficients c = hamiltonian_schur(dec.n());
  std::vector<cplx> ev;
  for (const auto& sm : dec.submodules) {
    if (sm.component == Component::AdjointSym || sm.component == Component::AdjointAnti) continue;
    const cplx v = sm.component == Component::Top         ? c.top
                   : sm.component == Component::AntiLeft  ? c.anti_left
                   : sm.component == Component::AntiRight ? c.anti_right
                   : sm.component == Component::Middle    ? c.middle
                                                          : c.singlet;
    ev.insert(ev.end(), static_cast<std::size_t>(sm.dim()), v);
  }
  const Block2 o = o_block(dec.n());
  const cplx half_tr = o.trace() / 2.0;
  const cplx disc = std::sqrt(half_tr * half_tr - o.determinant());
  ev.insert(ev.end(), static_cast<std::size_t>(dec.rep.dim), half_tr + disc);
  ev.insert(ev.end(), static_cast<std::size_t>(dec.rep.dim), half_tr - disc);
  return ev;
}

double spectrum_distance(std::vector<cplx> a, std::vector<cplx> b) {
  if (a.size() != b.size()) return INFINITY;
  const auto by_real = [](cplx x, cplx y) { return x.real() < y.real(); };
  std::sort(a.begin(), a.end(), by_real);
  std::sort(b.begin(), b.end(), by_real);
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

Checks suite_hamiltonian(const Decomposition& dec, const RunConfig& cfg) {
  const int n = dec.n();
  Checks out;
  guarded(out, "hamiltonian.local", "h = R'(0)σ", [&] {
    const LocalHamiltonian lh = local_h(dec, cfg.tol);
    out.push_back(CheckResult::make("hamiltonian.assembly", "exact derivative of R(λ)σ at 0 equals the projector form of h",
                                    lh.assembly_residual, cfg.tol.abs_tol));
    out.push_back(CheckResult::make("hamiltonian.finite_difference",
                                    "h agrees with a central difference of R(λ)σ (step 1e-5)",
                                    lh.fd_residual, kFiniteDifferenceTol));
    out.push_back(CheckResult::at_least("hamiltonian.non_hermitian", "|h - h^†|_F > 0.1",
                                        hermiticity_defect(lh.h), kNonHermitianBound));

    std::vector<cplx> ev;
    json d;
    if (n <= 6) {
      ev = spectrum_diagnostics(lh.h).eigenvalues;
      d["method"] = "dense";
    } else {
      const BlockSpectrum bs = block_spectrum(dec, lh.h);
      ev = bs.eigenvalues;
      d["method"] = "submodule blocks";
      d["off_block"] = bs.off_block;
      out.push_back(CheckResult::make("hamiltonian.block_structure",
                                      "h has no entries between different submodule blocks",
                                      bs.off_block, cfg.tol.abs_tol));
    }
    double max_imag = 0.0;
    for (cplx z : ev) max_imag = std::max(max_imag, std::abs(z.imag()));
    out.push_back(CheckResult::make("hamiltonian.two_site_real", "two-site eigenvalues are real",
                                    max_imag, kRealTol, d));
    out.push_back(CheckResult::make(
        "hamiltonian.two_site_spectrum",
        "two-site spectrum = projector coefficients plus eigenvalues of O, each (n^2-1) times",
        spectrum_distance(ev, expected_h_spectrum(dec)), kRealTol, d));

    if (n > 5) return;
    const SpinOperators ops = spin_operators(dec.rep);
    const double herm = std::max({max_abs(ops.Q - ops.Q.adjoint()),
                                  max_abs(ops.C_A - ops.C_A.adjoint()),
                                  max_abs(ops.K - ops.K.adjoint())});
    out.push_back(CheckResult::make("hamiltonian.spin_hermitian", "Q, C_A and K are Hermitian", herm, kFitTol));
    const CMatrix kc = commutator(ops.K, ops.C_A);
    out.push_back(CheckResult::at_least("hamiltonian.k_ca_commutator", "|[K, C_A]|_F > 0.1",
                                        kc.norm(), kCommutatorBound));
    const CMatrix sf = spinform_h(ops, n);
    const SpinformFit fit = fit_spinform(sf, lh.h, n);
    const json fd = {{"scale", cj(fit.scale)},
                     {"constant", cj(fit.constant)},
                     {"expected_scale", fit.expected_scale}};
    out.push_back(CheckResult::make("hamiltonian.spinform_fit",
                                    "spin-operator form = scale · h + c · 1", fit.residual, kFitTol, fd));
    out.push_back(CheckResult::make("hamiltonian.spinform_scale",
                                    n == 3 ? "fitted scale is 8/3" : "fitted scale is 8/(6+n^2)",
                                    std::abs(fit.scale - fit.expected_scale), kFitTol, fd));
    const CMatrix herm_part = sf - commutator_coefficient(n) * kc;
    out.push_back(CheckResult::make("hamiltonian.spinform_split",
                                    "spin-operator form minus its [K, C_A] term is Hermitian",
                                    max_abs(herm_part - herm_part.adjoint()), kFitTol));
  });
  return out;
}

Checks suite_su3(const RunConfig& cfg, Rng& rng) {
  const Decomposition dec = make_decomposition(3, cfg.tol);
  Checks out;
  {
    std::vector<int> dims;
    for (const auto& sm : dec.submodules) dims.push_back(sm.dim());
    const std::vector<int> want{27, 10, 10, 8, 8, 1};
    out.push_back(CheckResult::make("su3.dimensions", "8 ⊗ 8 = 27 + 10 + 10 + 8 + 8 + 1",
                                    dims == want ? 0.0 : 1.0, 0.0, {{"dims", dims}}));
  }
  const std::vector<cplx> points{cplx(0.5, 0.0), cplx(0.0, 2.0), cplx(-1.7, 0.0)};
  for (std::size_t k = 0; k < points.size(); ++k) {
    const cplx l = points[k];
    const Block2 nb = block_on_hw_pair(dec, build_R(dec, l, cfg.tol));
    const cplx ht = nb.trace() / 2.0;
    const cplx disc = std::sqrt(ht * ht - nb.determinant());
    const cplx g1 = ht + disc, g2 = ht - disc;
    const cplx root = 3.0 * std::sqrt(4.0 + 5.0 * l * l);
    const cplx den = 2.0 * (1.0 - l) * (1.0 - l) * (3.0 - l);
    // Unordered pair distance.
    const auto pair_dev = [&](cplx e1, cplx e2) {
      return std::min(std::max(std::abs(g1 - e1), std::abs(g2 - e2)),
                      std::max(std::abs(g1 - e2), std::abs(g2 - e1)));
    };
    const std::string tag = "[" + std::to_string(k) + "]";
    const cplx q = 11.0 * l - 2.0 * l * l;
    out.push_back(CheckResult::make(
        "su3.n_block_eigenvalues" + tag,
        "eigenvalues of the adjoint-pair block of R(λ) are (11λ-2λ^2 ± 3 sqrt(4+5λ^2)) / "
        "(2(1-λ)^2(3-λ))",
        pair_dev((q + root) / den, (q - root) / den), kSu3EigTol,
        {{"lambda", cj(l)},
         {"measured", {cj(g1), cj(g2)}},
         {"expected", {cj((q + root) / den), cj((q - root) / den)}}}));
    // The closed-form block has trace 2(11λ-2λ^3)/den, so the cubic numerator
    // is the one consistent with it.
    const cplx c = 11.0 * l - 2.0 * l * l * l;
    out.push_back(CheckResult::make(
        "su3.n_block_eigenvalues_cubic" + tag,
        "eigenvalues of the adjoint-pair block of R(λ) are (11λ-2λ^3 ± 3 sqrt(4+5λ^2)) / "
        "(2(1-λ)^2(3-λ))",
        pair_dev((c + root) / den, (c - root) / den), kSu3EigTol,
        {{"lambda", cj(l)},
         {"measured", {cj(g1), cj(g2)}},
         {"expected", {cj((c + root) / den), cj((c - root) / den)}}}));
  }
  guarded(out, "su3.hamiltonian", "n = 3 local Hamiltonian", [&] {
    const CMatrix h = local_h(dec, cfg.tol).h;
    const auto coef = [&](Component c) {
      const CVector& v = dec.hw.get(c).vector;
      const CVector hv = h * v;
      const cplx k = v.dot(hv) / v.squaredNorm();
      return std::pair<cplx, double>{k, (hv - k * v).norm() / v.norm()};
    };
    double dev = 0.0;
    json got;
    const std::vector<std::pair<Component, double>> want{{Component::AntiLeft, 2.0},
                                                         {Component::AntiRight, 2.0},
                                                         {Component::Singlet, 8.0 / 3.0},
                                                         {Component::Top, 0.0}};
    for (const auto& [c, w] : want) {
      const auto [k, res] = coef(c);
      dev = std::max({dev, std::abs(k - w), res});
      got[std::string(component_key(c))] = cj(k);
    }
    const Block2 o = block_on_hw_pair(dec, h);
    const double r5 = std::sqrt(5.0) / 2.0;
    Block2 o_want;
    o_want << 25.0 / 6.0, r5, -r5, 0.5;
    dev = std::max(dev, (o - o_want).cwiseAbs().maxCoeff());
    got["O"] = {cj(o(0, 0)), cj(o(0, 1)), cj(o(1, 0)), cj(o(1, 1))};
    out.push_back(CheckResult::make(
        "su3.hamiltonian_coefficients",
        "h = 2(P_10 + P_10bar) + 25/6 P_8s + 1/2 P_8a + sqrt5/2 (O_sa - O_as) + 8/3 P_1", dev,
        kSu3CoefTol, {{"measured", got}}));
  });
  out.push_back(CheckResult::make(
      "su3.ybe", "Yang-Baxter equation at (λ, μ) = (0.7, -1.3i)",
      ybe_residual(dec, 0.7, cplx(0.0, -1.3), YbeMode::Dense, RKind::R, 0, rng), 1e-9));
  return out;
}

Checks suite_chain(const Decomposition& dec, const RunConfig& cfg, int sites, Rng& rng) {
  const int n = dec.n();
  const int dim = dec.rep.dim;
  Checks out;
  guarded(out, "chain.local", "h = R'(0)σ", [&] {
    const CMatrix h = local_h(dec, cfg.tol).h;
    const CMatrix H = chain_H(h, dim, sites);
    const json base = {{"sites", sites}};
    out.push_back(CheckResult::make("chain.symmetry", "[H, sum_i S^a_i] = 0 for all a",
                                    chain_symmetry_residual(H, dec.rep, sites), cfg.tol.abs_tol, base));
    const SpectrumDiagnostics sd = spectrum_diagnostics(H, kComplexThreshold);
    json sdd = base;
    sdd["complex_count"] = sd.complex_count;
    sdd["max_imag"] = sd.max_imag;
    if (sites >= 3) {
      out.push_back(CheckResult::at_least("chain.complex_spectrum",
                                          "the periodic chain has eigenvalues with |Im| > 1e-6",
                                          sd.max_imag, kComplexThreshold, sdd));
    } else {
      sdd["note"] = "two-site chain; reality not asserted";
      out.push_back(CheckResult::make("chain.spectrum_finite", "chain spectrum is finite",
                                      std::isfinite(sd.max_imag) ? 0.0 : 1.0, 0.0, sdd));
    }
    for (int k = 0; k < 3; ++k) {
      const auto l = sample_spectral(rng, n);
      const auto m = sample_spectral(rng, n);
      out.push_back(CheckResult::make("chain.transfer_commute[" + std::to_string(k) + "]",
                                      "[t(λ), t(μ)] = 0", commutation_check(dec, l, m, sites),
                                      kTransferTol, {{"lambda", cj(l)}, {"mu", cj(m)}, {"sites", sites}}));
      if (k == 0) {
        out.push_back(CheckResult::make("chain.transfer_hamiltonian", "[t(λ), H] = 0",
                                        relative_commutator(transfer_matrix(dec, l, sites), H),
                                        kTransferHTol, {{"lambda", cj(l)}, {"sites", sites}}));
      }
    }
    const CMatrix t0 = transfer_matrix(dec, 0.0, sites);
    const CMatrix u = shift_operator(dim, sites);
    out.push_back(CheckResult::make("chain.transfer_at_zero", "t(0) is the cyclic shift",
                                    std::min(max_abs(t0 - u), max_abs(t0 - u.adjoint())), kSigmaTol,
                                    base));
  });
  return out;
}

json report_header(const std::string& command, const char* key, const std::string& value,
                  const RunConfig& cfg, int n) {
  return {{"command", command},
          {key, value},
          {"n", n},
          {"seed", cfg.seed},
          {"tolerance", {{"abs_tol", cfg.tol.abs_tol}, {"rank_tol", cfg.tol.rank_tol}}}};
}

json nested_rank3(const Rank3& r) {
  json out = json::array();
  for (int a = 0; a < r.dim(); ++a) {
    json ja = json::array();
    for (int b = 0; b < r.dim(); ++b) {
      json jb = json::array();
      for (int c = 0; c < r.dim(); ++c) jb.push_back(cj(r(a, b, c)));
      ja.push_back(std::move(jb));
    }
    out.push_back(std::move(ja));
  }
  return out;
}

}  // namespace

void RunConfig::validate() const {
  if (n < 3) throw UsageError("--n must be at least 3");
  if (samples < 1) throw UsageError("--samples must be at least 1");
  if (probes < 1) throw UsageError("--probes must be at least 1");
  if (sites < 0) throw UsageError("--sites must be positive");
  try {
    tol.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

cplx parse_complex(const std::string& text) {
  std::string s = text;
  for (char& ch : s) {
    if (ch == ',') ch = ' ';
  }
  std::istringstream in(s);
  double re = 0.0, im = 0.0;
  if (!(in >> re)) throw UsageError("cannot parse complex number '" + text + "'");
  if (!(in >> im)) {
    if (!in.eof()) throw UsageError("cannot parse complex number '" + text + "'");
    im = 0.0;
  }
  in >> std::ws;
  if (!in.eof()) throw UsageError("cannot parse complex number '" + text + "'");
  if (!std::isfinite(re) || !std::isfinite(im)) throw UsageError("complex number must be finite");
  return {re, im};
}

json cmd_build(const std::string& kind, const RunConfig& cfg) {
  cfg.validate();
  json j = report_header("build", "kind", kind, cfg, cfg.n);
  if (kind == "basis") {
    const SunBasis basis = build_basis(cfg.n, cfg.tol);
    json gens = json::array();
    for (const auto& g : basis.generators) gens.push_back(matrix_to_json(g));
    j["generators"] = std::move(gens);
    j["f"] = nested_rank3(basis.f);
    j["d"] = nested_rank3(basis.d);
    return j;
  }
  if (kind == "projectors") {
    const Decomposition dec = make_decomposition(cfg.n, cfg.tol);
    const bool include = static_cast<std::size_t>(dec.pair_dim()) <= kMaxProjectorExport;
    json subs = json::array();
    for (const auto& sm : dec.submodules) {
      json s = {{"key", std::string(component_key(sm.component))},
                {"label", sm.label},
                {"dim", sm.dim()},
                {"omega_eigenvalue", sm.omega_eigenvalue},
                {"exchange_parity", sm.exchange_parity}};
      if (include) s["projector"] = matrix_to_json(sm.projector());
      subs.push_back(std::move(s));
    }
    j["submodules"] = std::move(subs);
    j["projectors_included"] = include;
    j["completeness_residual"] = dec.completeness_residual;
    if (include) j["iso_s_to_a"] = matrix_to_json(dec.iso_s_to_a());
    return j;
  }
  if (kind == "rmatrix") {
    check_poles(cfg.n, cfg.lambda);
    const Decomposition dec = make_decomposition(cfg.n, cfg.tol);
    j["lambda"] = cj(cfg.lambda);
    const json m = matrix_to_json(build_R(dec, cfg.lambda, cfg.tol));
    for (const auto& [k, v] : m.items()) j[k] = v;
    return j;
  }
  if (kind == "hamiltonian") {
    const int sites = chain_sites(cfg, 2);
    const int dim = cfg.n * cfg.n - 1;
    double total = std::pow(double(dim), sites);
    if (sites < 2) throw UsageError("--sites must be at least 2");
    if (total > double(kMaxChainDim)) {
      throw UsageError("chain dimension " + std::to_string(static_cast<long long>(total)) +
                       " exceeds " + std::to_string(kMaxChainDim));
    }
    const Decomposition dec = make_decomposition(cfg.n, cfg.tol);
    CMatrix h = local_h(dec, cfg.tol).h;
    if (cfg.rescaled) h *= spinform_scale(cfg.n);
    j["sites"] = sites;
    j["convention"] = cfg.rescaled ? "rescaled" : "raw";
    const json m = matrix_to_json(chain_H(h, dim, sites));
    for (const auto& [k, v] : m.items()) j[k] = v;
    return j;
  }
  throw UsageError("unknown build kind '" + kind + "'");
}

VerifyResult cmd_verify(const std::string& suite, const RunConfig& cfg) {
  cfg.validate();
  static const std::vector<std::string> suites{"identities", "intertwiner", "ybe", "hamiltonian",
                                               "su3",        "chain",       "all"};
  if (std::find(suites.begin(), suites.end(), suite) == suites.end()) {
    throw UsageError("unknown verify suite '" + suite + "'");
  }
  const int n = suite == "su3" ? 3 : cfg.n;
  if (suite == "chain") {
    const double total = std::pow(double(n * n - 1), chain_sites(cfg, 3));
    if (chain_sites(cfg, 3) < 2 || total > double(kMaxChainDim)) {
      throw UsageError("chain suite needs 2 <= sites and (n^2-1)^sites <= " +
                       std::to_string(kMaxChainDim));
    }
  }
  if (cfg.mode == ModeFlag::Dense && n > 4 && (suite == "ybe" || suite == "all")) {
    throw UsageError("--dense is limited to n <= 4");
  }

  std::optional<Decomposition> dec;
  if (suite != "su3") dec = make_decomposition(n, cfg.tol);

  Checks checks;
  const auto run = [&](const std::string& name, const std::function<Checks(Rng&)>& f) {
    Rng rng(suite_seed(cfg.seed, name));
    for (auto& c : f(rng)) {
      if (suite == "all") c.id = name + "/" + c.id;
      checks.push_back(std::move(c));
    }
  };
  const bool all = suite == "all";
  if (all || suite == "identities") run("identities", [&](Rng& r) { return suite_identities(*dec, cfg, r); });
  if (all || suite == "intertwiner") run("intertwiner", [&](Rng& r) { return suite_intertwiner(*dec, cfg, r); });
  if (all || suite == "ybe") run("ybe", [&](Rng& r) { return suite_ybe(*dec, cfg, r); });
  if (all || suite == "hamiltonian") run("hamiltonian", [&](Rng&) { return suite_hamiltonian(*dec, cfg); });
  if (suite == "su3" || (all && n == 3)) run("su3", [&](Rng& r) { return suite_su3(cfg, r); });
  if (suite == "chain" || (all && n == 3)) {
    run("chain", [&](Rng& r) { return suite_chain(*dec, cfg, chain_sites(cfg, 3), r); });
  }

  VerifyResult res;
  res.pass = all_pass(checks);
  json j = report_header("verify", "suite", suite, cfg, n);
  j["range"] = range_label(n);
  json list = json::array();
  int failed = 0;
  for (const auto& c : checks) {
    list.push_back(to_json(c));
    if (!c.pass) ++failed;
  }
  j["checks"] = std::move(list);
  j["summary"] = {{"total", checks.size()}, {"failed", failed}};
  j["pass"] = res.pass;
  res.report = std::move(j);
  return res;
}

json cmd_spectrum(const RunConfig& cfg) {
  cfg.validate();
  const int sites = chain_sites(cfg, 2);
  if (sites < 2) throw UsageError("--sites must be at least 2");
  const int dim = cfg.n * cfg.n - 1;
  const double total = std::pow(double(dim), sites);
  if (total > double(kMaxChainDim)) {
    throw UsageError("chain dimension " + std::to_string(static_cast<long long>(total)) +
                     " exceeds " + std::to_string(kMaxChainDim));
  }
  const Decomposition dec = make_decomposition(cfg.n, cfg.tol);
  CMatrix h = local_h(dec, cfg.tol).h;
  if (cfg.rescaled) h *= spinform_scale(cfg.n);
  const CMatrix H = chain_H(h, dim, sites);
  const SpectrumDiagnostics sd = spectrum_diagnostics(H, kComplexThreshold);
  json j = report_header("spectrum", "convention", cfg.rescaled ? "rescaled" : "raw", cfg, cfg.n);
  j["sites"] = sites;
  json ev = json::array();
  for (cplx z : sd.eigenvalues) ev.push_back(cj(z));
  j["eigenvalues"] = std::move(ev);
  j["count"] = sd.eigenvalues.size();
  j["max_imag"] = sd.max_imag;
  j["complex_threshold"] = sd.complex_threshold;
  j["complex_count"] = sd.complex_count;
  return j;
}

void write_report(const json& j, const std::string& path, std::ostream& out) {
  const std::string text = dump_json(j) + "\n";
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rational R-matrix with adjoint su(n) symmetry: build, verify, spectrum"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string lambda_text, mu_text, kind, suite;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  bool dense = false, matrix_free = false, raw = false, rescaled = false;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "rank n >= 3");
    sub->add_option("--sites", cfg.sites, "number of chain sites");
    sub->add_option("--lambda", lambda_text, "spectral parameter RE,IM");
    sub->add_option("--mu", mu_text, "second spectral parameter RE,IM");
    sub->add_option("--samples", cfg.samples, "random samples per check");
    sub->add_option("--probes", cfg.probes, "probe vectors for matrix-free checks");
    sub->add_option("--seed", seed, "RNG seed (fallback: ADJRMAT_SEED)");
    sub->add_option("--tol", tol, "absolute tolerance for operator identities");
    sub->add_option("--out", cfg.out, "output file (default: stdout)");
    auto* d = sub->add_flag("--dense", dense, "dense Yang-Baxter check");
    auto* m = sub->add_flag("--matrix-free", matrix_free, "probe-vector Yang-Baxter check");
    d->excludes(m);
    auto* r = sub->add_flag("--raw", raw, "unscaled local Hamiltonian");
    auto* s = sub->add_flag("--rescaled", rescaled, "local Hamiltonian times the spin-form scale");
    r->excludes(s);
  };
  auto* build = app.add_subcommand("build", "write a JSON artifact");
  build->add_option("kind", kind, "basis | projectors | rmatrix | hamiltonian")
      ->required()
      ->check(CLI::IsMember({"basis", "projectors", "rmatrix", "hamiltonian"}));
  common(build);
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "identities | intertwiner | ybe | hamiltonian | su3 | chain | all")
      ->required()
      ->check(CLI::IsMember({"identities", "intertwiner", "ybe", "hamiltonian", "su3", "chain", "all"}));
  common(verify);
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of the chain Hamiltonian");
  common(spectrum);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitPass;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (!lambda_text.empty()) cfg.lambda = parse_complex(lambda_text);
    if (!mu_text.empty()) cfg.mu = parse_complex(mu_text);
    if (tol) cfg.tol.abs_tol = *tol;
    if (seed) {
      cfg.seed = *seed;
    } else if (const char* env = std::getenv("ADJRMAT_SEED"); env && *env) {
      try {
        std::size_t used = 0;
        cfg.seed = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument(env);
      } catch (const std::exception&) {
        throw UsageError(std::string("ADJRMAT_SEED is not an unsigned integer: '") + env + "'");
      }
    }
    cfg.mode = dense ? ModeFlag::Dense : matrix_free ? ModeFlag::MatrixFree : ModeFlag::Auto;
    cfg.rescaled = rescaled;

    if (build->parsed()) {
      write_report(cmd_build(kind, cfg), cfg.out, out);
      return kExitPass;
    }
    if (verify->parsed()) {
      const VerifyResult r = cmd_verify(suite, cfg);
      write_report(r.report, cfg.out, out);
      if (!r.pass) err << "verification failed: " << r.report["summary"]["failed"] << " check(s)\n";
      return r.pass ? kExitPass : kExitFail;
    }
    write_report(cmd_spectrum(cfg), cfg.out, out);
    return kExitPass;
  } catch (const VerificationError& e) {
    err << "verification error: " << e.what() << "\n";
    return kExitFail;
  } catch (const ConvergenceError& e) {
    err << "convergence error: " << e.what() << "\n";
    return kExitFail;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace adjrmat
