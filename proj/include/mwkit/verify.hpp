// verify.hpp — the property suites behind `mwkit verify`: every module
// invariant run over seeded random instances, collected into a
// machine-readable report.  Deterministic: each property derives its RNG
// stream from the suite seed and its own id, so results are byte-identical
// across reruns and independent of execution order.

#pragma once

#include "mwkit/common.hpp"
#include "mwkit/decompose.hpp"
#include "mwkit/gaussian.hpp"
#include "mwkit/grid.hpp"
#include "mwkit/json_io.hpp"
#include "mwkit/maslov.hpp"
#include "mwkit/matrix_elements.hpp"
#include "mwkit/mw_descriptor.hpp"
#include "mwkit/quadrature.hpp"
#include "mwkit/sampling.hpp"
#include "mwkit/symplectic.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

namespace mwkit {

struct PropertyResult {
  std::string property_id;
  int instances = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct VerificationReport {
  std::string suite_version = "1.0.0";
  std::uint64_t seed = 0;
  std::vector<PropertyResult> cases;
  bool overall = false;
};

inline Json report_to_json(const VerificationReport& r) {
  Json cases = Json::array();
  for (const auto& c : r.cases)
    cases.push_back(Json{{"property_id", c.property_id},
                         {"instances", c.instances},
                         {"max_error", c.max_error},
                         {"tolerance", c.tolerance},
                         {"passed", c.passed}});
  return Json{{"suite_version", r.suite_version},
              {"seed", r.seed},
              {"cases", std::move(cases)},
              {"overall", r.overall}};
}

namespace verify_detail {

// ---------------------------------------------------------------------------
// Shared fixtures and helpers
// ---------------------------------------------------------------------------

inline FreeGenerator fixture_generator(double P, double L, double Q, int m) {
  Mat p(1, 1), l(1, 1), q(1, 1);
  p << P;
  l << L;
  q << Q;
  return FreeGenerator(p, l, q, m);
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// pointwise residual between two Gaussian states on probe points
inline double probe_residual(const GaussianState& a, const GaussianState& b, Rng& rng,
                             int probes = 10) {
  double worst = 0.0;
  for (int t = 0; t < probes; ++t) {
    const Vec x = rng.vector(a.n(), -2.0, 2.0);
    worst = std::max(worst, std::abs(a.evaluate(x) - b.evaluate(x)));
  }
  return worst;
}

struct MWQuadInstance {
  FreeGenerator gen;
  GaussianState bra;
  GaussianState ket;
  MWDescriptor desc;
};

// instance whose bracketed integrand the 80-node rule resolves comfortably:
// standardized oscillation strength below `cap` (rejection-resampling keeps
// condition numbers testable, it does not change any mathematics)
inline MWQuadInstance draw_tame_mw_instance(Rng& rng, int n, double cap) {
  GeneratorSamplingOptions opt;
  opt.min_abs_det_s_minus_i = 0.1;
  opt.max_ms_norm = 6.0;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    FreeGenerator gen = random_free_generator(rng, n, opt);
    GaussianState bra = random_gaussian(rng, n);
    GaussianState ket = random_gaussian(rng, n);
    MWDescriptor desc = descriptor_from_generator(gen);
    ExpQuadratic q = hw_overlap_quadratic(bra, ket);
    q.C += desc.M_S.cast<Complex>();
    if (quadratic_oscillation_strength(q.C) > cap) continue;
    return {std::move(gen), std::move(bra), std::move(ket), std::move(desc)};
  }
  throw ExhaustedSearchError("draw_tame_mw_instance: rejection sampling exhausted");
}

struct GridTestInstance {
  FreeGenerator gen;
  GaussianState state;
};

// generator/state pair whose transform stays well inside the grid box: the
// closed-form output must keep a comfortably positive-definite Im Gamma
// (fast decay) and a center/momentum far from the truncation boundary.  The
// intermediate state of the factored chain (the modified Fourier transform
// of the chirped input) must also be decayed at the box edge, otherwise the
// rescaling step has nothing trustworthy to interpolate.
inline GridTestInstance draw_tame_grid_instance(Rng& rng, double entry_range,
                                                double box_X = 12.0) {
  GeneratorSamplingOptions opt;
  opt.entry_lo = -entry_range;
  opt.entry_hi = entry_range;
  opt.min_abs_det_L = 0.5;
  Vec edge(1);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    FreeGenerator gen = random_free_generator(rng, 1, opt);
    GaussianState state = random_gaussian(rng, 1);
    if (state.gamma().imag()(0, 0) < 0.55) continue;
    if (max_abs(state.center()) > 1.0 || max_abs(state.momentum()) > 1.5) continue;
    const GaussianState out = gauss_quad_fourier(gen, state);
    if (out.gamma().imag()(0, 0) < 0.35) continue;
    if (max_abs(out.center()) > 2.2 || max_abs(out.momentum()) > 4.0) continue;
    const GaussianState inter = gauss_quad_fourier(
        FreeGenerator(Mat::Zero(1, 1), Mat::Identity(1, 1), gen.Q(), 0), state);
    bool decayed = true;
    for (double s : {-1.0, 1.0}) {
      edge << s * box_X;
      decayed &= std::abs(inter.evaluate(edge)) < 1e-10 &&
                 std::abs(out.evaluate(edge)) < 1e-10;
    }
    if (!decayed) continue;
    return {std::move(gen), std::move(state)};
  }
  throw ExhaustedSearchError("draw_tame_grid_instance: rejection sampling exhausted");
}

// the index matrix of `first` made exactly singular: Q chosen so that
// P + Q - L - L^T has a zero eigenvalue
inline FreeGenerator degenerate_generator(Rng& rng, int n) {
  const Mat P = rng.symmetric_matrix(n, -2.0, 2.0);
  Mat L;
  do {
    L = rng.matrix(n, n, -2.0, 2.0);
  } while (std::abs(L.determinant()) < 0.1);
  Mat diag = Mat::Zero(n, n);
  for (int i = 1; i < n; ++i) diag(i, i) = rng.uniform(-2.0, 2.0);
  Eigen::HouseholderQR<Mat> qr(rng.matrix(n, n, -1.0, 1.0));
  const Mat V = qr.householderQ();
  const Mat W = symmetrize(Mat(V * diag * V.transpose()));
  const Mat Q = symmetrize(Mat(W - P + L + L.transpose()));
  return FreeGenerator(P, L, Q, m_choices(L).first);
}

// ---------------------------------------------------------------------------
// Symbol bridge: the Weyl symbol of S_{W,m} computed two ways.
//
// Route 1 (grid): sample the kernel (2 pi i)^{-1/2} i^m sqrt(|det L|)
// e^{iW(x,y)} windowed by exp(-(x-y)^2/(4 sigma_w^2)) and push it through
// kernel_to_symbol.  The difference-direction window is exactly a Gaussian
// blur of the symbol in p.
//
// Route 2 (analytic): the Weyl symbol recovered from the twisted symbol
// a_sigma(z) = (2 pi)^{-n} i^nu |det(S-I)|^{-1/2} e^{(i/2)<M_S z,z>} via
//   a(z) = int a_sigma(z0) e^{i sigma(z0, z)} d^{2n} z0
// (the Weyl symbol of T(z0) is e^{i sigma(z0, z)}, so the superposition
// integrates directly; this fixes the normalization against the kernel
// formula), then the same p-blur in closed form.  Any error in nu, the
// normalization, or either transform breaks the match.
// ---------------------------------------------------------------------------

inline double symbol_bridge_max_err(const FreeGenerator& gen, const GridSpec& spec,
                                    double sigma_w, double region) {
  if (gen.n() != 1 || spec.n != 2)
    throw UnsupportedError("symbol_bridge: one degree of freedom only");
  const MWDescriptor desc = descriptor_from_generator(gen);

  // route 1: windowed kernel -> symbol samples
  const double P = gen.P()(0, 0), L = gen.L()(0, 0), Q = gen.Q()(0, 0);
  const Complex kpref = std::pow(2.0 * kPi, -0.5) * std::exp(Complex(0, -kPi / 4.0)) *
                        i_power(gen.m()) * std::sqrt(std::abs(gen.det_L()));
  const GridFunction K = GridFunction::from_function(spec, [&](const Vec& xy) {
    const double x = xy(0), y = xy(1);
    const double W = 0.5 * P * x * x - L * x * y + 0.5 * Q * y * y;
    const double window = std::exp(-(x - y) * (x - y) / (4.0 * sigma_w * sigma_w));
    return kpref * std::exp(Complex(0, W)) * window;
  });
  const GridFunction sym = kernel_to_symbol(K);

  // route 2: blurred Weyl symbol from the twisted-symbol superposition
  const Mat J = standard_J(1);
  const Mat Ms = desc.M_S;
  if (std::abs(Ms.determinant()) <= kTolDegenerate)
    throw InvalidParameterError("symbol_bridge: M_S singular, pick another fixture");
  const Mat Nt = symmetrize(Mat(J.transpose() * Ms.inverse() * J));
  // the (2 pi)^{-n} of a_sigma cancels against the (2 pi)^{n} of the
  // 2n-dimensional Gaussian integral
  const Complex c0 = i_power(desc.nu) / std::sqrt(std::abs(desc.det_s_minus_i)) /
                     sqrt_det_minus_i(Ms.cast<Complex>());
  const Complex Mu = -Nt(1, 1) + Complex(0, 2.0 * sigma_w * sigma_w);
  const double hnorm = sigma_w / std::sqrt(kPi);

  auto blurred = [&](double x, double p) {
    const Complex quad = Complex(0, -0.5) * (Nt(0, 0) * x * x + 2.0 * Nt(0, 1) * x * p +
                                             Nt(1, 1) * p * p);
    CVec bu(1);
    bu << Complex(Nt(0, 1) * x + Nt(1, 1) * p, 0.0);
    CMat mu(1, 1);
    mu << Mu;
    return c0 * hnorm * std::exp(quad) * complex_gaussian_integral(mu, bu);
  };

  const Vec nodes = spec.nodes();
  double worst = 0.0;
  for (int i = 0; i < spec.N; ++i) {
    if (std::abs(nodes(i)) > region) continue;
    for (int m = 0; m < spec.N; ++m) {
      if (std::abs(nodes(m)) > region) continue;
      const Complex got = sym.samples()(static_cast<long>(i) * spec.N + m);
      worst = std::max(worst, std::abs(got - blurred(nodes(i), nodes(m))));
    }
  }
  return worst;
}

}  // namespace verify_detail

// ---------------------------------------------------------------------------
// The suite
// ---------------------------------------------------------------------------

inline VerificationReport run_verification(std::uint64_t seed,
                                           std::vector<int> dims = {1, 2, 3}) {
  using namespace verify_detail;
  std::sort(dims.begin(), dims.end());
  dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
  for (int d : dims)
    if (d < 1 || d > 3) throw UsageError("run_verification: dims must be within {1,2,3}");
  if (dims.empty()) throw UsageError("run_verification: dims must be nonempty");

  const double scale = tol_scale();
  VerificationReport report;
  report.seed = seed;

  auto add = [&](const std::string& id, int instances, double max_error, double tol) {
    const double t = tol * scale;
    report.cases.push_back({id, instances, max_error, t, max_error <= t});
  };
  auto rng_for = [&](const std::string& id) { return Rng(seed ^ fnv1a(id)); };
  auto has_dim = [&](int d) { return std::find(dims.begin(), dims.end(), d) != dims.end(); };

  const std::vector<int> low_dims = [&] {
    std::vector<int> v;
    for (int d : dims)
      if (d <= 2) v.push_back(d);
    return v;
  }();

  // ---- symplectic_core ----------------------------------------------------
  {
    Rng rng = rng_for("sympl.free_membership");
    double worst_memb = 0.0, worst_round = 0.0, worst_schur = 0.0;
    int count = 0;
    for (int n : dims) {
      for (int t = 0; t < 500; ++t, ++count) {
        const FreeGenerator g = random_free_generator(rng, n);
        const SymplecticMatrix S = free_from_generator(g);
        worst_memb = std::max(worst_memb, symplectic_residual(S.entries()));
        const PLQ plq = generator_from_free(S);
        const SymplecticMatrix S2 =
            free_from_generator(FreeGenerator(plq.P, plq.L, plq.Q, g.m()));
        worst_round = std::max(worst_round, max_abs(S2.entries() - S.entries()));
        // C - D B^{-1} A = -(B^T)^{-1}, the symplectic-inverse identity
        const Mat Binv = S.B().inverse();
        worst_schur = std::max(
            worst_schur,
            max_abs(S.C() - S.D() * Binv * S.A() + S.B().transpose().inverse()));
      }
    }
    add("sympl.free_membership", count, worst_memb, 1e-10);
    add("sympl.free_roundtrip", count, worst_round, 1e-9);
    add("sympl.schur_identity", count, worst_schur, 1e-9);
  }
  {
    Rng rng = rng_for("sympl.cayley_roundtrip");
    double worst_round = 0.0, worst_sym = 0.0;
    int count = 0;
    GeneratorSamplingOptions opt;
    opt.min_abs_det_s_minus_i = 1e-6;
    for (int n : dims) {
      for (int t = 0; t < 250; ++t, ++count) {
        // forward: S -> M -> S; sigma_min keeps the inverse well conditioned
        const SymplecticMatrix S = free_from_generator(random_free_generator(rng, n, opt));
        const Mat I = Mat::Identity(2 * n, 2 * n);
        const Eigen::JacobiSVD<Mat> svd(S.entries() - I);
        if (svd.singularValues().minCoeff() < 0.05) continue;
        const Mat M = cayley_ms(S);
        worst_round = std::max(
            worst_round, max_abs(cayley_inverse(M).entries() - S.entries()));
        // raw formula symmetry before any symmetrization
        const Mat J = standard_J(n);
        const Mat raw = 0.5 * J * (S.entries() + I) * (S.entries() - I).inverse();
        worst_sym = std::max(worst_sym, asymmetry(raw));
      }
      for (int t = 0; t < 250; ++t, ++count) {
        // backward: M -> S -> M
        const Mat M = rng.symmetric_matrix(2 * n, -3.0, 3.0);
        const Mat J = standard_J(n);
        const Eigen::JacobiSVD<Mat> svd(2.0 * M - J);
        if (svd.singularValues().minCoeff() < 0.2) continue;
        const SymplecticMatrix S = cayley_inverse(M);
        worst_round = std::max(worst_round, max_abs(cayley_ms(S) - M));
      }
    }
    add("sympl.cayley_roundtrip", count, worst_round, 1e-9);
    add("sympl.cayley_symmetry", count, worst_sym, 1e-9);
  }
  {
    Rng rng = rng_for("sympl.det_factorization");
    double worst_signed = 0.0, worst_modulus = 0.0;
    int count = 0;
    GeneratorSamplingOptions opt;
    opt.min_abs_det_s_minus_i = 1e-3;
    for (int n : dims) {
      for (int t = 0; t < 500; ++t, ++count) {
        const FreeGenerator g = random_free_generator(rng, n, opt);
        const Mat S = free_from_generator(g).entries();
        const double direct = (S - Mat::Identity(2 * n, 2 * n)).determinant();
        const double factored = det_s_minus_i_factored(g);
        worst_signed = std::max(worst_signed, rel_err(factored, direct));
        worst_modulus = std::max(worst_modulus,
                                 rel_err(std::abs(factored), std::abs(direct)));
      }
    }
    // hand fixtures: direct determinants 2, 0, 2
    worst_signed = std::max(
        worst_signed,
        std::abs(det_s_minus_i_factored(fixture_generator(0, 1, 0, 0)) - 2.0));
    worst_signed = std::max(
        worst_signed, std::abs(det_s_minus_i_factored(fixture_generator(1, 1, 1, 0))));
    worst_signed = std::max(
        worst_signed,
        std::abs(det_s_minus_i_factored(fixture_generator(0, 2, 0, 0)) - 2.0));
    add("sympl.det_factor_signed", count + 3, worst_signed, 1e-8);
    add("sympl.det_factor_modulus", count, worst_modulus, 1e-10);
  }

  // ---- maslov_index ---------------------------------------------------------
  {
    Rng rng = rng_for("maslov.sign_relation");
    int mismatches = 0, count = 0;
    GeneratorSamplingOptions opt;
    opt.min_abs_det_s_minus_i = 1e-3;
    opt.random_m = true;
    for (int n : dims) {
      for (int t = 0; t < 500; ++t, ++count) {
        const FreeGenerator g = random_free_generator(rng, n, opt);
        const MaslovData md = mw_index(g);
        const Mat S = free_from_generator(g).entries();
        const double det = (S - Mat::Identity(2 * n, 2 * n)).determinant();
        const double lhs = (md.nu % 2 == 0) ? 1.0 : -1.0;
        const double rhs = ((n % 2 == 0) ? 1.0 : -1.0) * (det > 0 ? 1.0 : -1.0);
        if (lhs != rhs) ++mismatches;
        // m -> m+2 shifts nu by 2
        const MaslovData md2 =
            mw_index(FreeGenerator(g.P(), g.L(), g.Q(), mod4(g.m() + 2)));
        if (md2.nu != mod4(md.nu + 2)) ++mismatches;
      }
    }
    add("maslov.sign_relation", count, static_cast<double>(mismatches), 0.5);
  }
  {
    Rng rng = rng_for("maslov.inverse_generator");
    double worst = 0.0;
    int count = 0;
    for (int n : dims) {
      for (int t = 0; t < 200; ++t, ++count) {
        const FreeGenerator g = random_free_generator(rng, n);
        const FreeGenerator gi = inverse_generator(g);
        const Mat prod =
            free_from_generator(gi).entries() * free_from_generator(g).entries();
        worst = std::max(worst, max_abs(prod - Mat::Identity(2 * n, 2 * n)));
        const FreeGenerator gii = inverse_generator(gi);
        worst = std::max(worst, max_abs(gii.P() - g.P()));
        worst = std::max(worst, max_abs(gii.L() - g.L()));
        worst = std::max(worst, max_abs(gii.Q() - g.Q()));
        worst = std::max(worst, std::abs(double(gii.m() - g.m())));
      }
    }
    add("maslov.inverse_generator", count, worst, 1e-9);
  }
  {
    Rng rng = rng_for("maslov.restricted_quadratic");
    double worst = 0.0;
    int count = 0;
    GeneratorSamplingOptions opt;
    opt.min_abs_det_s_minus_i = 1e-3;
    for (int n : low_dims) {
      for (int t = 0; t < 100; ++t, ++count) {
        const FreeGenerator g = random_free_generator(rng, n, opt);
        const Vec p0 = rng.vector(n, -2.0, 2.0);
        const auto [lhs, rhs] = verify_restricted_quadratic(g, p0);
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
      }
    }
    if (count) add("maslov.restricted_quadratic", count, worst, 1e-8);
  }

  // ---- gaussian_states ------------------------------------------------------
  {
    Rng rng = rng_for("gauss.fresnel_consistency");
    double worst = 0.0;
    int count = 0;
    for (int n : dims) {
      for (int t = 0; t < 40; ++t) {
        const Mat M = rng.symmetric_matrix(n, -3.0, 3.0);
        if (std::abs(M.determinant()) < 0.1) continue;
        const Vec p = rng.vector(n, -2.0, 2.0);
        const Complex closed = fresnel_closed_form(M).value_at(p);
        const Complex via_cgi = std::pow(2.0 * kPi, -0.5 * n) *
                                complex_gaussian_integral(M.cast<Complex>(),
                                                          CVec(-p.cast<Complex>()));
        worst = std::max(worst, std::abs(closed - via_cgi) / std::abs(closed));
        ++count;
      }
    }
    add("gauss.fresnel_consistency", count, worst, 1e-10);
  }
  {
    Rng rng = rng_for("gauss.hw_pointwise");
    double worst_point = 0.0, worst_comm = 0.0;
    int count = 0;
    for (int n : low_dims) {
      for (int t = 0; t < 100; ++t, ++count) {
        const GaussianState g = random_gaussian(rng, n);
        const PhaseSpacePoint z0 = random_phase_point(rng, n, -1.5, 1.5);
        const PhaseSpacePoint z1 = random_phase_point(rng, n, -1.5, 1.5);
        const GaussianState tg = gauss_hw(z0, g);
        for (int probes = 0; probes < 5; ++probes) {
          const Vec x = rng.vector(n, -2.0, 2.0);
          const Complex defining =
              std::exp(Complex(0, z0.p.dot(x) - 0.5 * z0.p.dot(z0.x))) *
              g.evaluate(x - z0.x);
          worst_point = std::max(worst_point, std::abs(tg.evaluate(x) - defining));
        }
        // T(z0) T(z1) = e^{i sigma(z0,z1)} T(z1) T(z0)
        const double sig = symplectic_form(z0.as_vector(), z1.as_vector());
        const GaussianState lhs = gauss_hw(z0, gauss_hw(z1, g));
        GaussianState rhs = gauss_hw(z1, gauss_hw(z0, g));
        rhs = GaussianState(rhs.gamma(), rhs.center(), rhs.momentum(),
                            rhs.amp() * std::exp(Complex(0, sig)));
        worst_comm = std::max(worst_comm, probe_residual(lhs, rhs, rng, 5));
        // T(z0+z1) = e^{-(i/2) sigma(z0,z1)} T(z0) T(z1)
        const PhaseSpacePoint zsum{z0.x + z1.x, z0.p + z1.p};
        const GaussianState sum = gauss_hw(zsum, g);
        GaussianState prod = gauss_hw(z0, gauss_hw(z1, g));
        prod = GaussianState(prod.gamma(), prod.center(), prod.momentum(),
                             prod.amp() * std::exp(Complex(0, -0.5 * sig)));
        worst_comm = std::max(worst_comm, probe_residual(sum, prod, rng, 5));
      }
    }
    if (count) {
      add("gauss.hw_pointwise", count, worst_point, 1e-12);
      add("gauss.hw_commutation", count, worst_comm, 1e-9);
    }
  }
  {
    Rng rng = rng_for("gauss.unitarity");
    double worst_swm = 0.0, worst_mw = 0.0, worst_inverse = 0.0;
    int count = 0;
    GeneratorSamplingOptions opt;
    opt.entry_lo = -2.0;
    opt.entry_hi = 2.0;
    opt.min_abs_det_s_minus_i = 0.05;
    for (int n : low_dims) {
      for (int t = 0; t < 100; ++t, ++count) {
        const FreeGenerator gen = random_free_generator(rng, n, opt);
        const GaussianState g = random_gaussian(rng, n);
        const GaussianState sg = gauss_quad_fourier(gen, g);
        worst_swm = std::max(worst_swm, std::abs(gauss_norm(sg) - gauss_norm(g)));
        const GaussianState rg = mw_apply_gaussian(descriptor_from_generator(gen), g);
        worst_mw = std::max(worst_mw, std::abs(gauss_norm(rg) - gauss_norm(g)));
        const GaussianState back = gauss_quad_fourier(inverse_generator(gen), sg);
        worst_inverse = std::max(worst_inverse, state_param_distance(back, g));
      }
    }
    if (count) {
      add("gauss.swm_unitarity", count, worst_swm, 1e-9);
      add("gauss.mw_unitarity", count, worst_mw, 1e-9);
      add("gauss.swm_inverse", count, worst_inverse, 1e-10);
    }
  }
  {
    Rng rng = rng_for("gauss.covariance");
    double worst = 0.0;
    int count = 0;
    GeneratorSamplingOptions opt;
    opt.entry_lo = -2.0;
    opt.entry_hi = 2.0;
    for (int n : low_dims) {
      for (int t = 0; t < 50; ++t, ++count) {
        const FreeGenerator gen = random_free_generator(rng, n, opt);
        const Mat S = free_from_generator(gen).entries();
        const GaussianState g = random_gaussian(rng, n);
        const PhaseSpacePoint z = random_phase_point(rng, n, -1.0, 1.0);
        const GaussianState lhs = gauss_quad_fourier(gen, gauss_hw(z, g));
        const PhaseSpacePoint Sz = PhaseSpacePoint::from_vector(S * z.as_vector());
        const GaussianState rhs = gauss_hw(Sz, gauss_quad_fourier(gen, g));
        worst = std::max(worst, probe_residual(lhs, rhs, rng, 10));
      }
    }
    if (count) add("gauss.covariance", count, worst, 1e-9);
  }
  {
    Rng rng = rng_for("gauss.maslov_proposition");
    double worst = 0.0;
    int count = 0;
    GeneratorSamplingOptions opt;
    opt.min_abs_det_s_minus_i = 0.05;
    opt.max_ms_norm = 10.0;
    for (int n : low_dims) {
      for (int t = 0; t < 50; ++t, ++count) {
        const FreeGenerator gen = random_free_generator(rng, n, opt);
        const GaussianState g = random_gaussian(rng, n);
        const GaussianState via_mw = mw_apply_gaussian(descriptor_from_generator(gen), g);
        const GaussianState via_swm = gauss_quad_fourier(gen, g);
        worst = std::max(worst, state_param_distance(via_mw, via_swm));
        worst = std::max(worst, probe_residual(via_mw, via_swm, rng, 5));
      }
    }
    if (count) add("gauss.maslov_proposition", count, worst, 1e-8);
  }

  // ---- operator_engine ------------------------------------------------------
  if (has_dim(1)) {
    const GridSpec spec(1, 12.0, 256);
    const GaussianState g0 = GaussianState::standard(1);
    {
      Rng rng = rng_for("grid.hw_cross_engine");
      double worst = 0.0;
      int count = 0;
      for (int t = 0; t < 6; ++t, ++count) {
        const GaussianState g = random_gaussian(rng, 1);
        const PhaseSpacePoint z = random_phase_point(rng, 1, -1.5, 1.5);
        const GridFunction lhs = hw_apply(z, GridFunction::sample(g, spec));
        const GridFunction rhs = GridFunction::sample(gauss_hw(z, g), spec);
        worst = std::max(worst, max_abs_diff(lhs, rhs));
      }
      add("grid.hw_cross_engine", count, worst, 1e-6);
    }
    {
      Rng rng = rng_for("grid.noco_phases");
      // lattice-aligned shifts; boost-first vs shift-first differ by e^{i sigma}
      double worst = 0.0;
      const double d = spec.delta();
      const GridFunction f = GridFunction::sample(g0, spec);
      Vec xs(1), ps(1), zx(1), zp(1);
      xs << 32 * d;  // x-shift 3.0
      ps << 1.0;
      zx << 0.0;
      zp << 0.0;
      const PhaseSpacePoint shift{xs, zp};
      const PhaseSpacePoint boost{zx, ps};
      const double sig = symplectic_form(boost.as_vector(), shift.as_vector());
      GridFunction lhs = hw_apply(boost, hw_apply(shift, f));
      GridFunction rhs = hw_apply(shift, hw_apply(boost, f));
      rhs.samples() *= std::exp(Complex(0, sig));
      worst = std::max(worst, max_abs_diff(lhs, rhs));
      // composition law against the single translation
      const PhaseSpacePoint zsum{xs, ps};
      GridFunction sum = hw_apply(zsum, f);
      GridFunction prod = hw_apply(shift, hw_apply(boost, f));
      prod.samples() *=
          std::exp(Complex(0, -0.5 * symplectic_form(shift.as_vector(), boost.as_vector())));
      worst = std::max(worst, max_abs_diff(sum, prod));
      add("grid.noco_phases", 2, worst, 1e-8);
    }
    {
      Rng rng = rng_for("grid.swm_cross_engine");
      double worst_cross = 0.0, worst_norm = 0.0, worst_inv = 0.0, worst_fac = 0.0;
      int count = 0;
      for (int t = 0; t < 5; ++t, ++count) {
        const auto [gen, g] = draw_tame_grid_instance(rng, 1.8);
        const GridFunction f = GridFunction::sample(g, spec);
        const GridFunction direct = quad_fourier_grid(gen, f);
        worst_cross = std::max(
            worst_cross,
            max_abs_diff(direct, GridFunction::sample(gauss_quad_fourier(gen, g), spec)));
        worst_norm = std::max(worst_norm, std::abs(direct.norm() - f.norm()));
        worst_inv = std::max(
            worst_inv,
            max_abs_diff(quad_fourier_grid(inverse_generator(gen), direct), f));
        worst_fac = std::max(worst_fac, max_abs_diff(factored_apply(gen, f), direct));
      }
      // fixture: (0,1,0,0) sends g0 to e^{-i pi/4} g0
      {
        const FreeGenerator gen = fixture_generator(0, 1, 0, 0);
        const GridFunction out = quad_fourier_grid(gen, GridFunction::sample(g0, spec));
        GridFunction expect = GridFunction::sample(g0, spec);
        expect.samples() *= std::exp(Complex(0, -kPi / 4.0));
        worst_cross = std::max(worst_cross, max_abs_diff(out, expect));
        worst_fac = std::max(
            worst_fac, max_abs_diff(factored_apply(gen, GridFunction::sample(g0, spec)), out));
        ++count;
      }
      add("grid.swm_cross_engine", count, worst_cross, 1e-6);
      add("grid.swm_unitarity", count, worst_norm, 1e-6);
      add("grid.swm_inverse", count, worst_inv, 1e-5);
      add("grid.factored_vs_direct", count, worst_fac, 1e-6);
    }
    {
      Rng rng = rng_for("grid.covariance");
      double worst = 0.0;
      int count = 0;
      for (int t = 0; t < 4; ++t, ++count) {
        const auto [gen, g] = draw_tame_grid_instance(rng, 1.5);
        const Mat S = free_from_generator(gen).entries();
        const GridFunction f = GridFunction::sample(g, spec);
        PhaseSpacePoint z = random_phase_point(rng, 1, -1.0, 1.0);
        while (max_abs(Vec(S * z.as_vector())) > 2.0)
          z = random_phase_point(rng, 1, -1.0, 1.0);
        const GridFunction lhs = quad_fourier_grid(gen, hw_apply(z, f));
        const PhaseSpacePoint Sz = PhaseSpacePoint::from_vector(S * z.as_vector());
        const GridFunction rhs = hw_apply(Sz, quad_fourier_grid(gen, f));
        worst = std::max(worst, max_abs_diff(lhs, rhs));
      }
      add("grid.covariance", count, worst, 1e-5);
    }
    {
      // doubling N must reduce the swm error at least 4x (spectral accuracy)
      const FreeGenerator gen = fixture_generator(1.5, 0.6, -0.8, 0);
      const GaussianState g(CMat::Identity(1, 1) * Complex(0.3, 1.0),
                            (Vec(1) << 0.7).finished(), (Vec(1) << 3.0).finished(),
                            1.0);
      auto err_at = [&](int N) {
        const GridSpec s(1, 12.0, N);
        return max_abs_diff(quad_fourier_grid(gen, GridFunction::sample(g, s)),
                            GridFunction::sample(gauss_quad_fourier(gen, g), s));
      };
      const double coarse = err_at(64);
      const double fine = err_at(128);
      const double ratio_err = fine < 1e-11 ? 0.0 : 4.0 * fine / coarse;
      add("grid.quad_convergence", 2, ratio_err, 1.0);
    }
    {
      const GridSpec ps(2, 8.0, 128);
      const GridFunction a = GridFunction::from_function(ps, [](const Vec& z) {
        return Complex(std::exp(-0.5 * z.squaredNorm()), 0.0);
      });
      const GridFunction Fa = symplectic_fourier(a);
      const double gauss_err = max_abs_diff(Fa, a);  // self-reciprocal fixture
      const double invol_err = max_abs_diff(symplectic_fourier(Fa), a);
      add("grid.sympl_fourier_gaussian", 1, gauss_err, 1e-7);
      add("grid.sympl_fourier_involution", 1, invol_err, 1e-8);
    }
    {
      // rank-one kernel of the standard state: symbol 2 e^{-(x^2+p^2)}
      const GridSpec ks(2, 12.0, 256);
      const GridFunction K = GridFunction::from_function(ks, [&](const Vec& xy) {
        Vec a1(1), a2(1);
        a1 << xy(0);
        a2 << xy(1);
        return g0.evaluate(a1) * std::conj(g0.evaluate(a2));
      });
      const GridFunction sym = kernel_to_symbol(K);
      const GridFunction ref = GridFunction::from_function(ks, [](const Vec& z) {
        return Complex(2.0 * std::exp(-z.squaredNorm()), 0.0);
      });
      add("grid.kernel_wigner", 1, max_abs_diff(sym, ref), 1e-5);
    }
    {
      double worst = 0.0;
      const GridSpec ks(2, 12.0, 256);
      for (const FreeGenerator& gen :
           {fixture_generator(0, 1, 0, 0), fixture_generator(0, 2, 0, 0),
            fixture_generator(3, 1, 0, 0)}) {
        worst = std::max(worst, symbol_bridge_max_err(gen, ks, 3.0, 3.0));
      }
      add("grid.symbol_bridge", 3, worst, 1e-3);
    }
    {
      Rng rng = rng_for("grid.mw_matrix_element");
      double worst = 0.0;
      int count = 0;
      MatrixElementOptions mopt;  // spec default: 80 nodes per axis
      for (int n : low_dims) {
        for (int t = 0; t < 20; ++t, ++count) {
          const MWQuadInstance inst = draw_tame_mw_instance(rng, n, 5.0);
          const Complex quad = mw_matrix_element(inst.desc, inst.bra, inst.ket, mopt);
          const Complex closed = gauss_inner(inst.bra, mw_apply_gaussian(inst.desc, inst.ket));
          worst = std::max(worst, std::abs(quad - closed));
        }
      }
      add("grid.mw_matrix_element", count, worst, 1e-6);
    }
    {
      Rng rng = rng_for("grid.alt_forms");
      double worst = 0.0;
      int count = 0;
      MatrixElementOptions mopt;
      mopt.nodes_per_axis = 96;
      for (int t = 0; t < 50; ++t, ++count) {
        const MWQuadInstance inst = draw_tame_mw_instance(rng, 1, 5.0);
        const auto forms = alt_form_check(inst.desc, inst.ket, inst.bra, mopt);
        worst = std::max({worst, std::abs(forms[0] - forms[1]),
                          std::abs(forms[0] - forms[2]), std::abs(forms[1] - forms[2])});
      }
      // fixtures: S = J (value e^{-i pi/4}) and S = -I (value 1) on g0
      {
        const auto fj = alt_form_check(descriptor_from_generator(fixture_generator(0, 1, 0, 0)),
                                       g0, g0, mopt);
        const Complex want = std::exp(Complex(0, -kPi / 4.0));
        for (const Complex& v : fj) worst = std::max(worst, std::abs(v - want));
        const auto fm = alt_form_check(
            make_descriptor(SymplecticMatrix(-Mat::Identity(2, 2)), 0), g0, g0, mopt);
        for (const Complex& v : fm) worst = std::max(worst, std::abs(v - 1.0));
        count += 2;
      }
      add("grid.alt_forms", count, worst, 1e-6);
    }
  }
  if (has_dim(2)) {
    // n=2 wavefunction grid: cross-engine + diagonal-L factored chain; gentle
    // parameters keep the x'-integrand bandlimited within the N=64 lattice
    const GridSpec spec(2, 8.0, 64);
    Rng rng = rng_for("grid.n2_cross_engine");
    double worst = 0.0;
    const Mat P = rng.symmetric_matrix(2, -0.4, 0.4);
    Mat L = Mat::Zero(2, 2);
    L(0, 0) = 1.2;
    L(1, 1) = -0.9;
    const Mat Q = rng.symmetric_matrix(2, -0.4, 0.4);
    const FreeGenerator gen(P, L, Q, m_choices(L).first);
    const CMat gamma = rng.symmetric_matrix(2, -0.25, 0.25).cast<Complex>() +
                       Complex(0, 1) * (Mat::Identity(2, 2) +
                                        rng.symmetric_matrix(2, -0.1, 0.1)).cast<Complex>();
    const GaussianState g(gamma, rng.vector(2, -0.5, 0.5), rng.vector(2, -0.8, 0.8), 1.0);
    const GridFunction f = GridFunction::sample(g, spec);
    const GridFunction direct = quad_fourier_grid(gen, f);
    worst = std::max(worst,
                     max_abs_diff(direct, GridFunction::sample(gauss_quad_fourier(gen, g), spec)));
    worst = std::max(worst, max_abs_diff(factored_apply(gen, f), direct));
    add("grid.n2_cross_engine", 1, worst, 1e-6);
  }

  // ---- decomposition --------------------------------------------------------
  {
    Rng rng = rng_for("decomp.reconstruction");
    double worst_rec = 0.0, worst_lambda = 0.0;
    int violations = 0;
    int count = 0;
    for (int n : dims) {
      for (int t = 0; t < 500; ++t, ++count) {
        const SymplecticMatrix S = random_symplectic(rng, n);
        const FreePair pair = factor_free_pair(S, rng.bits());
        worst_rec = std::max(worst_rec, max_abs(pair_product(pair) - S.entries()));
        for (const FreeGenerator* g : {&pair.first, &pair.second}) {
          const Mat Sg = free_from_generator(*g, 1e-7).entries();
          if (std::abs(Sg.topRightCorner(n, n).determinant()) <= 1e-8) ++violations;
          if (std::abs((Sg - Mat::Identity(2 * n, 2 * n)).determinant()) <= 1e-8)
            ++violations;
        }
      }
      // fixtures: identity and the shear [[1,1],[0,1]] at n = 1
      if (n == 1) {
        for (const Mat& M :
             {Mat(Mat::Identity(2, 2)), Mat((Mat(2, 2) << 1, 1, 0, 1).finished())}) {
          const FreePair pair = factor_free_pair(SymplecticMatrix(M), 0);
          worst_rec = std::max(worst_rec, max_abs(pair_product(pair) - M));
          ++count;
        }
      }
    }
    add("decomp.reconstruction", count, worst_rec, 1e-8);
    add("decomp.factors_nondegenerate", count, static_cast<double>(violations), 0.5);

    Rng rng2 = rng_for("decomp.lambda_product");
    int count2 = 0;
    int shift_violations = 0;
    for (int n : dims) {
      for (int t = 0; t < 70; ++t, ++count2) {
        const FreeGenerator first = degenerate_generator(rng2, n);
        const FreeGenerator second = random_free_generator(rng2, n);
        const FreePair raw{first, second, 0.0};
        const Mat before = pair_product(raw);
        const FreePair shifted = lambda_shift(raw);
        worst_lambda = std::max(worst_lambda, max_abs(pair_product(shifted) - before));
        if (std::abs(shifted.first.index_matrix().determinant()) <= 1e-8)
          ++shift_violations;
        if (std::abs(shifted.second.index_matrix().determinant()) <= 1e-8)
          ++shift_violations;
      }
    }
    add("decomp.lambda_product", count2, worst_lambda, 1e-10);
    add("decomp.lambda_nondegenerate", count2, static_cast<double>(shift_violations), 0.5);
  }
  {
    Rng rng = rng_for("decomp.cocycle");
    double worst = 0.0;
    int count = 0;
    GeneratorSamplingOptions opt;
    opt.entry_lo = -2.0;
    opt.entry_hi = 2.0;
    opt.min_abs_det_s_minus_i = 0.1;
    for (int n : low_dims) {
      for (int t = 0; t < 50; ++t) {
        const FreeGenerator g1 = random_free_generator(rng, n, opt);
        const FreeGenerator g2 = random_free_generator(rng, n, opt);
        const SymplecticMatrix S1 = free_from_generator(g1);
        const SymplecticMatrix S2 = free_from_generator(g2);
        const Mat S12 = S1.entries() * S2.entries();
        if (std::abs((S12 - Mat::Identity(2 * n, 2 * n)).determinant()) < 1e-3) continue;
        const int nu12 = parity_consistent_nu(SymplecticMatrix(S12));
        const CocycleResult r =
            cocycle_sign(S1, S2, mw_index(g1).nu, mw_index(g2).nu, nu12);
        const double err = std::max(std::abs(std::abs(r.ratio) - 1.0),
                                    std::min(std::abs(r.ratio - 1.0),
                                             std::abs(r.ratio + 1.0)));
        worst = std::max(worst, err);
        ++count;
      }
    }
    if (count) add("decomp.cocycle", count, worst, 1e-4);
  }

  std::sort(report.cases.begin(), report.cases.end(),
            [](const PropertyResult& a, const PropertyResult& b) {
              return a.property_id < b.property_id;
            });
  report.overall = std::all_of(report.cases.begin(), report.cases.end(),
                               [](const PropertyResult& c) { return c.passed; });
  return report;
}

}  // namespace mwkit
