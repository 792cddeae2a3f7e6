// matrix_elements.hpp — matrix elements <bra| R(S) |ket> of twisted-symbol
// operators between Gaussian states, by direct 2n-dimensional quadrature.
//
// The integrand exp((i/2)<M_S z0,z0>) <bra, T(z0) ket> is exp of a complex
// quadratic in z0 whose imaginary part is positive definite (the overlap of
// two Gaussians decays in both position and momentum displacement), so the
// z0 integral converges absolutely and tensorized Gauss-Hermite applies.
// Matrix elements, not state values, are the numerically safe channel: the
// operator integrand applied pointwise does not decay, the bracketed one
// does.

#pragma once

#include "mwkit/common.hpp"
#include "mwkit/gaussian.hpp"
#include "mwkit/mw_descriptor.hpp"
#include "mwkit/quadrature.hpp"

#include <array>

namespace mwkit {

// ---------------------------------------------------------------------------
// Affine-in-z0 bookkeeping: V(z) = v0 + vz z, and an exponent accumulator
// (i/2)<C z, z> + i<d, z> + e built from bilinear terms.
// ---------------------------------------------------------------------------

struct AffineVec {
  CVec v0;
  CMat vz;  // value_dim x zdim

  static AffineVec constant(const CVec& v, int zdim) {
    return {v, CMat::Zero(v.size(), zdim)};
  }
  static AffineVec linear(const CMat& coeffs) {
    return {CVec::Zero(coeffs.rows()), coeffs};
  }
  CVec at(const Vec& z) const { return v0 + vz * z.cast<Complex>(); }
};

inline AffineVec affine_apply(const CMat& M, const AffineVec& a) {
  return {M * a.v0, M * a.vz};
}

inline AffineVec operator+(const AffineVec& a, const AffineVec& b) {
  return {a.v0 + b.v0, a.vz + b.vz};
}

inline AffineVec operator-(const AffineVec& a, const AffineVec& b) {
  return {a.v0 - b.v0, a.vz - b.vz};
}

struct ExpQuadratic {
  CMat C;
  CVec d;
  Complex e;

  explicit ExpQuadratic(int zdim)
      : C(CMat::Zero(zdim, zdim)), d(CVec::Zero(zdim)), e(0.0) {}

  // adds alpha * <U(z), V(z)> (unconjugated pairing) to the exponent
  void add_bilinear(Complex alpha, const AffineVec& U, const AffineVec& V) {
    e += alpha * bilinear(U.v0, V.v0);
    // i<d,z> picks up alpha (Vz^T U0 + Uz^T V0)^T z
    d += Complex(0, -1) * alpha * (V.vz.transpose() * U.v0 + U.vz.transpose() * V.v0);
    C += Complex(0, -2) * alpha * symmetrize(CMat(U.vz.transpose() * V.vz));
  }

  void add_constant(Complex c) { e += c; }

  Complex value_at(const Vec& z) const {
    const CVec zc = z.cast<Complex>();
    return Complex(0, 0.5) * bilinear(CVec(C * zc), zc) + Complex(0, 1) * bilinear(d, zc) + e;
  }
};

// ---------------------------------------------------------------------------
// Flat Gaussian state with z0-dependent translation data
// ---------------------------------------------------------------------------

namespace detail {

struct SymbolicFlatState {
  CMat gamma;       // unchanged by translations
  AffineVec w;      // flat linear coefficient
  ExpQuadratic log_amp;

  SymbolicFlatState(const GaussianState& g, int zdim)
      : gamma(g.gamma()),
        w(AffineVec::constant(g.flat_linear(), zdim)),
        log_amp(zdim) {
    log_amp.add_constant(std::log(g.flat_amp()));
  }

  // apply T((xi, pi)): w += pi - Gamma xi,
  // log_amp += (i/2)<Gamma xi, xi> - (i/2)<pi, xi> - i<w, xi>
  void translate(const AffineVec& xi, const AffineVec& pi_) {
    log_amp.add_bilinear(Complex(0, 0.5), affine_apply(gamma, xi), xi);
    log_amp.add_bilinear(Complex(0, -0.5), pi_, xi);
    log_amp.add_bilinear(Complex(0, -1.0), w, xi);
    w = w + pi_ - affine_apply(gamma, xi);
  }
};

// exponent of <bra, state(z0)> as a function of z0
inline ExpQuadratic overlap_exponent(const GaussianState& bra,
                                     const SymbolicFlatState& st) {
  const CMat M0 = st.gamma - bra.gamma().conjugate();
  const AffineVec b = st.w - AffineVec::constant(bra.flat_linear().conjugate(),
                                                 static_cast<int>(st.w.vz.cols()));
  ExpQuadratic out = st.log_amp;
  out.add_bilinear(Complex(0, -0.5), affine_apply(CMat(M0.fullPivLu().inverse()), b), b);
  const int n = bra.n();
  out.add_constant(std::conj(std::log(bra.flat_amp())) + 0.5 * n * std::log(2.0 * kPi) -
                   std::log(sqrt_det_minus_i(M0)));
  return out;
}

}  // namespace detail

// exponent of <bra, T(z0) ket> as a complex quadratic in z0 = (x0, p0)
inline ExpQuadratic hw_overlap_quadratic(const GaussianState& bra,
                                         const GaussianState& ket) {
  const int n = ket.n();
  if (bra.n() != n) throw DimensionError("hw_overlap_quadratic: dimension mismatch");
  detail::SymbolicFlatState st(ket, 2 * n);
  CMat ex = CMat::Zero(n, 2 * n);
  ex.leftCols(n) = CMat::Identity(n, n);
  CMat ep = CMat::Zero(n, 2 * n);
  ep.rightCols(n) = CMat::Identity(n, n);
  st.translate(AffineVec::linear(ex), AffineVec::linear(ep));
  return detail::overlap_exponent(bra, st);
}

struct MatrixElementOptions {
  int nodes_per_axis = 80;
  bool refine_check = true;  // re-run with +8 nodes per axis
  double refine_tol = 1e-5;
};

// <bra| R(S) |ket> = norm_factor * i^nu *
//   int exp((i/2)<M_S z0,z0>) <bra, T(z0) ket> d^{2n} z0
inline Complex mw_matrix_element(const MWDescriptor& desc, const GaussianState& bra,
                                 const GaussianState& ket,
                                 const MatrixElementOptions& opt = {}) {
  const int n = ket.n();
  if (desc.n != n || bra.n() != n)
    throw DimensionError("mw_matrix_element: dimension mismatch");
  if (std::abs(desc.det_s_minus_i) <= kTolDegenerate)
    throw EigenvalueOneError("mw_matrix_element: det(S-I) = 0");

  ExpQuadratic q = hw_overlap_quadratic(bra, ket);
  q.C += desc.M_S.cast<Complex>();

  const Complex pref = desc.norm_factor * i_power(desc.nu);
  const Complex coarse = pref * gh_integrate_exp_quadratic(q.C, q.d, q.e, opt.nodes_per_axis);
  if (!opt.refine_check) return coarse;
  const Complex fine =
      pref * gh_integrate_exp_quadratic(q.C, q.d, q.e, opt.nodes_per_axis + 8);
  if (std::abs(fine - coarse) > opt.refine_tol)
    throw QuadratureError("mw_matrix_element: refinement changed the value by " +
                          std::to_string(std::abs(fine - coarse)));
  return fine;
}

// The same matrix element through the three equivalent integral forms:
//   [0] exp((i/2)<M_S z0,z0>) T(z0), prefactor |det(S-I)|^{-1/2}
//   [1] exp(-(i/2)sigma(S u,u)) T((S-I)u), prefactor |det(S-I)|^{+1/2}
//   [2] T(S u) T(-u), prefactor |det(S-I)|^{+1/2}
// Form [1] carries the Jacobian |det(S-I)| of the substitution
// z0 = (S-I)u relative to form [0].
inline std::array<Complex, 3> alt_form_check(const MWDescriptor& desc,
                                             const GaussianState& ket,
                                             const GaussianState& bra,
                                             const MatrixElementOptions& opt = {}) {
  const int n = ket.n();
  if (desc.n != n || bra.n() != n) throw DimensionError("alt_form_check: dimension mismatch");

  MatrixElementOptions single = opt;
  single.refine_check = false;
  const Complex v0 = mw_matrix_element(desc, bra, ket, single);

  const Mat& S = desc.S.entries();
  const double det_pow_half = std::sqrt(std::abs(desc.det_s_minus_i));
  const Complex pref = std::pow(2.0 * kPi, -n) * i_power(desc.nu) * det_pow_half;

  const CMat Sc = S.cast<Complex>();
  const CMat SmI = Sc - CMat::Identity(2 * n, 2 * n);

  // form 1: translate by (S-I)u, extra phase -(i/2)<J S u, u>
  detail::SymbolicFlatState st1(ket, 2 * n);
  const AffineVec zeta = AffineVec::linear(SmI);
  st1.translate({zeta.v0.head(n), zeta.vz.topRows(n)},
                {zeta.v0.tail(n), zeta.vz.bottomRows(n)});
  ExpQuadratic q1 = detail::overlap_exponent(bra, st1);
  const CMat JS = standard_J(n).cast<Complex>() * Sc;
  const AffineVec u = AffineVec::linear(CMat::Identity(2 * n, 2 * n));
  q1.add_bilinear(Complex(0, -0.5), affine_apply(JS, u), u);
  const Complex v1 = pref * gh_integrate_exp_quadratic(q1.C, q1.d, q1.e, opt.nodes_per_axis);

  // form 2: T(S u) then T(-u), the two translations composed explicitly
  detail::SymbolicFlatState st2(ket, 2 * n);
  const AffineVec mu = AffineVec::linear(CMat(-CMat::Identity(2 * n, 2 * n)));
  st2.translate({mu.v0.head(n), mu.vz.topRows(n)}, {mu.v0.tail(n), mu.vz.bottomRows(n)});
  const AffineVec su = AffineVec::linear(Sc);
  st2.translate({su.v0.head(n), su.vz.topRows(n)}, {su.v0.tail(n), su.vz.bottomRows(n)});
  ExpQuadratic q2 = detail::overlap_exponent(bra, st2);
  const Complex v2 = pref * gh_integrate_exp_quadratic(q2.C, q2.d, q2.e, opt.nodes_per_axis);

  return {v0, v1, v2};
}

}  // namespace mwkit
