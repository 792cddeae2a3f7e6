// gaussian.hpp — complex Gaussian wavefunctions and the closed-form action of
// the three operator families on them: Heisenberg-Weyl translations T(z0),
// quadratic Fourier transforms S_{W,m}, and twisted-symbol operators R(S).
//
// A state is psi(x) = amp * exp((i/2) <Gamma (x-c), x-c> + i <q, x-c>) with
// Gamma complex symmetric, Im Gamma positive definite.  Internally most
// algebra runs on the "flat" form psi(x) = A * exp((i/2)<Gamma x,x> + i<w,x>)
// with complex linear coefficient w = q - Gamma c.
//
// All Gaussian integrals reduce to
//   int exp((i/2)<M z,z> + i<b,z>) dz
//     = (2 pi)^{d/2} det(-iM)^{-1/2} exp(-(i/2) <M^{-1} b, b>),
// where det(-iM)^{-1/2} is continued continuously from M = iI.  On real
// invertible M this branch reproduces the Fresnel phase e^{(i pi/4) sgn M}.

#pragma once

#include "mwkit/common.hpp"
#include "mwkit/mw_descriptor.hpp"
#include "mwkit/symplectic.hpp"

namespace mwkit {

// ---------------------------------------------------------------------------
// Phase-space points
// ---------------------------------------------------------------------------

struct PhaseSpacePoint {
  Vec x;
  Vec p;

  int n() const {
    if (x.size() != p.size() || x.size() == 0)
      throw DimensionError("PhaseSpacePoint: position/momentum size mismatch");
    return static_cast<int>(x.size());
  }

  Vec as_vector() const {
    Vec z(2 * n());
    z << x, p;
    return z;
  }

  static PhaseSpacePoint from_vector(const Vec& z) {
    if (z.size() % 2 != 0 || z.size() == 0)
      throw DimensionError("PhaseSpacePoint: vector must have even size");
    const int n = static_cast<int>(z.size()) / 2;
    return {z.head(n), z.tail(n)};
  }
};

// ---------------------------------------------------------------------------
// Branch-tracked square root of det(-iM)
// ---------------------------------------------------------------------------

// Product of principal square roots of the eigenvalues of -iM.  For
// Im M >= 0 every eigenvalue of -iM has nonnegative real part, so the
// principal roots vary continuously and the product is the analytic
// continuation from M = iI (where the value is 1).
inline Complex sqrt_det_minus_i(const CMat& M) {
  if (M.rows() != M.cols()) throw DimensionError("sqrt_det_minus_i: not square");
  Eigen::ComplexEigenSolver<CMat> es(Complex(0, -1) * M, false);
  if (es.info() != Eigen::Success)
    throw InvalidParameterError("sqrt_det_minus_i: eigensolver failed");
  Complex half_log_det = 0.0;
  for (int i = 0; i < M.rows(); ++i) {
    const Complex lam = es.eigenvalues()(i);
    if (std::abs(lam) < 1e-300)
      throw InvalidParameterError("sqrt_det_minus_i: singular quadratic form");
    if (lam.real() < -1e-9 * (1.0 + std::abs(lam)))
      throw DivergentIntegralError(
          "sqrt_det_minus_i: eigenvalue in the left half-plane, branch undefined");
    half_log_det += 0.5 * std::log(lam);
  }
  return std::exp(half_log_det);
}

// int exp((i/2)<M z,z> + i<b,z>) dz over R^d.  Requires Im M >= 0 (decay or
// pure oscillation) and M invertible; for real M this is the distributional
// Fresnel value.
inline Complex complex_gaussian_integral(const CMat& M, const CVec& b) {
  const int d = static_cast<int>(M.rows());
  if (M.rows() != M.cols() || b.size() != d)
    throw DimensionError("complex_gaussian_integral: dimension mismatch");
  if (asymmetry(M) > 1e-10)
    throw InvalidParameterError("complex_gaussian_integral: M must be symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> es(Mat(M.imag()), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9)
    throw DivergentIntegralError(
        "complex_gaussian_integral: Im M has a negative eigenvalue, integrand grows");
  const Complex sdm = sqrt_det_minus_i(M);
  const CVec Minv_b = M.fullPivLu().solve(b);
  return std::pow(2.0 * kPi, 0.5 * d) / sdm *
         std::exp(Complex(0, -0.5) * bilinear(Minv_b, b));
}

// ---------------------------------------------------------------------------
// Fresnel formula for real symmetric invertible M:
//   (2 pi)^{-n/2} int e^{-i<p,x>} e^{(i/2)<Mx,x>} dx
//     = |det M|^{-1/2} e^{(i pi/4) sgn M} e^{-(i/2) <M^{-1} p, p>}
// ---------------------------------------------------------------------------

struct FresnelResult {
  double modulus_factor = 0.0;  // |det M|^{-1/2}
  double phase_index = 0.0;     // sgn M (integer-valued)
  Mat inverse_matrix;

  Complex value_at(const Vec& p) const {
    return modulus_factor * std::exp(Complex(0, kPi / 4.0 * phase_index)) *
           std::exp(Complex(0, -0.5) * p.dot(inverse_matrix * p));
  }
};

inline FresnelResult fresnel_closed_form(const Mat& M) {
  if (M.rows() != M.cols() || M.rows() == 0)
    throw DimensionError("fresnel_closed_form: M must be square");
  if (asymmetry(M) > 1e-10)
    throw InvalidParameterError("fresnel_closed_form: M must be symmetric");
  const double det = M.determinant();
  if (std::abs(det) <= kTolDegenerate)
    throw InvalidParameterError("fresnel_closed_form: det M = 0");
  FresnelResult out;
  out.modulus_factor = 1.0 / std::sqrt(std::abs(det));
  out.phase_index = static_cast<double>(inertia_of(symmetrize(M)).sgn());
  out.inverse_matrix = symmetrize(M.inverse());
  return out;
}

// ---------------------------------------------------------------------------
// GaussianState
// ---------------------------------------------------------------------------

class GaussianState {
 public:
  GaussianState(CMat gamma, Vec center, Vec momentum, Complex amp)
      : gamma_(std::move(gamma)),
        center_(std::move(center)),
        momentum_(std::move(momentum)),
        amp_(amp) {
    n_ = static_cast<int>(center_.size());
    if (gamma_.rows() != n_ || gamma_.cols() != n_ || momentum_.size() != n_ || n_ == 0)
      throw DimensionError("GaussianState: inconsistent dimensions");
    if (asymmetry(gamma_) > 1e-12)
      throw InvalidParameterError("GaussianState: Gamma must be symmetric");
    gamma_ = symmetrize(gamma_);
    Eigen::SelfAdjointEigenSolver<Mat> es(Mat(gamma_.imag()), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= 0.0)
      throw InvalidParameterError("GaussianState: Im Gamma must be positive definite");
  }

  // Gamma = iI, amp = pi^{-n/4}: the unit-norm standard state
  static GaussianState standard(int n) {
    return GaussianState(Complex(0, 1) * CMat::Identity(n, n), Vec::Zero(n),
                         Vec::Zero(n), std::pow(kPi, -0.25 * n));
  }

  int n() const { return n_; }
  const CMat& gamma() const { return gamma_; }
  const Vec& center() const { return center_; }
  const Vec& momentum() const { return momentum_; }
  Complex amp() const { return amp_; }

  Complex evaluate(const Vec& x) const {
    if (x.size() != n_) throw DimensionError("GaussianState::evaluate: x size");
    const CVec u = (x - center_).cast<Complex>();
    return amp_ * std::exp(Complex(0, 0.5) * bilinear(CVec(gamma_ * u), u) +
                           Complex(0, 1) * momentum_.cast<Complex>().cwiseProduct(u).sum());
  }

  // flat form: psi(x) = flat_amp * exp((i/2)<Gamma x, x> + i <w, x>)
  CVec flat_linear() const {
    return momentum_.cast<Complex>() - gamma_ * center_.cast<Complex>();
  }

  Complex flat_amp() const {
    const CVec c = center_.cast<Complex>();
    return amp_ * std::exp(Complex(0, 0.5) * bilinear(CVec(gamma_ * c), c) -
                           Complex(0, 1) * momentum_.dot(center_));
  }

  // Rebuild (center, momentum, amp) from the flat parametrization: the real
  // center/momentum solving w = q - Gamma c exist and are unique because
  // Im Gamma is invertible.
  static GaussianState from_flat(const CMat& gamma, const CVec& w, Complex flat_amp) {
    const int n = static_cast<int>(w.size());
    if (gamma.rows() != n || gamma.cols() != n)
      throw DimensionError("GaussianState::from_flat: dimension mismatch");
    const Mat im_gamma = gamma.imag();
    const Vec c = -im_gamma.fullPivLu().solve(Vec(w.imag()));
    const Vec q = Vec(w.real()) + Mat(gamma.real()) * c;
    const CVec cc = c.cast<Complex>();
    const Complex amp = flat_amp * std::exp(Complex(0, -0.5) * bilinear(CVec(gamma * cc), cc) +
                                            Complex(0, 1) * q.dot(c));
    return GaussianState(gamma, c, q, amp);
  }

 private:
  CMat gamma_;
  Vec center_, momentum_;
  Complex amp_;
  int n_ = 0;
};

// <g1, g2> = int conj(g1(x)) g2(x) dx, Hermitian in the physics convention
// (antilinear in the first slot)
inline Complex gauss_inner(const GaussianState& g1, const GaussianState& g2) {
  if (g1.n() != g2.n()) throw DimensionError("gauss_inner: dimension mismatch");
  const CMat M = g2.gamma() - g1.gamma().conjugate();
  const CVec b = g2.flat_linear() - g1.flat_linear().conjugate();
  return std::conj(g1.flat_amp()) * g2.flat_amp() * complex_gaussian_integral(M, b);
}

inline double gauss_norm(const GaussianState& g) {
  return std::sqrt(std::max(0.0, gauss_inner(g, g).real()));
}

// L2 distance including global phase, entirely in closed form.  The
// cancellation in ||u||^2 + ||v||^2 - 2 Re<u,v> floors this metric near
// sqrt(machine epsilon); use state_param_distance for sharper comparisons.
inline double gauss_l2_distance(const GaussianState& g1, const GaussianState& g2) {
  const double d2 = gauss_inner(g1, g1).real() + gauss_inner(g2, g2).real() -
                    2.0 * gauss_inner(g1, g2).real();
  return std::sqrt(std::max(0.0, d2));
}

// The (Gamma, center, momentum, amp) parametrization of a Gaussian is
// unique, so equality of states is equality of parameters; this metric has
// no cancellation floor.
inline double state_param_distance(const GaussianState& a, const GaussianState& b) {
  if (a.n() != b.n()) throw DimensionError("state_param_distance: dimension mismatch");
  double d = max_abs(CMat(a.gamma() - b.gamma()));
  d = std::max(d, max_abs(Vec(a.center() - b.center())));
  d = std::max(d, max_abs(Vec(a.momentum() - b.momentum())));
  return std::max(d, std::abs(a.amp() - b.amp()));
}

// ---------------------------------------------------------------------------
// Operator actions
// ---------------------------------------------------------------------------

// T(z0) f(x) = exp(i(<p0,x> - (1/2)<p0,x0>)) f(x - x0); on a Gaussian this
// shifts center and momentum and multiplies amp by a phase.
inline GaussianState gauss_hw(const PhaseSpacePoint& z0, const GaussianState& g) {
  if (z0.n() != g.n()) throw DimensionError("gauss_hw: dimension mismatch");
  const Complex phase =
      std::exp(Complex(0, 1) * (z0.p.dot(g.center()) + 0.5 * z0.p.dot(z0.x)));
  return GaussianState(g.gamma(), g.center() + z0.x, g.momentum() + z0.p,
                       g.amp() * phase);
}

// S_{W,m} f(x) = (2 pi i)^{-n/2} i^m sqrt(|det L|) int e^{i W(x,x')} f(x') dx'
// with W(x,x') = (1/2)<Px,x> - <Lx,x'> + (1/2)<Qx',x'>.  Completing the
// square in x' gives the output Gaussian exactly.
inline GaussianState gauss_quad_fourier(const FreeGenerator& gen, const GaussianState& g) {
  const int n = g.n();
  if (gen.n() != n) throw DimensionError("gauss_quad_fourier: dimension mismatch");
  const CMat L = gen.L().cast<Complex>();
  const CMat M = gen.Q().cast<Complex>() + g.gamma();
  const auto lu = M.fullPivLu();
  const CMat Minv_L = lu.solve(L);
  const CVec w = g.flat_linear();
  const CVec Minv_w = lu.solve(w);

  const CMat gamma_out = symmetrize(CMat(gen.P().cast<Complex>() - L.transpose() * Minv_L));
  const CVec w_out = L.transpose() * Minv_w;
  // (2 pi)^{-n/2} prefactor cancels against the (2 pi)^{n/2} of the integral
  const Complex c0 = std::exp(Complex(0, -kPi * n / 4.0)) * i_power(gen.m()) *
                     std::sqrt(std::abs(gen.det_L()));
  const Complex amp_out = c0 * g.flat_amp() / sqrt_det_minus_i(M) *
                          std::exp(Complex(0, -0.5) * bilinear(Minv_w, w));
  return GaussianState::from_flat(gamma_out, w_out, amp_out);
}

// R(S) f = (2 pi)^{-n} i^nu |det(S-I)|^{-1/2}
//            int exp((i/2)<M_S z0, z0>) (T(z0) f) d^{2n} z0.
// For a Gaussian f the z0 integral is again Gaussian; both the quadratic
// phase of M_S and the translation bookkeeping land in one 2n-dimensional
// complex quadratic form.
inline GaussianState mw_apply_gaussian(const MWDescriptor& desc, const GaussianState& g) {
  const int n = g.n();
  if (desc.n != n) throw DimensionError("mw_apply_gaussian: dimension mismatch");
  if (std::abs(desc.det_s_minus_i) <= kTolDegenerate)
    throw EigenvalueOneError("mw_apply_gaussian: det(S-I) = 0");

  const CMat gamma = g.gamma();
  const CVec w = g.flat_linear();

  // quadratic form in z0 = (x0, p0): M_S + [[Gamma, -I/2], [-I/2, 0]]
  CMat C = desc.M_S.cast<Complex>();
  C.topLeftCorner(n, n) += gamma;
  C.topRightCorner(n, n) -= 0.5 * CMat::Identity(n, n);
  C.bottomLeftCorner(n, n) -= 0.5 * CMat::Identity(n, n);

  // linear coefficient d(x) = d0 + D x with d0 = (-w, 0), D = [[-Gamma],[I]]
  CVec d0 = CVec::Zero(2 * n);
  d0.head(n) = -w;
  CMat D(2 * n, n);
  D.topRows(n) = -gamma;
  D.bottomRows(n) = CMat::Identity(n, n);

  const auto lu = C.fullPivLu();
  if (!lu.isInvertible())
    throw EigenvalueOneError("mw_apply_gaussian: degenerate z0 quadratic form");
  const CMat Cinv_D = lu.solve(D);
  const CVec Cinv_d0 = lu.solve(d0);

  const CMat gamma_out = symmetrize(CMat(gamma - D.transpose() * Cinv_D));
  const CVec w_out = w - D.transpose() * Cinv_d0;
  const Complex amp_out = g.flat_amp() * i_power(desc.nu) /
                          std::sqrt(std::abs(desc.det_s_minus_i)) / sqrt_det_minus_i(C) *
                          std::exp(Complex(0, -0.5) * bilinear(Cinv_d0, d0));
  return GaussianState::from_flat(gamma_out, w_out, amp_out);
}

}  // namespace mwkit
