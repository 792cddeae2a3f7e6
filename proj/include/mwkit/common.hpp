// common.hpp — scalar/matrix aliases, error taxonomy, tolerance policy
//
// Units: hbar = 1 throughout; phase-space points are z = (x, p) with the
// position block first.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace mwkit {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr Complex kImag{0.0, 1.0};

// ---------------------------------------------------------------------------
// Errors. MathError = a mathematical precondition fails (CLI exit code 1),
// UsageError = malformed input or request (CLI exit code 2).
// ---------------------------------------------------------------------------

struct MathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// matrix is not square / dimensions incompatible / odd-dimensional
struct DimensionError : MathError {
  using MathError::MathError;
};

// det B = 0: the matrix has no generating quadratic form
struct NotFreeError : MathError {
  using MathError::MathError;
};

// det(S - I) = 0: the Cayley matrix and the twisted-symbol operator are undefined
struct EigenvalueOneError : MathError {
  using MathError::MathError;
};

struct InvalidGeneratorError : MathError {
  using MathError::MathError;
};

struct InvalidParameterError : MathError {
  using MathError::MathError;
};

// stored index m contradicts the sign of det L
struct ParityError : MathError {
  using MathError::MathError;
};

struct DivergentIntegralError : MathError {
  using MathError::MathError;
};

struct QuadratureError : MathError {
  using MathError::MathError;
};

struct UnsupportedError : MathError {
  using MathError::MathError;
};

struct ExhaustedSearchError : MathError {
  using MathError::MathError;
};

// unit-modulus ratio lands away from {+1, -1}: index bookkeeping is wrong
struct InconsistentIndexError : MathError {
  using MathError::MathError;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Tolerance policy: structural membership checks 1e-10, round trips 1e-9,
// determinant comparisons 1e-8 relative, |det| degeneracy threshold 1e-12.
// ---------------------------------------------------------------------------

inline constexpr double kTolStructural = 1e-10;
inline constexpr double kTolRoundTrip = 1e-9;
inline constexpr double kTolSymmetry = 1e-9;
inline constexpr double kTolDetRel = 1e-8;
inline constexpr double kTolDegenerate = 1e-12;
inline constexpr double kTolInertiaZero = 1e-10;

// MWKIT_TOL_SCALE loosens verification gates on imprecise CI hardware.
// It scales reported pass/fail tolerances, never the math itself.
inline double tol_scale() {
  if (const char* s = std::getenv("MWKIT_TOL_SCALE")) {
    char* end = nullptr;
    double v = std::strtod(s, &end);
    if (end != s && v > 0.0 && std::isfinite(v)) return v;
  }
  return 1.0;
}

// ---------------------------------------------------------------------------
// Small helpers
// ---------------------------------------------------------------------------

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// unconjugated pairing <u, v> = sum_i u_i v_i (complex-bilinear, not Hermitian)
inline Complex bilinear(const CVec& u, const CVec& v) {
  return u.cwiseProduct(v).sum();
}

inline double bilinear(const Vec& u, const Vec& v) { return u.dot(v); }

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> symmetrize(
    const Eigen::MatrixBase<Derived>& m) {
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> e = m;
  return 0.5 * (e + e.transpose()).eval();
}

template <typename MatT>
double asymmetry(const MatT& m) {
  return max_abs(m - m.transpose());
}

// i^k for integer k (exact values, k any sign)
inline Complex i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

inline int mod4(int k) { return ((k % 4) + 4) % 4; }

}  // namespace mwkit
