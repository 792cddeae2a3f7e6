// symplectic.hpp — Sp(n) membership, free generating forms, the Cayley-type
// parametrization M_S = (1/2) J (S+I)(S-I)^{-1}, and the determinant
// factorization det(S_W - I) = (-1)^n det(L^{-1}) det(P + Q - L - L^T).
//
// Conventions: z = (x, p), sigma(z, z') = <J z, z'> = <p, x'> - <p', x>,
// J = [[0, I], [-I, 0]].  Block order of a symplectic matrix is
// S = [[A, B], [C, D]] with n x n blocks.

#pragma once

#include "mwkit/common.hpp"

namespace mwkit {

// J = [[0, I], [-I, 0]];  J^2 = -I, J^T = -J
inline Mat standard_J(int n) {
  if (n < 1) throw DimensionError("standard_J: n must be >= 1");
  Mat J = Mat::Zero(2 * n, 2 * n);
  J.topRightCorner(n, n) = Mat::Identity(n, n);
  J.bottomLeftCorner(n, n) = -Mat::Identity(n, n);
  return J;
}

// sigma(z, z') = <J z, z'>
inline double symplectic_form(const Vec& z, const Vec& zp) {
  if (z.size() != zp.size() || z.size() % 2 != 0)
    throw DimensionError("symplectic_form: phase-space dimensions mismatch");
  const int n = static_cast<int>(z.size()) / 2;
  return z.tail(n).dot(zp.head(n)) - zp.tail(n).dot(z.head(n));
}

// ||S^T J S - J||_max
inline double symplectic_residual(const Mat& S) {
  if (S.rows() != S.cols()) throw DimensionError("symplectic_residual: matrix not square");
  if (S.rows() % 2 != 0) throw DimensionError("symplectic_residual: odd dimension");
  const Mat J = standard_J(static_cast<int>(S.rows()) / 2);
  return max_abs(S.transpose() * J * S - J);
}

inline bool is_symplectic(const Mat& S, double tol) {
  return symplectic_residual(S) <= tol;
}

// ---------------------------------------------------------------------------
// SymplecticMatrix: 2n x 2n real matrix validated against S^T J S = J
// ---------------------------------------------------------------------------

class SymplecticMatrix {
 public:
  explicit SymplecticMatrix(Mat entries, double tol = kTolStructural)
      : m_(std::move(entries)) {
    if (m_.rows() != m_.cols()) throw DimensionError("SymplecticMatrix: not square");
    if (m_.rows() % 2 != 0 || m_.rows() == 0)
      throw DimensionError("SymplecticMatrix: dimension must be 2n, n >= 1");
    n_ = static_cast<int>(m_.rows()) / 2;
    const double res = symplectic_residual(m_);
    if (res > tol)
      throw InvalidParameterError("SymplecticMatrix: ||S^T J S - J||_max = " +
                                  std::to_string(res) + " exceeds tolerance");
  }

  int dof() const { return n_; }
  int dim() const { return 2 * n_; }
  const Mat& entries() const { return m_; }

  Mat A() const { return m_.topLeftCorner(n_, n_); }
  Mat B() const { return m_.topRightCorner(n_, n_); }
  Mat C() const { return m_.bottomLeftCorner(n_, n_); }
  Mat D() const { return m_.bottomRightCorner(n_, n_); }

 private:
  Mat m_;
  int n_ = 0;
};

// ---------------------------------------------------------------------------
// FreeGenerator: quadratic form W(x,x') = (1/2)<Px,x> - <Lx,x'> + (1/2)<Qx',x'>
// plus the index m mod 4 with m*pi = arg det L mod 2*pi.  For real L this
// means: det L > 0 <=> m even.
// ---------------------------------------------------------------------------

class FreeGenerator {
 public:
  FreeGenerator(Mat P, Mat L, Mat Q, int m)
      : P_(std::move(P)), L_(std::move(L)), Q_(std::move(Q)), m_(mod4(m)) {
    const auto n = P_.rows();
    if (P_.cols() != n || L_.rows() != n || L_.cols() != n || Q_.rows() != n ||
        Q_.cols() != n || n == 0)
      throw DimensionError("FreeGenerator: P, L, Q must be square of equal size");
    if (asymmetry(P_) > kTolSymmetry || asymmetry(Q_) > kTolSymmetry)
      throw InvalidGeneratorError("FreeGenerator: P and Q must be symmetric");
    P_ = symmetrize(P_);
    Q_ = symmetrize(Q_);
    det_L_ = L_.determinant();
    if (std::abs(det_L_) <= kTolDegenerate)
      throw InvalidGeneratorError("FreeGenerator: det L = 0");
    const bool even = (m_ % 2 == 0);
    if ((det_L_ > 0.0) != even)
      throw ParityError("FreeGenerator: m parity inconsistent with sign of det L");
  }

  int n() const { return static_cast<int>(P_.rows()); }
  const Mat& P() const { return P_; }
  const Mat& L() const { return L_; }
  const Mat& Q() const { return Q_; }
  int m() const { return m_; }
  double det_L() const { return det_L_; }

  // P + Q - L - L^T, the symmetric matrix controlling det(S_W - I)
  Mat index_matrix() const { return P_ + Q_ - L_ - L_.transpose(); }

 private:
  Mat P_, L_, Q_;
  int m_ = 0;
  double det_L_ = 0.0;
};

// generating-form data recovered from a free matrix; m remains a caller choice
struct PLQ {
  Mat P, L, Q;
};

// S_W = [[L^{-1}Q, L^{-1}], [P L^{-1} Q - L^T, P L^{-1}]].  The membership
// tolerance is relaxable for chains that build on ill-conditioned factors.
inline SymplecticMatrix free_from_generator(const FreeGenerator& g,
                                            double tol = kTolStructural) {
  const int n = g.n();
  const Mat Linv = g.L().inverse();
  Mat S(2 * n, 2 * n);
  S.topLeftCorner(n, n) = Linv * g.Q();
  S.topRightCorner(n, n) = Linv;
  S.bottomLeftCorner(n, n) = g.P() * Linv * g.Q() - g.L().transpose();
  S.bottomRightCorner(n, n) = g.P() * Linv;
  return SymplecticMatrix(std::move(S), tol);
}

// Inverse of the block substitution above: L = B^{-1}, P = D B^{-1},
// Q = B^{-1} A.  P and Q are symmetrized to machine symmetry.
inline PLQ generator_from_free(const SymplecticMatrix& S) {
  const Mat B = S.B();
  if (std::abs(B.determinant()) <= kTolDegenerate)
    throw NotFreeError("generator_from_free: det B = 0, matrix is not free");
  const Mat Binv = B.inverse();
  PLQ out;
  out.L = Binv;
  out.P = symmetrize(S.D() * Binv);
  out.Q = symmetrize(Binv * S.A());
  return out;
}

// M_S = (1/2) J (S + I)(S - I)^{-1}, symmetric whenever S is symplectic.
// Equivalently M_S = (1/2) J + J (S - I)^{-1}.
inline Mat cayley_ms(const SymplecticMatrix& S) {
  const int d = S.dim();
  const Mat I = Mat::Identity(d, d);
  const Mat SmI = S.entries() - I;
  if (std::abs(SmI.determinant()) <= kTolDegenerate)
    throw EigenvalueOneError("cayley_ms: det(S - I) = 0");
  const Mat J = standard_J(S.dof());
  Mat M = 0.5 * J * (S.entries() + I) * SmI.inverse();
  if (asymmetry(M) > kTolSymmetry)
    throw InvalidParameterError("cayley_ms: result asymmetric beyond tolerance");
  return symmetrize(M);
}

// S = (2M - J)^{-1} (2M + J)
inline SymplecticMatrix cayley_inverse(const Mat& M) {
  if (M.rows() != M.cols() || M.rows() % 2 != 0 || M.rows() == 0)
    throw DimensionError("cayley_inverse: M must be 2n x 2n");
  if (asymmetry(M) > kTolSymmetry)
    throw InvalidParameterError("cayley_inverse: M must be symmetric");
  const Mat J = standard_J(static_cast<int>(M.rows()) / 2);
  const Mat lhs = 2.0 * M - J;
  if (std::abs(lhs.determinant()) <= kTolDegenerate)
    throw InvalidParameterError("cayley_inverse: 2M - J singular");
  return SymplecticMatrix(lhs.inverse() * (2.0 * M + J));
}

// det(S_W - I) written in generating-form data.  The (-1)^n corrects the
// block-determinant det [[0, B], [I, D-I]] = (-1)^n det B; only the modulus
// enters square-root normalizations downstream, the sign is kept for tests.
inline double det_s_minus_i_factored(const FreeGenerator& g) {
  const double sign = (g.n() % 2 == 0) ? 1.0 : -1.0;
  return sign * (1.0 / g.det_L()) * g.index_matrix().determinant();
}

// ---------------------------------------------------------------------------
// Inertia of a real symmetric matrix
// ---------------------------------------------------------------------------

struct Inertia {
  int n_plus = 0;
  int n_minus = 0;
  int n_zero = 0;

  int sgn() const { return n_plus - n_minus; }
  int inert() const { return n_minus; }
  int dim() const { return n_plus + n_minus + n_zero; }
};

inline Inertia inertia_of(const Mat& M, double zero_tol = kTolInertiaZero) {
  if (M.rows() != M.cols()) throw DimensionError("inertia_of: matrix not square");
  if (asymmetry(M) > 1e-10)
    throw InvalidParameterError("inertia_of: matrix must be symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> es(symmetrize(M), Eigen::EigenvaluesOnly);
  Inertia out;
  for (int i = 0; i < M.rows(); ++i) {
    const double lam = es.eigenvalues()(i);
    if (std::abs(lam) <= zero_tol)
      ++out.n_zero;
    else if (lam > 0.0)
      ++out.n_plus;
    else
      ++out.n_minus;
  }
  return out;
}

}  // namespace mwkit
