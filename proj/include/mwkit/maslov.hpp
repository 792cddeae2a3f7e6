// maslov.hpp — mod-4 index arithmetic for quadratic Fourier transforms:
// the two admissible m values, nu = m - Inert(P + Q - L - L^T) mod 4, and
// the inverse-generator rule (P*, L*, Q*, m*) = (-Q, -L^T, -P, n - m).

#pragma once

#include "mwkit/common.hpp"
#include "mwkit/symplectic.hpp"

#include <utility>

namespace mwkit {

struct MaslovData {
  int m = 0;      // index mod 4, fixed by arg det L up to +2
  int inert = 0;  // number of negative eigenvalues of P + Q - L - L^T
  int nu = 0;     // phase exponent of the twisted-symbol operator, mod 4
};

// {0, 2} if det L > 0, {1, 3} if det L < 0 (m*pi = arg det L mod 2*pi)
inline std::pair<int, int> m_choices(const Mat& L) {
  if (L.rows() != L.cols() || L.rows() == 0)
    throw DimensionError("m_choices: L must be square");
  const double det = L.determinant();
  if (std::abs(det) <= kTolDegenerate)
    throw InvalidParameterError("m_choices: det L = 0");
  return det > 0.0 ? std::pair<int, int>{0, 2} : std::pair<int, int>{1, 3};
}

// nu = (m - Inert(P + Q - L - L^T)) mod 4.  A zero eigenvalue of the index
// matrix means det(S_W - I) = 0 and the operator is undefined.
inline MaslovData mw_index(const FreeGenerator& g) {
  const Mat W = g.index_matrix();
  const Inertia in = inertia_of(W, kTolInertiaZero);
  if (in.n_zero > 0) {
    Eigen::SelfAdjointEigenSolver<Mat> es(W, Eigen::EigenvaluesOnly);
    double smallest = es.eigenvalues()(0);
    for (int i = 0; i < W.rows(); ++i)
      if (std::abs(es.eigenvalues()(i)) < std::abs(smallest))
        smallest = es.eigenvalues()(i);
    throw EigenvalueOneError(
        "mw_index: det(P+Q-L-L^T)=0 (eigenvalue " + std::to_string(smallest) +
        " within 1e-10 of zero), so det(S-I)=0 and the index is undefined");
  }
  MaslovData out;
  out.m = g.m();
  out.inert = in.inert();
  out.nu = mod4(g.m() - in.inert());
  return out;
}

// W*(x,x') = -W(x',x): the generator of the inverse transform, with
// m* = n - m mod 4.
inline FreeGenerator inverse_generator(const FreeGenerator& g) {
  return FreeGenerator(-g.Q(), -g.L().transpose(), -g.P(), mod4(g.n() - g.m()));
}

// Key identity behind the index formula: for z0 = (0, p0),
//   <M_S z0, z0> = -<(P+Q-L-L^T)^{-1} p0, p0>.
// Returns both sides so tests (and the CLI) can compare them.
inline std::pair<double, double> verify_restricted_quadratic(const FreeGenerator& g,
                                                             const Vec& p0) {
  const int n = g.n();
  if (p0.size() != n) throw DimensionError("verify_restricted_quadratic: p0 size");
  const Mat W = g.index_matrix();
  if (std::abs(W.determinant()) <= kTolDegenerate)
    throw EigenvalueOneError("verify_restricted_quadratic: det(P+Q-L-L^T)=0");
  const SymplecticMatrix S = free_from_generator(g);
  const Mat M = cayley_ms(S);  // throws EigenvalueOneError when det(S-I)=0
  Vec z0 = Vec::Zero(2 * n);
  z0.tail(n) = p0;
  const double lhs = z0.dot(M * z0);
  const double rhs = -p0.dot(W.fullPivLu().solve(p0));
  return {lhs, rhs};
}

}  // namespace mwkit
