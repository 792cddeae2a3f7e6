// quadrature.hpp — Gauss-Hermite rules (Golub-Welsch) and a tensorized
// integrator for exp(quadratic) integrands over R^d.

#pragma once

#include "mwkit/common.hpp"

#include <vector>

namespace mwkit {

struct GaussHermiteRule {
  Vec nodes;    // roots of H_N
  Vec weights;  // for the weight function e^{-t^2}
};

// Nodes/weights from the symmetric tridiagonal Jacobi matrix: off-diagonal
// beta_k = sqrt(k/2), weights = sqrt(pi) * (first eigenvector component)^2.
inline GaussHermiteRule gauss_hermite(int npoints) {
  if (npoints < 1) throw InvalidParameterError("gauss_hermite: npoints must be >= 1");
  Vec diag = Vec::Zero(npoints);
  Vec subdiag(npoints - 1);
  for (int k = 1; k < npoints; ++k) subdiag(k - 1) = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Mat> es;
  es.computeFromTridiagonal(diag, subdiag, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success)
    throw QuadratureError("gauss_hermite: tridiagonal eigensolver failed");
  GaussHermiteRule rule;
  rule.nodes = es.eigenvalues();
  rule.weights.resize(npoints);
  const double sqrt_pi = std::sqrt(kPi);
  for (int i = 0; i < npoints; ++i) {
    const double v0 = es.eigenvectors()(0, i);
    rule.weights(i) = sqrt_pi * v0 * v0;
  }
  return rule;
}

// int_{R^d} exp((i/2)<C z,z> + i<d,z> + e0) dz by tensorized Gauss-Hermite.
//
// Im C must be positive definite (that is the decay).  The linear term is
// removed exactly by recentering at the complex critical point z_c = -C^{-1}d
// (a contour shift, legitimate by analyticity and the decay); without it the
// rule would chase stationary-phase cancellations.  The substitution
// z = z_c + sqrt(2) (Im C)^{-1/2} t then leaves e^{-|t|^2} times the pure
// oscillation exp((i/2)<C_t t,t>) with C_t real symmetric, and rotating t by
// the orthogonal eigenbasis of C_t (the decay weight is rotation invariant)
// makes the integrand separable, so the tensor-product Gauss-Hermite sum
// collapses exactly into a product of one-dimensional sums.
inline Complex gh_integrate_exp_quadratic(const CMat& C, const CVec& d, Complex e0,
                                          int nodes_per_axis) {
  const int dim = static_cast<int>(C.rows());
  if (C.rows() != C.cols() || d.size() != dim)
    throw DimensionError("gh_integrate_exp_quadratic: dimension mismatch");
  if (asymmetry(C) > 1e-9)
    throw InvalidParameterError("gh_integrate_exp_quadratic: C must be symmetric");

  const Mat Y = symmetrize(Mat(C.imag()));
  Eigen::SelfAdjointEigenSolver<Mat> es(Y);
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0)
    throw DivergentIntegralError(
        "gh_integrate_exp_quadratic: Im C must be positive definite");

  const CVec z_c = -C.fullPivLu().solve(d);
  const Complex const_term = e0 + Complex(0, 0.5) * bilinear(d, z_c);

  const Mat A = std::sqrt(2.0) * Mat(es.eigenvectors() *
                                     es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                                     es.eigenvectors().transpose());
  const double abs_det_A =
      std::pow(2.0, 0.5 * dim) / std::sqrt(es.eigenvalues().prod());
  const Mat C_t = symmetrize(Mat(A.transpose() * Mat(C.real()) * A));

  Eigen::SelfAdjointEigenSolver<Mat> rot(C_t, Eigen::EigenvaluesOnly);
  const GaussHermiteRule rule = gauss_hermite(nodes_per_axis);

  Complex prod = 1.0;
  for (int a = 0; a < dim; ++a) {
    const double lam = rot.eigenvalues()(a);
    Complex one_d = 0.0;
    for (int k = 0; k < nodes_per_axis; ++k) {
      const double t2 = rule.nodes(k) * rule.nodes(k);
      one_d += rule.weights(k) * std::exp(Complex(0, 0.5 * lam * t2));
    }
    prod *= one_d;
  }
  return abs_det_A * std::exp(const_term) * prod;
}

// spectral radius of the standardized oscillation: the quadrature above
// resolves exp((i/2) lam t^2) per axis, so its cost/accuracy is governed by
// the largest |lam|.  Samplers use this to reject ill-conditioned draws.
inline double quadratic_oscillation_strength(const CMat& C) {
  const Mat Y = symmetrize(Mat(C.imag()));
  Eigen::SelfAdjointEigenSolver<Mat> es(Y);
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0)
    throw DivergentIntegralError(
        "quadratic_oscillation_strength: Im C must be positive definite");
  const Mat A = std::sqrt(2.0) * Mat(es.eigenvectors() *
                                     es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                                     es.eigenvectors().transpose());
  const Mat C_t = symmetrize(Mat(A.transpose() * Mat(C.real()) * A));
  Eigen::SelfAdjointEigenSolver<Mat> rot(C_t, Eigen::EigenvaluesOnly);
  return rot.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace mwkit
