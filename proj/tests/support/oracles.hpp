// oracles.hpp — independent numerical oracles used only by tests.
//
// The Fresnel oracle evaluates (2 pi)^{-n/2} int e^{-i<p,x>} e^{(i/2)<Mx,x>} dx
// without the closed form: orthogonal diagonalization splits the integral
// into one-dimensional oscillatory factors, each computed by composite
// Gauss-Legendre quadrature on [0, T] plus an integration-by-parts
// asymptotic tail.  Only the removal of the linear term (an exact square
// completion) is done algebraically.

#pragma once

#include "mwkit/common.hpp"

#include <vector>

namespace mwkit::oracles {

struct GLRule {
  Vec nodes;    // on [-1, 1]
  Vec weights;
};

// Newton iteration on the Legendre recurrence
inline GLRule gauss_legendre(int npoints) {
  GLRule rule;
  rule.nodes.resize(npoints);
  rule.weights.resize(npoints);
  for (int i = 0; i < npoints; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (npoints + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= npoints; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = npoints * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes(i) = x;
    rule.weights(i) = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return rule;
}

// composite Gauss-Legendre over [a, b]
template <typename F>
Complex integrate_gl(const F& f, double a, double b, int panels, const GLRule& rule) {
  Complex sum = 0.0;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    for (int k = 0; k < rule.nodes.size(); ++k) {
      const double t = lo + 0.5 * h * (rule.nodes(k) + 1.0);
      sum += 0.5 * h * rule.weights(k) * f(t);
    }
  }
  return sum;
}

// int_{-inf}^{inf} e^{(i/2) d t^2} dt by quadrature on [-T, T] plus the
// integration-by-parts tail with terms (2k-3)!! / ((2ia)^k T^{2k-1})
inline Complex fresnel_1d_quadrature(double d) {
  const double a = 0.5 * d;
  const double abs_a = std::abs(a);
  const double T = std::max(40.0, std::sqrt(3000.0 / abs_a));
  const int panels = static_cast<int>(std::ceil(abs_a * T * T / kPi)) + 64;
  static const GLRule rule = gauss_legendre(12);

  const Complex body = 2.0 * integrate_gl(
                                 [a](double t) {
                                   return std::exp(Complex(0, a * t * t));
                                 },
                                 0.0, T, panels, rule);

  const Complex phi = std::exp(Complex(0, a * T * T));
  const Complex ia2 = Complex(0, 2.0 * a);
  Complex tail = 0.0;
  double dfact = 1.0;  // (2k-3)!!
  double tpow = T;
  for (int k = 1; k <= 5; ++k) {
    tail += dfact / (std::pow(ia2, k) * tpow);
    dfact *= 2.0 * k - 1.0;
    tpow *= T * T;
  }
  return body - 2.0 * phi * tail;
}

// (2 pi)^{-n/2} int e^{-i<p,x>} e^{(i/2)<Mx,x>} dx: diagonalize, complete the
// square per axis, quadrature the pure-oscillatory factor
inline Complex fresnel_oracle(const Mat& M, const Vec& p) {
  const int n = static_cast<int>(M.rows());
  Eigen::SelfAdjointEigenSolver<Mat> es(symmetrize(M));
  const Vec pprime = es.eigenvectors().transpose() * p;
  Complex value = std::pow(2.0 * kPi, -0.5 * n);
  for (int i = 0; i < n; ++i) {
    const double d = es.eigenvalues()(i);
    const double b = pprime(i);
    value *= std::exp(Complex(0, -0.5 * b * b / d)) * fresnel_1d_quadrature(d);
  }
  return value;
}

// adaptive-free quadrature for absolutely convergent 1-D integrands with
// Gaussian decay (used to cross-check complex Gaussian integrals)
template <typename F>
Complex decayed_integral_oracle(const F& f, double half_width = 14.0, int panels = 280) {
  static const GLRule rule = gauss_legendre(12);
  return integrate_gl(f, -half_width, half_width, panels, rule);
}

}  // namespace mwkit::oracles
