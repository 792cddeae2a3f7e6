// sampling.hpp — seeded random instances for property suites.  The integer
// stream comes from mt19937_64 and is mapped to doubles explicitly, so the
// same seed reproduces the same draws on every platform and standard
// library.

#pragma once

#include "mwkit/common.hpp"
#include "mwkit/gaussian.hpp"
#include "mwkit/maslov.hpp"
#include "mwkit/symplectic.hpp"

#include <random>
#include <string>

namespace mwkit {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t bits() { return eng_(); }

  Mat matrix(int rows, int cols, double lo, double hi) {
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = uniform(lo, hi);
    return m;
  }

  Mat symmetric_matrix(int n, double lo, double hi) {
    return symmetrize(matrix(n, n, lo, hi));
  }

  Vec vector(int n, double lo, double hi) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = uniform(lo, hi);
    return v;
  }

 private:
  std::mt19937_64 eng_;
};

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

struct GeneratorSamplingOptions {
  double entry_lo = -3.0;
  double entry_hi = 3.0;
  double min_abs_det_L = 0.1;         // rejection threshold on |det L|
  double min_sigma_L = 0.1;           // smallest singular value of L
  double min_abs_det_s_minus_i = -1;  // < 0 disables the constraint
  double max_ms_norm = -1;            // < 0 disables; bounds ||M_S||_max
  bool random_m = false;              // otherwise smallest admissible m
};

// rejection-resampled generator; the constraints keep condition numbers
// testable rather than changing any mathematics
inline FreeGenerator random_free_generator(Rng& rng, int n,
                                           const GeneratorSamplingOptions& opt = {}) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const Mat P = rng.symmetric_matrix(n, opt.entry_lo, opt.entry_hi);
    const Mat Q = rng.symmetric_matrix(n, opt.entry_lo, opt.entry_hi);
    const Mat L = rng.matrix(n, n, opt.entry_lo, opt.entry_hi);
    if (std::abs(L.determinant()) < opt.min_abs_det_L) continue;
    if (n > 1 && Eigen::JacobiSVD<Mat>(L).singularValues().minCoeff() < opt.min_sigma_L)
      continue;
    const auto [m_a, m_b] = m_choices(L);
    const int m = opt.random_m && rng.uniform() < 0.5 ? m_b : m_a;
    FreeGenerator g(P, L, Q, m);
    if (opt.min_abs_det_s_minus_i > 0.0 || opt.max_ms_norm > 0.0) {
      const SymplecticMatrix S = free_from_generator(g);
      const Mat SmI = S.entries() - Mat::Identity(2 * n, 2 * n);
      if (opt.min_abs_det_s_minus_i > 0.0 &&
          std::abs(SmI.determinant()) < opt.min_abs_det_s_minus_i)
        continue;
      if (opt.max_ms_norm > 0.0) {
        if (std::abs(SmI.determinant()) <= kTolDegenerate) continue;
        if (max_abs(cayley_ms(S)) > opt.max_ms_norm) continue;
      }
    }
    return g;
  }
  throw ExhaustedSearchError("random_free_generator: rejection sampling exhausted");
}

// product of two moderate free matrices; dense in Sp(n) and well conditioned
inline SymplecticMatrix random_symplectic(Rng& rng, int n) {
  GeneratorSamplingOptions opt;
  opt.entry_lo = -1.6;
  opt.entry_hi = 1.6;
  opt.min_abs_det_L = 0.3;
  const SymplecticMatrix a = free_from_generator(random_free_generator(rng, n, opt));
  const SymplecticMatrix b = free_from_generator(random_free_generator(rng, n, opt));
  return SymplecticMatrix(a.entries() * b.entries());
}

// unit-norm Gaussian with Im Gamma comfortably positive definite
inline GaussianState random_gaussian(Rng& rng, int n) {
  const double base = rng.uniform(0.6, 1.6);
  const Mat re = rng.symmetric_matrix(n, -0.6, 0.6);
  Mat im = base * Mat::Identity(n, n) + rng.symmetric_matrix(n, -0.2, 0.2);
  const CMat gamma = re.cast<Complex>() + Complex(0, 1) * im.cast<Complex>();
  const Vec c = rng.vector(n, -1.2, 1.2);
  const Vec p = rng.vector(n, -1.2, 1.2);
  const double theta = rng.uniform(0.0, 2.0 * kPi);
  GaussianState raw(gamma, c, p, 1.0);
  return GaussianState(gamma, c, p, std::exp(Complex(0, theta)) / gauss_norm(raw));
}

inline PhaseSpacePoint random_phase_point(Rng& rng, int n, double lo, double hi) {
  return {rng.vector(n, lo, hi), rng.vector(n, lo, hi)};
}

}  // namespace mwkit
