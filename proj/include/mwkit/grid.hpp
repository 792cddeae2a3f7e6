// grid.hpp — uniformly sampled wavefunctions on a truncated box and direct
// quadrature implementations of the operator formulas.  This engine is the
// independent numerical oracle for the closed-form Gaussian path.
//
// Grids are half-open uniform lattices x_k = -X + k*delta, delta = 2X/N,
// with N a power of two.  Samples are stored row-major with axis 0 slowest.
// Off-lattice position shifts and rescalings use trigonometric (bandlimited)
// interpolation, which is legitimate because inputs are required to decay
// below roundoff at the boundary.

#pragma once

#include "mwkit/common.hpp"
#include "mwkit/gaussian.hpp"
#include "mwkit/symplectic.hpp"

#include <functional>

namespace mwkit {

struct GridSpec {
  int n = 1;       // number of axes (1 or 2)
  double X = 12.0; // half extent
  int N = 256;     // points per axis

  GridSpec() = default;
  GridSpec(int n_, double X_, int N_) : n(n_), X(X_), N(N_) { validate(); }

  void validate() const {
    if (n != 1 && n != 2) throw UnsupportedError("GridSpec: n must be 1 or 2");
    if (X <= 0.0) throw InvalidParameterError("GridSpec: X must be positive");
    if (N < 8 || (N & (N - 1)) != 0)
      throw InvalidParameterError("GridSpec: N must be a power of two >= 8");
  }

  double delta() const { return 2.0 * X / N; }

  Vec nodes() const {
    Vec x(N);
    for (int k = 0; k < N; ++k) x(k) = -X + k * delta();
    return x;
  }

  long size() const { return n == 1 ? N : static_cast<long>(N) * N; }

  static GridSpec default_for(int dof) {
    return dof == 1 ? GridSpec(1, 12.0, 256) : GridSpec(2, 8.0, 128);
  }

  bool operator==(const GridSpec& o) const { return n == o.n && X == o.X && N == o.N; }
};

class GridFunction {
 public:
  GridFunction(GridSpec spec, CVec samples) : spec_(spec), samples_(std::move(samples)) {
    spec_.validate();
    if (samples_.size() != spec_.size())
      throw DimensionError("GridFunction: sample count does not match grid");
  }

  static GridFunction zero(const GridSpec& spec) {
    return GridFunction(spec, CVec::Zero(spec.size()));
  }

  static GridFunction from_function(const GridSpec& spec,
                                    const std::function<Complex(const Vec&)>& f) {
    CVec s(spec.size());
    const Vec x = spec.nodes();
    if (spec.n == 1) {
      Vec pt(1);
      for (int k = 0; k < spec.N; ++k) {
        pt(0) = x(k);
        s(k) = f(pt);
      }
    } else {
      Vec pt(2);
      for (int i = 0; i < spec.N; ++i)
        for (int j = 0; j < spec.N; ++j) {
          pt << x(i), x(j);
          s(static_cast<long>(i) * spec.N + j) = f(pt);
        }
    }
    return GridFunction(spec, std::move(s));
  }

  static GridFunction sample(const GaussianState& g, const GridSpec& spec) {
    if (g.n() != spec.n) throw DimensionError("GridFunction::sample: dimension mismatch");
    return from_function(spec, [&g](const Vec& x) { return g.evaluate(x); });
  }

  const GridSpec& spec() const { return spec_; }
  const CVec& samples() const { return samples_; }
  CVec& samples() { return samples_; }

  // discrete L2 norm: delta^{n/2} ||samples||_2
  double norm() const { return std::pow(spec_.delta(), 0.5 * spec_.n) * samples_.norm(); }

  double max_abs() const { return samples_.size() ? samples_.cwiseAbs().maxCoeff() : 0.0; }

  // largest sample magnitude on the outermost layer of the box
  double boundary_max() const {
    const int N = spec_.N;
    double m = 0.0;
    if (spec_.n == 1) {
      m = std::max(std::abs(samples_(0)), std::abs(samples_(N - 1)));
    } else {
      for (int k = 0; k < N; ++k) {
        m = std::max(m, std::abs(samples_(k)));
        m = std::max(m, std::abs(samples_(static_cast<long>(N - 1) * N + k)));
        m = std::max(m, std::abs(samples_(static_cast<long>(k) * N)));
        m = std::max(m, std::abs(samples_(static_cast<long>(k) * N + N - 1)));
      }
    }
    return m;
  }

  bool domain_overflow() const { return domain_overflow_; }
  bool truncation_warn() const { return truncation_warn_; }
  void set_domain_overflow(bool v) { domain_overflow_ = v; }
  void set_truncation_warn(bool v) { truncation_warn_ = v; }

 private:
  GridSpec spec_;
  CVec samples_;
  bool domain_overflow_ = false;
  bool truncation_warn_ = false;
};

inline double max_abs_diff(const GridFunction& a, const GridFunction& b) {
  if (!(a.spec() == b.spec())) throw DimensionError("max_abs_diff: grid mismatch");
  return (a.samples() - b.samples()).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// 1-D building blocks
// ---------------------------------------------------------------------------

namespace detail {

// forward DFT coefficients c_k (centered frequencies handled by caller)
inline CVec dft(const CVec& f) {
  const int N = static_cast<int>(f.size());
  CVec F(N);
  for (int k = 0; k < N; ++k) {
    Complex acc = 0.0;
    for (int j = 0; j < N; ++j)
      acc += f(j) * std::exp(Complex(0, -2.0 * kPi * j * k / N));
    F(k) = acc;
  }
  return F;
}

// value of the trigonometric interpolant of samples f (on x_j = -X + j delta)
// at arbitrary points y; the Nyquist bin is split symmetrically.  Points
// outside the box take the zero extension (the data is required to decay
// there), never the periodic image.
inline CVec trig_interp(const CVec& f, double X, const Vec& y) {
  const int N = static_cast<int>(f.size());
  const CVec F = dft(f);
  CVec out(y.size());
  const double w0 = kPi / X;  // 2 pi / period
  for (int t = 0; t < y.size(); ++t) {
    if (std::abs(y(t)) > X) {
      out(t) = 0.0;
      continue;
    }
    const double u = y(t) + X;
    Complex acc = 0.0;
    for (int k = 0; k < N; ++k) {
      int kt = k <= N / 2 ? k : k - N;  // centered frequency
      if (kt == N / 2 || kt == -N / 2) {
        acc += F(k) * std::cos(w0 * (N / 2) * u);
      } else {
        acc += F(k) * std::exp(Complex(0, w0 * kt * u));
      }
    }
    out(t) = acc / static_cast<double>(N);
  }
  return out;
}

// circular shift f(x - s) for s an exact multiple of delta
inline CVec circular_shift(const CVec& f, int cells) {
  const int N = static_cast<int>(f.size());
  CVec out(N);
  for (int j = 0; j < N; ++j) out(j) = f(((j - cells) % N + N) % N);
  return out;
}

// spectral shift f(x - s) for arbitrary s
inline CVec spectral_shift(const CVec& f, double X, double s) {
  const int N = static_cast<int>(f.size());
  const double delta = 2.0 * X / N;
  const double cells = s / delta;
  const double nearest = std::round(cells);
  if (std::abs(cells - nearest) < 1e-12)
    return circular_shift(f, static_cast<int>(nearest));
  CVec F = dft(f);
  const double w0 = kPi / X;
  for (int k = 0; k < N; ++k) {
    int kt = k <= N / 2 ? k : k - N;
    if (kt == N / 2) kt = -N / 2;  // symmetric Nyquist convention
    F(k) *= std::exp(Complex(0, -w0 * kt * s));
  }
  // inverse DFT
  CVec out(N);
  for (int j = 0; j < N; ++j) {
    Complex acc = 0.0;
    for (int k = 0; k < N; ++k)
      acc += F(k) * std::exp(Complex(0, 2.0 * kPi * j * k / N));
    out(j) = acc / static_cast<double>(N);
  }
  return out;
}

using RowMat =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline Eigen::Map<RowMat> as_matrix(CVec& v, int N) { return {v.data(), N, N}; }
inline Eigen::Map<const RowMat> as_matrix(const CVec& v, int N) {
  return {v.data(), N, N};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Heisenberg-Weyl translation on the grid:
// (T(z0) f)(x) = exp(i(<p0,x> - (1/2)<p0,x0>)) f(x - x0)
// ---------------------------------------------------------------------------

inline GridFunction hw_apply(const PhaseSpacePoint& z0, const GridFunction& f) {
  const GridSpec& spec = f.spec();
  if (z0.n() != spec.n) throw DimensionError("hw_apply: dimension mismatch");

  CVec s = f.samples();
  if (spec.n == 1) {
    s = detail::spectral_shift(s, spec.X, z0.x(0));
  } else {
    auto m = detail::as_matrix(s, spec.N);
    for (int r = 0; r < spec.N; ++r) {
      CVec row = m.row(r).transpose();
      m.row(r) = detail::spectral_shift(row, spec.X, z0.x(1)).transpose();
    }
    for (int c = 0; c < spec.N; ++c) {
      CVec col = m.col(c);
      m.col(c) = detail::spectral_shift(col, spec.X, z0.x(0));
    }
  }

  const Vec x = spec.nodes();
  const double half = 0.5 * z0.p.dot(z0.x);
  if (spec.n == 1) {
    for (int k = 0; k < spec.N; ++k)
      s(k) *= std::exp(Complex(0, z0.p(0) * x(k) - half));
  } else {
    for (int i = 0; i < spec.N; ++i)
      for (int j = 0; j < spec.N; ++j)
        s(static_cast<long>(i) * spec.N + j) *=
            std::exp(Complex(0, z0.p(0) * x(i) + z0.p(1) * x(j) - half));
  }

  GridFunction out(spec, std::move(s));
  out.set_domain_overflow(f.domain_overflow());
  out.set_truncation_warn(f.truncation_warn());
  if (z0.x.cwiseAbs().maxCoeff() > 0.8 * spec.X ||
      out.boundary_max() > 1e-9 * std::max(out.max_abs(), 1e-300))
    out.set_domain_overflow(true);
  return out;
}

// ---------------------------------------------------------------------------
// Quadratic Fourier transform by direct quadrature of
// (S_{W,m} f)(x) = (2 pi i)^{-n/2} i^m sqrt(|det L|) int e^{iW(x,x')} f(x') dx'
// ---------------------------------------------------------------------------

inline GridFunction quad_fourier_grid(const FreeGenerator& gen, const GridFunction& f) {
  const GridSpec& spec = f.spec();
  if (gen.n() != spec.n) throw DimensionError("quad_fourier_grid: dimension mismatch");

  const bool truncated = f.boundary_max() > 1e-12 * std::max(f.max_abs(), 1e-300);
  const int n = spec.n;
  const int N = spec.N;
  const Vec x = spec.nodes();
  const Complex c0 = std::pow(2.0 * kPi, -0.5 * n) * std::exp(Complex(0, -kPi * n / 4.0)) *
                     i_power(gen.m()) * std::sqrt(std::abs(gen.det_L())) *
                     std::pow(spec.delta(), n);

  CVec out(spec.size());
  if (n == 1) {
    const double P = gen.P()(0, 0), L = gen.L()(0, 0), Q = gen.Q()(0, 0);
    for (int i = 0; i < N; ++i) {
      Complex acc = 0.0;
      const double px = 0.5 * P * x(i) * x(i);
      const double lx = L * x(i);
      for (int j = 0; j < N; ++j)
        acc += std::exp(Complex(0, px - lx * x(j) + 0.5 * Q * x(j) * x(j))) * f.samples()(j);
      out(i) = c0 * acc;
    }
  } else {
    // precompute the per-node quadratic pieces; the cross term is evaluated
    // pairwise (L need not be diagonal here)
    Vec alpha(N * N), beta(N * N);
    Mat v(N * N, 2);
    Vec xi(2);
    long idx = 0;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j, ++idx) {
        xi << x(i), x(j);
        alpha(idx) = 0.5 * xi.dot(gen.P() * xi);
        beta(idx) = 0.5 * xi.dot(gen.Q() * xi);
        v.row(idx) = (gen.L() * xi).transpose();
      }
    for (long i = 0; i < N * static_cast<long>(N); ++i) {
      Complex acc = 0.0;
      const double v0 = v(i, 0), v1 = v(i, 1);
      long jdx = 0;
      for (int j0 = 0; j0 < N; ++j0) {
        const double c = v0 * x(j0);
        for (int j1 = 0; j1 < N; ++j1, ++jdx) {
          const double phase = beta(jdx) - c - v1 * x(j1);
          acc += Complex(std::cos(phase), std::sin(phase)) * f.samples()(jdx);
        }
      }
      out(i) = c0 * std::exp(Complex(0, alpha(i))) * acc;
    }
  }
  GridFunction g(spec, std::move(out));
  g.set_truncation_warn(truncated || f.truncation_warn());
  return g;
}

// ---------------------------------------------------------------------------
// Factored application S_{W,m} = V_{-P} M_{L,m} J V_{-Q} with
//   V_{-P} f = e^{(i/2)<Px,x>} f,  M_{L,m} f = i^m sqrt(|det L|) f(Lx),
//   J f(x) = (2 pi i)^{-n/2} int e^{-i<x,x'>} f(x') dx'
// ---------------------------------------------------------------------------

namespace detail {

// modified Fourier transform along one axis: out(x_m) = c int e^{-i x_m x'} f dx'
inline CMat j_axis_matrix(const GridSpec& spec) {
  const int N = spec.N;
  const Vec x = spec.nodes();
  const Complex c = std::pow(2.0 * kPi, -0.5) * std::exp(Complex(0, -kPi / 4.0)) * spec.delta();
  CMat K(N, N);
  for (int m = 0; m < N; ++m)
    for (int j = 0; j < N; ++j) K(m, j) = c * std::exp(Complex(0, -x(m) * x(j)));
  return K;
}

inline void multiply_quadratic_phase(const GridSpec& spec, const Mat& Q, CVec& s,
                                     double sign) {
  const Vec x = spec.nodes();
  if (spec.n == 1) {
    const double q = Q(0, 0);
    for (int k = 0; k < spec.N; ++k)
      s(k) *= std::exp(Complex(0, sign * 0.5 * q * x(k) * x(k)));
  } else {
    Vec xi(2);
    long idx = 0;
    for (int i = 0; i < spec.N; ++i)
      for (int j = 0; j < spec.N; ++j, ++idx) {
        xi << x(i), x(j);
        s(idx) *= std::exp(Complex(0, sign * 0.5 * xi.dot(Q * xi)));
      }
  }
}

}  // namespace detail

inline GridFunction factored_apply(const FreeGenerator& gen, const GridFunction& f) {
  const GridSpec& spec = f.spec();
  if (gen.n() != spec.n) throw DimensionError("factored_apply: dimension mismatch");
  if (spec.n == 2) {
    const Mat& L = gen.L();
    if (std::abs(L(0, 1)) > 1e-14 || std::abs(L(1, 0)) > 1e-14)
      throw UnsupportedError("factored_apply: n=2 supports diagonal L only");
  }
  const bool truncated = f.boundary_max() > 1e-12 * std::max(f.max_abs(), 1e-300);

  CVec s = f.samples();
  detail::multiply_quadratic_phase(spec, gen.Q(), s, 1.0);  // V_{-Q}

  const CMat K = detail::j_axis_matrix(spec);  // modified Fourier transform
  if (spec.n == 1) {
    s = K * s;
  } else {
    auto m = detail::as_matrix(s, spec.N);
    m = (K * m.matrix()).eval();
    m = (m.matrix() * K.transpose()).eval();
  }

  // rescaling f -> f(Lx) by bandlimited interpolation, axis by axis
  const Vec x = spec.nodes();
  if (spec.n == 1) {
    const double l = gen.L()(0, 0);
    s = detail::trig_interp(s, spec.X, l * x);
  } else {
    auto m = detail::as_matrix(s, spec.N);
    const double l0 = gen.L()(0, 0), l1 = gen.L()(1, 1);
    for (int r = 0; r < spec.N; ++r) {
      CVec row = m.row(r).transpose();
      m.row(r) = detail::trig_interp(row, spec.X, l1 * x).transpose();
    }
    for (int c = 0; c < spec.N; ++c) {
      CVec col = m.col(c);
      m.col(c) = detail::trig_interp(col, spec.X, l0 * x);
    }
  }
  s *= i_power(gen.m()) * std::sqrt(std::abs(gen.det_L()));

  detail::multiply_quadratic_phase(spec, gen.P(), s, 1.0);  // V_{-P}

  GridFunction g(spec, std::move(s));
  g.set_truncation_warn(truncated || f.truncation_warn());
  return g;
}

// ---------------------------------------------------------------------------
// Symplectic Fourier transform on the phase plane of one degree of freedom:
// F_sigma a(z) = (2 pi)^{-1} int e^{i sigma(z, z')} a(z') d^2 z',
// sigma((x,p),(x',p')) = p x' - p' x.  Axis 0 is x, axis 1 is p.
// ---------------------------------------------------------------------------

inline GridFunction symplectic_fourier(const GridFunction& a) {
  const GridSpec& spec = a.spec();
  if (spec.n != 2)
    throw UnsupportedError("symplectic_fourier: phase-space grid (two axes) required");
  const int N = spec.N;
  const Vec x = spec.nodes();
  CMat Km(N, N), Kp(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      Km(i, j) = std::exp(Complex(0, -x(i) * x(j)));
      Kp(i, j) = std::exp(Complex(0, x(i) * x(j)));
    }
  const auto G = detail::as_matrix(a.samples(), N);
  // B(x', x) = delta sum_{p'} e^{-i x p'} a(x', p')
  const CMat B = spec.delta() * (G.matrix() * Km.transpose());
  // out(x, p) = (2 pi)^{-1} delta sum_{x'} e^{i p x'} B(x', x)
  const CMat O = (spec.delta() / (2.0 * kPi)) * (Kp * B).transpose();
  CVec s(a.samples().size());
  detail::as_matrix(s, N) = O;
  return GridFunction(spec, std::move(s));
}

// ---------------------------------------------------------------------------
// Kernel to Weyl symbol: a(x, p) = int e^{-i<p,y>} K(x + y/2, x - y/2) dy.
// The y lattice y_k = 2 k delta keeps both kernel arguments on the grid, so
// the midpoint resample is exact.  The kernel is extended by zero outside
// the box (it is required to decay there), which avoids the spurious values
// a periodic wrap would inject near the edges.
// ---------------------------------------------------------------------------

inline GridFunction kernel_to_symbol(const GridFunction& K) {
  const GridSpec& spec = K.spec();
  if (spec.n != 2)
    throw UnsupportedError("kernel_to_symbol: kernel grid (two axes) required");
  const bool truncated = K.boundary_max() > 1e-12 * std::max(K.max_abs(), 1e-300);
  const int N = spec.N;
  const Vec x = spec.nodes();
  const auto Km = detail::as_matrix(K.samples(), N);

  // diagonal gather: D(i, k) = K(x_i + k delta, x_i - k delta), k centered
  CMat D = CMat::Zero(N, N);
  for (int i = 0; i < N; ++i)
    for (int kk = 0; kk < N; ++kk) {
      const int k = kk - N / 2;
      if (i + k >= 0 && i + k < N && i - k >= 0 && i - k < N)
        D(i, kk) = Km(i + k, i - k);
    }
  // E(m, kk) = e^{-i p_m y_k}, y_k = 2 k delta; p grid equals the x grid
  CMat E(N, N);
  for (int m = 0; m < N; ++m)
    for (int kk = 0; kk < N; ++kk)
      E(m, kk) = std::exp(Complex(0, -x(m) * 2.0 * (kk - N / 2) * spec.delta()));

  const CMat O = 2.0 * spec.delta() * (D * E.transpose());  // O(i, m) = a(x_i, p_m)
  CVec s(K.samples().size());
  detail::as_matrix(s, N) = O;
  GridFunction out(spec, std::move(s));
  out.set_truncation_warn(truncated || K.truncation_warn());
  return out;
}

}  // namespace mwkit
