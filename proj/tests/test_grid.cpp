#include <catch2/catch_amalgamated.hpp>

#include "mwkit/grid.hpp"
#include "mwkit/sampling.hpp"

using namespace mwkit;

namespace {
FreeGenerator gen1(double P, double L, double Q, int m) {
  Mat p(1, 1), l(1, 1), q(1, 1);
  p << P;
  l << L;
  q << Q;
  return FreeGenerator(p, l, q, m);
}

PhaseSpacePoint pt(double x, double p) {
  Vec vx(1), vp(1);
  vx << x;
  vp << p;
  return {vx, vp};
}
}  // namespace

TEST_CASE("grid spec validation") {
  REQUIRE_THROWS_AS(GridSpec(3, 12.0, 256), UnsupportedError);
  REQUIRE_THROWS_AS(GridSpec(1, 12.0, 100), InvalidParameterError);
  REQUIRE_THROWS_AS(GridSpec(1, 12.0, 4), InvalidParameterError);
  REQUIRE_THROWS_AS(GridSpec(1, -1.0, 64), InvalidParameterError);
  REQUIRE(GridSpec::default_for(1).N == 256);
  REQUIRE(GridSpec::default_for(2).X == 8.0);
}

TEST_CASE("sampling and discrete norm") {
  const GridSpec spec(1, 12.0, 256);
  const GridFunction f = GridFunction::sample(GaussianState::standard(1), spec);
  REQUIRE(f.norm() == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("grid translations") {
  const GridSpec spec(1, 12.0, 256);
  const GaussianState g0 = GaussianState::standard(1);
  const GridFunction f = GridFunction::sample(g0, spec);

  SECTION("z0 = 0 echoes the samples") {
    REQUIRE(max_abs_diff(hw_apply(pt(0, 0), f), f) == 0.0);
  }
  SECTION("lattice-aligned shift is an exact circular shift") {
    const double d = spec.delta();
    const GridFunction shifted = hw_apply(pt(16 * d, 0), f);
    for (int k = 16; k < spec.N; ++k)
      REQUIRE(std::abs(shifted.samples()(k) - f.samples()(k - 16)) == 0.0);
  }
  SECTION("off-lattice shift and boost match the closed form") {
    const PhaseSpacePoint z = pt(0.73, -1.2);
    REQUIRE(max_abs_diff(hw_apply(z, f),
                         GridFunction::sample(gauss_hw(z, g0), spec)) <= 1e-10);
  }
  SECTION("commutation phase on the grid") {
    // boost-first vs shift-first: sigma((0,1),(3,0)) = 3 with lattice x-shift 3
    const double shift_x = 32 * spec.delta();  // = 3.0
    const PhaseSpacePoint shift = pt(shift_x, 0), boost = pt(0, 1);
    GridFunction lhs = hw_apply(boost, hw_apply(shift, f));
    GridFunction rhs = hw_apply(shift, hw_apply(boost, f));
    const double sigma = symplectic_form(boost.as_vector(), shift.as_vector());
    REQUIRE(sigma == Catch::Approx(3.0));
    rhs.samples() *= std::exp(Complex(0, sigma));
    REQUIRE(max_abs_diff(lhs, rhs) <= 1e-8);
  }
  SECTION("domain overflow flag") {
    REQUIRE(hw_apply(pt(0.9 * spec.X, 0), f).domain_overflow());
    REQUIRE_FALSE(hw_apply(pt(1.0, 0), f).domain_overflow());
  }
}

TEST_CASE("quadratic fourier transform on the grid") {
  const GridSpec spec(1, 12.0, 256);
  const GaussianState g0 = GaussianState::standard(1);
  const GridFunction f = GridFunction::sample(g0, spec);

  SECTION("modified Fourier transform of g0") {
    GridFunction want = GridFunction::sample(g0, spec);
    want.samples() *= std::exp(Complex(0, -kPi / 4));
    REQUIRE(max_abs_diff(quad_fourier_grid(gen1(0, 1, 0, 0), f), want) <= 1e-6);
  }
  SECTION("cross-engine, unitarity, inverse") {
    const FreeGenerator gen = gen1(1, 1, 1, 0);
    const GridFunction out = quad_fourier_grid(gen, f);
    REQUIRE(max_abs_diff(out, GridFunction::sample(gauss_quad_fourier(gen, g0), spec)) <=
            1e-6);
    REQUIRE(std::abs(out.norm() - 1.0) <= 1e-6);
    REQUIRE(max_abs_diff(quad_fourier_grid(inverse_generator(gen), out), f) <= 1e-5);
  }
  SECTION("truncation flag on non-decayed input") {
    Vec c(1);
    c << 11.5;
    const GaussianState edge(Complex(0, 1) * CMat::Identity(1, 1), c, Vec::Zero(1), 1.0);
    const GridFunction fe = GridFunction::sample(edge, spec);
    REQUIRE(quad_fourier_grid(gen1(0, 1, 0, 0), fe).truncation_warn());
    REQUIRE_FALSE(quad_fourier_grid(gen1(0, 1, 0, 0), f).truncation_warn());
  }
}

TEST_CASE("factored application") {
  const GridSpec spec(1, 12.0, 256);
  const GaussianState g0 = GaussianState::standard(1);
  const GridFunction f = GridFunction::sample(g0, spec);

  SECTION("pure modified Fourier path vs direct quadrature") {
    REQUIRE(max_abs_diff(factored_apply(gen1(0, 1, 0, 0), f),
                         quad_fourier_grid(gen1(0, 1, 0, 0), f)) <= 1e-8);
  }
  SECTION("full chain vs direct quadrature") {
    for (const FreeGenerator& gen :
         {gen1(1, 1, 1, 0), gen1(0, 2, 0, 0), gen1(-0.5, 0.7, 1.2, 0)}) {
      REQUIRE(max_abs_diff(factored_apply(gen, f), quad_fourier_grid(gen, f)) <= 1e-6);
    }
  }
  SECTION("n = 2 requires diagonal L") {
    const GridSpec spec2(2, 8.0, 32);
    const GridFunction f2 = GridFunction::sample(GaussianState::standard(2), spec2);
    Mat L(2, 2);
    L << 1, 0.3, 0, 1;
    REQUIRE_THROWS_AS(
        factored_apply(FreeGenerator(Mat::Zero(2, 2), L, Mat::Zero(2, 2), 0), f2),
        UnsupportedError);
  }
}

TEST_CASE("symplectic fourier transform") {
  const GridSpec ps(2, 8.0, 128);
  SECTION("phase-space gaussian is self-reciprocal") {
    const GridFunction a = GridFunction::from_function(ps, [](const Vec& z) {
      return Complex(std::exp(-0.5 * z.squaredNorm()), 0.0);
    });
    REQUIRE(max_abs_diff(symplectic_fourier(a), a) <= 1e-7);
    REQUIRE(max_abs_diff(symplectic_fourier(symplectic_fourier(a)), a) <= 1e-8);
  }
  SECTION("zero maps to zero") {
    const GridFunction z = GridFunction::zero(ps);
    REQUIRE(symplectic_fourier(z).max_abs() == 0.0);
  }
  SECTION("one-axis grids are rejected") {
    REQUIRE_THROWS_AS(symplectic_fourier(GridFunction::zero(GridSpec(1, 8.0, 64))),
                      UnsupportedError);
  }
}

TEST_CASE("kernel to symbol") {
  const GridSpec ks(2, 12.0, 256);
  const GaussianState g0 = GaussianState::standard(1);
  SECTION("rank-one kernel of g0 gives 2 e^{-(x^2+p^2)}") {
    const GridFunction K = GridFunction::from_function(ks, [&](const Vec& xy) {
      Vec a(1), b(1);
      a << xy(0);
      b << xy(1);
      return g0.evaluate(a) * std::conj(g0.evaluate(b));
    });
    const GridFunction sym = kernel_to_symbol(K);
    const GridFunction want = GridFunction::from_function(ks, [](const Vec& z) {
      return Complex(2.0 * std::exp(-z.squaredNorm()), 0.0);
    });
    REQUIRE(max_abs_diff(sym, want) <= 1e-5);
  }
  SECTION("zero kernel") {
    REQUIRE(kernel_to_symbol(GridFunction::zero(ks)).max_abs() == 0.0);
  }
}

TEST_CASE("two-dimensional transform with a coupling L block") {
  // non-diagonal L exercises the generic pairwise cross-term path
  const GridSpec spec(2, 8.0, 64);
  Rng rng(19);
  Mat L(2, 2);
  L << 1.1, 0.25, -0.2, 0.9;
  const FreeGenerator gen(rng.symmetric_matrix(2, -0.3, 0.3), L,
                          rng.symmetric_matrix(2, -0.3, 0.3), m_choices(L).first);
  const CMat gamma = rng.symmetric_matrix(2, -0.2, 0.2).cast<Complex>() +
                     Complex(0, 1) * (Mat::Identity(2, 2) +
                                      rng.symmetric_matrix(2, -0.1, 0.1)).cast<Complex>();
  const GaussianState g(gamma, rng.vector(2, -0.4, 0.4), rng.vector(2, -0.6, 0.6), 1.0);
  const GridFunction direct = quad_fourier_grid(gen, GridFunction::sample(g, spec));
  REQUIRE(max_abs_diff(direct, GridFunction::sample(gauss_quad_fourier(gen, g), spec)) <=
          1e-6);
}

TEST_CASE("doubling the resolution improves the transform at spectral rate") {
  const FreeGenerator gen = gen1(1.5, 0.6, -0.8, 0);
  const GaussianState g(CMat::Identity(1, 1) * Complex(0.3, 1.0),
                        (Vec(1) << 0.7).finished(), (Vec(1) << 3.0).finished(), 1.0);
  auto err_at = [&](int N) {
    const GridSpec s(1, 12.0, N);
    return max_abs_diff(quad_fourier_grid(gen, GridFunction::sample(g, s)),
                        GridFunction::sample(gauss_quad_fourier(gen, g), s));
  };
  const double coarse = err_at(64);
  const double fine = err_at(128);
  INFO("coarse " << coarse << " fine " << fine);
  REQUIRE((fine < 1e-11 || coarse / fine >= 4.0));
}
