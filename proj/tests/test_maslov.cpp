#include <catch2/catch_amalgamated.hpp>

#include "mwkit/maslov.hpp"
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
}  // namespace

TEST_CASE("admissible m values follow arg det L") {
  Mat L(1, 1);
  L << 1;
  REQUIRE(m_choices(L) == std::pair<int, int>{0, 2});
  L << -1;
  REQUIRE(m_choices(L) == std::pair<int, int>{1, 3});
  REQUIRE(m_choices(2.0 * Mat::Identity(2, 2)) == std::pair<int, int>{0, 2});
  REQUIRE_THROWS_AS(m_choices(Mat::Zero(2, 2)), InvalidParameterError);
}

TEST_CASE("index formula fixtures") {
  const MaslovData a = mw_index(gen1(0, 1, 0, 0));
  REQUIRE(a.m == 0);
  REQUIRE(a.inert == 1);
  REQUIRE(a.nu == 3);

  const MaslovData b = mw_index(gen1(0, 1, 0, 2));
  REQUIRE(b.nu == 1);

  REQUIRE_THROWS_AS(mw_index(gen1(1, 1, 1, 0)), EigenvalueOneError);
  REQUIRE_THROWS_WITH(mw_index(gen1(1, 1, 1, 0)),
                      Catch::Matchers::ContainsSubstring("det(P+Q-L-L^T)=0"));
}

TEST_CASE("m -> m+2 shifts nu by 2") {
  Rng rng(11);
  for (int n : {1, 2}) {
    for (int t = 0; t < 40; ++t) {
      GeneratorSamplingOptions opt;
      opt.min_abs_det_s_minus_i = 1e-3;
      const FreeGenerator g = random_free_generator(rng, n, opt);
      const auto [ma, mb] = m_choices(g.L());
      const MaslovData da = mw_index(FreeGenerator(g.P(), g.L(), g.Q(), ma));
      const MaslovData db = mw_index(FreeGenerator(g.P(), g.L(), g.Q(), mb));
      REQUIRE(db.nu == mod4(da.nu + 2));
    }
  }
}

TEST_CASE("inverse generator") {
  const FreeGenerator gi = inverse_generator(gen1(0, 1, 0, 0));
  REQUIRE(gi.P()(0, 0) == Catch::Approx(0.0));
  REQUIRE(gi.L()(0, 0) == Catch::Approx(-1.0));
  REQUIRE(gi.Q()(0, 0) == Catch::Approx(0.0));
  REQUIRE(gi.m() == 1);
  REQUIRE(max_abs(free_from_generator(gi).entries() + standard_J(1)) <= 1e-15);

  const FreeGenerator s = gen1(1, 1, 1, 0);
  const FreeGenerator si = inverse_generator(s);
  REQUIRE(si.P()(0, 0) == Catch::Approx(-1.0));
  REQUIRE(si.L()(0, 0) == Catch::Approx(-1.0));
  REQUIRE(si.Q()(0, 0) == Catch::Approx(-1.0));
  REQUIRE(si.m() == 1);
  REQUIRE(max_abs(free_from_generator(si).entries() * free_from_generator(s).entries() -
                  Mat::Identity(2, 2)) <= 1e-12);

  Rng rng(5);
  for (int n : {1, 2, 3}) {
    const FreeGenerator g = random_free_generator(rng, n);
    const FreeGenerator gii = inverse_generator(inverse_generator(g));
    REQUIRE(max_abs(gii.P() - g.P()) <= 1e-12);
    REQUIRE(max_abs(gii.L() - g.L()) <= 1e-12);
    REQUIRE(max_abs(gii.Q() - g.Q()) <= 1e-12);
    REQUIRE(gii.m() == g.m());
  }
}

TEST_CASE("restricted quadratic identity") {
  Vec p0(1);
  p0 << 1.0;
  const auto [lhs, rhs] = verify_restricted_quadratic(gen1(0, 1, 0, 0), p0);
  REQUIRE(lhs == Catch::Approx(0.5));
  REQUIRE(rhs == Catch::Approx(0.5));

  p0 << 0.0;
  const auto [l0, r0] = verify_restricted_quadratic(gen1(0, 1, 0, 0), p0);
  REQUIRE(l0 == Catch::Approx(0.0).margin(1e-15));
  REQUIRE(r0 == Catch::Approx(0.0).margin(1e-15));

  REQUIRE_THROWS_AS(verify_restricted_quadratic(gen1(1, 1, 1, 0), p0),
                    EigenvalueOneError);

  Rng rng(31);
  GeneratorSamplingOptions opt;
  opt.min_abs_det_s_minus_i = 1e-3;
  for (int n : {1, 2}) {
    for (int t = 0; t < 100; ++t) {
      const FreeGenerator g = random_free_generator(rng, n, opt);
      const Vec p = rng.vector(n, -2.0, 2.0);
      const auto [l, r] = verify_restricted_quadratic(g, p);
      REQUIRE(std::abs(l - r) <= 1e-8 * std::max(1.0, std::abs(r)));
    }
  }
}

TEST_CASE("nu parity tracks the sign of det(S - I)") {
  Rng rng(17);
  GeneratorSamplingOptions opt;
  opt.min_abs_det_s_minus_i = 1e-3;
  opt.random_m = true;
  for (int n : {1, 2, 3}) {
    for (int t = 0; t < 60; ++t) {
      const FreeGenerator g = random_free_generator(rng, n, opt);
      const MaslovData md = mw_index(g);
      const Mat S = free_from_generator(g).entries();
      const double det = (S - Mat::Identity(2 * n, 2 * n)).determinant();
      const double sign_rule = ((n % 2 == 0) ? 1.0 : -1.0) * (det > 0 ? 1.0 : -1.0);
      REQUIRE(((md.nu % 2 == 0) ? 1.0 : -1.0) == sign_rule);
    }
  }
}
