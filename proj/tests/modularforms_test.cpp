#include <random>

#include "test_support.hpp"
#include "thetalab/modularforms.hpp"
#include "thetalab/suites.hpp"

using namespace thetalab;
using namespace thetalab::testing;

TEST_CASE("eta at i matches the gamma-function closed form") {
  auto ctx = ctx192();
  BigComplex e = eta(ctx.complex(0, 1), ctx);
  CHECK(small(abs(e.im()), ctx));
  CHECK(within(e.re(), ctx.real_str(kEtaI), ctx));
  // Gamma(1/4) / (2 pi^(3/4)) via mpfr_gamma, an independent route
  BigFloat g14 = gamma(BigFloat::ratio(1, 4, ctx.prec()));
  BigFloat closed = g14 / (exp(log(ctx.pi()) * BigFloat::ratio(3, 4, ctx.prec())) * 2);
  CHECK(within(e.re(), closed, ctx));
}

TEST_CASE("eta shift and doubling identities") {
  auto ctx = ctx192();
  BigComplex tau = ctx.complex(0, 2);
  BigComplex lhs = eta(tau + ctx.complex(1, 0), ctx);
  BigComplex rhs = root_of_unity(1, 24, ctx) * eta(tau, ctx);
  CHECK(within(lhs, rhs, ctx));

  BigComplex e2 = eta(ctx.complex(0, 2), ctx);
  CHECK(within(e2.re(), ctx.real_str(kEta2I), ctx));
  // eta(2i) = eta(i) / 2^(3/8)
  BigFloat quotient = eta(ctx.complex(0, 1), ctx).re() /
                      exp(log(ctx.real(2l)) * BigFloat::ratio(3, 8, ctx.prec()));
  CHECK(within(e2.re(), quotient, ctx));
}

TEST_CASE("meyer multiplier on generators") {
  auto ctx = ctx192();
  MultiplierResult id = meyer_multiplier({1, 0, 0, 1}, ctx);
  CHECK(id.num % 24 == 0);
  MultiplierResult t = meyer_multiplier({1, 1, 0, 1}, ctx);
  CHECK(t.num == 1);
  CHECK(t.den == 24);
  MultiplierResult s = meyer_multiplier({0, -1, 1, 0}, ctx);
  CHECK(s.num == 21);  // zeta_8^{-1} = zeta_24^{21}
  CHECK_THROWS_AS(meyer_multiplier({1, 1, 1, 1}, ctx), domain_error);
}

TEST_CASE("meyer law on random matrices") {
  auto ctx = ctx192();
  SuiteRng rng(31337);
  SuiteResult r = meyer_suite(200, 50, rng, ctx);
  CHECK(r.cases == 200);
  CHECK(small(r.max_residual, ctx));
}

TEST_CASE("j invariant special values") {
  auto ctx = ctx192();
  BigComplex ji = j_invariant(ctx.complex(0, 1), ctx);
  CHECK(abs(ji - ctx.complex(1728, 0)) < ctx.tolerance() * ctx.real(1728l));
  BigComplex j2 = j_invariant(ctx.complex(0, 2), ctx);
  CHECK(abs(j2 - ctx.complex(287496, 0)) < ctx.tolerance() * ctx.real(287496l));
  BigComplex tau = ctx.complex(ctx.real(1.0 / 3.0), ctx.real(2l));
  BigComplex shift = tau + ctx.complex(1, 0);
  CHECK(abs(j_invariant(tau, ctx) - j_invariant(shift, ctx)) <
        ctx.tolerance() * abs(j_invariant(tau, ctx)));
}

TEST_CASE("partial theta basics") {
  auto ctx = ctx192();
  BigComplex tau = ctx.complex(ctx.real(0.21), ctx.real(0.9));
  CHECK(small(abs(partial_theta(4, 0, 1, tau, ctx)), ctx));  // odd series kills h = 0
  CHECK(within(partial_theta(1, 0, 0, ctx.complex(0, 1), ctx).re(), ctx.real_str(kThetaI), ctx));
  // pi^(1/4)/Gamma(3/4): independent closed form
  BigFloat closed = exp(log(ctx.pi()) * BigFloat::ratio(1, 4, ctx.prec())) /
                    gamma(BigFloat::ratio(3, 4, ctx.prec()));
  CHECK(within(partial_theta(1, 0, 0, ctx.complex(0, 1), ctx).re(), closed, ctx));
  CHECK(within(partial_theta(3, 1, 0, ctx.complex(0, 1), ctx).re(), ctx.real_str(kTheta31I), ctx));
  // and at doubled precision
  auto ctx2 = ctx.doubled();
  CHECK(within(partial_theta(3, 1, 0, ctx2.complex(0, 1), ctx2).re(), ctx.real_str(kTheta31I),
               ctx));
  CHECK_THROWS_AS(partial_theta(3, 1, 0, ctx.complex(0, -1), ctx), domain_error);
}

TEST_CASE("partial theta antisymmetry across all small levels") {
  auto ctx = ctx192();
  SuiteRng rng(7);
  for (std::int64_t N = 1; N <= 30; ++N) {
    BigComplex tau = tau_in_box(rng, ctx);
    for (std::int64_t h = 0; h < N; ++h) {
      for (int eps : {0, 1}) {
        BigComplex lhs = partial_theta(N, N - h, eps, tau, ctx);
        BigComplex rhs = partial_theta(N, h, eps, tau, ctx);
        if (eps) rhs = -rhs;
        CHECK(within(lhs, rhs, ctx));
      }
    }
  }
}

TEST_CASE("character theta decomposes over residue classes") {
  auto ctx = ctx192();
  SuiteRng rng(11);
  for (std::uint64_t N = 1; N <= 30; ++N) {
    for (const auto& chi : enumerate_characters(N, /*primitive_only=*/true)) {
      BigComplex tau = tau_in_box(rng, ctx);
      BigComplex direct = theta_chi(chi, tau, ctx);
      BigComplex sum = ctx.complex(0, 0);
      for (std::int64_t h = 0; h < static_cast<std::int64_t>(N); ++h)
        sum += chi.evaluate(h, ctx) * partial_theta(static_cast<std::int64_t>(N), h, chi.eps(), tau, ctx);
      CHECK(within(direct, sum, ctx));
    }
  }
}

TEST_CASE("character theta frozen values") {
  auto ctx = ctx192();
  BigComplex i = ctx.complex(0, 1);
  CHECK(within(theta_chi(principal_character(1), i, ctx).re(), ctx.real_str(kThetaI), ctx));
  BigComplex leg5 = theta_chi(parse_character_label("5:2"), i, ctx);
  CHECK(small(abs(leg5.im()), ctx));
  CHECK(within(leg5.re(), ctx.real_str(kThetaLeg5I), ctx));
  BigComplex leg3 = theta_chi(parse_character_label("3:1"), i, ctx);
  CHECK(small(abs(leg3.im()), ctx));
  CHECK(within(leg3.re(), ctx.real_str(kThetaLeg3I), ctx));
  CHECK(leg3.re() > 0l);
}

TEST_CASE("quadratic gauss sums") {
  auto ctx = ctx192();
  CHECK(within(quadratic_gauss_sum_closed(2, 1, ctx), ctx.complex(1, 0), ctx));
  CHECK(within(quadratic_gauss_sum_closed(1, 2, ctx), ctx.complex(1, 1), ctx));
  CHECK(within(quadratic_gauss_sum_closed(3, 2, ctx), ctx.complex(1, -1), ctx));
  for (std::int64_t d = 1; d <= 30; ++d) {
    for (std::int64_t b = -30; b <= 30; ++b) {
      if (std::gcd(std::abs(b), d) != 1 || (b + d) % 2 == 0) continue;
      CHECK(within(quadratic_gauss_sum_closed(b, d, ctx), quadratic_gauss_sum_direct(b, d, ctx),
                   ctx));
    }
  }
  CHECK_THROWS_AS(quadratic_gauss_sum_closed(2, 4, ctx), domain_error);  // gcd
  CHECK_THROWS_AS(quadratic_gauss_sum_closed(1, 3, ctx), domain_error);  // parity
}

TEST_CASE("upsilon multiplier") {
  auto ctx = ctx192();
  MultiplierResult id = theta_multiplier_upsilon({1, 0, 0, 1}, 3, ctx);
  CHECK(id.num == 0);
  TransformMatrix g{1, 2, 6, 13};
  MultiplierResult u = theta_multiplier_upsilon(g, 3, ctx);
  CHECK(u.num == 0);  // zeta_8^12 (-6/13) = (-1)(-1) = 1
  // negation rule: for this matrix ups(-g) = i ups(g)
  MultiplierResult un = theta_multiplier_upsilon(g.negated(), 3, ctx);
  CHECK(within(un.value, u.value * ctx.complex(0, 1), ctx));
  CHECK_THROWS_AS(theta_multiplier_upsilon({1, 1, 1, 2}, 3, ctx), domain_error);
  CHECK_THROWS_AS(theta_multiplier_upsilon({1, 0, 0, 1}, 2, ctx), domain_error);
}

TEST_CASE("inversion law") {
  auto ctx = ctx192();
  CHECK(small(verify_inversion(1, 0, 0, ctx.complex(0, 1), ctx), ctx));
  BigComplex tau1 = ctx.complex(ctx.real(1.0 / 3.0), ctx.real(1l));
  CHECK(small(verify_inversion(5, 2, 0, tau1, ctx), ctx));
  CHECK(small(verify_inversion(3, 1, 1, ctx.complex(0, 2), ctx), ctx));
  SuiteRng rng(2);
  SuiteResult r = inversion_suite(100, rng, ctx);
  CHECK(small(r.max_residual, ctx));
}

TEST_CASE("transformation law") {
  auto ctx = ctx192();
  CHECK(small(verify_transform({1, 0, 0, 1}, 3, 1, 0, ctx.complex(0, 1), ctx), ctx));
  TransformMatrix g{1, 2, 6, 13};
  BigComplex tau = ctx.complex(0, 1) / 2;
  BigFloat r1 = verify_transform(g, 3, 1, 0, tau, ctx);
  CHECK(small(r1, ctx));
  // replacing gamma by -gamma leaves the residual unchanged
  BigFloat r2 = verify_transform(g.negated(), 3, 1, 0, tau, ctx);
  CHECK(small(r2, ctx));
  CHECK(small(verify_transform(g, 3, 1, 1, tau, ctx), ctx));
  SuiteRng rng(3);
  SuiteResult suite = transform_suite({3, 5, 9, 15}, 10, rng, ctx);
  CHECK(small(suite.max_residual, ctx));
}

TEST_CASE("functional equation") {
  auto ctx = ctx192();
  BigComplex i = ctx.complex(0, 1);
  DirichletCharacter leg5 = parse_character_label("5:2");
  CHECK(small(verify_functional_equation(leg5, i, ctx.complex(1, 0), ctx), ctx));

  DirichletCharacter leg3 = parse_character_label("3:1");
  BigComplex tau = ctx.complex(ctx.real(0.5), ctx.real(1l));
  CHECK(small(verify_functional_equation(leg3, tau, ctx.complex(1, 0), ctx), ctx));
  // the un-normalized Gauss-sum value i fails for the odd real character
  CHECK(verify_functional_equation(leg3, tau, ctx.complex(0, 1), ctx) > ctx.real(0.25));

  // W = theta_bar(i)/theta(i) passes by construction, here for a complex chi
  DirichletCharacter chi4 = parse_character_label("5:1");
  BigComplex W = theta_chi(chi4.conjugate(), i, ctx) / theta_chi(chi4, i, ctx);
  CHECK(small(verify_functional_equation(chi4, ctx.complex(ctx.real(0.3), ctx.real(0.8)), W, ctx),
              ctx));
}

TEST_CASE("level invariance") {
  auto ctx = ctx192();
  CHECK(level_w(3) == 24);
  CHECK(level_w(5) == 120);
  SuiteRng rng(5);
  for (std::int64_t N : {3l, 5l}) {
    std::int64_t w = level_w(N);
    for (int t = 0; t < 3; ++t) {
      TransformMatrix g = random_gamma_principal(w, rng);
      REQUIRE(g.in_principal(w));
      BigComplex tau = tau_for_matrix(g, rng, ctx);
      CHECK(small(verify_level_invariance(N, t % N, t % 2, g, tau, ctx), ctx));
    }
  }
  CHECK_THROWS_AS(
      verify_level_invariance(3, 1, 0, TransformMatrix{1, 1, 0, 1}, ctx192().complex(0, 1), ctx),
      domain_error);
}

TEST_CASE("A and B values") {
  auto ctx = ctx192();
  BigComplex a_triv = A_value(principal_character(1), ctx);
  CHECK(within(a_triv, BigComplex(sqrt(ctx.real(2l))), ctx));  // theta(i)/eta(i) = sqrt(2)
  for (const char* label : {"5:1", "5:2", "7:1", "9:1"}) {
    BigFloat b = B_value(parse_character_label(label), ctx);
    CHECK(!(b < 0l));
  }
  BigFloat b52 = B_value(parse_character_label("5:2"), ctx);
  CHECK(within(b52, ctx.real_str(kProd52), ctx));
  auto ctx2 = ctx.doubled();
  CHECK(within(B_value(parse_character_label("5:2"), ctx2), ctx.real_str(kProd52), ctx));
  CHECK_THROWS_AS(A_value(parse_character_label("8:0,1"), ctx), domain_error);
}
