#include <cmath>

#include "test_support.hpp"
#include "thetalab/rootnumber.hpp"
#include "thetalab/suites.hpp"

using namespace thetalab;
using namespace thetalab::testing;

TEST_CASE("gauss sums of real characters") {
  auto ctx = ctx192();
  CHECK(within(gauss_sum(principal_character(1), ctx), ctx.complex(1, 0), ctx));
  BigComplex g5 = gauss_sum(parse_character_label("5:2"), ctx);
  CHECK(within(g5, BigComplex(sqrt(ctx.real(5l))), ctx));
  BigComplex g3 = gauss_sum(parse_character_label("3:1"), ctx);
  CHECK(within(g3, BigComplex(ctx.real(0l), sqrt(ctx.real(3l))), ctx));
}

TEST_CASE("gauss sum modulus equals sqrt(N) for every primitive character") {
  auto ctx = ctx192();
  for (std::uint64_t N = 1; N <= 100; ++N) {
    for (const auto& chi : enumerate_characters(N, /*primitive_only=*/true)) {
      BigFloat n2 = norm(gauss_sum(chi, ctx));
      CHECK(abs(n2 - ctx.real(static_cast<long>(N))) <
            ctx.tolerance() * ctx.real(static_cast<long>(N)));
    }
  }
}

TEST_CASE("root number via gauss sums") {
  auto ctx = ctx192();
  CHECK(within(root_number_gauss(parse_character_label("5:2"), ctx), ctx.complex(1, 0), ctx));
  CHECK(within(root_number_gauss(parse_character_label("3:1"), ctx), ctx.complex(1, 0), ctx));
  CHECK(within(root_number_gauss(principal_character(1), ctx), ctx.complex(1, 0), ctx));
  CHECK_THROWS_AS(root_number_gauss(parse_character_label("9:3"), ctx), domain_error);
}

TEST_CASE("regression: odd real character needs the i^eps division") {
  auto ctx = ctx192();
  DirichletCharacter leg3 = parse_character_label("3:1");
  // theta ratio is 1, while the raw G/sqrt(3) is i
  BigComplex raw = gauss_sum(leg3, ctx) / sqrt(ctx.real(3l));
  CHECK(within(raw, ctx.complex(0, 1), ctx));
  CHECK(within(root_number_theta(leg3, ctx), ctx.complex(1, 0), ctx));
}

TEST_CASE("theta quotient route") {
  auto ctx = ctx192();
  for (const char* label : {"5:2", "3:1", "7:3", "13:6"}) {
    DirichletCharacter chi = parse_character_label(label);
    REQUIRE(chi.order() == 2);
    CHECK(within(root_number_theta(chi, ctx), ctx.complex(1, 0), ctx));
  }
  DirichletCharacter chi4 = parse_character_label("5:1");
  BigComplex wt = root_number_theta(chi4, ctx);
  BigComplex wg = root_number_gauss(chi4, ctx);
  CHECK(within(wt, wg, ctx));
  CHECK(abs(abs(wt) - ctx.real(1l)) < ctx.tolerance());
}

TEST_CASE("vanishing theta raises a typed error") {
  PrecisionContext ctx(96);
  DirichletCharacter chi = parse_character_label("300:1,1,8");
  REQUIRE(chi.is_primitive());
  REQUIRE(chi.parity() == 1);
  CHECK_THROWS_AS(root_number_theta(chi, ctx), vanishing_theta_error);
}

TEST_CASE("W(chi) W(chibar) = 1 and G(chi) G(chibar) = chi(-1) N") {
  auto ctx = ctx192();
  for (std::uint64_t N = 1; N <= 100; ++N) {
    for (const auto& chi : enumerate_characters(N, /*primitive_only=*/true)) {
      BigComplex prod = root_number_gauss(chi, ctx) * root_number_gauss(chi.conjugate(), ctx);
      CHECK(within(prod, ctx.complex(1, 0), ctx));
      BigComplex gg = gauss_sum(chi, ctx) * gauss_sum(chi.conjugate(), ctx);
      BigComplex want = ctx.complex(chi.parity() * static_cast<long>(N), 0);
      CHECK(abs(gg - want) < ctx.tolerance() * ctx.real(static_cast<long>(N)));
    }
  }
}

TEST_CASE("cross-check for conductors up to 100") {
  auto ctx = ctx192();
  CrossCheckResult r = rootnumber_crosscheck(100, ctx);
  CHECK(r.vanishing == 0);
  CHECK(r.checked > 1000);
  CHECK(small(r.max_diff, ctx));
  CHECK(small(r.max_modulus_error, ctx));
}

TEST_CASE("series length contract") {
  auto ctx = ctx192();
  const double ln2 = 0.6931471805599453;
  for (std::uint64_t N : {101ull, 499ull, 997ull}) {
    auto prim = enumerate_characters(N, /*primitive_only=*/true);
    // one even and one odd character
    const DirichletCharacter* even = nullptr;
    const DirichletCharacter* odd = nullptr;
    for (const auto& chi : prim) {
      if (!even && chi.parity() == 1) even = &chi;
      if (!odd && chi.parity() == -1) odd = &chi;
      if (even && odd) break;
    }
    long budget =
        4 * static_cast<long>(std::ceil(std::sqrt(static_cast<double>(N) * 192.0 * ln2 /
                                                  3.14159265358979))) +
        16;
    for (const auto* chi : {even, odd}) {
      REQUIRE(chi != nullptr);
      ThetaQuotient q = root_number_theta_counted(*chi, ctx);
      CHECK(q.terms_numerator + q.terms_denominator <= budget);
      RootNumberReport rep = root_number_report(*chi, ctx);
      CHECK(rep.gauss_evaluations == static_cast<long>(N));
    }
  }
}

TEST_CASE("report serialization round trip") {
  auto ctx = ctx192();
  RootNumberReport rep = root_number_report(parse_character_label("5:1"), ctx);
  auto j = rep.to_json();
  CHECK(j["label"] == "5:1");
  CHECK(j["gauss_evaluations"] == 5);
  auto parsed = nlohmann::ordered_json::parse(j.dump());
  CHECK(parsed["w_theta_re"].get<std::string>() == j["w_theta_re"].get<std::string>());
  CHECK(parsed["theta_terms"] == j["theta_terms"]);
  // vanishing case serializes W as null
  PrecisionContext small_ctx(96);
  RootNumberReport van = root_number_report(parse_character_label("300:1,1,8"), small_ctx);
  CHECK(!van.w_theta.has_value());
  CHECK(van.to_json()["w_theta_re"].is_null());
}
