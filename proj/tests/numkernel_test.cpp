#include <random>

#include "test_support.hpp"
#include "thetalab/numkernel.hpp"

using namespace thetalab;
using namespace thetalab::testing;

TEST_CASE("root_of_unity identities") {
  auto ctx = ctx192();
  CHECK(within(root_of_unity(0, 7, ctx), ctx.complex(1, 0), ctx));
  CHECK(within(root_of_unity(1, 4, ctx), ctx.complex(0, 1), ctx));
  BigFloat half = BigFloat::ratio(-1, 2, ctx.prec());
  BigFloat s3half = sqrt(ctx.real(3l)) / 2;
  CHECK(within(root_of_unity(1, 3, ctx), BigComplex(half, s3half), ctx));
  CHECK_THROWS_AS(root_of_unity(1, 0, ctx), domain_error);
}

TEST_CASE("root_of_unity inverse pairs") {
  auto ctx = ctx192();
  std::mt19937_64 gen(12345);
  BigFloat one = ctx.real(1l);
  for (int t = 0; t < 1000; ++t) {
    long M = static_cast<long>(gen() % 1000000) + 1;
    long k = static_cast<long>(gen() % static_cast<unsigned long>(M));
    BigComplex a = root_of_unity(k, M, ctx);
    BigComplex b = root_of_unity(-k, M, ctx);
    CHECK(within(abs(a) * abs(b), one, ctx));
    CHECK(within(a * root_of_unity(M - k, M, ctx), ctx.complex(1, 0), ctx));
  }
}

TEST_CASE("principal_power branch convention") {
  auto ctx = ctx192();
  CHECK(within(principal_power(ctx.complex(-1, 0), 1, 2, ctx), ctx.complex(0, 1), ctx));
  CHECK(within(principal_power(ctx.complex(4, 0), 1, 2, ctx), ctx.complex(2, 0), ctx));
  CHECK(within(principal_power(ctx.complex(0, 2), 1, 2, ctx), ctx.complex(1, 1), ctx));
  CHECK_THROWS_AS(principal_power(ctx.complex(0, 0), -1, 2, ctx), domain_error);
}

TEST_CASE("principal square root squares back") {
  auto ctx = ctx192();
  std::mt19937_64 gen(777);
  std::uniform_real_distribution<double> re(-20.0, 20.0), im(0.01, 20.0);
  for (int t = 0; t < 1000; ++t) {
    BigComplex z = ctx.complex(ctx.real(re(gen)), ctx.real(im(gen)));
    BigComplex r = principal_power(z, 1, 2, ctx);
    CHECK(!(r.re() < 0l));  // Im z >= 0 forces Re sqrt >= 0
    CHECK(abs(r * r - z) < ctx.tolerance() * abs(z));
  }
}

TEST_CASE("precision doubling stability") {
  auto ctx = ctx192();
  auto ctx2 = ctx.doubled();
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> re(-3.0, 3.0), im(0.1, 3.0);
  for (int t = 0; t < 200; ++t) {
    double xr = re(gen), xi = im(gen);
    BigComplex z1 = exp(log(ctx.complex(ctx.real(xr), ctx.real(xi))));
    BigComplex z2 = exp(log(ctx2.complex(ctx2.real(xr), ctx2.real(xi))));
    CHECK(within(z1, z2, ctx));
  }
}

namespace {
// independent oracle: sum the discarded two-sided tail directly at higher precision
BigFloat tail_sum(long N, int eps, const BigFloat& rate, long nmax, long bits) {
  PrecisionContext hi(2 * bits);
  BigFloat acc = hi.real(0l);
  BigFloat r = rate;
  for (long n = nmax + 1; n <= nmax + 4000; ++n) {
    BigFloat term = exp(-(r * (n * 1l) * (n * 1l)));
    if (eps) term *= n;
    acc += term * 2;
    if (term.exponent2() < -(bits + 64)) break;
  }
  return acc;
}
}  // namespace

TEST_CASE("theta truncation bound against tail oracle") {
  auto ctx = ctx192();
  BigFloat pi = ctx.pi();

  // evaluating theta at tau = i, N = 1: rate = pi
  long n1 = theta_truncation_bound(1, 0, pi, 64);
  CHECK(n1 <= 8);
  CHECK(tail_sum(1, 0, pi, n1, 64) < BigFloat::pow2(-64, 64));

  // N = 600 at 64 bits: around 100 indices
  BigFloat rate600 = pi / 600;
  long n600 = theta_truncation_bound(600, 0, rate600, 64);
  CHECK(n600 >= 85);
  CHECK(n600 <= 130);
  CHECK(tail_sum(600, 0, rate600, n600, 64) < BigFloat::pow2(-64, 64));

  // eps = 1 tails
  long n5 = theta_truncation_bound(5, 1, pi / 5, 192);
  CHECK(tail_sum(5, 1, pi / 5, n5, 192) < BigFloat::pow2(-192, 64));

  CHECK_THROWS_AS(theta_truncation_bound(5, 0, ctx.real(0l), 192), domain_error);
  CHECK_THROWS_AS(theta_truncation_bound(5, 0, ctx.real(-1l), 192), domain_error);
}

TEST_CASE("truncation bound monotone in P and N, sqrt growth") {
  auto ctx = ctx192();
  BigFloat pi = ctx.pi();
  long prev = 0;
  for (long P : {64l, 96l, 128l, 192l, 256l, 384l, 512l}) {
    long n = theta_truncation_bound(5, 0, pi / 5, P);
    CHECK(n >= prev);
    prev = n;
  }
  // growing N at fixed tau = i decreases the rate and grows the bound
  prev = 0;
  for (long N : {1l, 3l, 9l, 27l, 81l, 243l}) {
    long n = theta_truncation_bound(N, 0, pi / N, 128);
    CHECK(n >= prev);
    prev = n;
  }
  // doubling P grows n_max by at most sqrt(2) plus lower-order slack
  for (long P : {96l, 192l, 384l}) {
    long n = theta_truncation_bound(7, 0, pi / 7, P);
    long n2 = theta_truncation_bound(7, 0, pi / 7, 2 * P);
    CHECK(n2 * 100 <= n * 150 + 800);
  }
}

TEST_CASE("precision context validation") {
  CHECK_THROWS_AS(PrecisionContext(32), domain_error);
  CHECK_THROWS_AS(PrecisionContext(128, 8), domain_error);
  PrecisionContext c(192);
  CHECK(c.tolerance().exponent2() == -159);  // 2^(32-192)
}
