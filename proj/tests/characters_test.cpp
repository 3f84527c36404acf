#include <complex>
#include <map>
#include <random>
#include <set>

#include <gmpxx.h>

#include "test_support.hpp"
#include "thetalab/characters.hpp"

using namespace thetalab;
using namespace thetalab::testing;

TEST_CASE("canonical generators") {
  auto b5 = canonical_generators(5);
  REQUIRE(b5->size() == 1);
  CHECK(b5->entries()[0].prime_power == 5);
  CHECK(b5->entries()[0].generator == 2);
  CHECK(b5->entries()[0].order == 4);

  auto b8 = canonical_generators(8);
  REQUIRE(b8->size() == 2);
  CHECK(b8->entries()[0].generator == 7);
  CHECK(b8->entries()[0].order == 2);
  CHECK(b8->entries()[1].generator == 5);
  CHECK(b8->entries()[1].order == 2);

  CHECK(canonical_generators(1)->size() == 0);
  CHECK(canonical_generators(2)->size() == 0);

  // smallest primitive root mod p^2 is primitive mod p^k; check order directly
  auto b9 = canonical_generators(9);
  REQUIRE(b9->size() == 1);
  CHECK(b9->entries()[0].generator == 2);
  CHECK(b9->entries()[0].order == 6);
  CHECK(order_dividing(2, 9, 6) == 6);
}

TEST_CASE("evaluation basics") {
  auto ctx = ctx192();
  DirichletCharacter leg5 = parse_character_label("5:2");
  CHECK(leg5.order() == 2);
  CHECK(leg5.evaluate(10, ctx).is_zero());
  CHECK(within(leg5.evaluate(2, ctx), ctx.complex(-1, 0), ctx));

  DirichletCharacter chi4 = parse_character_label("5:1");
  CHECK(chi4.order() == 4);
  CHECK(within(chi4.evaluate(2, ctx), ctx.complex(0, 1), ctx));
  CHECK(within(chi4.evaluate(3, ctx), ctx.complex(0, -1), ctx));  // 3 = 2^3 mod 5
  CHECK(abs(abs(chi4.evaluate(3, ctx)) - ctx.real(1l)) < ctx.tolerance());
}

TEST_CASE("order and parity") {
  DirichletCharacter triv = principal_character(1);
  CHECK(triv.order() == 1);
  CHECK(triv.parity() == 1);
  CHECK(parse_character_label("5:2").parity() == 1);   // 5 = 1 mod 4
  CHECK(parse_character_label("3:1").parity() == -1);  // Legendre mod 3 is odd
  CHECK(parse_character_label("3:1").order() == 2);
}

TEST_CASE("conductor") {
  CHECK(principal_character(1).conductor() == 1);
  CHECK(parse_character_label("5:2").conductor() == 5);
  // mod 9 character of order 2 factors through mod 3
  DirichletCharacter lifted = parse_character_label("9:3");
  CHECK(lifted.order() == 2);
  CHECK(lifted.conductor() == 3);
  CHECK(!lifted.is_primitive());
  // 2-power conductors
  auto chars8 = enumerate_characters(8);
  std::map<std::string, std::uint64_t> f;
  for (const auto& c : chars8) f[c.label()] = c.conductor();
  CHECK(f["8:0,0"] == 1);
  CHECK(f["8:1,0"] == 4);   // lift of the mod-4 character
  CHECK(f["8:0,1"] == 8);
  CHECK(f["8:1,1"] == 8);
}

TEST_CASE("enumeration counts") {
  CHECK(enumerate_characters(1).size() == 1);
  auto c5 = enumerate_characters(5);
  CHECK(c5.size() == 4);
  CHECK(enumerate_characters(5, true).size() == 3);  // p - 2 primitive for prime p
  CHECK(enumerate_characters(9, true).size() == 4);  // phi(9) - phi(3)
  // no primitive characters for N = 2 mod 4
  CHECK(enumerate_characters(2, true).empty());
  CHECK(enumerate_characters(6, true).empty());
  // lexicographic exponent vectors, each exactly once
  std::set<std::vector<std::uint64_t>> seen;
  auto c45 = enumerate_characters(45);
  for (const auto& c : c45) seen.insert(c.exponents());
  CHECK(c45.size() == 24);
  CHECK(seen.size() == 24);
  for (std::size_t i = 1; i < c45.size(); ++i)
    CHECK(c45[i - 1].exponents() < c45[i].exponents());
}

TEST_CASE("kronecker examples and Euler criterion") {
  for (std::int64_t a : {-7l, -1l, 0l, 1l, 2l, 9l, 100l}) CHECK(kronecker(a, 1) == 1);
  CHECK(kronecker(2, 7) == 1);
  CHECK(kronecker(-1, 3) == -1);
  CHECK(kronecker(-6, 13) == -1);
  for (std::int64_t p = 3; p <= 200; p += 2) {
    if (!is_prime(static_cast<std::uint64_t>(p))) continue;
    for (std::int64_t a = 1; a < p; ++a) {
      std::uint64_t euler = pow_mod(static_cast<std::uint64_t>(a),
                                    static_cast<std::uint64_t>((p - 1) / 2),
                                    static_cast<std::uint64_t>(p));
      int expected = euler == 1 ? 1 : -1;
      CHECK(kronecker(a, p) == expected);
    }
  }
}

TEST_CASE("kronecker agrees with gmp on random inputs") {
  std::mt19937_64 gen(99);
  for (int t = 0; t < 10000; ++t) {
    std::int64_t a = static_cast<std::int64_t>(gen() % 20001) - 10000;
    std::int64_t b = static_cast<std::int64_t>(gen() % 20001) - 10000;
    mpz_class za(static_cast<long>(a)), zb(static_cast<long>(b));
    CHECK(kronecker(a, b) == mpz_kronecker(za.get_mpz_t(), zb.get_mpz_t()));
  }
}

TEST_CASE("char_power") {
  DirichletCharacter chi4 = parse_character_label("5:1");
  CHECK(chi4.power(1) == chi4);
  CHECK(chi4.power(2).order() == 2);
  DirichletCharacter leg5 = parse_character_label("5:2");
  CHECK(leg5.conjugate() == leg5);
  CHECK(chi4.conjugate() == parse_character_label("5:3"));
}

TEST_CASE("enumerate_X counts and parity") {
  CHECK(enumerate_X(5, 2).size() == 1);
  CHECK(enumerate_X(7, 3).size() == 1);
  CHECK(enumerate_X(13, 12).size() == 2);
  CHECK(enumerate_X(5, 1).empty());
  CHECK(enumerate_X(7, 5).empty());  // 5 does not divide 6
  for (std::uint64_t p = 3; p <= 100; p += 2) {
    if (!is_prime(p)) continue;
    for (std::uint64_t m = 1; m <= p - 1; ++m) {
      if ((p - 1) % m) continue;
      auto X = enumerate_X(p, m);
      std::uint64_t expected = m == 1 ? 0 : (m == 2 ? 1 : euler_phi(m) / 2);
      CHECK(X.size() == expected);
      int parity = 0;
      for (const auto& chi : X) {
        CHECK(chi.order() == m);
        CHECK(chi.conductor() == p);
        if (parity == 0)
          parity = chi.parity();
        else
          CHECK(chi.parity() == parity);  // one parity per X(p, m)
      }
    }
  }
}

TEST_CASE("multiplicativity on random coprime pairs") {
  auto ctx = ctx192();
  std::mt19937_64 gen(2024);
  int done = 0;
  while (done < 10000) {
    std::uint64_t N = gen() % 1000 + 1;
    auto basis = canonical_generators(N);
    std::vector<std::uint64_t> exps(basis->size());
    for (std::size_t i = 0; i < exps.size(); ++i) exps[i] = gen() % basis->entries()[i].order;
    DirichletCharacter chi(basis, exps);
    std::int64_t a = static_cast<std::int64_t>(gen() % (4 * N)) + 1;
    std::int64_t b = static_cast<std::int64_t>(gen() % (4 * N)) + 1;
    if (std::gcd<std::int64_t>(a, static_cast<std::int64_t>(N)) != 1) continue;
    if (std::gcd<std::int64_t>(b, static_cast<std::int64_t>(N)) != 1) continue;
    CHECK(within(chi.evaluate(a * b, ctx), chi.evaluate(a, ctx) * chi.evaluate(b, ctx), ctx));
    ++done;
  }
}

namespace {
/// Independent oracle: per-component character values as complex doubles from
/// freshly walked power tables, multiplied straight together.
std::complex<double> oracle_value(const DirichletCharacter& chi, std::uint64_t n) {
  const auto& basis = chi.basis();
  std::uint64_t N = basis.modulus();
  if (std::gcd(n % N, N) != 1 && N > 1) return {0.0, 0.0};
  std::complex<double> acc(1.0, 0.0);
  const double two_pi = 6.283185307179586476925286766559;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& e = basis.entries()[i];
    std::uint64_t q = e.prime_power;
    std::uint64_t r = n % q;
    // walk the cyclic part; the 2^k sign component needs the joint split
    if (q % 2 == 0 && e.generator == q - 1 && q >= 8) {
      bool found = false;
      std::uint64_t x = 1;
      for (std::uint64_t j = 0; j < basis.entries()[i + 1].order && !found; ++j) {
        if (x == r) found = true;
        x = mul_mod(x, 5, q);
      }
      std::uint64_t a = found ? 0 : 1;
      acc *= std::polar(1.0, two_pi * static_cast<double>(chi.exponents()[i] * a) / 2.0);
      continue;
    }
    std::uint64_t target = r;
    if (q % 2 == 0 && q >= 8) {
      // 5-part: match either r or q - r
      std::uint64_t x = 1;
      std::uint64_t j = 0;
      for (; j < e.order; ++j) {
        if (x == r || x == q - r) break;
        x = mul_mod(x, 5, q);
      }
      acc *= std::polar(1.0, two_pi * static_cast<double>(chi.exponents()[i]) *
                                 static_cast<double>(j) / static_cast<double>(e.order));
      continue;
    }
    std::uint64_t x = 1, j = 0;
    for (; j < e.order; ++j) {
      if (x == target) break;
      x = mul_mod(x, e.generator, q);
    }
    acc *= std::polar(1.0, two_pi * static_cast<double>(chi.exponents()[i]) *
                               static_cast<double>(j) / static_cast<double>(e.order));
  }
  return acc;
}
}  // namespace

TEST_CASE("exhaustive table oracle for all moduli up to 50") {
  auto ctx = ctx192();
  for (std::uint64_t N = 1; N <= 50; ++N) {
    for (const auto& chi : enumerate_characters(N)) {
      for (std::uint64_t n = 0; n < N || (N == 1 && n < 3); ++n) {
        BigComplex lib = chi.evaluate(static_cast<std::int64_t>(n), ctx);
        std::complex<double> want = oracle_value(chi, n);
        CHECK(std::abs(lib.re().to_double() - want.real()) < 1e-9);
        CHECK(std::abs(lib.im().to_double() - want.imag()) < 1e-9);
      }
    }
  }
}

TEST_CASE("bsgs discrete logs above the table threshold") {
  auto ctx = ctx192();
  // 65539 is prime with phi = 65538 > 2^16, so evaluation goes through BSGS
  const std::uint64_t p = 65539;
  REQUIRE(is_prime(p));
  auto basis = canonical_generators(p);
  REQUIRE(basis->entries()[0].order == p - 1);
  DirichletCharacter quad(basis, {(p - 1) / 2});
  std::mt19937_64 gen(5);
  for (int t = 0; t < 25; ++t) {
    std::uint64_t n = gen() % (p - 1) + 1;
    int euler = pow_mod(n, (p - 1) / 2, p) == 1 ? 1 : -1;
    BigComplex v = quad.evaluate(static_cast<std::int64_t>(n), ctx);
    CHECK(within(v, ctx.complex(euler, 0), ctx));
  }
}

TEST_CASE("label grammar") {
  CHECK(parse_character_label("5:1").label() == "5:1");
  CHECK(parse_character_label("45:3,1").label() == "45:3,1");
  CHECK(principal_character(1).label() == "1:");
  CHECK_THROWS_AS(parse_character_label("nonsense"), domain_error);
  CHECK_THROWS_AS(parse_character_label("5:9"), domain_error);    // exponent out of range
  CHECK_THROWS_AS(parse_character_label("5:1,2"), domain_error);  // wrong arity
  CHECK_THROWS_AS(parse_character_label("0:"), domain_error);
}
