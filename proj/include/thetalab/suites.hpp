#pragma once

// Seeded randomized verification suites for the transformation laws: matrix
// samplers for SL2(Z), Gamma_theta cap Gamma_0(N) and Gamma(w), the tau
// sampler, and one driver per law returning the worst residual. Base points
// are drawn from the box [-1/2,1/2] x [1/2,2]i; for matrices with |c| >= 3
// the box is recentred at -d/c and rescaled by 1/|c| so that both gamma(tau)
// and tau keep workable imaginary parts.

#include <cstdint>
#include <random>
#include <vector>

#include "thetalab/characters.hpp"
#include "thetalab/modularforms.hpp"
#include "thetalab/numkernel.hpp"
#include "thetalab/parallel.hpp"
#include "thetalab/rootnumber.hpp"

namespace thetalab {

class SuiteRng {
 public:
  explicit SuiteRng(std::uint64_t seed) : gen_(seed) {}
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(gen_);
  }
  double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(gen_); }

 private:
  std::mt19937_64 gen_;
};

inline BigComplex tau_in_box(SuiteRng& rng, const PrecisionContext& ctx) {
  double x = rng.unit() - 0.5;
  double y = 0.5 + 1.5 * rng.unit();
  return {ctx.real(x), ctx.real(y)};
}

/// Base point adapted to gamma: centred at -d/c, scaled by 1/|c|, so that
/// Im(tau) and Im(gamma tau) are both of order 1/|c|.
inline BigComplex tau_for_matrix(const TransformMatrix& g, SuiteRng& rng,
                                 const PrecisionContext& ctx) {
  if (g.c == 0 || std::abs(g.c) < 3) return tau_in_box(rng, ctx);
  double jitter = rng.unit() - 0.5;
  double y = 0.5 + 1.5 * rng.unit();
  long c = static_cast<long>(std::abs(g.c));
  BigFloat x = BigFloat::of(static_cast<long>(-g.d), ctx.prec()) /
                   static_cast<long>(g.c) +
               ctx.real(jitter) / c;
  return {std::move(x), ctx.real(y) / c};
}

inline TransformMatrix random_sl2(SuiteRng& rng, std::int64_t max_entry) {
  for (;;) {
    TransformMatrix m{rng.uniform(-max_entry, max_entry), rng.uniform(-max_entry, max_entry),
                      rng.uniform(-max_entry, max_entry), rng.uniform(-max_entry, max_entry)};
    if (m.det() == 1) return m;
  }
}

/// Random element of Gamma_theta cap Gamma_0(N): pick c = 0 mod N and d
/// coprime, complete to determinant 1, retry until the parity pattern holds.
inline TransformMatrix random_gamma_theta_gamma0(std::int64_t N, SuiteRng& rng,
                                                 std::int64_t size = 8) {
  for (;;) {
    std::int64_t c = N * rng.uniform(-size, size);
    std::int64_t d = rng.uniform(-size * N, size * N);
    TransformMatrix m{0, 0, c, d};
    if (c == 0) {
      if (d != 1 && d != -1) continue;
      m.a = d;
      m.b = rng.uniform(-size, size) * d;
    } else {
      if (d == 0 || std::gcd(std::abs(c), std::abs(d)) != 1) continue;
      std::int64_t ac = std::abs(c);
      std::int64_t dm = ((d % ac) + ac) % ac;
      if (ac == 1) {
        m.a = rng.uniform(-size, size);
      } else {
        m.a = static_cast<std::int64_t>(inv_mod(static_cast<std::uint64_t>(dm),
                                                static_cast<std::uint64_t>(ac)));
      }
      m.b = (m.a * d - 1) / c;
      if (m.det() != 1) continue;
    }
    if (m.in_gamma_theta()) return m;
  }
}

/// Random element of Gamma(w): a = 1 + w alpha, b = w beta, d solved from the
/// congruence d (1 + w alpha) = 1 mod w b, c = (ad - 1)/b.
inline TransformMatrix random_gamma_principal(std::int64_t w, SuiteRng& rng) {
  for (;;) {
    std::int64_t alpha = rng.uniform(-2, 2);
    std::int64_t beta = rng.uniform(1, 3) * (rng.uniform(0, 1) ? 1 : -1);
    std::int64_t a = 1 + w * alpha;
    std::int64_t b = w * beta;
    std::int64_t mod = std::abs(w * beta);
    if (std::gcd(std::abs(a), mod) != 1) continue;
    std::int64_t am = ((a % mod) + mod) % mod;
    std::int64_t ainv = static_cast<std::int64_t>(
        inv_mod(static_cast<std::uint64_t>(am), static_cast<std::uint64_t>(mod)));
    std::int64_t delta = ((-alpha % mod) * (ainv % mod)) % mod;
    if (delta < 0) delta += mod;
    std::int64_t d = 1 + w * delta;
    if ((a * d - 1) % b != 0) continue;
    std::int64_t c = (a * d - 1) / b;
    if (c % w != 0) continue;
    TransformMatrix m{a, b, c, d};
    if (m.det() != 1) continue;
    if (m.c == 0 && m.b == 0 && m.a == 1) continue;  // identity, not interesting
    return m;
  }
}

struct SuiteResult {
  std::size_t cases = 0;
  BigFloat max_residual;

  void absorb(const BigFloat& r) {
    ++cases;
    if (cases == 1 || r > max_residual) max_residual = r;
  }
};

/// Functional equation over every primitive character with modulus in Ns,
/// trials base points each, with W = G(chibar)/(i^eps sqrt(N)).
inline SuiteResult funceq_suite(const std::vector<std::uint64_t>& Ns, int trials, SuiteRng& rng,
                                const PrecisionContext& ctx) {
  SuiteResult out;
  for (std::uint64_t N : Ns) {
    for (const auto& chi : enumerate_characters(N, /*primitive_only=*/true)) {
      BigComplex W = root_number_gauss(chi, ctx);
      for (int t = 0; t < trials; ++t) {
        BigComplex tau = tau_in_box(rng, ctx);
        out.absorb(verify_functional_equation(chi, tau, W, ctx));
      }
    }
  }
  return out;
}

inline SuiteResult transform_suite(const std::vector<std::int64_t>& Ns, int matrices_per_N,
                                   SuiteRng& rng, const PrecisionContext& ctx) {
  SuiteResult out;
  for (std::int64_t N : Ns) {
    for (int t = 0; t < matrices_per_N; ++t) {
      TransformMatrix g = random_gamma_theta_gamma0(N, rng);
      BigComplex tau = tau_for_matrix(g, rng, ctx);
      for (std::int64_t h = 0; h < N; ++h) {
        int eps = static_cast<int>(rng.uniform(0, 1));
        out.absorb(verify_transform(g, N, h, eps, tau, ctx));
      }
    }
  }
  return out;
}

inline SuiteResult inversion_suite(int trials, SuiteRng& rng, const PrecisionContext& ctx) {
  SuiteResult out;
  for (int t = 0; t < trials; ++t) {
    std::int64_t N = 1 + 2 * rng.uniform(0, 7);  // odd N <= 15
    std::int64_t h = rng.uniform(0, N - 1);
    int eps = static_cast<int>(rng.uniform(0, 1));
    BigComplex tau = tau_in_box(rng, ctx);
    out.absorb(verify_inversion(N, h, eps, tau, ctx));
  }
  return out;
}

inline SuiteResult meyer_suite(int trials, std::int64_t max_entry, SuiteRng& rng,
                               const PrecisionContext& ctx) {
  SuiteResult out;
  for (int t = 0; t < trials; ++t) {
    TransformMatrix g = random_sl2(rng, max_entry);
    BigComplex tau = tau_for_matrix(g, rng, ctx);
    MultiplierResult mult = meyer_multiplier(g, ctx);
    BigComplex lhs = eta_at(g, tau, ctx);
    // Meyer's normalization: the law is stated for c > 0 (or c = 0, d > 0)
    TransformMatrix n = (g.c < 0 || (g.c == 0 && g.d < 0)) ? g.negated() : g;
    BigComplex nczd = tau * n.c + ctx.complex(static_cast<long>(n.d), 0);
    BigComplex rhs = mult.value * principal_power(nczd, 1, 2, ctx) * eta(tau, ctx);
    out.absorb(abs(lhs - rhs));
  }
  return out;
}

inline SuiteResult level_suite(const std::vector<std::int64_t>& Ns, int matrices_per_N,
                               SuiteRng& rng, const PrecisionContext& ctx) {
  SuiteResult out;
  for (std::int64_t N : Ns) {
    std::int64_t w = level_w(N);
    for (int t = 0; t < matrices_per_N; ++t) {
      TransformMatrix g = random_gamma_principal(w, rng);
      BigComplex tau = tau_for_matrix(g, rng, ctx);
      std::int64_t h = rng.uniform(0, N - 1);
      int eps = static_cast<int>(rng.uniform(0, 1));
      out.absorb(verify_level_invariance(N, h, eps, g, tau, ctx));
    }
  }
  return out;
}

/// Cross-check W_theta against W_gauss over all primitive chi with N <= Nmax.
struct CrossCheckResult {
  std::size_t checked = 0;
  std::size_t vanishing = 0;
  BigFloat max_diff;
  BigFloat max_modulus_error;

  void absorb(const BigFloat& d, const BigFloat& m) {
    ++checked;
    if (checked == 1 || d > max_diff) max_diff = d;
    if (checked == 1 || m > max_modulus_error) max_modulus_error = m;
  }
};

inline CrossCheckResult rootnumber_crosscheck(std::uint64_t Nmax, const PrecisionContext& ctx) {
  CrossCheckResult out;
  BigFloat one = BigFloat::of(1l, ctx.prec());
  for (std::uint64_t N = 1; N <= Nmax; ++N) {
    for (const auto& chi : enumerate_characters(N, /*primitive_only=*/true)) {
      try {
        BigComplex wt = root_number_theta(chi, ctx);
        BigComplex wg = root_number_gauss(chi, ctx);
        out.absorb(abs(wt - wg), abs(abs(wt) - one));
      } catch (const vanishing_theta_error&) {
        ++out.vanishing;
      }
    }
  }
  return out;
}

}  // namespace thetalab
