#pragma once

// Small exact-integer helpers: modular arithmetic, factorization by trial
// division, primitive roots. Sized for moduli up to a few million.

#include <cstdint>
#include <numeric>
#include <vector>

#include "thetalab/errors.hpp"

namespace thetalab {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t acc = 1;
  base %= m;
  while (e) {
    if (e & 1) acc = mul_mod(acc, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return acc;
}

/// Inverse of a mod m (gcd(a, m) must be 1).
inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw domain_error("inv_mod: arguments not coprime");
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
  std::uint64_t value;  // prime^exponent
};

inline std::vector<PrimePower> factorize(std::uint64_t n) {
  std::vector<PrimePower> out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    PrimePower pp{p, 0, 1};
    while (n % p == 0) {
      n /= p;
      ++pp.exponent;
      pp.value *= p;
    }
    out.push_back(pp);
  }
  if (n > 1) out.push_back({n, 1, n});
  return out;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2))
    if (n % p == 0) return false;
  return true;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t phi = 1;
  for (const auto& pp : factorize(n)) phi *= pp.value / pp.prime * (pp.prime - 1);
  return phi;
}

/// Multiplicative order of a mod m given that it divides d.
inline std::uint64_t order_dividing(std::uint64_t a, std::uint64_t m, std::uint64_t d) {
  std::uint64_t ord = d;
  for (const auto& pp : factorize(d)) {
    for (unsigned i = 0; i < pp.exponent && pow_mod(a, ord / pp.prime, m) == 1; ++i)
      ord /= pp.prime;
  }
  return ord;
}

/// Smallest positive primitive root mod p^2 (p an odd prime); such a root is
/// primitive mod p^k for every k >= 1.
inline std::uint64_t primitive_root_mod_p2(std::uint64_t p) {
  const std::uint64_t p2 = p * p;
  const std::uint64_t phi = p * (p - 1);
  auto prime_factors = factorize(phi);
  for (std::uint64_t g = 2; g < p2; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (const auto& pp : prime_factors) {
      if (pow_mod(g, phi / pp.prime, p2) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw domain_error("no primitive root found (non-prime input?)");
}

/// Kronecker symbol (a/b), full extension to all integers.
inline int kronecker(std::int64_t a, std::int64_t b) {
  if (b == 0) return (a == 1 || a == -1) ? 1 : 0;
  int k = 1;
  if (b < 0) {
    b = -b;
    if (a < 0) k = -k;
  }
  while (b % 2 == 0) {
    b /= 2;
    if (a % 2 == 0) return 0;
    std::int64_t a8 = a % 8;
    if (a8 < 0) a8 += 8;
    if (a8 == 3 || a8 == 5) k = -k;
  }
  a %= b;
  if (a < 0) a += b;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      std::int64_t b8 = b % 8;
      if (b8 == 3 || b8 == 5) k = -k;
    }
    std::swap(a, b);
    if (a % 4 == 3 && b % 4 == 3) k = -k;
    a %= b;
  }
  return b == 1 ? k : 0;
}

}  // namespace thetalab
