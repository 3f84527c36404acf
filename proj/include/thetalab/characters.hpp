#pragma once

// Dirichlet characters for arbitrary modulus: canonical generator bases,
// exponent-vector representation, evaluation through discrete logs,
// conductor/order/parity, enumeration, and the conjugation-class sets X(p,m).

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "thetalab/errors.hpp"
#include "thetalab/intmath.hpp"
#include "thetalab/numkernel.hpp"

namespace thetalab {

/// One cyclic factor of (Z/NZ)*: generator g of order d inside the residues
/// mod the prime power q. For 2^k (k >= 3) there are two entries on the same
/// q: (-1 mod q, order 2) and (5, order 2^(k-2)).
struct GeneratorEntry {
  std::uint64_t prime_power;
  std::uint64_t generator;
  std::uint64_t order;
};

namespace detail {
constexpr std::uint64_t kDlogTableThreshold = 1u << 16;
constexpr std::uint32_t kNoDlog = 0xffffffffu;
}  // namespace detail

class GeneratorBasis {
 public:
  explicit GeneratorBasis(std::uint64_t modulus) : modulus_(modulus) {
    if (modulus == 0) throw domain_error("modulus must be positive");
    for (const auto& pp : factorize(modulus)) {
      if (pp.prime == 2) {
        if (pp.exponent == 1) continue;  // (Z/2)* is trivial
        if (pp.exponent == 2) {
          entries_.push_back({4, 3, 2});
          build_cyclic_table(entries_.size() - 1);
        } else {
          const std::uint64_t q = pp.value;
          entries_.push_back({q, q - 1, 2});
          entries_.push_back({q, 5, q / 4});
          build_two_part_tables(q);
        }
      } else {
        std::uint64_t d = (pp.prime - 1) * (pp.value / pp.prime);
        std::uint64_t g = primitive_root_mod_p2(pp.prime) % pp.value;
        entries_.push_back({pp.value, g, d});
        build_cyclic_table(entries_.size() - 1);
      }
    }
    exponent_ = 1;
    for (const auto& e : entries_) exponent_ = std::lcm(exponent_, e.order);
  }

  std::uint64_t modulus() const { return modulus_; }
  const std::vector<GeneratorEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  /// Exponent of the unit group: lcm of the cyclic orders. Every character
  /// value is a root of unity of this order.
  std::uint64_t group_exponent() const { return exponent_; }
  std::uint64_t phi() const {
    std::uint64_t p = 1;
    for (const auto& e : entries_) p *= e.order;
    return p;
  }

  /// Discrete log of n against each generator; false when gcd(n, N) > 1.
  bool dlog(std::uint64_t n, std::span<std::uint64_t> out) const {
    n %= modulus_;
    if (std::gcd(n, modulus_) != 1) return false;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      const auto& e = entries_[i];
      std::uint64_t r = n % e.prime_power;
      if (!tables_[i].empty()) {
        out[i] = tables_[i][r];
      } else {
        out[i] = dlog_bsgs(i, r);
      }
    }
    return true;
  }

 private:
  void build_cyclic_table(std::size_t idx) {
    const auto& e = entries_[idx];
    if (e.order > detail::kDlogTableThreshold) {
      tables_.emplace_back();  // resolved by BSGS on demand
      return;
    }
    std::vector<std::uint32_t> t(e.prime_power, detail::kNoDlog);
    std::uint64_t x = 1;
    for (std::uint64_t j = 0; j < e.order; ++j) {
      t[x] = static_cast<std::uint32_t>(j);
      x = mul_mod(x, e.generator, e.prime_power);
    }
    tables_.push_back(std::move(t));
  }

  // joint table for 2^k, k >= 3: every odd residue is (-1)^a 5^b
  void build_two_part_tables(std::uint64_t q) {
    const std::uint64_t half = q / 4;
    if (half > detail::kDlogTableThreshold) {
      tables_.emplace_back();
      tables_.emplace_back();
      return;
    }
    std::vector<std::uint32_t> ta(q, detail::kNoDlog), tb(q, detail::kNoDlog);
    std::uint64_t x = 1;
    for (std::uint64_t b = 0; b < half; ++b) {
      ta[x] = 0;
      tb[x] = static_cast<std::uint32_t>(b);
      ta[q - x] = 1;
      tb[q - x] = static_cast<std::uint32_t>(b);
      x = mul_mod(x, 5, q);
    }
    tables_.push_back(std::move(ta));
    tables_.push_back(std::move(tb));
  }

  inline static constexpr std::uint64_t kNoDlog64 = ~0ull;

  std::uint64_t dlog_bsgs(std::size_t idx, std::uint64_t r) const {
    const auto& e = entries_[idx];
    const std::uint64_t q = e.prime_power;
    if (q % 2 == 0) {
      // joint two-generator case: decide the sign part first
      if (idx + 1 < entries_.size() && entries_[idx + 1].prime_power == q &&
          entries_[idx].generator == q - 1) {
        std::uint64_t b = bsgs_cyclic(5, entries_[idx + 1].order, r, q);
        return b == kNoDlog64 ? 1 : 0;
      }
      // the order-2^(k-2) entry: try 5^b = r, else 5^b = -r
      std::uint64_t b = bsgs_cyclic(5, e.order, r, q);
      if (b != kNoDlog64) return b;
      return bsgs_cyclic(5, e.order, q - r, q);
    }
    return bsgs_cyclic(e.generator, e.order, r, q);
  }

  /// Baby-step giant-step in the cyclic group <g> of order d mod q;
  /// returns kNoDlog64 when r is not a power of g.
  static std::uint64_t bsgs_cyclic(std::uint64_t g, std::uint64_t d, std::uint64_t r,
                                   std::uint64_t q) {
    std::uint64_t m = 1;
    while (m * m < d) ++m;
    std::unordered_map<std::uint64_t, std::uint64_t> baby;
    baby.reserve(m * 2);
    std::uint64_t x = 1;
    for (std::uint64_t j = 0; j < m; ++j) {
      baby.emplace(x, j);
      x = mul_mod(x, g, q);
    }
    const std::uint64_t giant = inv_mod(pow_mod(g, m, q), q);
    std::uint64_t y = r % q;
    for (std::uint64_t i = 0; i * m <= d; ++i) {
      auto it = baby.find(y);
      if (it != baby.end()) {
        std::uint64_t e = i * m + it->second;
        if (e < d) return e;
      }
      y = mul_mod(y, giant, q);
    }
    return kNoDlog64;
  }

  std::uint64_t modulus_;
  std::vector<GeneratorEntry> entries_;
  std::vector<std::vector<std::uint32_t>> tables_;
  std::uint64_t exponent_ = 1;
};

inline std::shared_ptr<const GeneratorBasis> canonical_generators(std::uint64_t N) {
  return std::make_shared<const GeneratorBasis>(N);
}

/// A Dirichlet character mod N as an exponent vector over the canonical
/// generators: chi(g_i) = e(e_i / d_i). Order, parity and conductor are
/// cached at construction.
class DirichletCharacter {
 public:
  DirichletCharacter(std::shared_ptr<const GeneratorBasis> basis, std::vector<std::uint64_t> exps)
      : basis_(std::move(basis)), exps_(std::move(exps)) {
    const auto& es = basis_->entries();
    if (exps_.size() != es.size()) throw domain_error("exponent vector length mismatch");
    for (std::size_t i = 0; i < exps_.size(); ++i) exps_[i] %= es[i].order;
    order_ = 1;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      std::uint64_t d = es[i].order;
      order_ = std::lcm(order_, d / std::gcd(d, exps_[i]));
    }
    parity_ = compute_parity();
    conductor_ = compute_conductor();
  }

  std::uint64_t modulus() const { return basis_->modulus(); }
  const GeneratorBasis& basis() const { return *basis_; }
  std::shared_ptr<const GeneratorBasis> basis_ptr() const { return basis_; }
  const std::vector<std::uint64_t>& exponents() const { return exps_; }
  std::uint64_t order() const { return order_; }
  /// chi(-1): +1 even, -1 odd.
  int parity() const { return parity_; }
  /// epsilon = (1 - chi(-1))/2.
  int eps() const { return parity_ == 1 ? 0 : 1; }
  std::uint64_t conductor() const { return conductor_; }
  bool is_primitive() const { return conductor_ == modulus(); }
  bool is_trivial() const { return order_ == 1; }

  /// k with chi(n) = e(k / group_exponent()), or nullopt when gcd(n,N) > 1.
  std::optional<std::uint64_t> value_index(std::int64_t n) const {
    const std::uint64_t N = modulus();
    std::uint64_t r = static_cast<std::uint64_t>(((n % static_cast<std::int64_t>(N)) +
                                                  static_cast<std::int64_t>(N)) %
                                                 static_cast<std::int64_t>(N));
    std::uint64_t k[16];
    if (exps_.size() > 16) throw domain_error("generator basis unexpectedly large");
    if (!basis_->dlog(r, std::span<std::uint64_t>(k, exps_.size()))) return std::nullopt;
    const std::uint64_t E = basis_->group_exponent();
    std::uint64_t acc = 0;
    const auto& es = basis_->entries();
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      std::uint64_t term = mul_mod(mul_mod(exps_[i], k[i], E), E / es[i].order, E);
      acc = (acc + term) % E;
    }
    return acc;
  }

  BigComplex evaluate(std::int64_t n, const PrecisionContext& ctx) const {
    auto k = value_index(n);
    if (!k) return ctx.complex(0, 0);
    return root_of_unity(static_cast<long>(*k), static_cast<long>(basis_->group_exponent()), ctx);
  }

  DirichletCharacter power(std::int64_t s) const {
    std::vector<std::uint64_t> out(exps_.size());
    const auto& es = basis_->entries();
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      std::int64_t d = static_cast<std::int64_t>(es[i].order);
      std::int64_t e = (static_cast<std::int64_t>(exps_[i]) * (s % d)) % d;
      if (e < 0) e += d;
      out[i] = static_cast<std::uint64_t>(e);
    }
    return DirichletCharacter(basis_, std::move(out));
  }
  DirichletCharacter conjugate() const { return power(-1); }

  /// Label grammar "N:e1,e2,...,ek" (exponents in generator order).
  std::string label() const {
    std::ostringstream os;
    os << modulus() << ':';
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      if (i) os << ',';
      os << exps_[i];
    }
    return os.str();
  }

  friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
    return a.modulus() == b.modulus() && a.exps_ == b.exps_;
  }

 private:
  int compute_parity() const {
    auto k = value_index(-1);
    return (k && *k != 0) ? -1 : 1;
  }

  std::uint64_t compute_conductor() const {
    std::uint64_t f = 1;
    const auto& es = basis_->entries();
    for (std::size_t i = 0; i < es.size(); ++i) {
      const auto& e = es[i];
      if (e.prime_power % 2 == 0 && e.generator == e.prime_power - 1 && e.prime_power >= 8) {
        // joint 2^k component: entries i (sign part) and i+1 (5 part)
        std::uint64_t e2 = exps_[i + 1];
        std::uint64_t half = es[i + 1].order;
        std::uint64_t o2 = e2 ? half / std::gcd(half, e2) : 1;
        if (o2 > 1)
          f *= 4 * o2;
        else if (exps_[i] % 2)
          f *= 4;
        ++i;  // consumed the paired entry
      } else if (e.prime_power == 4) {
        if (exps_[i] % 2) f *= 4;
      } else {
        std::uint64_t p = factorize(e.prime_power)[0].prime;
        std::uint64_t d = e.order;
        std::uint64_t mloc = exps_[i] ? d / std::gcd(d, exps_[i]) : 1;
        if (mloc > 1) {
          std::uint64_t pj = p, phi = p - 1;
          while (phi % mloc != 0) {
            pj *= p;
            phi *= p;
          }
          f *= pj;
        }
      }
    }
    return f;
  }

  std::shared_ptr<const GeneratorBasis> basis_;
  std::vector<std::uint64_t> exps_;
  std::uint64_t order_;
  int parity_;
  std::uint64_t conductor_;
};

inline DirichletCharacter principal_character(std::uint64_t N) {
  auto basis = canonical_generators(N);
  return DirichletCharacter(basis, std::vector<std::uint64_t>(basis->size(), 0));
}

/// All phi(N) characters mod N in lexicographic exponent order, optionally
/// filtered to the primitive ones (conductor == N).
inline std::vector<DirichletCharacter> enumerate_characters(std::uint64_t N,
                                                            bool primitive_only = false) {
  auto basis = canonical_generators(N);
  std::vector<DirichletCharacter> out;
  std::vector<std::uint64_t> exps(basis->size(), 0);
  for (;;) {
    DirichletCharacter chi(basis, exps);
    if (!primitive_only || chi.is_primitive()) out.push_back(chi);
    // odometer with the last index fastest = lexicographic vector order
    std::size_t i = exps.size();
    while (i > 0) {
      --i;
      if (++exps[i] < basis->entries()[i].order) break;
      exps[i] = 0;
      if (i == 0) return out;
    }
    if (exps.empty()) return out;
  }
}

/// Parse "N:e1,e2,...". Throws domain_error on malformed input.
inline DirichletCharacter parse_character_label(const std::string& label) {
  auto colon = label.find(':');
  if (colon == std::string::npos) throw domain_error("character label needs 'N:exps'");
  std::uint64_t N = 0;
  try {
    N = std::stoull(label.substr(0, colon));
  } catch (...) {
    throw domain_error("bad modulus in character label");
  }
  auto basis = canonical_generators(N);
  std::vector<std::uint64_t> exps;
  std::string rest = label.substr(colon + 1);
  if (!rest.empty()) {
    std::istringstream is(rest);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      try {
        exps.push_back(std::stoull(tok));
      } catch (...) {
        throw domain_error("bad exponent in character label");
      }
    }
  }
  if (exps.size() != basis->size())
    throw domain_error("character label has wrong exponent count for modulus");
  for (std::size_t i = 0; i < exps.size(); ++i)
    if (exps[i] >= basis->entries()[i].order)
      throw domain_error("character label exponent out of range");
  return DirichletCharacter(basis, std::move(exps));
}

/// Canonical representative of {chi, conj(chi)}: the lexicographically
/// smaller exponent vector.
inline DirichletCharacter conjugacy_representative(const DirichletCharacter& chi) {
  DirichletCharacter bar = chi.conjugate();
  return bar.exponents() < chi.exponents() ? bar : chi;
}

/// X(p, m): conductor-p order-m characters up to conjugation, one
/// representative each (p an odd prime, m | p-1). X(p, 1) is empty: the
/// trivial character has conductor 1.
inline std::vector<DirichletCharacter> enumerate_X(std::uint64_t p, std::uint64_t m) {
  if (p < 3 || p % 2 == 0 || !is_prime(p)) throw domain_error("enumerate_X needs an odd prime");
  if (m == 0) throw domain_error("enumerate_X: order must be positive");
  std::vector<DirichletCharacter> out;
  if ((p - 1) % m != 0 || m == 1) return out;
  auto basis = canonical_generators(p);
  const std::uint64_t step = (p - 1) / m;
  for (std::uint64_t u = 1; 2 * u <= m; ++u) {
    if (std::gcd(u, m) != 1) continue;
    out.emplace_back(basis, std::vector<std::uint64_t>{step * u});
  }
  // m = 2: the single character u=1 is real (self-conjugate)
  return out;
}

/// Primitive conductor-N order-m characters up to conjugation, for any N.
/// Agrees with enumerate_X when N is an odd prime.
inline std::vector<DirichletCharacter> enumerate_X_general(std::uint64_t N, std::uint64_t m) {
  std::vector<DirichletCharacter> out;
  for (const auto& chi : enumerate_characters(N, /*primitive_only=*/true)) {
    if (chi.order() != m) continue;
    if (conjugacy_representative(chi).exponents() != chi.exponents()) continue;
    out.push_back(chi);
  }
  return out;
}

}  // namespace thetalab
