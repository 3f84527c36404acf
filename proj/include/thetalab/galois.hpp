#pragma once

// Shimura-reciprocity matrix machinery specialized to alpha = iN: the map
// g_alpha, the group W_{M,iN} = {(t, -N^2 s; s, t)}, the sign/label action on
// A- and B-values, determinant classes, class numbers of Z[ip], degree
// bounds, and the orbit products / polynomials.

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "thetalab/characters.hpp"
#include "thetalab/errors.hpp"
#include "thetalab/intmath.hpp"
#include "thetalab/modularforms.hpp"
#include "thetalab/numkernel.hpp"
#include "vendor_json.hpp"

namespace thetalab {

/// Parameters of the order/field setup for conductor N and character order m:
/// M = 24 m N^2, n = m for even m and 2m otherwise, w = 24N/(12,N).
struct OrderParams {
  std::uint64_t N;
  std::uint64_t m;
  int v;  // shared parity of X(N,m)
  std::uint64_t M;
  std::uint64_t n;
  std::uint64_t w;

  static OrderParams make(std::uint64_t N, std::uint64_t m, int parity) {
    if (N % 2 == 0) throw domain_error("OrderParams: N must be odd");
    OrderParams p;
    p.N = N;
    p.m = m;
    p.v = parity;
    p.M = 24 * m * N * N;
    p.n = (m % 2 == 0) ? m : 2 * m;
    p.w = static_cast<std::uint64_t>(level_w(static_cast<std::int64_t>(N)));
    return p;
  }
  int eps() const { return v == 1 ? 0 : 1; }
};

/// g_alpha for alpha with minimal polynomial X^2 + BX + C:
/// x = s alpha + t maps to ((t - B s, -C s), (s, t)) mod M.
inline std::array<std::array<std::uint64_t, 2>, 2> g_alpha(std::int64_t t, std::int64_t s,
                                                           std::int64_t B, std::int64_t C,
                                                           std::uint64_t M) {
  auto red = [&](__int128 x) {
    __int128 r = x % static_cast<__int128>(M);
    if (r < 0) r += M;
    return static_cast<std::uint64_t>(r);
  };
  return {{{red(static_cast<__int128>(t) - static_cast<__int128>(B) * s),
            red(-static_cast<__int128>(C) * s)},
           {red(s), red(t)}}};
}

/// Element (t, s) of W_{M,iN}, representing mu = (t, -N^2 s; s, t).
struct WElement {
  std::uint64_t t, s;

  std::uint64_t det(const OrderParams& p) const {
    unsigned __int128 acc = static_cast<unsigned __int128>(t) * t;
    acc += static_cast<unsigned __int128>(p.N) * p.N % p.M * s % p.M * s;
    return static_cast<std::uint64_t>(acc % p.M);
  }
  bool is_unit(const OrderParams& p) const { return std::gcd(det(p), p.M) == 1; }
  std::array<std::array<std::uint64_t, 2>, 2> matrix(const OrderParams& p) const {
    return g_alpha(static_cast<std::int64_t>(t), static_cast<std::int64_t>(s), 0,
                   static_cast<std::int64_t>(p.N * p.N), p.M);
  }
};

/// (B_chi | mu) = (-1)^(((N-v)/2)(t-1)) B_{chi^det(mu)}.
inline std::pair<int, DirichletCharacter> act_on_B(const WElement& mu, const OrderParams& p,
                                                   const DirichletCharacter& chi) {
  if (!mu.is_unit(p)) throw domain_error("act_on_B: det(mu) not a unit mod M");
  std::uint64_t d = mu.det(p);
  std::uint64_t half = (p.N - static_cast<std::uint64_t>(p.v == 1 ? 1 : -1)) / 2;  // (N-v)/2
  // only the parity of ((N-v)/2)(t-1) matters
  int sign = ((half % 2) * ((mu.t + 1) % 2)) % 2 ? -1 : 1;
  return {sign, chi.power(static_cast<std::int64_t>(d % p.m))};
}

/// (A_chi | mu)^n = (-1)^(((N-v)n/2)(t-1)) A_{chi^det(mu)}^n.
inline std::pair<int, DirichletCharacter> act_on_A_power(const WElement& mu, const OrderParams& p,
                                                         const DirichletCharacter& chi,
                                                         std::uint64_t n) {
  if (!mu.is_unit(p)) throw domain_error("act_on_A_power: det(mu) not a unit mod M");
  std::uint64_t d = mu.det(p);
  std::uint64_t nv = p.N - static_cast<std::uint64_t>(p.v == 1 ? 1 : -1);  // N - v, even
  std::uint64_t half = nv * n / 2;
  int sign = ((half % 2) * ((mu.t + 1) % 2)) % 2 ? -1 : 1;
  return {sign, chi.power(static_cast<std::int64_t>(d % p.m))};
}

/// Determinant classes realized by the unit group:
/// { +-(t^2+s^2) mod m : (t^2+p^2 s^2, 6mp) = 1 } with t, s searched over
/// [0, 6mp). The condition and the value are both 6mp-periodic, so the
/// search is exhaustive; it stops early once all of (Z/mZ)* has been seen.
inline std::set<std::uint64_t> determinant_classes(std::uint64_t p, std::uint64_t m) {
  if (m == 0) throw domain_error("determinant_classes: m must be positive");
  std::set<std::uint64_t> target;
  for (std::uint64_t u = 0; u < m; ++u)
    if (std::gcd(u, m) == 1) target.insert(u);
  if (m == 1) return {0};  // the trivial group

  std::set<std::uint64_t> found;
  const std::uint64_t bound = 6 * m * p;
  for (std::uint64_t t = 0; t < bound && found != target; ++t) {
    for (std::uint64_t s = 0; s < bound && found != target; ++s) {
      unsigned __int128 val = static_cast<unsigned __int128>(t) * t +
                              static_cast<unsigned __int128>(p) * p * s % bound * s;
      if (std::gcd(static_cast<std::uint64_t>(val % bound), bound) != 1) continue;
      std::uint64_t q = (t * t % m + s * s % m) % m;
      found.insert(q);
      found.insert((m - q) % m);
    }
  }
  return found;
}

enum class OrbitKind { B, B2, An, A2n };

inline const char* orbit_kind_name(OrbitKind k) {
  switch (k) {
    case OrbitKind::B: return "B";
    case OrbitKind::B2: return "B2";
    case OrbitKind::An: return "An";
    case OrbitKind::A2n: return "A2n";
  }
  return "?";
}

/// A Galois orbit of special values: the member values paired with their
/// character labels, plus the applicability verdict of the side condition.
struct OrbitReport {
  OrbitKind kind;
  OrderParams params;
  bool applicable;  // false = NotAnOrbit for this (p, m, v); values still returned
  std::vector<std::pair<std::string, BigComplex>> members;
  std::vector<BigComplex> symmetric_functions;  // e_1..e_k of the member values

  nlohmann::ordered_json to_json(int digits = 30) const {
    nlohmann::ordered_json j;
    j["kind"] = orbit_kind_name(kind);
    j["p"] = params.N;
    j["m"] = params.m;
    j["v"] = params.v;
    j["M"] = params.M;
    j["n"] = params.n;
    j["applicable"] = applicable;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [label, val] : members) {
      nlohmann::ordered_json e;
      e["label"] = label;
      e["re"] = val.re().str(digits);
      e["im"] = val.im().str(digits);
      arr.push_back(e);
    }
    j["members"] = arr;
    auto sf = nlohmann::ordered_json::array();
    for (const auto& v : symmetric_functions) {
      nlohmann::ordered_json e;
      e["re"] = v.re().str(digits);
      e["im"] = v.im().str(digits);
      sf.push_back(e);
    }
    j["symmetric_functions"] = sf;
    return j;
  }
};

namespace galois_detail {
inline std::vector<BigComplex> elementary_symmetric(const std::vector<BigComplex>& vals,
                                                    const PrecisionContext& ctx) {
  // coefficients of prod (X - v) expanded: poly[k] holds e_k with signs folded out later
  std::vector<BigComplex> e(vals.size() + 1, ctx.complex(0, 0));
  e[0] = ctx.complex(1, 0);
  std::size_t used = 0;
  for (const auto& v : vals) {
    ++used;
    for (std::size_t k = used; k >= 1; --k) e[k] = e[k] + v * e[k - 1];
  }
  return {e.begin() + 1, e.end()};
}
}  // namespace galois_detail

/// Evaluate one of the candidate Galois orbits for (p, m). Side conditions:
/// B needs p = v (mod 4); An needs m = 0 (mod 4) or p = v (mod 4);
/// B2 and A2n always apply.
inline OrbitReport orbit(std::uint64_t p, std::uint64_t m, OrbitKind kind,
                         const PrecisionContext& ctx) {
  auto X = enumerate_X(p, m);
  if (X.empty()) throw domain_error("orbit: X(p, m) is empty");
  int v = X.front().parity();
  for (const auto& chi : X)
    if (chi.parity() != v) throw domain_error("orbit: mixed parity in X(p, m)");
  OrderParams params = OrderParams::make(p, m, v);

  bool p_cong_v = (p % 4) == (v == 1 ? 1u : 3u);
  bool applicable = true;
  if (kind == OrbitKind::B) applicable = p_cong_v;
  if (kind == OrbitKind::An) applicable = (m % 4 == 0) || p_cong_v;

  OrbitReport rep{kind, params, applicable, {}, {}};
  std::vector<BigComplex> vals;
  for (const auto& chi : X) {
    if (kind == OrbitKind::B || kind == OrbitKind::B2) {
      BigFloat b = B_value(chi, ctx);
      BigFloat val = kind == OrbitKind::B ? b : b * b;
      rep.members.emplace_back(chi.label(), BigComplex(val));
      vals.emplace_back(BigComplex(val));
    } else {
      unsigned long e = static_cast<unsigned long>(kind == OrbitKind::An ? params.n : 2 * params.n);
      BigComplex a = pow_ui(A_value(chi, ctx), e);
      rep.members.emplace_back(chi.label(), a);
      vals.push_back(a);
      DirichletCharacter bar = chi.conjugate();
      if (!(bar.exponents() == chi.exponents())) {
        BigComplex ab = pow_ui(A_value(bar, ctx), e);
        rep.members.emplace_back(bar.label(), ab);
        vals.push_back(ab);
      }
    }
  }
  rep.symmetric_functions = galois_detail::elementary_symmetric(vals, ctx);
  return rep;
}

/// h(Z[ip]) = (p-1)/2 for p = 1 (mod 4), (p+1)/2 for p = 3 (mod 4).
inline std::uint64_t class_number_formula(std::uint64_t p) {
  if (p < 3 || !is_prime(p) || p % 2 == 0)
    throw domain_error("class_number_formula: p must be an odd prime");
  return p % 4 == 1 ? (p - 1) / 2 : (p + 1) / 2;
}

/// Count of reduced primitive positive-definite forms (a, b, c) of
/// discriminant D < 0: b^2 - 4ac = D, -a < b <= a <= c, b >= 0 when a = c or
/// a = |b|, gcd(a, b, c) = 1.
inline std::uint64_t class_number_oracle(std::int64_t D) {
  if (D >= 0) throw domain_error("class_number_oracle: discriminant must be negative");
  std::int64_t mod4 = ((D % 4) + 4) % 4;
  if (mod4 != 0 && mod4 != 1) throw domain_error("class_number_oracle: D must be 0 or 1 mod 4");
  std::uint64_t count = 0;
  for (std::int64_t a = 1; 4 * a * a <= -D + a * a /* a <= sqrt(|D|/3) */; ++a) {
    if (3 * a * a > -D) break;
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      std::int64_t num = b * b - D;
      if (num % (4 * a) != 0) continue;
      std::int64_t c = num / (4 * a);
      if (c < a) continue;
      if (b < 0 && (a == c || a == -b || a == b)) continue;
      if (std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c)) != 1) continue;
      ++count;
    }
  }
  return count;
}

/// Degree bound on B_chi(ip) over K = Q(i), from the class number and the
/// orbit size: |X(p,m)| (p-v)/2 when p = v (mod 4), |X(p,m)| (p+v) otherwise.
inline std::uint64_t degree_bound(std::uint64_t p, std::uint64_t m) {
  auto X = enumerate_X(p, m);
  if (X.empty()) return 0;
  int v = X.front().parity();
  bool p_cong_v = (p % 4) == (v == 1 ? 1u : 3u);
  std::uint64_t size = X.size();
  if (p_cong_v) return size * (p - static_cast<std::uint64_t>(v == 1 ? 1 : -1)) / 2;
  std::int64_t bound = static_cast<std::int64_t>(size) * (static_cast<std::int64_t>(p) + v);
  return static_cast<std::uint64_t>(bound);
}

/// Product report for N(p, m) = prod_{chi in X(p,m)} B_chi(ip).
struct OrbitProduct {
  std::uint64_t p, m;
  BigFloat value;
  bool vanishing_member;      // some member below the vanishing threshold
  bool in_ring_class_field;   // N itself lies in H_O: |X| even or p = v (mod 4)
  std::size_t member_count;
  bool includes_principal;

  nlohmann::ordered_json to_json(int digits = 30) const {
    nlohmann::ordered_json j;
    j["p"] = p;
    j["m"] = m;
    j["value"] = value.str(digits);
    j["vanishing_member"] = vanishing_member;
    j["square_in_Ho"] = true;  // N^2 always lies in the ring class field
    j["in_Ho"] = in_ring_class_field;
    j["members"] = member_count;
    j["includes_principal"] = includes_principal;
    return j;
  }
};

/// Computes N(p, m) from the B-values of X(p, m). A member is flagged
/// vanishing below 2^(-P/2); the product is then reported as 0 with the flag
/// set. include_principal multiplies in B of the principal character mod p
/// (one reading of the m = 1 convention; see the CLI flag).
inline OrbitProduct orbit_product(std::uint64_t p, std::uint64_t m, const PrecisionContext& ctx,
                                  bool include_principal = false) {
  auto X = enumerate_X(p, m);
  std::vector<BigFloat> values;
  for (const auto& chi : X) values.push_back(B_value(chi, ctx));
  if (include_principal) values.push_back(B_value(principal_character(p), ctx));
  if (values.empty()) throw domain_error("orbit_product: no members (m = 1 without principal)");

  BigFloat threshold = BigFloat::pow2(-(ctx.bits / 2), 64);
  bool vanish = false;
  BigFloat prod = BigFloat::of(1l, ctx.prec());
  for (const auto& b : values) {
    if (abs(b) < threshold) vanish = true;
    prod *= b;
  }
  if (vanish) prod = BigFloat::of(0l, ctx.prec());

  int v = X.empty() ? 1 : X.front().parity();
  bool p_cong_v = (p % 4) == (v == 1 ? 1u : 3u);
  bool in_Ho = (X.size() % 2 == 0) || p_cong_v;
  return {p, m, prod, vanish, in_Ho, values.size(), include_principal};
}

/// Monic coefficients (ascending degree, constant first) of
/// prod_{chi in X(N,m)} (X - B_chi(iN)^2) for odd N, together with the
/// congruence N|X| = sum chi(-1) (mod 4) under which the squares can be
/// dropped from the product.
struct OrbitPolynomial {
  std::uint64_t N, m;
  std::vector<BigComplex> coefficients;  // degree |X|, monic (leading 1 omitted)
  bool squarefree_justified;

  nlohmann::ordered_json to_json(int digits = 30) const {
    nlohmann::ordered_json j;
    j["N"] = N;
    j["m"] = m;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& cv : coefficients) {
      nlohmann::ordered_json e;
      e["re"] = cv.re().str(digits);
      e["im"] = cv.im().str(digits);
      arr.push_back(e);
    }
    j["coefficients_ascending"] = arr;
    j["squarefree_justified"] = squarefree_justified;
    return j;
  }
};

inline OrbitPolynomial orbit_polynomial(std::uint64_t N, std::uint64_t m,
                                        const PrecisionContext& ctx) {
  if (N % 2 == 0) throw domain_error("orbit_polynomial: N must be odd");
  auto X = enumerate_X_general(N, m);
  if (X.empty()) throw domain_error("orbit_polynomial: X(N, m) is empty");

  std::vector<BigComplex> roots;
  std::int64_t parity_sum = 0;
  for (const auto& chi : X) {
    BigFloat b = B_value(chi, ctx);
    roots.emplace_back(BigComplex(b * b));
    parity_sum += chi.parity();
  }
  // expand prod (X - r): coefficients ascending
  std::vector<BigComplex> coeff(roots.size() + 1, ctx.complex(0, 0));
  coeff[0] = ctx.complex(1, 0);
  std::size_t used = 0;
  for (const auto& r : roots) {
    ++used;
    for (std::size_t k = used + 1; k-- > 0;) {
      BigComplex shifted = (k == 0) ? ctx.complex(0, 0) : coeff[k - 1];
      coeff[k] = shifted - r * coeff[k];
    }
  }
  std::int64_t lhs = static_cast<std::int64_t>(N) * static_cast<std::int64_t>(X.size());
  bool justified = ((lhs - parity_sum) % 4 + 4) % 4 == 0;
  coeff.pop_back();  // drop the monic leading 1
  return {N, m, std::move(coeff), justified};
}

}  // namespace thetalab
