#pragma once

// Integer-relation detection and algebraic recognition by lattice reduction.
// The reduction is classic LLL with delta = 99/100 over exact GMP rationals;
// no floating point enters the basis arithmetic. Relations are only reported
// with a residual certificate, and the *_stable entry points re-run the whole
// search at doubled precision and require identical coefficients.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "thetalab/errors.hpp"
#include "thetalab/numkernel.hpp"
#include "vendor_json.hpp"

namespace thetalab {

using ZMatrix = std::vector<std::vector<mpz_class>>;

namespace lll_detail {

inline mpq_class dot(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  mpz_class acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return mpq_class(acc);
}

inline mpq_class dot(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
  mpq_class acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

struct Gso {
  std::vector<std::vector<mpq_class>> mu;  // mu[i][j], j < i
  std::vector<mpq_class> B;                // squared norms of the GS vectors

  static Gso of(const ZMatrix& b) {
    const std::size_t k = b.size();
    const std::size_t n = b.empty() ? 0 : b[0].size();
    Gso g;
    g.mu.assign(k, std::vector<mpq_class>(k, 0));
    g.B.assign(k, 0);
    std::vector<std::vector<mpq_class>> star(k, std::vector<mpq_class>(n, 0));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t c = 0; c < n; ++c) star[i][c] = mpq_class(b[i][c]);
      for (std::size_t j = 0; j < i; ++j) {
        mpq_class num = 0;
        for (std::size_t c = 0; c < n; ++c) num += mpq_class(b[i][c]) * star[j][c];
        if (g.B[j] == 0) throw domain_error("lattice_reduce: rank-deficient input");
        g.mu[i][j] = num / g.B[j];
        for (std::size_t c = 0; c < n; ++c) star[i][c] -= g.mu[i][j] * star[j][c];
      }
      g.B[i] = dot(star[i], star[i]);
      if (g.B[i] == 0) throw domain_error("lattice_reduce: rank-deficient input");
    }
    return g;
  }
};

inline mpz_class round_nearest(const mpq_class& q) {
  mpz_class twice = 2 * q.get_num();
  mpz_class result;
  // floor((2 num + den) / (2 den)) = nearest integer, ties toward +inf
  mpz_fdiv_q(result.get_mpz_t(), mpz_class(twice + q.get_den()).get_mpz_t(),
             mpz_class(2 * q.get_den()).get_mpz_t());
  return result;
}

}  // namespace lll_detail

/// LLL (delta = 99/100) over exact rationals. Same lattice, reduced basis;
/// throws on rank-deficient input. Deterministic.
inline ZMatrix lattice_reduce(ZMatrix basis) {
  using namespace lll_detail;
  const std::size_t k = basis.size();
  if (k == 0) return basis;
  Gso g = Gso::of(basis);
  const mpq_class delta(99, 100);

  auto size_reduce = [&](std::size_t i, std::size_t j) {
    mpq_class half(1, 2);
    if (abs(g.mu[i][j]) > half) {
      mpz_class r = round_nearest(g.mu[i][j]);
      for (std::size_t c = 0; c < basis[i].size(); ++c) basis[i][c] -= r * basis[j][c];
      for (std::size_t l = 0; l < j; ++l) g.mu[i][l] -= mpq_class(r) * g.mu[j][l];
      g.mu[i][j] -= mpq_class(r);
    }
  };

  std::size_t kk = 1;
  while (kk < k) {
    size_reduce(kk, kk - 1);
    mpq_class lhs = g.B[kk];
    mpq_class rhs = (delta - g.mu[kk][kk - 1] * g.mu[kk][kk - 1]) * g.B[kk - 1];
    if (lhs >= rhs) {
      for (std::size_t j = kk - 1; j-- > 0;) size_reduce(kk, j);
      ++kk;
    } else {
      std::swap(basis[kk], basis[kk - 1]);
      // standard mu/B updates for the swap
      mpq_class mu = g.mu[kk][kk - 1];
      mpq_class Bnew = g.B[kk] + mu * mu * g.B[kk - 1];
      g.mu[kk][kk - 1] = mu * g.B[kk - 1] / Bnew;
      g.B[kk] = g.B[kk - 1] * g.B[kk] / Bnew;
      g.B[kk - 1] = Bnew;
      for (std::size_t j = 0; j + 1 < kk; ++j) std::swap(g.mu[kk][j], g.mu[kk - 1][j]);
      for (std::size_t i = kk + 1; i < k; ++i) {
        mpq_class t = g.mu[i][kk];
        g.mu[i][kk] = g.mu[i][kk - 1] - mu * t;
        g.mu[i][kk - 1] = t + g.mu[kk][kk - 1] * g.mu[i][kk];
      }
      if (kk > 1) --kk;
    }
  }
  return basis;
}

/// Integer relation certificate: coefficients c with |sum c_i x_i| below the
/// acceptance threshold, the achieved residual, the height max|c_i|, and a
/// stability flag set only after an identical doubled-precision rerun.
struct RecognizedRelation {
  std::vector<mpz_class> coefficients;
  BigFloat residual;
  mpz_class height;
  long precision_bits = 0;
  bool stable = false;
  std::string basis_description;

  nlohmann::ordered_json to_json(int digits = 30) const {
    nlohmann::ordered_json j;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : coefficients) arr.push_back(c.get_str());
    j["coefficients"] = arr;
    j["residual"] = residual.str(digits);
    j["height"] = height.get_str();
    j["precision_bits"] = precision_bits;
    j["stable"] = stable;
    j["basis"] = basis_description;
    return j;
  }
};

/// Search result: either a relation or a certified lower bound (from the LLL
/// first-vector guarantee) on the 2-norm of any lattice vector, hence on any
/// relation that would have passed the residual test.
struct RelationSearch {
  std::optional<RecognizedRelation> relation;
  mpz_class height_lower_bound;
};

namespace relation_detail {

inline void require_precision(long bits, const mpz_class& H, std::size_t unknowns) {
  // P < 4 log2(H) * len -> InsufficientPrecision, len = number of unknown
  // coefficients beyond the target value
  double log2H = static_cast<double>(mpz_sizeinbase(H.get_mpz_t(), 2));
  if (static_cast<double>(bits) < 4.0 * log2H * static_cast<double>(unknowns))
    throw insufficient_precision_error(
        "precision too low for the requested height bound (P < 4 log2(H) len)");
}

inline RelationSearch search(const std::vector<BigComplex>& values, const mpz_class& H,
                             const PrecisionContext& ctx) {
  if (values.size() < 2) throw domain_error("integer_relation needs at least two values");
  for (const auto& v : values)
    if (!v.is_finite()) throw domain_error("integer_relation: nonfinite input");
  require_precision(ctx.bits, H, values.size() - 1);

  const std::size_t k = values.size();
  bool complex_mode = false;
  for (const auto& v : values)
    if (!v.im().is_zero()) complex_mode = true;

  const long scale_bits = ctx.bits - 2 * ctx.guard;
  ZMatrix rows(k, std::vector<mpz_class>(k + (complex_mode ? 2 : 1), 0));
  BigFloat max_abs = BigFloat::of(0l, ctx.prec());
  for (std::size_t i = 0; i < k; ++i) {
    rows[i][i] = 1;
    BigFloat sre = ldexp2(values[i].re(), scale_bits);
    sre.round_to(rows[i][k].get_mpz_t());
    if (complex_mode) {
      BigFloat sim = ldexp2(values[i].im(), scale_bits);
      sim.round_to(rows[i][k + 1].get_mpz_t());
    }
    BigFloat a = abs(values[i]);
    if (a > max_abs) max_abs = a;
  }

  ZMatrix reduced = lattice_reduce(std::move(rows));

  // residual threshold 2^(-P/2) * max |x|
  BigFloat threshold = BigFloat::pow2(-(ctx.bits / 2), 64) * max_abs;
  std::optional<RecognizedRelation> best;
  for (const auto& row : reduced) {
    bool any = false;
    mpz_class height = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (row[i] != 0) any = true;
      mpz_class a = abs(row[i]);
      if (a > height) height = a;
    }
    if (!any || height > H) continue;
    BigComplex s = BigComplex(ctx.prec());
    for (std::size_t i = 0; i < k; ++i) {
      if (row[i] == 0) continue;
      s += BigComplex(mul_z(values[i].re(), row[i].get_mpz_t()),
                      mul_z(values[i].im(), row[i].get_mpz_t()));
    }
    BigFloat res = abs(s);
    if (res < threshold && (!best || res < best->residual)) {
      RecognizedRelation rel;
      rel.coefficients.assign(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(k));
      rel.residual = res;
      rel.height = height;
      rel.precision_bits = ctx.bits;
      best = std::move(rel);
    }
  }

  if (best) {
    // normalize: primitive vector, first nonzero coefficient positive
    mpz_class content = 0;
    for (const auto& c : best->coefficients) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
    if (content > 1)
      for (auto& c : best->coefficients) c /= content;
    for (const auto& c : best->coefficients) {
      if (c == 0) continue;
      if (c < 0)
        for (auto& x : best->coefficients) x = -x;
      break;
    }
    best->height = 0;
    for (const auto& c : best->coefficients) {
      mpz_class a = abs(c);
      if (a > best->height) best->height = a;
    }
  }

  // lower bound: |b_1| >= lambda_1 / 2^((k-1)/2); any vector in the lattice,
  // in particular any surviving relation, has 2-norm >= |b_1| / 2^((k-1)/2)
  mpz_class norm1 = 0;
  for (const auto& x : reduced.front()) norm1 += x * x;
  mpz_class bound;
  mpz_sqrt(bound.get_mpz_t(), norm1.get_mpz_t());
  mpz_fdiv_q_2exp(bound.get_mpz_t(), bound.get_mpz_t(),
                  static_cast<mp_bitcnt_t>((k - 1 + 1) / 2));
  if (bound < 1) bound = 1;
  return {std::move(best), std::move(bound)};
}

}  // namespace relation_detail

/// One-shot integer relation search on real values at ctx precision.
inline RelationSearch integer_relation(const std::vector<BigFloat>& values, const mpz_class& H,
                                       const PrecisionContext& ctx) {
  std::vector<BigComplex> cv;
  cv.reserve(values.size());
  for (const auto& v : values) cv.emplace_back(v);
  return relation_detail::search(cv, H, ctx);
}

inline RelationSearch integer_relation(const std::vector<BigComplex>& values, const mpz_class& H,
                                       const PrecisionContext& ctx) {
  return relation_detail::search(values, H, ctx);
}

/// Stability-certified search: the generator is evaluated at P and 2P, and a
/// relation is returned only when both runs produce identical coefficients.
inline RelationSearch integer_relation_stable(
    const std::function<std::vector<BigComplex>(const PrecisionContext&)>& gen,
    const mpz_class& H, const PrecisionContext& ctx) {
  RelationSearch first = relation_detail::search(gen(ctx), H, ctx);
  if (!first.relation) return first;
  PrecisionContext ctx2 = ctx.doubled();
  RelationSearch second = relation_detail::search(gen(ctx2), H, ctx2);
  if (second.relation && second.relation->coefficients == first.relation->coefficients) {
    first.relation->stable = true;
    first.relation->residual = second.relation->residual;
  } else {
    first.relation.reset();
  }
  return first;
}

/// Minimal integer polynomial of x within degree maxdeg and height H:
/// ascending coefficients (constant term first). Degrees are tried in
/// increasing order, so the first hit is minimal.
inline std::optional<RecognizedRelation> recognize_minpoly(
    const std::function<BigComplex(const PrecisionContext&)>& x_gen, int maxdeg,
    const mpz_class& H, const PrecisionContext& ctx) {
  if (maxdeg < 1) throw domain_error("recognize_minpoly: maxdeg must be >= 1");
  for (int deg = 1; deg <= maxdeg; ++deg) {
    auto powers = [&x_gen, deg](const PrecisionContext& c) {
      BigComplex x = x_gen(c);
      std::vector<BigComplex> vals;
      vals.reserve(static_cast<std::size_t>(deg) + 1);
      BigComplex p = c.complex(1, 0);
      vals.push_back(p);
      for (int i = 1; i <= deg; ++i) {
        p *= x;
        vals.push_back(p);
      }
      return vals;
    };
    RelationSearch rs = integer_relation_stable(powers, H, ctx);
    if (rs.relation) {
      // a zero leading coefficient is a genuine lower-degree polynomial
      while (rs.relation->coefficients.size() > 2 && rs.relation->coefficients.back() == 0)
        rs.relation->coefficients.pop_back();
      rs.relation->basis_description =
          "1, x, ..., x^" + std::to_string(rs.relation->coefficients.size() - 1);
      // sign convention: positive leading coefficient
      if (rs.relation->coefficients.back() < 0)
        for (auto& c : rs.relation->coefficients) c = -c;
      return rs.relation;
    }
  }
  return std::nullopt;
}

/// Rational coordinates of a real value over {1, j(ip), ..., j(ip)^(h-1)}.
struct JFieldExpansion {
  std::vector<mpq_class> coefficients;
  RecognizedRelation relation;

  nlohmann::ordered_json to_json(int digits = 30) const {
    nlohmann::ordered_json j = relation.to_json(digits);
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : coefficients) arr.push_back(c.get_str());
    j["jfield_coefficients"] = arr;
    return j;
  }
};

/// Recognize x = sum c_k j(ip)^k with rational c_k, k < h = h(Z[ip]).
/// x_gen must evaluate the target at the requested precision.
inline std::optional<JFieldExpansion> recognize_in_jfield(
    const std::function<BigFloat(const PrecisionContext&)>& x_gen, std::uint64_t h,
    const std::function<BigFloat(const PrecisionContext&)>& j_gen, const mpz_class& H,
    const PrecisionContext& ctx) {
  if (h < 1) throw domain_error("recognize_in_jfield: class number must be positive");
  auto gen = [&](const PrecisionContext& c) {
    std::vector<BigComplex> vals;
    vals.reserve(h + 1);
    vals.emplace_back(BigFloat(x_gen(c)));
    BigFloat j = j_gen(c);
    BigFloat p = BigFloat::of(1l, c.prec());
    vals.emplace_back(p);
    for (std::uint64_t k = 1; k < h; ++k) {
      p *= j;
      vals.emplace_back(p);
    }
    return vals;
  };
  RelationSearch rs = integer_relation_stable(gen, H, ctx);
  if (!rs.relation) return std::nullopt;
  const mpz_class& d = rs.relation->coefficients[0];
  if (d == 0) return std::nullopt;  // relation among the basis alone
  JFieldExpansion out;
  out.relation = *rs.relation;
  out.relation.basis_description = "x, 1, j, ..., j^" + std::to_string(h - 1);
  for (std::uint64_t k = 1; k <= h; ++k) {
    mpq_class c(-rs.relation->coefficients[k], d);
    c.canonicalize();
    out.coefficients.push_back(std::move(c));
  }
  return out;
}

}  // namespace thetalab
