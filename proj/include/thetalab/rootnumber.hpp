#pragma once

// Gauss sums and the two root-number routes: the O(N) normalized Gauss sum
// and the O(sqrt(N P)) theta quotient at tau = i, plus their cross-check
// report. W(chi) here is the constant of the functional equation
// theta_chibar(-1/tau) = W(chi) (tau/i)^(1/2+eps) theta_chi(tau), which is
// G(chibar)/(i^eps sqrt(N)); for real characters this is the familiar
// G(chi)/sqrt(N) up to the i^eps.

#include <optional>
#include <string>

#include "thetalab/characters.hpp"
#include "thetalab/modularforms.hpp"
#include "thetalab/numkernel.hpp"
#include "vendor_json.hpp"

namespace thetalab {

/// G(chi) = sum_{n mod N} chi(n) e(n/N). |G| = sqrt(N) for primitive chi.
inline BigComplex gauss_sum(const DirichletCharacter& chi, const PrecisionContext& ctx) {
  const std::int64_t N = static_cast<std::int64_t>(chi.modulus());
  const std::uint64_t E = chi.basis().group_exponent();
  std::vector<std::optional<BigComplex>> roots(E);
  BigComplex acc = ctx.complex(0, 0);
  for (std::int64_t n = 0; n < N; ++n) {
    auto k = chi.value_index(n);
    if (!k) continue;
    if (!roots[*k]) roots[*k] = root_of_unity(static_cast<long>(*k), static_cast<long>(E), ctx);
    acc += *roots[*k] * root_of_unity(static_cast<long>(n % N), static_cast<long>(N), ctx);
  }
  return acc;
}

/// W(chi) = G(chibar) / (i^eps sqrt(N)).
inline BigComplex root_number_gauss(const DirichletCharacter& chi, const PrecisionContext& ctx) {
  if (!chi.is_primitive()) throw domain_error("root_number_gauss: character must be primitive");
  BigComplex g = gauss_sum(chi.conjugate(), ctx);
  BigComplex w = g / sqrt(BigFloat::of(static_cast<long>(chi.modulus()), ctx.prec()));
  if (chi.eps() == 1) w = w / ctx.complex(0, 1);
  return w;
}

struct ThetaQuotient {
  BigComplex w;
  long terms_numerator;
  long terms_denominator;
};

/// W(chi) = theta_chibar(i) / theta_chi(i), both series summed independently.
/// Throws vanishing_theta_error when |theta_chi(i)| < 2^(-P/2) persists at
/// doubled precision.
inline ThetaQuotient root_number_theta_counted(const DirichletCharacter& chi,
                                               const PrecisionContext& ctx) {
  if (!chi.is_primitive()) throw domain_error("root_number_theta: character must be primitive");
  BigComplex i = ctx.complex(0, 1);
  ThetaEval den = theta_chi_counted(chi, i, ctx);
  BigFloat threshold = BigFloat::pow2(-(ctx.bits / 2), 64);
  if (abs(den.value) < threshold) {
    PrecisionContext refined = ctx.doubled();
    ThetaEval recheck = theta_chi_counted(chi, refined.complex(0, 1), refined);
    if (abs(recheck.value) < BigFloat::pow2(-(refined.bits / 2), 64))
      throw vanishing_theta_error("theta_chi(i) vanishes numerically for " + chi.label());
  }
  ThetaEval num = theta_chi_counted(chi.conjugate(), i, ctx);
  return {num.value / den.value, num.terms, den.terms};
}

inline BigComplex root_number_theta(const DirichletCharacter& chi, const PrecisionContext& ctx) {
  return root_number_theta_counted(chi, ctx).w;
}

/// Cross-check record for one character.
struct RootNumberReport {
  std::string label;
  BigComplex gauss;                  // G(chi)
  BigComplex w_gauss;                // G(chibar)/(i^eps sqrt N)
  std::optional<BigComplex> w_theta; // absent when theta_chi(i) vanishes
  BigFloat abs_theta_i;
  long gauss_evaluations;  // character evaluations in G (exactly N)
  long theta_terms;        // series indices used by both theta sums

  nlohmann::ordered_json to_json(int digits = 30) const {
    nlohmann::ordered_json j;
    j["label"] = label;
    j["gauss_re"] = gauss.re().str(digits);
    j["gauss_im"] = gauss.im().str(digits);
    j["w_gauss_re"] = w_gauss.re().str(digits);
    j["w_gauss_im"] = w_gauss.im().str(digits);
    if (w_theta) {
      j["w_theta_re"] = w_theta->re().str(digits);
      j["w_theta_im"] = w_theta->im().str(digits);
    } else {
      j["w_theta_re"] = nullptr;
      j["w_theta_im"] = nullptr;
    }
    j["abs_theta_i"] = abs_theta_i.str(digits);
    j["gauss_evaluations"] = gauss_evaluations;
    j["theta_terms"] = theta_terms;
    return j;
  }
};

inline RootNumberReport root_number_report(const DirichletCharacter& chi,
                                           const PrecisionContext& ctx) {
  RootNumberReport rep{chi.label(),
                       gauss_sum(chi, ctx),
                       root_number_gauss(chi, ctx),
                       std::nullopt,
                       BigFloat(ctx.prec()),
                       static_cast<long>(chi.modulus()),
                       0};
  BigComplex i = ctx.complex(0, 1);
  ThetaEval te = theta_chi_counted(chi, i, ctx);
  rep.abs_theta_i = abs(te.value);
  try {
    ThetaQuotient q = root_number_theta_counted(chi, ctx);
    rep.w_theta = q.w;
    rep.theta_terms = q.terms_numerator + q.terms_denominator;
  } catch (const vanishing_theta_error&) {
    rep.w_theta = std::nullopt;
    rep.theta_terms = 2 * te.terms;
  }
  return rep;
}

}  // namespace thetalab
