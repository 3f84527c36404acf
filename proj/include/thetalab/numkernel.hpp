#pragma once

// Arbitrary-precision real/complex arithmetic on top of MPFR, principal
// branches, roots of unity and the theta-series truncation bound. Everything
// analytic in the library funnels through this header.

#include <gmp.h>
#include <mpfr.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "thetalab/errors.hpp"

namespace thetalab {

class BigFloat {
 public:
  BigFloat() : BigFloat(static_cast<mpfr_prec_t>(64)) {}
  explicit BigFloat(mpfr_prec_t prec) {
    mpfr_init2(v_, prec < MPFR_PREC_MIN ? MPFR_PREC_MIN : prec);
    mpfr_set_zero(v_, 1);
  }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  static BigFloat of(long value, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_si(r.v_, value, MPFR_RNDN);
    return r;
  }
  static BigFloat of(double value, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_d(r.v_, value, MPFR_RNDN);
    return r;
  }
  static BigFloat of_str(const char* decimal, mpfr_prec_t prec) {
    BigFloat r(prec);
    if (mpfr_set_str(r.v_, decimal, 10, MPFR_RNDN) != 0 && mpfr_nan_p(r.v_))
      throw domain_error(std::string("unparsable decimal literal: ") + decimal);
    return r;
  }
  static BigFloat of(const mpz_t z, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_z(r.v_, z, MPFR_RNDN);
    return r;
  }
  static BigFloat ratio(long num, long den, mpfr_prec_t prec) {
    if (den == 0) throw domain_error("ratio with zero denominator");
    BigFloat r(prec);
    mpfr_set_si(r.v_, num, MPFR_RNDN);
    mpfr_div_si(r.v_, r.v_, den, MPFR_RNDN);
    return r;
  }
  static BigFloat pi(mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }
  /// 2^e as an exact value.
  static BigFloat pow2(long e, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_si_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
  }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  /// Exponent e with |x| in [2^(e-1), 2^e); LONG_MIN for zero.
  long exponent2() const {
    if (mpfr_zero_p(v_)) return MPFR_EMIN_MIN;
    return static_cast<long>(mpfr_get_exp(v_));
  }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  double to_double_down() const { return mpfr_get_d(v_, MPFR_RNDD); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

  /// Decimal string with the given number of significant digits.
  std::string str(int sig_digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", sig_digits, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }

  friend int cmp(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_); }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_); }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
  friend bool operator<(const BigFloat& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
  friend bool operator>(const BigFloat& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }

#define THETALAB_BINOP(op, fn)                                               \
  friend BigFloat operator op(const BigFloat& a, const BigFloat& b) {        \
    BigFloat r(a.prec() > b.prec() ? a.prec() : b.prec());                   \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                         \
    return r;                                                                \
  }
  THETALAB_BINOP(+, mpfr_add)
  THETALAB_BINOP(-, mpfr_sub)
  THETALAB_BINOP(*, mpfr_mul)
  THETALAB_BINOP(/, mpfr_div)
#undef THETALAB_BINOP

  friend BigFloat operator*(const BigFloat& a, long b) {
    BigFloat r(a.prec());
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator*(long a, const BigFloat& b) { return b * a; }
  friend BigFloat operator/(const BigFloat& a, long b) {
    BigFloat r(a.prec());
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator+(const BigFloat& a, long b) {
    BigFloat r(a.prec());
    mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator-(const BigFloat& a, long b) {
    BigFloat r(a.prec());
    mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator-(const BigFloat& a) {
    BigFloat r(a.prec());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  BigFloat& operator+=(const BigFloat& o) {
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator-=(const BigFloat& o) {
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator*=(const BigFloat& o) {
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator*=(long s) {
    mpfr_mul_si(v_, v_, s, MPFR_RNDN);
    return *this;
  }

  friend BigFloat abs(const BigFloat& a) {
    BigFloat r(a.prec());
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat sqrt(const BigFloat& a) {
    BigFloat r(a.prec());
    mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat exp(const BigFloat& a) {
    BigFloat r(a.prec());
    mpfr_exp(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat log(const BigFloat& a) {
    BigFloat r(a.prec());
    mpfr_log(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat atan2(const BigFloat& y, const BigFloat& x) {
    BigFloat r(y.prec() > x.prec() ? y.prec() : x.prec());
    mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
    return r;
  }
  friend std::pair<BigFloat, BigFloat> sin_cos(const BigFloat& a) {
    BigFloat s(a.prec()), c(a.prec());
    mpfr_sin_cos(s.v_, c.v_, a.v_, MPFR_RNDN);
    return {std::move(s), std::move(c)};
  }
  friend BigFloat hypot(const BigFloat& a, const BigFloat& b) {
    BigFloat r(a.prec() > b.prec() ? a.prec() : b.prec());
    mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat gamma(const BigFloat& a) {
    BigFloat r(a.prec());
    mpfr_gamma(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  /// a * 2^e, exact.
  friend BigFloat ldexp2(const BigFloat& a, long e) {
    BigFloat r(a.prec());
    mpfr_mul_2si(r.v_, a.v_, e, MPFR_RNDN);
    return r;
  }
  /// Copy carried at the given precision (exact when prec >= a.prec()).
  friend BigFloat at_prec(const BigFloat& a, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set(r.raw(), a.v_, MPFR_RNDN);
    return r;
  }
  /// Nearest integer, written into z.
  void round_to(mpz_t z) const { mpfr_get_z(z, v_, MPFR_RNDN); }

  friend BigFloat mul_z(const BigFloat& a, const mpz_t z) {
    BigFloat r(a.prec());
    mpfr_mul_z(r.v_, a.v_, z, MPFR_RNDN);
    return r;
  }

 private:
  mpfr_t v_;
};

/// Complex number with arbitrary-precision components. Polar accessors use
/// the principal argument in (-pi, pi].
class BigComplex {
 public:
  BigComplex() = default;
  explicit BigComplex(mpfr_prec_t prec) : re_(prec), im_(prec) {}
  BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {}
  explicit BigComplex(BigFloat re) : re_(std::move(re)), im_(re_.prec()) {}

  static BigComplex of(long re, long im, mpfr_prec_t prec) {
    return {BigFloat::of(re, prec), BigFloat::of(im, prec)};
  }
  static BigComplex i_unit(mpfr_prec_t prec) { return of(0, 1, prec); }

  const BigFloat& re() const { return re_; }
  const BigFloat& im() const { return im_; }
  BigFloat& re() { return re_; }
  BigFloat& im() { return im_; }
  mpfr_prec_t prec() const { return re_.prec() > im_.prec() ? re_.prec() : im_.prec(); }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_finite() const { return re_.is_finite() && im_.is_finite(); }

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend BigComplex operator-(const BigComplex& a) { return {-a.re_, -a.im_}; }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend BigComplex operator*(const BigComplex& a, const BigFloat& s) {
    return {a.re_ * s, a.im_ * s};
  }
  friend BigComplex operator*(const BigFloat& s, const BigComplex& a) { return a * s; }
  friend BigComplex operator*(const BigComplex& a, long s) { return {a.re_ * s, a.im_ * s}; }
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    BigFloat n = b.re_ * b.re_ + b.im_ * b.im_;
    if (n.is_zero()) throw domain_error("complex division by zero");
    return {(a.re_ * b.re_ + a.im_ * b.im_) / n, (a.im_ * b.re_ - a.re_ * b.im_) / n};
  }
  friend BigComplex operator/(const BigComplex& a, const BigFloat& s) {
    return {a.re_ / s, a.im_ / s};
  }
  friend BigComplex operator/(const BigComplex& a, long s) { return {a.re_ / s, a.im_ / s}; }
  BigComplex& operator+=(const BigComplex& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  BigComplex& operator-=(const BigComplex& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  BigComplex& operator*=(const BigComplex& o) {
    *this = *this * o;
    return *this;
  }

  friend BigComplex conj(const BigComplex& a) { return {a.re_, -a.im_}; }
  friend BigFloat abs(const BigComplex& a) { return hypot(a.re_, a.im_); }
  /// |a|^2
  friend BigFloat norm(const BigComplex& a) { return a.re_ * a.re_ + a.im_ * a.im_; }
  /// Principal argument in (-pi, pi].
  friend BigFloat arg(const BigComplex& a) { return atan2(a.im_, a.re_); }

  friend BigComplex exp(const BigComplex& a) {
    BigFloat m = exp(a.re_);
    auto [s, c] = sin_cos(a.im_);
    return {m * c, m * s};
  }
  /// Principal logarithm: Log z = log|z| + i Arg z, Arg in (-pi, pi].
  friend BigComplex log(const BigComplex& a) {
    if (a.is_zero()) throw domain_error("Log of zero");
    return {log(abs(a)), arg(a)};
  }
  /// Integer power by repeated multiplication (n >= 0).
  friend BigComplex pow_ui(const BigComplex& a, unsigned long n) {
    BigComplex acc = BigComplex::of(1, 0, a.prec());
    BigComplex base = a;
    while (n) {
      if (n & 1) acc *= base;
      n >>= 1;
      if (n) base *= base;
    }
    return acc;
  }

 private:
  BigFloat re_, im_;
};

/// Working precision P plus a guard g; comparisons throughout the library use
/// the effective tolerance 2^(g-P).
struct PrecisionContext {
  long bits;
  long guard;

  explicit PrecisionContext(long P, long g = 32) : bits(P), guard(g) {
    if (P < 64) throw domain_error("precision must be at least 64 bits");
    if (g < 16) throw domain_error("guard must be at least 16 bits");
  }

  mpfr_prec_t prec() const { return static_cast<mpfr_prec_t>(bits); }
  BigFloat tolerance() const { return BigFloat::pow2(guard - bits, 64); }
  PrecisionContext doubled() const { return PrecisionContext(2 * bits, guard); }

  BigFloat real(long v) const { return BigFloat::of(v, prec()); }
  BigFloat real(double v) const { return BigFloat::of(v, prec()); }
  BigFloat real_str(const char* s) const { return BigFloat::of_str(s, prec()); }
  BigFloat pi() const { return BigFloat::pi(prec()); }
  BigComplex complex(long re, long im) const { return BigComplex::of(re, im, prec()); }
  BigComplex complex(const BigFloat& re, const BigFloat& im) const { return {re, im}; }
};

/// e(k/M) = exp(2 pi i k/M) to ctx precision.
inline BigComplex root_of_unity(long k, long M, const PrecisionContext& ctx) {
  if (M < 1) throw domain_error("root_of_unity: modulus must be positive");
  long r = k % M;
  if (r < 0) r += M;
  // angle = 2 pi r / M with the integer reduction already done
  BigFloat angle = (BigFloat::pi(ctx.prec() + 8) * (2 * r)) / M;
  auto [s, c] = sin_cos(angle);
  return {std::move(c), std::move(s)};
}

/// Principal power z^(num/den): exp(w Log z) with Arg z in (-pi, pi].
/// For Im z >= 0 and w = 1/2 the result has nonnegative real part.
inline BigComplex principal_power(const BigComplex& z, long num, long den,
                                  const PrecisionContext& ctx) {
  if (den == 0) throw domain_error("principal_power: zero denominator exponent");
  if (z.is_zero()) {
    if (num * (den > 0 ? 1 : -1) <= 0)
      throw domain_error("principal_power: zero base with nonpositive exponent");
    return ctx.complex(0, 0);
  }
  BigComplex lg = log(z);
  BigFloat w = BigFloat::ratio(num, den, ctx.prec());
  return exp(BigComplex(lg.re() * w, lg.im() * w));
}

inline BigComplex principal_sqrt(const BigComplex& z, const PrecisionContext& ctx) {
  return principal_power(z, 1, 2, ctx);
}

/// Smallest n_max such that the two-sided tail sum_{|n|>n_max} n^eps |q|^(n^2/2N)
/// with |q^(n^2/2N)| = exp(-im_scaled n^2) stays below 2^-P.
/// im_scaled is the decay rate: 2 pi Im(tau/(2N)) = pi Im(tau)/N.
inline long theta_truncation_bound(long N, int eps, const BigFloat& im_scaled, long P) {
  (void)N;  // the conductor enters through im_scaled = pi Im(tau)/N
  if (eps != 0 && eps != 1) throw domain_error("theta_truncation_bound: eps must be 0 or 1");
  double r = im_scaled.to_double_down();
  if (!(r > 0)) throw domain_error("theta_truncation_bound: nonpositive decay rate");
  const double ln2 = 0.6931471805599453;
  // target: two-sided tail < 2^-P; bound one side by t_{n+1}/(1-rho) with
  // rho >= ratio of successive terms, then leave one extra bit for the factor 2.
  double target = -(static_cast<double>(P) + 2.0) * ln2;
  double n = std::sqrt((static_cast<double>(P) + 2.0) * ln2 / r);
  long n0 = static_cast<long>(n) + 1;
  if (n0 < 1) n0 = 1;
  for (;;) {
    double rho = (eps ? 2.0 : 1.0) * std::exp(-r * (2.0 * static_cast<double>(n0) + 3.0));
    if (rho < 1.0) {
      double m = static_cast<double>(n0) + 1.0;
      double log_tail = (eps ? std::log(m) : 0.0) - r * m * m - std::log1p(-rho);
      if (log_tail < target) break;
    }
    ++n0;
  }
  return n0 + 2;
}

}  // namespace thetalab
