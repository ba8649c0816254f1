/// Value-semantic wrappers over MPFR reals and complex pairs at explicit
/// working precision. Only what the upper-half-plane numerics need.
#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "modfermat/numbers.hpp"

namespace modfermat {

class MpFloat {
 public:
  explicit MpFloat(long prec = 53) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  MpFloat(const MpFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  MpFloat(MpFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  MpFloat& operator=(MpFloat o) {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~MpFloat() { mpfr_clear(v_); }

  static MpFloat from_double(double d, long prec) {
    MpFloat f(prec);
    mpfr_set_d(f.v_, d, MPFR_RNDN);
    return f;
  }
  static MpFloat from_integer(const Integer& n, long prec) {
    MpFloat f(prec);
    mpfr_set_z(f.v_, n.get_mpz_t(), MPFR_RNDN);
    return f;
  }
  static MpFloat from_rational(const Rational& r, long prec) {
    MpFloat f(prec);
    mpfr_set_q(f.v_, r.get_mpq_t(), MPFR_RNDN);
    return f;
  }
  static MpFloat pi(long prec) {
    MpFloat f(prec);
    mpfr_const_pi(f.v_, MPFR_RNDN);
    return f;
  }

  long prec() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  friend MpFloat operator+(const MpFloat& a, const MpFloat& b) {
    MpFloat r(std::max(a.prec(), b.prec()));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend MpFloat operator-(const MpFloat& a, const MpFloat& b) {
    MpFloat r(std::max(a.prec(), b.prec()));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend MpFloat operator*(const MpFloat& a, const MpFloat& b) {
    MpFloat r(std::max(a.prec(), b.prec()));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend MpFloat operator/(const MpFloat& a, const MpFloat& b) {
    MpFloat r(std::max(a.prec(), b.prec()));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  MpFloat operator-() const {
    MpFloat r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  MpFloat abs() const {
    MpFloat r(prec());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
  }
  MpFloat sqrt() const {
    MpFloat r(prec());
    mpfr_sqrt(r.v_, v_, MPFR_RNDN);
    return r;
  }
  MpFloat exp() const {
    MpFloat r(prec());
    mpfr_exp(r.v_, v_, MPFR_RNDN);
    return r;
  }
  MpFloat cos() const {
    MpFloat r(prec());
    mpfr_cos(r.v_, v_, MPFR_RNDN);
    return r;
  }
  MpFloat sin() const {
    MpFloat r(prec());
    mpfr_sin(r.v_, v_, MPFR_RNDN);
    return r;
  }
  MpFloat pow_ui(unsigned long e) const {
    MpFloat r(prec());
    mpfr_pow_ui(r.v_, v_, e, MPFR_RNDN);
    return r;
  }
  /// Nearest integer.
  Integer round() const {
    MpFloat t(prec());
    mpfr_round(t.v_, v_);
    Integer out;
    mpfr_get_z(out.get_mpz_t(), t.v_, MPFR_RNDN);
    return out;
  }

  bool operator<(const MpFloat& o) const { return mpfr_cmp(v_, o.v_) < 0; }
  bool operator>(const MpFloat& o) const { return mpfr_cmp(v_, o.v_) > 0; }
  bool operator<=(const MpFloat& o) const { return mpfr_cmp(v_, o.v_) <= 0; }
  bool is_zero() const { return mpfr_zero_p(v_); }

  std::string str(int digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }

 private:
  mpfr_t v_;
};

class MpComplex {
 public:
  MpComplex() = default;
  MpComplex(MpFloat re, MpFloat im) : re_(std::move(re)), im_(std::move(im)) {}
  MpComplex(double re, double im, long prec)
      : re_(MpFloat::from_double(re, prec)), im_(MpFloat::from_double(im, prec)) {}

  const MpFloat& re() const { return re_; }
  const MpFloat& im() const { return im_; }
  long prec() const { return std::max(re_.prec(), im_.prec()); }

  friend MpComplex operator+(const MpComplex& a, const MpComplex& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend MpComplex operator-(const MpComplex& a, const MpComplex& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend MpComplex operator*(const MpComplex& a, const MpComplex& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend MpComplex operator/(const MpComplex& a, const MpComplex& b) {
    MpFloat d = b.re_ * b.re_ + b.im_ * b.im_;
    return {(a.re_ * b.re_ + a.im_ * b.im_) / d,
            (a.im_ * b.re_ - a.re_ * b.im_) / d};
  }
  MpComplex operator-() const { return {-re_, -im_}; }

  MpFloat abs() const {
    MpFloat r(prec());
    mpfr_hypot(r.raw(), re_.raw(), im_.raw(), MPFR_RNDN);
    return r;
  }
  MpFloat abs2() const { return re_ * re_ + im_ * im_; }

  MpComplex pow_ui(unsigned long e) const {
    long p = prec() > 0 ? prec() : 53;
    MpComplex r(1.0, 0.0, p);
    MpComplex base = *this;
    while (e) {
      if (e & 1) r = r * base;
      base = base * base;
      e >>= 1;
    }
    return r;
  }

  MpComplex scaled_by_integer(const Integer& k) const {
    MpFloat f = MpFloat::from_integer(k, prec());
    return {re_ * f, im_ * f};
  }

  /// exp(z) = e^re (cos im + i sin im)
  MpComplex exp() const {
    MpFloat m = re_.exp();
    return {m * im_.cos(), m * im_.sin()};
  }

 private:
  MpFloat re_, im_;
};

}  // namespace modfermat
