// Multiple-precision reals and complex numbers on top of MPFR.
#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

#include "hilbert5/field.hpp"

namespace hilbert5 {

/// Bits used for new values. Read once from HILBERT5_PRECISION_BITS (default 256).
mpfr_prec_t working_precision();
void set_working_precision(mpfr_prec_t bits);

class Real {
 public:
  Real();
  Real(double x);                // NOLINT
  Real(long x);                  // NOLINT
  Real(int x) : Real(static_cast<long>(x)) {}  // NOLINT
  explicit Real(const mpz_class& x);
  explicit Real(const mpq_class& x);
  /// Decimal text such as "-33.5784397862407".
  static Real parse(const std::string& text);
  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }
  Real operator-() const;

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return b < a; }
  friend bool operator<=(const Real& a, const Real& b) { return !(b < a); }
  friend bool operator>=(const Real& a, const Real& b) { return !(a < b); }
  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Nearest integer (ties away from zero).
  mpz_class round() const;
  mpz_class floor() const;
  std::string to_string(int digits = 15) const;

 private:
  mpfr_t v_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
/// Real cube root; negative arguments give negative roots.
Real cbrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real pi_value();
Real agm(const Real& a, const Real& b);

/// sigma_1 sends phi to (1 + sqrt 5) / 2, sigma_2 to (1 - sqrt 5) / 2.
Real embed(const FieldElem& x, int which);
Real embed(const FieldQ& x, int which);

struct Complex {
  Real re, im;
  Complex() = default;
  Complex(Real r, Real i = Real()) : re(std::move(r)), im(std::move(i)) {}  // NOLINT

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  Complex operator-() const { return Complex(-re, -im); }
  Real norm() const { return re * re + im * im; }
  Real abs() const { return sqrt(norm()); }
  std::string to_string(int digits = 15) const;
};

/// exp(2 pi i t) for rational t, reduced modulo 1 exactly before evaluation.
Complex unit_root(const mpq_class& t);
Complex exp(const Complex& z);

}  // namespace hilbert5
