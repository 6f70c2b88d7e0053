#include "hilbert5/real.hpp"

#include <cstdlib>
#include <stdexcept>

namespace hilbert5 {

namespace {

mpfr_prec_t& precision_slot() {
  thread_local mpfr_prec_t bits = [] {
    if (const char* env = std::getenv("HILBERT5_PRECISION_BITS")) {
      const long v = std::strtol(env, nullptr, 10);
      if (v >= 64 && v <= 65536) return static_cast<mpfr_prec_t>(v);
    }
    return static_cast<mpfr_prec_t>(256);
  }();
  return bits;
}

}  // namespace

mpfr_prec_t working_precision() { return precision_slot(); }
void set_working_precision(mpfr_prec_t bits) { precision_slot() = bits; }

Real::Real() {
  mpfr_init2(v_, working_precision());
  mpfr_set_zero(v_, 1);
}
Real::Real(double x) {
  mpfr_init2(v_, working_precision());
  mpfr_set_d(v_, x, MPFR_RNDN);
}
Real::Real(long x) {
  mpfr_init2(v_, working_precision());
  mpfr_set_si(v_, x, MPFR_RNDN);
}
Real::Real(const mpz_class& x) {
  mpfr_init2(v_, working_precision());
  mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN);
}
Real::Real(const mpq_class& x) {
  mpfr_init2(v_, working_precision());
  mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN);
}
Real Real::parse(const std::string& text) {
  Real r;
  if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0) throw std::invalid_argument("bad real number: " + text);
  return r;
}
Real::Real(const Real& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}
Real::Real(Real&& o) noexcept {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_swap(v_, o.v_);
}
Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}
Real& Real::operator=(Real&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}
Real::~Real() { mpfr_clear(v_); }

Real& Real::operator+=(const Real& o) {
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real Real::operator-() const {
  Real r(*this);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

mpz_class Real::round() const {
  mpfr_t t;
  mpfr_init2(t, mpfr_get_prec(v_));
  mpfr_round(t, v_);
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDN);
  mpfr_clear(t);
  return z;
}

mpz_class Real::floor() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
  return z;
}

std::string Real::to_string(int digits) const {
  char* buf = nullptr;
  const std::string fmt = "%." + std::to_string(digits) + "Rg";
  mpfr_asprintf(&buf, fmt.c_str(), v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

namespace {
template <class F>
Real apply(const Real& x, F f) {
  Real r;
  f(r.get(), x.get(), MPFR_RNDN);
  return r;
}
}  // namespace

Real abs(const Real& x) { return apply(x, mpfr_abs); }
Real sqrt(const Real& x) { return apply(x, mpfr_sqrt); }
Real cbrt(const Real& x) { return apply(x, mpfr_cbrt); }
Real exp(const Real& x) { return apply(x, mpfr_exp); }
Real log(const Real& x) { return apply(x, mpfr_log); }
Real sin(const Real& x) { return apply(x, mpfr_sin); }
Real cos(const Real& x) { return apply(x, mpfr_cos); }

Real pi_value() {
  Real r;
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

Real agm(const Real& a, const Real& b) {
  Real r;
  mpfr_agm(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real embed(const FieldQ& x, int which) {
  const Real s5 = sqrt(Real(5L));
  const Real phi = which == 1 ? (Real(1L) + s5) / Real(2L) : (Real(1L) - s5) / Real(2L);
  return Real(x.a()) + Real(x.b()) * phi;
}

Real embed(const FieldElem& x, int which) { return embed(FieldQ(x), which); }

Complex& Complex::operator+=(const Complex& o) {
  re += o.re;
  im += o.im;
  return *this;
}
Complex& Complex::operator-=(const Complex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}
Complex& Complex::operator*=(const Complex& o) {
  Real r = re * o.re - im * o.im;
  Real i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}
Complex& Complex::operator/=(const Complex& o) {
  const Real d = o.norm();
  if (d.is_zero()) throw std::domain_error("complex division by zero");
  Real r = (re * o.re + im * o.im) / d;
  Real i = (im * o.re - re * o.im) / d;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

std::string Complex::to_string(int digits) const {
  if (im.is_zero()) return re.to_string(digits);
  if (re.is_zero()) return im.to_string(digits) + "i";
  std::string i = im.to_string(digits);
  if (i[0] != '-') i = "+" + i;
  return re.to_string(digits) + i + "i";
}

Complex unit_root(const mpq_class& t) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
  const mpq_class frac = t - mpq_class(fl);
  const Real angle = Real(2L) * pi_value() * Real(frac);
  return Complex(cos(angle), sin(angle));
}

Complex exp(const Complex& z) {
  const Real m = exp(z.re);
  return Complex(m * cos(z.im), m * sin(z.im));
}

}  // namespace hilbert5
