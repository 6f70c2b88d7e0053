// Arithmetic in R = Z[phi], phi^2 = phi + 1, and in its fraction field F = Q(sqrt 5).
#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace hilbert5 {

/// Element a + b*phi of the ring of integers R = Z[phi].
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(long a) : a_(a) {}  // NOLINT: integers embed implicitly
  FieldElem(mpz_class a, mpz_class b = 0) : a_(std::move(a)), b_(std::move(b)) {}
  FieldElem(long a, long b) : a_(a), b_(b) {}

  static FieldElem phi() { return FieldElem(0, 1); }

  const mpz_class& a() const { return a_; }
  const mpz_class& b() const { return b_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  /// (a + b) - b*phi, the image under phi -> 1 - phi.
  FieldElem conjugate() const { return FieldElem(a_ + b_, -b_); }
  mpz_class norm() const { return a_ * a_ + a_ * b_ - b_ * b_; }
  mpz_class trace() const { return 2 * a_ + b_; }

  FieldElem& operator+=(const FieldElem& o);
  FieldElem& operator-=(const FieldElem& o);
  FieldElem& operator*=(const FieldElem& o);
  FieldElem operator-() const { return FieldElem(-a_, -b_); }

  friend FieldElem operator+(FieldElem x, const FieldElem& y) { return x += y; }
  friend FieldElem operator-(FieldElem x, const FieldElem& y) { return x -= y; }
  friend FieldElem operator*(FieldElem x, const FieldElem& y) { return x *= y; }
  friend bool operator==(const FieldElem& x, const FieldElem& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

  /// Lexicographic (a, b); used only for deterministic ordering.
  friend std::strong_ordering operator<=>(const FieldElem& x, const FieldElem& y);

  /// Exact quotient x / y when it lies in R.
  std::optional<FieldElem> divide(const FieldElem& y) const;
  bool divisible_by(const FieldElem& y) const { return divide(y).has_value(); }

  FieldElem pow(unsigned long e) const;

  /// sigma_1 sends phi to (1 + sqrt 5)/2, sigma_2 to (1 - sqrt 5)/2.
  double sigma1() const;
  double sigma2() const;
  /// log2 of max(|a|, |b|, 1); a cheap height.
  std::size_t bit_height() const;

  std::string to_string() const;
  /// Accepts forms like "-38*phi+26", "26-38phi", "phi", "-3", "2*phi - 1".
  static FieldElem parse(std::string_view text);

 private:
  mpz_class a_ = 0;
  mpz_class b_ = 0;
};

struct FieldElemHash {
  std::size_t operator()(const FieldElem& x) const;
};

/// Element a + b*phi of F with rational coordinates.
class FieldQ {
 public:
  FieldQ() = default;
  FieldQ(long a) : a_(a) {}  // NOLINT
  FieldQ(const FieldElem& x) : a_(x.a()), b_(x.b()) {}  // NOLINT
  FieldQ(mpq_class a, mpq_class b) : a_(std::move(a)), b_(std::move(b)) {
    a_.canonicalize();
    b_.canonicalize();
  }

  const mpq_class& a() const { return a_; }
  const mpq_class& b() const { return b_; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_integral() const { return a_.get_den() == 1 && b_.get_den() == 1; }
  /// Requires is_integral().
  FieldElem to_integral() const;
  /// Least positive integer d with d*x integral.
  mpz_class denominator() const;

  FieldQ conjugate() const { return FieldQ(a_ + b_, -b_); }
  mpq_class norm() const { return a_ * a_ + a_ * b_ - b_ * b_; }
  mpq_class trace() const { return 2 * a_ + b_; }
  FieldQ inverse() const;

  FieldQ& operator+=(const FieldQ& o);
  FieldQ& operator-=(const FieldQ& o);
  FieldQ& operator*=(const FieldQ& o);
  FieldQ& operator/=(const FieldQ& o) { return *this *= o.inverse(); }
  FieldQ operator-() const { return FieldQ(-a_, -b_); }
  friend FieldQ operator+(FieldQ x, const FieldQ& y) { return x += y; }
  friend FieldQ operator-(FieldQ x, const FieldQ& y) { return x -= y; }
  friend FieldQ operator*(FieldQ x, const FieldQ& y) { return x *= y; }
  friend FieldQ operator/(FieldQ x, const FieldQ& y) { return x /= y; }
  friend bool operator==(const FieldQ& x, const FieldQ& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

  FieldQ pow(long e) const;
  double sigma1() const;
  double sigma2() const;
  std::string to_string() const;

 private:
  mpq_class a_ = 0;
  mpq_class b_ = 0;
};

/// The nontrivial unit phi raised to an integer power (negative allowed).
FieldElem phi_power(long k);

/// Integer square root test; returns root when n is a perfect square.
std::optional<mpz_class> exact_isqrt(const mpz_class& n);

/// Square root in R, if x is a square there. Returns one of the two roots.
std::optional<FieldElem> sqrt_in_ring(const FieldElem& x);

/// Among the associates +-x*phi^k, the one minimizing |sigma1| + |sigma2|,
/// ties broken by sigma1 > 0 and then b >= 0.
FieldElem canonical_associate(const FieldElem& x);

/// Among the totally positive associates u*x, u in {+-1} x phi^Z, the one of least
/// trace (ties: b >= 0). Every nonzero x has one since F has narrow class number 1;
/// absent only for x = 0.
std::optional<FieldElem> totally_positive_associate(const FieldElem& x);

/// Canonical totally positive generator of the ideal (x); x must be nonzero.
FieldElem positive_generator(const FieldElem& x);

/// True when x and y generate the same ideal.
bool associates(const FieldElem& x, const FieldElem& y);

bool is_totally_positive(const FieldElem& x);

}  // namespace hilbert5
