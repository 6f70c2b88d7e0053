// Ideals of R. R is a PID, so an ideal is carried by a canonical generator together
// with its prime factorization.
#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "hilbert5/field.hpp"

namespace hilbert5 {

enum class PrimeKind { split, inert, ramified };

/// A nonzero prime ideal of R.
struct PrimeIdeal {
  FieldElem gen;      ///< canonical totally positive generator
  mpz_class p;        ///< residue characteristic
  mpz_class norm;     ///< p or p^2
  PrimeKind kind = PrimeKind::split;

  friend bool operator==(const PrimeIdeal& x, const PrimeIdeal& y) { return x.gen == y.gen; }
  /// Order by norm, then by generator (a, b).
  friend bool operator<(const PrimeIdeal& x, const PrimeIdeal& y);
  std::string to_string() const { return "(" + gen.to_string() + ")"; }
};

struct PrimePower {
  PrimeIdeal prime;
  unsigned exponent = 1;
};

class IdealRep {
 public:
  IdealRep() : gen_(1), norm_(1) {}
  /// Factors the ideal generated by x (x != 0).
  explicit IdealRep(const FieldElem& x);
  static IdealRep from_factorization(std::vector<PrimePower> factors);

  const FieldElem& gen() const { return gen_; }
  const mpz_class& norm() const { return norm_; }
  const std::vector<PrimePower>& factorization() const { return factors_; }

  bool is_unit() const { return norm_ == 1; }
  bool divides(const IdealRep& other) const;
  bool contains(const FieldElem& x) const;
  unsigned valuation(const PrimeIdeal& p) const;
  bool coprime_to(const PrimeIdeal& p) const { return valuation(p) == 0; }
  /// True when every exponent is even.
  bool is_square() const;

  IdealRep operator*(const IdealRep& other) const;
  friend bool operator==(const IdealRep& x, const IdealRep& y) { return x.gen_ == y.gen_; }
  std::string to_string() const { return "(" + gen_.to_string() + ")"; }

 private:
  FieldElem gen_;
  mpz_class norm_;
  std::vector<PrimePower> factors_;  // sorted by prime order
};

/// Factorization of a nonzero integer into rational primes with multiplicity.
std::vector<std::pair<mpz_class, unsigned>> factor_integer(mpz_class n);

/// Valuation of x at the prime p (x != 0).
unsigned valuation(const FieldElem& x, const PrimeIdeal& p);

/// The primes of R lying above the rational prime p, in canonical order.
std::vector<PrimeIdeal> primes_above(const mpz_class& p);

/// The prime ideal generated by a prime element (given up to units).
PrimeIdeal prime_from_generator(const FieldElem& pi);

/// All prime ideals of norm <= bound, in canonical order.
std::vector<PrimeIdeal> primes_up_to(long bound);

IdealRep factor_ideal(const FieldElem& x);

/// All ideals of norm <= bound (each once), ordered by norm then generator.
std::vector<IdealRep> ideals_up_to(long bound);

/// Root of x^2 - x - 1 modulo the odd prime p != 5 when p = +-1 mod 5.
mpz_class golden_root_mod(const mpz_class& p);

}  // namespace hilbert5
