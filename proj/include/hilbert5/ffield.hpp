// Residue fields R/P and dense polynomials over them.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "hilbert5/field.hpp"
#include "hilbert5/ideal.hpp"
#include "hilbert5/residue.hpp"

namespace hilbert5 {

class FiniteField {
 public:
  explicit FiniteField(const PrimeIdeal& prime);

  const PrimeIdeal& prime() const { return prime_; }
  const RingDescriptor& ring() const { return ring_; }
  std::int64_t q() const { return ring_.residue_size; }
  std::int64_t characteristic() const { return ring_.p; }

  /// Elements are indexed 0..q-1; index 0 is zero.
  Residue element(std::int64_t index) const { return ring_.unrank(index); }
  std::int64_t index(Residue x) const { return ring_.rank(x); }

  Residue zero() const { return ring_.zero(); }
  Residue one() const { return ring_.one(); }
  Residue from_int(long n) const { return ring_.from_ints(n, 0); }
  Residue reduce(const FieldElem& x) const { return ring_.reduce(x); }
  /// Reduction of an element of F whose denominator is prime to P.
  Residue reduce(const FieldQ& x) const;
  /// A preimage in R of a residue.
  FieldElem lift(Residue x) const;

  Residue add(Residue x, Residue y) const { return ring_.add(x, y); }
  Residue sub(Residue x, Residue y) const { return ring_.sub(x, y); }
  Residue neg(Residue x) const { return ring_.neg(x); }
  Residue mul(Residue x, Residue y) const { return ring_.mul(x, y); }
  Residue inv(Residue x) const { return ring_.inv(x); }
  Residue pow(Residue x, const mpz_class& e) const;
  Residue pow(Residue x, std::uint64_t e) const;
  bool is_zero(Residue x) const { return x == zero(); }

  /// Quadratic character (0 at zero). Odd characteristic only.
  int chi(Residue x) const;
  bool is_square(Residue x) const;
  std::optional<Residue> sqrt(Residue x) const;
  /// All n-th roots of x; brute force, so meant for small fields.
  std::vector<Residue> nth_roots(Residue x, int n) const;
  Residue random(std::mt19937_64& rng) const;

 private:
  PrimeIdeal prime_;
  RingDescriptor ring_;
  std::vector<std::int8_t> chi_table_;  // filled for small odd q
  std::optional<Residue> nonresidue_;
};

/// Coefficients low degree first, no trailing zeros (zero polynomial is empty).
using FqPoly = std::vector<Residue>;

namespace fq {

void trim(const FiniteField& k, FqPoly& f);
int degree(const FqPoly& f);
FqPoly add(const FiniteField& k, const FqPoly& f, const FqPoly& g);
FqPoly sub(const FiniteField& k, const FqPoly& f, const FqPoly& g);
FqPoly mul(const FiniteField& k, const FqPoly& f, const FqPoly& g);
/// f = q*g + r with deg r < deg g; g nonzero.
void divmod(const FiniteField& k, const FqPoly& f, const FqPoly& g, FqPoly& q, FqPoly& r);
FqPoly mod(const FiniteField& k, const FqPoly& f, const FqPoly& g);
FqPoly monic(const FiniteField& k, const FqPoly& f);
FqPoly gcd(const FiniteField& k, FqPoly f, FqPoly g);
FqPoly derivative(const FiniteField& k, const FqPoly& f);
FqPoly powmod(const FiniteField& k, const FqPoly& base, const mpz_class& e, const FqPoly& m);
Residue eval(const FiniteField& k, const FqPoly& f, Residue x);

/// Distinct roots of f in the field.
std::vector<Residue> roots(const FiniteField& k, const FqPoly& f);
/// Number of roots counted with multiplicity.
int count_roots_with_multiplicity(const FiniteField& k, const FqPoly& f);
/// Monic irreducible factors of a squarefree f (odd q).
std::vector<FqPoly> factor_squarefree(const FiniteField& k, const FqPoly& f);

}  // namespace fq

}  // namespace hilbert5
