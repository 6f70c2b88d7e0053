// Dense univariate polynomials over F = Q(sqrt 5), with root finding and factorization.
#pragma once

#include <string>
#include <vector>

#include "hilbert5/field.hpp"

namespace hilbert5 {

class PolyF {
 public:
  PolyF() = default;
  /// Coefficients low degree first; trailing zeros are dropped.
  explicit PolyF(std::vector<FieldQ> coeffs);
  static PolyF x();
  static PolyF constant(const FieldQ& c);
  /// x - r
  static PolyF linear(const FieldQ& r);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<FieldQ>& coeffs() const { return c_; }
  FieldQ coeff(int i) const;
  FieldQ leading() const { return c_.empty() ? FieldQ() : c_.back(); }

  FieldQ eval(const FieldQ& x) const;
  PolyF monic() const;
  PolyF derivative() const;
  /// Substitute x -> lambda * x.
  PolyF scale_variable(const FieldQ& lambda) const;

  PolyF& operator+=(const PolyF& o);
  PolyF& operator-=(const PolyF& o);
  PolyF& operator*=(const PolyF& o);
  PolyF& operator*=(const FieldQ& s);
  friend PolyF operator+(PolyF a, const PolyF& b) { return a += b; }
  friend PolyF operator-(PolyF a, const PolyF& b) { return a -= b; }
  friend PolyF operator*(PolyF a, const PolyF& b) { return a *= b; }
  friend PolyF operator*(PolyF a, const FieldQ& s) { return a *= s; }
  PolyF operator-() const;
  friend bool operator==(const PolyF& a, const PolyF& b) { return a.c_ == b.c_; }

  /// this = q * g + r.
  void divmod(const PolyF& g, PolyF& q, PolyF& r) const;
  PolyF operator%(const PolyF& g) const;
  PolyF operator/(const PolyF& g) const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<FieldQ> c_;
};

/// Monic gcd (zero if both are zero).
PolyF gcd(PolyF a, PolyF b);
/// Product of the distinct monic irreducible factors.
PolyF squarefree_part(const PolyF& f);

/// Distinct roots of f in F, sorted by (a, b).
std::vector<FieldQ> roots_in_field(const PolyF& f);
/// Monic irreducible factors over F of the squarefree part of f, by degree then coefficients.
std::vector<PolyF> factor_over_field(const PolyF& f);
/// The monic irreducible factors of degree <= max_degree only (cheaper: lifts to a lower
/// precision and tries fewer recombinations).
std::vector<PolyF> small_factors(const PolyF& f, int max_degree);

}  // namespace hilbert5
