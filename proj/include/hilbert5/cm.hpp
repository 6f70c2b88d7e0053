// Hilbert class polynomials and the CM j-invariants lying in F.
#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "hilbert5/curve.hpp"

namespace hilbert5 {

class PrecisionInsufficient : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadraticForm {
  long a, b, c;
};

/// Primitive reduced forms a x^2 + b xy + c y^2 of discriminant D < 0.
std::vector<QuadraticForm> reduced_forms(long D);
long class_number(long D);

struct ClassPolynomial {
  long D = 0;
  std::vector<mpz_class> coeffs;  // constant term first, monic
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  mpz_class discriminant() const;  // only for degree <= 2
};

/// prod (X - j(tau_Q)) over reduced forms, rounded to integers. bits = 0 picks
/// 200 + 10 h sqrt|D|; throws PrecisionInsufficient if a coefficient is within 0.25 of a
/// half-integer.
ClassPolynomial class_polynomial(long D, long bits = 0);
/// Retries with doubled precision on PrecisionInsufficient.
ClassPolynomial class_polynomial_auto(long D);

/// Discriminants D with -bound <= D < 0 and h(D) = h.
std::vector<long> discriminants_with_class_number(long h, long bound);

/// The thirteen D with linear H_D and the nine with quadratic H_D split over F.
const std::vector<long>& linear_cm_discriminants();
const std::vector<long>& quadratic_cm_discriminants_over_f();

struct CmEntry {
  long D;
  FieldElem j;
};

/// The 31 CM j-invariants in F, by D (as in the lists above) then by j.
const std::vector<CmEntry>& cm_j_invariants();

std::optional<long> is_cm(const FieldElem& j);
std::optional<long> is_cm(const FieldQ& j);

/// An integral model with the given j-invariant.
CurveModel curve_with_j(const FieldQ& j);

}  // namespace hilbert5
