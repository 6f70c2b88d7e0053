// Elliptic curves over F: Weierstrass models, reduction, Tate's algorithm, minimal models,
// torsion and quadratic twists.
#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hilbert5/field.hpp"
#include "hilbert5/ideal.hpp"
#include "hilbert5/poly.hpp"
#include "hilbert5/residue.hpp"

namespace hilbert5 {

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with integral coefficients.
struct CurveModel {
  std::array<FieldElem, 5> a;  // a1, a2, a3, a4, a6

  const FieldElem& a1() const { return a[0]; }
  const FieldElem& a2() const { return a[1]; }
  const FieldElem& a3() const { return a[2]; }
  const FieldElem& a4() const { return a[3]; }
  const FieldElem& a6() const { return a[4]; }

  friend bool operator==(const CurveModel&, const CurveModel&) = default;
  /// "[a1,a2,a3,a4,a6]"
  std::string to_string() const;
  /// Accepts "[a1,a2,a3,a4,a6]" or "a1,a2,a3,a4,a6".
  static CurveModel parse(std::string_view text);
};

/// Same shape over F; used for intermediate models with denominators.
using AInvariantsQ = std::array<FieldQ, 5>;

class SingularModel : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class BadReduction : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct Invariants {
  FieldElem b2, b4, b6, b8, c4, c6, disc;
  FieldQ j;
};

/// Throws SingularModel when the discriminant vanishes.
Invariants invariants(const CurveModel& e);
FieldElem discriminant(const CurveModel& e);
FieldQ j_invariant(const CurveModel& e);

/// b-invariants and discriminant of a model over F (no singularity check).
struct InvariantsQ {
  FieldQ b2, b4, b6, b8, c4, c6, disc;
};
InvariantsQ invariants(const AInvariantsQ& a);

/// Change of variables x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
AInvariantsQ transform(const AInvariantsQ& a, const FieldQ& u, const FieldQ& r, const FieldQ& s,
                       const FieldQ& t);
/// The same with u = 1 and r, s, t in R (stays integral).
CurveModel rst_transform(const CurveModel& e, const FieldElem& r, const FieldElem& s,
                         const FieldElem& t);
/// Scaling by a unit u: a_i -> a_i / u^i.
CurveModel unit_scale(const CurveModel& e, const FieldElem& u);

AInvariantsQ to_q(const CurveModel& e);
/// An integral model over R isomorphic to a (scales by an integer).
CurveModel integral_model(const AInvariantsQ& a);
/// y^2 = x^3 - 27 c4 x - 54 c6.
CurveModel from_c4c6(const FieldElem& c4, const FieldElem& c6);

enum class Reduction { good, split_multiplicative, nonsplit_multiplicative, additive };
std::string to_string(Reduction r);

struct LocalData {
  PrimeIdeal prime;
  int conductor_exponent = 0;
  int minimal_disc_valuation = 0;
  std::string kodaira;  // "I0", "I3", "I2*", "IV*", ...
  Reduction reduction = Reduction::good;
  int tamagawa = 1;
  CurveModel minimal_model;  // minimal at this prime, unchanged elsewhere up to units
};

/// Tate's algorithm at p for an integral model.
LocalData local_data(const CurveModel& e, const PrimeIdeal& p);
/// Primes dividing the discriminant.
std::vector<PrimeIdeal> bad_primes(const CurveModel& e);
/// Local data at every bad prime of a (not necessarily minimal) model.
std::vector<LocalData> all_local_data(const CurveModel& e);
IdealRep conductor(const CurveModel& e);
/// Minimal at every prime, then reduced to the canonical normal form.
CurveModel global_minimal_model(const CurveModel& e);
/// The canonical normal form of an already minimal model.
CurveModel reduce_model(const CurveModel& e);
bool isomorphic(const CurveModel& e1, const CurveModel& e2);
/// Total bit height of the coefficients; orders curves within classes and labels.
std::size_t model_height(const CurveModel& e);

enum class CountMethod { automatic, sweep, bsgs };
/// Number of points of the reduction mod p (good reduction required).
long count_points(const CurveModel& e, const PrimeIdeal& p, CountMethod method = CountMethod::automatic);
/// N(p) + 1 - #E(F_p) at good p; at bad p, +1 / -1 / 0 for split / nonsplit / additive.
long ap(const CurveModel& e, const PrimeIdeal& p);
class FiniteField;
/// Point count of a model whose coefficients are already reduced into k. The reduction
/// must be nonsingular; no check is made.
long count_points_reduced(const FiniteField& k, const std::array<Residue, 5>& a);
/// Discriminant of a reduced model, computed in k.
Residue discriminant_reduced(const FiniteField& k, const std::array<Residue, 5>& a);
/// Good-prime a_p only; throws BadReduction at a bad prime.
long ap_good(const CurveModel& e, const PrimeIdeal& p);

CurveModel quadratic_twist(const CurveModel& e, const FieldElem& d);

// Points and torsion.
struct PointF {
  FieldQ x, y;
  bool infinity = true;
  static PointF zero() { return PointF{}; }
  static PointF affine(FieldQ x, FieldQ y) { return PointF{std::move(x), std::move(y), false}; }
  friend bool operator==(const PointF&, const PointF&) = default;
};

bool on_curve(const CurveModel& e, const PointF& p);
PointF point_neg(const CurveModel& e, const PointF& p);
PointF point_add(const CurveModel& e, const PointF& p, const PointF& q);
PointF point_mul(const CurveModel& e, const PointF& p, long n);
/// Order of a torsion point, or 0 when it exceeds the bound.
long point_order(const CurveModel& e, const PointF& p, long bound = 16);

/// The n-th division polynomial in x alone: psi_n for odd n, psi_n / psi_2 for even n.
PolyF division_polynomial(const CurveModel& e, long n);
/// psi_2^2 = 4x^3 + b2 x^2 + 2 b4 x + b6.
PolyF two_division_polynomial(const CurveModel& e);
/// Points (x, y) over F with the given x-coordinate.
std::vector<PointF> points_with_x(const CurveModel& e, const FieldQ& x);

class TorsionOutsideClassification : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct TorsionStructure {
  long n1 = 1;  // group is Z/n1 x Z/n2 with n1 | n2
  long n2 = 1;
  long order() const { return n1 * n2; }
  /// "1", "Z/8Z", "Z/2Z x Z/4Z"
  std::string to_string() const;
  static TorsionStructure parse(std::string_view text);
  friend bool operator==(const TorsionStructure&, const TorsionStructure&) = default;
};

/// The torsion structures occurring over Q(sqrt 5): Z/m (m <= 10, 12, 15), Z/2 x Z/2m (m <= 4).
bool allowed_torsion(const TorsionStructure& t);

/// gcd of #E(F_p) over good primes of odd residue characteristic.
long torsion_bound(const CurveModel& e, int primes = 12);
TorsionStructure torsion_subgroup(const CurveModel& e);
/// All torsion points (including the origin).
std::vector<PointF> torsion_points(const CurveModel& e);

}  // namespace hilbert5
