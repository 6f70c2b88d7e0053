#include <gmp.h>

#include <set>

#include "doctest.h"
#include "hilbert5/cm.hpp"
#include "hilbert5/ideal.hpp"

using namespace hilbert5;

TEST_CASE("reduced forms and class numbers") {
  CHECK(class_number(-3) == 1);
  CHECK(class_number(-4) == 1);
  CHECK(class_number(-15) == 2);
  CHECK(class_number(-23) == 3);
  CHECK(class_number(-47) == 5);
  CHECK(class_number(-163) == 1);
  CHECK(class_number(-12) == 1);  // primitive forms only
  for (const QuadraticForm& f : reduced_forms(-71)) {
    CHECK(f.b * f.b - 4 * f.a * f.c == -71);
    CHECK(std::labs(f.b) <= f.a);
    CHECK(f.a <= f.c);
  }
  CHECK_THROWS(reduced_forms(-5));
  CHECK_THROWS(reduced_forms(4));
}

TEST_CASE("class polynomials") {
  CHECK(class_polynomial(-4).coeffs == std::vector<mpz_class>{-1728, 1});
  CHECK(class_polynomial(-3).coeffs == std::vector<mpz_class>{0, 1});
  CHECK(class_polynomial(-163).coeffs[0] == mpz_class("262537412640768000"));
  const ClassPolynomial h15 = class_polynomial(-15);
  CHECK(h15.coeffs == std::vector<mpz_class>{mpz_class(-121287375), 191025, 1});
  CHECK(h15.discriminant() % 5 == 0);
  CHECK(exact_isqrt(h15.discriminant() / 5).has_value());
  const ClassPolynomial h23 = class_polynomial(-23);
  CHECK(h23.coeffs == std::vector<mpz_class>{mpz_class(12771880859375), mpz_class(-5151296875), 3491750, 1});
  CHECK_THROWS_AS(class_polynomial(-163, 30), PrecisionInsufficient);
  CHECK(class_polynomial_auto(-163).coeffs == class_polynomial(-163).coeffs);
}

TEST_CASE("discriminant lists") {
  CHECK(discriminants_with_class_number(1, 2000) == linear_cm_discriminants());
  std::vector<long> split;
  for (long D : discriminants_with_class_number(2, 2000)) {
    const mpz_class disc = class_polynomial_auto(D).discriminant();
    if (disc % 5 == 0 && exact_isqrt(disc / 5)) split.push_back(D);
  }
  CHECK(discriminants_with_class_number(2, 2000).size() == 29);
  CHECK(split == quadratic_cm_discriminants_over_f());
}

TEST_CASE("the CM j-invariants in F") {
  const auto& cat = cm_j_invariants();
  REQUIRE(cat.size() == 31);
  std::set<FieldElem> distinct;
  for (const CmEntry& e : cat) {
    distinct.insert(e.j);
    // j is a root of H_D
    const ClassPolynomial H = class_polynomial_auto(e.D);
    FieldElem value;
    for (int i = H.degree(); i >= 0; --i) value = value * e.j + FieldElem(H.coeffs[static_cast<std::size_t>(i)]);
    CHECK(value.is_zero());
  }
  CHECK(distinct.size() == 31);
  CHECK(is_cm(FieldElem(1728)) == -4);
  CHECK(is_cm(FieldElem(0)) == -3);
  CHECK(is_cm(FieldElem(-138510, 85995)) == -15);
  CHECK(is_cm(FieldElem(-52515, -85995)) == -15);
  CHECK_FALSE(is_cm(FieldElem(1729)).has_value());
  CHECK_FALSE(is_cm(j_invariant(CurveModel::parse("[1,-phi-1,phi,0,0]"))).has_value());
  CHECK_FALSE(is_cm(FieldQ(mpq_class(1, 2), mpq_class(0))).has_value());
}

TEST_CASE("CM curves have vanishing a_P exactly at inert primes of the order") {
  for (const CmEntry& e : cm_j_invariants()) {
    const CurveModel c = curve_with_j(FieldQ(e.j));
    CAPTURE(e.D);
    CHECK(j_invariant(c) == FieldQ(e.j));
    const auto bad = bad_primes(c);
    int checked = 0;
    mpz_class p = 5;
    while (checked < 5) {
      mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
      if (mpz_kronecker_si(p.get_mpz_t(), 5) != 1) continue;  // split in F
      if (mpz_class(e.D) % p == 0) continue;
      for (const PrimeIdeal& P : primes_above(p)) {
        if (std::find(bad.begin(), bad.end(), P) != bad.end()) continue;
        CAPTURE(P.to_string());
        const bool inert = mpz_kronecker(mpz_class(e.D).get_mpz_t(), p.get_mpz_t()) == -1;
        CHECK((ap_good(c, P) == 0) == inert);
        ++checked;
      }
    }
  }
}
