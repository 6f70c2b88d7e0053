#include "doctest.h"
#include "hilbert5/isogeny.hpp"

using namespace hilbert5;

namespace {

CurveModel curve(const char* text) { return CurveModel::parse(text); }

void check_same_ap(const CurveModel& a, const CurveModel& b, long bound) {
  const auto bad_a = bad_primes(a), bad_b = bad_primes(b);
  for (const PrimeIdeal& p : primes_up_to(bound)) {
    if (std::find(bad_a.begin(), bad_a.end(), p) != bad_a.end()) continue;
    if (std::find(bad_b.begin(), bad_b.end(), p) != bad_b.end()) continue;
    CAPTURE(p.to_string());
    CHECK(ap_good(a, p) == ap_good(b, p));
  }
}

}  // namespace

TEST_CASE("kernel polynomials") {
  // full rational 2-torsion
  CHECK(kernel_polynomials(curve("[0,0,0,-1,0]"), 2).size() == 3);
  CHECK(kernel_polynomials(curve("[phi,-phi+1,0,-4,3*phi-5]"), 2).size() == 3);
  CHECK(kernel_polynomials(curve("[1,-phi-1,phi,0,0]"), 2).size() >= 1);
  CHECK(kernel_polynomials(curve("[1,-phi-1,phi,0,0]"), 13).empty());
  CHECK(kernel_polynomials(curve("[phi,phi-1,phi,-1001*phi-628,17899*phi+11079]"), 3).empty());
  const auto k5 = kernel_polynomials(curve("[0,-1,1,-10,-20]"), 5);
  CHECK(k5.size() == 2);
  for (const PolyF& k : k5) CHECK(k.degree() == 2);
  const auto k7 = kernel_polynomials(curve("[0,0,phi,27*phi-43,-80*phi+128]"), 7);
  REQUIRE(k7.size() == 1);
  CHECK(k7[0].degree() == 3);
  CHECK(is_kernel_polynomial(curve("[0,0,phi,27*phi-43,-80*phi+128]"), k7[0]));
  CHECK_THROWS(kernel_polynomials(curve("[0,0,0,-1,0]"), 4));
}

TEST_CASE("the isogeny filter is only a necessary condition") {
  CHECK(isogeny_possible(curve("[0,-1,1,-10,-20]"), 5));
  CHECK_FALSE(isogeny_possible(curve("[0,-1,1,-10,-20]"), 7));
  CHECK_FALSE(isogeny_possible(curve("[phi,phi-1,phi,-1001*phi-628,17899*phi+11079]"), 13));
}

TEST_CASE("Velu on y^2 = x^3 + a x^2 + b x") {
  const std::pair<FieldElem, FieldElem> ab[] = {
      {FieldElem(1), FieldElem(3)}, {FieldElem::phi(), FieldElem(-2)}, {FieldElem(2, -1), FieldElem(1, 1)}};
  for (const auto& [a, b] : ab) {
    const CurveModel e{{FieldElem(), a, FieldElem(), b, FieldElem()}};
    const CurveModel expected{{FieldElem(), FieldElem(-2) * a, FieldElem(), a * a - FieldElem(4) * b, FieldElem()}};
    const CurveModel img = velu(e, PolyF::x());
    CHECK(isomorphic(img, expected));
    check_same_ap(e, img, 60);
  }
}

TEST_CASE("Velu codomains keep good a_p and the dual returns to j(E)") {
  const char* curves[] = {"[1,-phi-1,phi,0,0]", "[phi,-phi+1,0,-4,3*phi-5]", "[0,-1,1,-10,-20]",
                          "[0,0,phi,27*phi-43,-80*phi+128]"};
  for (const char* text : curves) {
    const CurveModel e = global_minimal_model(curve(text));
    for (long l : {2L, 3L, 5L, 7L}) {
      for (const PolyF& k : kernel_polynomials(e, l)) {
        CAPTURE(text);
        CAPTURE(l);
        const CurveModel img = velu(e, k);
        CHECK(conductor(img) == conductor(e));
        check_same_ap(e, img, 50);
        bool dual_found = false;
        for (const PolyF& kd : kernel_polynomials(img, l))
          if (j_invariant(velu(img, kd)) == j_invariant(e)) dual_found = true;
        CHECK(dual_found);
      }
    }
  }
}

TEST_CASE("Velu rejects non-kernels") {
  const CurveModel e = curve("[0,-1,1,-10,-20]");
  CHECK_THROWS_AS(velu(e, PolyF({FieldQ(3), FieldQ(1)})), InvalidKernel);
  CHECK_THROWS_AS(velu(e, PolyF({FieldQ(1), FieldQ(0), FieldQ(1)})), InvalidKernel);
  CHECK_THROWS_AS(velu(e, PolyF::constant(FieldQ(1))), InvalidKernel);
}

TEST_CASE("isogeny closure") {
  SUBCASE("norm 99, degree 2") {
    const IsogenyClass cls = isogeny_closure(curve("[phi,-phi+1,0,-4,3*phi-5]"));
    CHECK(cls.size() >= 2);
    CHECK(cls.index_of(curve("[phi,-phi+1,0,-4,3*phi-5]")) >= 0);
  }
  SUBCASE("11a over F") {
    const IsogenyClass cls = isogeny_closure(curve("[0,-1,1,-10,-20]"));
    REQUIRE(cls.size() == 3);
    CHECK(cls.degrees[0][1] * cls.degrees[1][2] * cls.degrees[0][2] == 5 * 5 * 25);
  }
  SUBCASE("no isogenies") {
    const IsogenyClass cls = isogeny_closure(curve("[phi,phi-1,phi,-1001*phi-628,17899*phi+11079]"));
    REQUIRE(cls.size() == 1);
    CHECK(cls.degrees == std::vector<std::vector<long>>{{0}});
  }
  SUBCASE("budget") {
    CHECK_THROWS_AS(isogeny_closure(curve("[1,-phi-1,phi,0,0]"), {2, 3, 5, 7}, 3), ClosureBudgetExceeded);
  }
  SUBCASE("restricted degree set") {
    CHECK(isogeny_closure(curve("[0,-1,1,-10,-20]"), {2, 3}).size() == 1);
  }
  SUBCASE("structure and order independence") {
    const IsogenyClass cls = isogeny_closure(curve("[1,-phi-1,phi,0,0]"));
    REQUIRE(cls.size() >= 2);
    const IdealRep n = conductor(cls.curves[0]);
    for (std::size_t i = 0; i < cls.size(); ++i) {
      CHECK(conductor(cls.curves[i]) == n);
      check_same_ap(cls.curves[0], cls.curves[i], 50);
      CHECK(cls.degrees[i][i] == 0);
      for (std::size_t j = 0; j < cls.size(); ++j) {
        CHECK(cls.degrees[i][j] == cls.degrees[j][i]);
        if (i == j) continue;
        long d = cls.degrees[i][j];
        for (long l : {2L, 3L, 5L, 7L})
          while (d % l == 0) d /= l;
        CHECK(d == 1);
      }
    }
    for (const CurveModel& other : cls.curves) {
      const IsogenyClass again = isogeny_closure(other);
      CHECK(again.curves == cls.curves);
      CHECK(again.degrees == cls.degrees);
    }
  }
}
