#include "doctest.h"
#include "hilbert5/ffield.hpp"
#include "hilbert5/search.hpp"

using namespace hilbert5;

namespace {

const NewformRecord& form31() {
  static const NewformRecord f = rational_newforms(IdealRep(FieldElem::parse("5*phi-3")), 100).at(0);
  return f;
}

const CurveModel kCurve31 = CurveModel::parse("[1,-phi-1,phi,0,0]");
const CurveModel kCurve145 = CurveModel::parse("[0,0,phi,27*phi-43,-80*phi+128]");

NewformRecord form145() {
  for (const NewformRecord& f : rational_newforms(conductor(kCurve145), 100))
    if (match(kCurve145, f)) return f;
  throw std::logic_error("no form for the norm-145 curve");
}

}  // namespace

TEST_CASE("match checks eigenvalues and conductor") {
  const NewformRecord& f = form31();
  CHECK(match(kCurve31, f));
  CHECK(match(rst_transform(unit_scale(kCurve31, FieldElem(0, 1)), FieldElem(2), FieldElem(-1, 1), FieldElem(3)), f));
  CHECK_FALSE(match(kCurve31, form145()));
  // The conjugate curve has the conjugate eigenvalues.
  CHECK_FALSE(match(CurveModel::parse("[1,phi+1,phi,phi,0]"), f));
  NewformRecord wrong_level = f;
  wrong_level.level = IdealRep(FieldElem::parse("5*phi-3") * FieldElem(3));
  CHECK_FALSE(match(kCurve31, wrong_level));
}

TEST_CASE("naive search at norm 31") {
  const SearchResult r = naive_search(SearchBox::uniform(2), form31());
  REQUIRE(r.curves.size() == 1);
  CHECK(r.curves[0] == kCurve31);
  CHECK(naive_search(SearchBox{{1, 1, 1, -1, 1}}, form31()).curves.empty());
}

TEST_CASE("sieved search agrees with the naive search and visits fewer models") {
  std::vector<PrimeIdeal> primes{primes_above(3).front()};
  for (const PrimeIdeal& p : primes_above(11)) primes.push_back(p);
  const SieveSpec spec = sieve_for_primes(form31(), primes, 2);
  const SearchResult s = sieved_search(spec, form31());
  const SearchResult n = naive_search(SearchBox::uniform(2), form31());
  CHECK(s.curves == n.curves);
  CHECK(s.visited * 100 < n.visited);
  for (std::size_t i = 0; i < spec.primes.size(); ++i)
    for (const CurveModel& e : s.curves) CHECK(count_points(e, spec.primes[i]) == spec.counts[i]);

  const SieveSpec dflt = default_sieve(form31(), 6);
  long modulus = 1;
  for (const PrimeIdeal& p : dflt.primes) modulus *= p.norm.get_si();
  CHECK(modulus > 13);
  // With a4, a6 up to 6 the sieve also reaches a 2-isogenous curve.
  const SearchResult wide = sieved_search(dflt, form31());
  CHECK(wide.curves == std::vector<CurveModel>{kCurve31, CurveModel::parse("[phi+1,-phi-1,phi,15*phi-27,-40*phi+64]")});
  for (const CurveModel& e : wide.curves) CHECK(match(e, form31()));

  SieveSpec impossible = spec;
  impossible.primes = {primes_above(3).front()};
  impossible.counts = {40};  // more than 9 + 1 + 2 * 3
  CHECK(sieved_search(impossible, form31()).curves.empty());
}

TEST_CASE("torsion filter") {
  CHECK(torsion_filter(form31(), 2));
  CHECK_FALSE(torsion_filter(form31(), 3));
  const NewformRecord f145 = form145();
  CHECK(torsion_filter(f145, 7));
  NewformRecord adversarial = f145;
  for (EigenEntry& e : adversarial.eigenvalues) {
    if (e.good && e.prime.p != 2 && e.prime.norm % 7 == 1) {
      e.ap = 1;  // N(p) + 1 - 1 = 1 mod 7
      break;
    }
  }
  CHECK_FALSE(torsion_filter(adversarial, 7));
}

TEST_CASE("torsion families") {
  for (int n : {2, 3, 4, 5, 6, 7, 8, 9, 10, 12}) {
    CAPTURE(n);
    const SearchResult r = family_curves(n, {1, 1});
    CHECK(!r.curves.empty());
    for (const CurveModel& e : r.curves) CHECK(torsion_subgroup(e).order() % n == 0);
  }
  const SearchResult r = family_search(7, {2, 1}, form145());
  CHECK(r.curves == std::vector<CurveModel>{kCurve145});
  for (const CurveModel& e : r.curves) CHECK(torsion_filter(form145(), 7));
}

TEST_CASE("twist closure of the norm-31 curve") {
  const IdealRep level = conductor(kCurve31);
  const auto d1 = twist_d1_candidates(level, 1831);
  CHECK(d1 == std::vector<FieldElem>{FieldElem(1), FieldElem(2), FieldElem(2, 1)});
  CHECK(twist_d1_candidates(level, 30) == std::vector<FieldElem>{FieldElem(1)});

  const auto tw = twist_closure({kCurve31, 1831});
  REQUIRE(tw.size() == 2);
  CHECK(tw[0].record.conductor_norm == 775);
  CHECK(tw[1].record.conductor_norm == 961);
  for (const TwistOutcome& o : tw) {
    CHECK(o.record.conductor_norm <= 1831);
    CHECK(isomorphic(quadratic_twist(kCurve31, o.d), o.record.model));
    for (const PrimeIdeal& p : primes_up_to(60)) {
      if (p.p == 2 || !level.coprime_to(p) || !o.record.conductor.coprime_to(p)) continue;
      CHECK(ap(o.record.model, p) == twist_character(o.d, p) * ap(kCurve31, p));
    }
  }
}
