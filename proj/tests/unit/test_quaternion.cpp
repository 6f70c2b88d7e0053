#include "doctest.h"
#include "hilbert5/quaternion.hpp"

using namespace hilbert5;

TEST_CASE("icosian order basics") {
  const auto& S = IcosianOrder::instance();
  CHECK(S.nrd(S.one()) == FieldElem(1));
  CHECK(S.norm_one_units().size() == 120);
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      Quat em{}, en{};
      em[m] = 1;
      en[n] = 1;
      CHECK(S.nrd(S.mul(em, en)) == S.nrd(em) * S.nrd(en));
    }
  const auto& u = S.norm_one_units();
  for (std::size_t i = 0; i < 10; ++i) CHECK(S.nrd(S.mul(u[i], u[i + 7])) == FieldElem(1));
}

TEST_CASE("hecke representatives have N(p)+1 classes") {
  CHECK(hecke_representatives(FieldElem(2)).size() == 5);
  CHECK(hecke_representatives(FieldElem(2, 1)).size() == 6);
  for (const auto& p : primes_up_to(100)) {
    const auto& reps = hecke_representatives(p.gen);
    CHECK(mpz_class(static_cast<unsigned long>(reps.size())) == p.norm + 1);
  }
  CHECK_THROWS(IcosianOrder::instance().elements_of_norm(FieldElem(1, 2)));
}

TEST_CASE("splitting maps are algebra isomorphisms") {
  const auto& S = IcosianOrder::instance();
  std::vector<RingDescriptor> rings = {build_ring(11, 1), build_ring(11, 2), build_ring(2, 1),
                                       build_ring(2, 3), build_ring(3, 2), build_ring(5, 1),
                                       build_ring(5, 2), build_ring(5, 3), build_ring(31, 1)};
  for (const auto& r : rings) {
    SplittingMap sm(r);
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) {
        Quat em{}, en{};
        em[m] = 1;
        en[n] = 1;
        CHECK(sm.image(S.mul(em, en)) == sm.mul(sm.image(em), sm.image(en)));
      }
    CHECK(sm.image(S.one()) == Mat2{r.one(), r.zero(), r.zero(), r.one()});
    for (const auto& a : hecke_representatives(FieldElem(3)))
      CHECK(sm.det(sm.image(a)) == r.reduce(S.nrd(a)));
    auto [I, J] = sm.ij_images();
    const Mat2 minus_one{r.neg(r.one()), r.zero(), r.zero(), r.neg(r.one())};
    CHECK(sm.mul(I, I) == minus_one);
    CHECK(sm.mul(J, J) == minus_one);
    const Mat2 K = sm.mul(I, J);
    CHECK(sm.mul(K, K) == minus_one);
    const Mat2 JI = sm.mul(J, I);
    CHECK(K == Mat2{r.neg(JI.a), r.neg(JI.b), r.neg(JI.c), r.neg(JI.d)});
  }
}
