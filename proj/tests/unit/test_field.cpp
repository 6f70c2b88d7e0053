#include <random>

#include "doctest.h"
#include "hilbert5/field.hpp"
#include "hilbert5/ideal.hpp"

using namespace hilbert5;

TEST_CASE("norms and conjugates") {
  CHECK(FieldElem::phi().norm() == -1);
  CHECK(FieldElem(-3, 5).norm() == -31);
  FieldElem g(-1, 2);
  CHECK(g.norm() == -5);
  CHECK((g * g).norm() == 25);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-1000, 1000);
  for (int i = 0; i < 200; ++i) {
    FieldElem x(d(rng), d(rng)), y(d(rng), d(rng));
    CHECK((x * y).norm() == x.norm() * y.norm());
    CHECK((x * y).conjugate() == x.conjugate() * y.conjugate());
    CHECK(x.conjugate().conjugate() == x);
  }
}

TEST_CASE("parsing and printing") {
  CHECK(FieldElem::parse("-38*phi+26") == FieldElem(26, -38));
  CHECK(FieldElem::parse("26-38phi") == FieldElem(26, -38));
  CHECK(FieldElem::parse("phi") == FieldElem(0, 1));
  CHECK(FieldElem::parse("-phi + 1") == FieldElem(1, -1));
  CHECK(FieldElem(26, -38).to_string() == "-38*phi+26");
  CHECK(FieldElem(0, 1).to_string() == "phi");
  CHECK(FieldElem(-3, 0).to_string() == "-3");
  CHECK(FieldElem(0, -1).to_string() == "-phi");
}

TEST_CASE("totally positive associates") {
  CHECK(*totally_positive_associate(FieldElem(0, 1)) == FieldElem(1));
  CHECK(*totally_positive_associate(FieldElem(2)) == FieldElem(2));
  auto t = totally_positive_associate(FieldElem(-3, 5));
  REQUIRE(t.has_value());
  CHECK(is_totally_positive(*t));
  CHECK(t->norm() == 31);
  CHECK(positive_generator(FieldElem(-1, 2)) == FieldElem(2, 1));
  for (long a = -30; a <= 30; ++a)
    for (long b = -30; b <= 30; ++b) {
      if (a == 0 && b == 0) continue;
      FieldElem x(a, b);
      FieldElem g = positive_generator(x);
      CHECK(is_totally_positive(g));
      CHECK(associates(g, x));
      CHECK(positive_generator(g) == g);
      CHECK(canonical_associate(canonical_associate(x)) == canonical_associate(x));
    }
}

TEST_CASE("square roots in R") {
  FieldElem x(7, -3);
  auto r = sqrt_in_ring(x * x);
  REQUIRE(r.has_value());
  CHECK(*r * *r == x * x);
  CHECK_FALSE(sqrt_in_ring(FieldElem(0, 1)).has_value());
  CHECK_FALSE(sqrt_in_ring(FieldElem(2)).has_value());
}

TEST_CASE("prime splitting") {
  auto p11 = primes_above(11);
  REQUIRE(p11.size() == 2);
  CHECK(associates(p11[0].gen, FieldElem(3, 1)));
  CHECK(associates(p11[1].gen, FieldElem(4, -1)));
  CHECK(primes_above(2).size() == 1);
  CHECK(primes_above(2)[0].kind == PrimeKind::inert);
  CHECK(primes_above(5)[0].kind == PrimeKind::ramified);
  auto f = factor_ideal(FieldElem(26, -38));
  CHECK(f.norm() == 1756);
  mpz_class prod = 1;
  for (const auto& pp : f.factorization())
    for (unsigned i = 0; i < pp.exponent; ++i) prod *= pp.prime.norm;
  CHECK(prod == 1756);
  auto two = factor_ideal(FieldElem(2));
  REQUIRE(two.factorization().size() == 1);
  CHECK(two.factorization()[0].exponent == 1);
}

TEST_CASE("primes up to a bound") {
  auto p4 = primes_up_to(4);
  REQUIRE(p4.size() == 1);
  CHECK(p4[0].gen == FieldElem(2));
  auto p5 = primes_up_to(5);
  REQUIRE(p5.size() == 2);
  CHECK(p5[1].norm == 5);
  for (const auto& p : primes_up_to(1000)) {
    CHECK(abs(p.gen.norm()) == p.norm);
    unsigned long r = mpz_fdiv_ui(p.p.get_mpz_t(), 5);
    if (p.kind == PrimeKind::split) CHECK((r == 1 || r == 4));
    if (p.kind == PrimeKind::inert) CHECK((r == 2 || r == 3));
  }
  // The number of ideals of norm n is the sum over d | n of the character (d/5).
  auto chi5 = [](long d) { long r = d % 5; return r == 0 ? 0 : (r == 1 || r == 4) ? 1 : -1; };
  long expected = 0;
  for (long n = 1; n <= 200; ++n)
    for (long d = 1; d <= n; ++d)
      if (n % d == 0) expected += chi5(d);
  long count = 0;
  for (const auto& I : ideals_up_to(200)) {
    CHECK(I.norm() <= 200);
    ++count;
  }
  CHECK(count == expected);
}
