#include <random>

#include "doctest.h"
#include "hilbert5/ffield.hpp"

using namespace hilbert5;

TEST_CASE("finite field arithmetic and square roots") {
  for (long bound : {50L}) {
    for (const PrimeIdeal& P : primes_up_to(bound)) {
      const FiniteField k(P);
      CHECK(k.q() == P.norm.get_si());
      std::mt19937_64 rng(7);
      for (int i = 0; i < 200; ++i) {
        const Residue x = k.random(rng);
        if (k.is_zero(x)) continue;
        CHECK(k.mul(x, k.inv(x)) == k.one());
        CHECK(k.pow(x, static_cast<std::uint64_t>(k.q() - 1)) == k.one());
        CHECK(k.reduce(k.lift(x)) == x);
        if (k.characteristic() != 2) {
          const Residue s = k.mul(x, x);
          CHECK(k.chi(s) == 1);
          const auto r = k.sqrt(s);
          REQUIRE(r);
          CHECK(k.mul(*r, *r) == s);
        }
      }
    }
  }
}

TEST_CASE("quadratic character counts half the units") {
  const FiniteField k(primes_above(7).front());  // inert, q = 49
  int squares = 0;
  for (std::int64_t i = 1; i < k.q(); ++i) squares += k.chi(k.element(i)) == 1;
  CHECK(squares == 24);
}

TEST_CASE("polynomials over residue fields") {
  const FiniteField k(primes_above(11).front());
  const Residue r1 = k.from_int(3), r2 = k.from_int(5);
  FqPoly f = fq::mul(k, FqPoly{k.neg(r1), k.one()}, FqPoly{k.neg(r2), k.one()});
  f = fq::mul(k, f, FqPoly{k.one(), k.zero(), k.one()});  // x^2 + 1 is irreducible mod 11
  auto roots = fq::roots(k, f);
  CHECK(roots.size() == 2);
  CHECK(fq::factor_squarefree(k, f).size() == 3);
  CHECK(fq::count_roots_with_multiplicity(k, fq::mul(k, f, FqPoly{k.neg(r1), k.one()})) == 3);
  FqPoly q, r;
  fq::divmod(k, f, FqPoly{k.neg(r1), k.one()}, q, r);
  CHECK(r.empty());
}

TEST_CASE("large-field roots use the gcd method") {
  const FiniteField k(primes_above(100003).front());
  const Residue a = k.from_int(12345), b = k.from_int(678);
  const FqPoly f = fq::mul(k, FqPoly{k.neg(a), k.one()}, fq::mul(k, FqPoly{k.neg(b), k.one()}, FqPoly{k.from_int(2), k.zero(), k.one()}));
  auto roots = fq::roots(k, f);
  REQUIRE(roots.size() >= 2);
  int hits = 0;
  for (Residue x : roots) hits += (x == a) + (x == b);
  CHECK(hits == 2);
}
