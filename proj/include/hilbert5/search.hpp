// Searching for curves that match a rational newform: box enumeration, sieving by point
// counts with CRT lifting, torsion families, and quadratic twist closure.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hilbert5/curve.hpp"
#include "hilbert5/hecke.hpp"
#include "hilbert5/record.hpp"

namespace hilbert5 {

/// Models are enumerated in translation-normalized form: a1, a3 in {0, 1, phi, 1+phi} and
/// a2 = x + y phi with x, y in {-1, 0, 1}, each kept only if it fits its bound; a4 and a6 run
/// over all x + y phi with max(|x|, |y|) <= bound. A negative bound empties the box.
struct SearchBox {
  std::array<long, 5> bound{};
  static SearchBox uniform(long h) { return SearchBox{{h, h, h, h, h}}; }
  bool empty() const;
};

struct SearchResult {
  std::vector<CurveModel> curves;  // canonical minimal models, sorted, no repeats
  std::uint64_t visited = 0;       // candidate models examined
};

/// conductor(E) equals the level and a_p(E) = a_p(form) at every good prime of the table.
bool match(const CurveModel& e, const NewformRecord& form);

SearchResult naive_search(const SearchBox& box, const NewformRecord& form);

struct SieveSpec {
  std::vector<PrimeIdeal> primes;
  std::vector<long> counts;  // required N(p) + 1 - a_p at each prime
  long lift_height = 8;      // max coordinate of the lifted a4, a6
};

/// Smallest good split primes of the form, until the CRT modulus exceeds 2 * lift_height + 1.
SieveSpec default_sieve(const NewformRecord& form, long lift_height);
/// The sieve over explicit primes, with counts read from the form.
SieveSpec sieve_for_primes(const NewformRecord& form, const std::vector<PrimeIdeal>& primes, long lift_height);

/// Residue curves with the required counts at every prime, CRT-combined and lifted to a4, a6
/// with coordinates bounded by the lift height; survivors pass match().
SearchResult sieved_search(const SieveSpec& spec, const NewformRecord& form);

/// l divides N(p) + 1 - a_p at every good prime of odd residue characteristic in the table.
bool torsion_filter(const NewformRecord& form, long l);

/// Parameters t = (a + b phi) / (c + d phi) with |a|, |b| <= numerator_height and
/// |c|, |d| <= denominator_height. For N = 2, 3 the two-parameter families
/// y^2 = x^3 + u x^2 + v x and y^2 + u xy + v y = x^3 take u, v from the numerator box.
struct FamilyParams {
  long numerator_height = 2;
  long denominator_height = 1;
};

/// Specializations with (0, 0) of exact order N, as canonical minimal models.
/// N is one of 2..10 or 12.
SearchResult family_curves(int n, const FamilyParams& params);
/// The same, keeping only curves that match the form.
SearchResult family_search(int n, const FamilyParams& params, const NewformRecord& form);

/// The quadratic character of d modulo an odd prime not dividing d.
int twist_character(const FieldElem& d, const PrimeIdeal& p);

struct TwistSpec {
  CurveModel base;
  long bound = 0;  // B: keep twists of conductor norm <= B
};

/// Squarefree products d1 of canonical prime generators, over primes not dividing the
/// level, with |N(d1)| <= sqrt(B / C); C is the norm of the product of primes exactly
/// dividing the level.
std::vector<FieldElem> twist_d1_candidates(const IdealRep& level, long bound);

struct TwistOutcome {
  FieldElem d;
  CurveRecord record;
};

/// Every twist E^d with d = +-phi^delta d0 d1 (d0 a product of primes dividing the level)
/// whose conductor norm is at most B, excluding curves isomorphic to the base.
std::vector<TwistOutcome> twist_closure(const TwistSpec& spec);

}  // namespace hilbert5
