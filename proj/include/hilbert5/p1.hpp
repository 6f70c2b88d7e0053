// The projective line over R/n: canonical representatives, enumeration and dense indexing.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hilbert5/residue.hpp"

namespace hilbert5 {

struct P1Point {
  CrtElem x;
  CrtElem y;
  std::int64_t index = 0;
};

/// Number of points of P^1(R/P^e) in one slot.
std::int64_t slot_cardinality(const RingDescriptor& r);

/// Canonical slot index of [x : y], or nullopt when both lie in the maximal ideal.
/// Points [1 : b] come first in b-rank order, then [a : 1] with a in the maximal ideal.
std::optional<std::int64_t> slot_normalize(const RingDescriptor& r, Residue x, Residue y);

/// Canonical pair for a slot index.
std::pair<Residue, Residue> slot_point(const RingDescriptor& r, std::int64_t index);

class P1List {
 public:
  explicit P1List(const IdealRep& n);

  const CrtRing& ring() const { return ring_; }
  std::int64_t size() const { return size_; }

  std::optional<P1Point> normalize(const CrtElem& x, const CrtElem& y) const;
  /// Index of normalize(x, y), or -1 when the pair is not a point.
  std::int64_t index_of(const CrtElem& x, const CrtElem& y) const;
  P1Point point_at(std::int64_t index) const;
  std::vector<P1Point> enumerate() const;

  /// Mixed-radix composition of slot indices (first slot most significant).
  std::int64_t compose(const std::int64_t* slot_indices) const;
  void decompose(std::int64_t index, std::int64_t* slot_indices) const;

 private:
  CrtRing ring_;
  std::vector<std::int64_t> card_;
  std::vector<std::int64_t> stride_;
  std::int64_t size_ = 1;
};

/// N(n) * prod over p | n of (1 + 1/N(p)).
mpz_class p1_cardinality(const IdealRep& n);

}  // namespace hilbert5
