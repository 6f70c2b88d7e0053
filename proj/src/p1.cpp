#include "hilbert5/p1.hpp"

namespace hilbert5 {

std::int64_t slot_cardinality(const RingDescriptor& r) {
  return r.size() + r.maximal_ideal_size();
}

std::optional<std::int64_t> slot_normalize(const RingDescriptor& r, Residue x, Residue y) {
  if (r.is_unit(x)) return r.rank(r.mul(y, r.inv(x)));
  if (r.is_unit(y)) return r.size() + r.maximal_rank(r.mul(x, r.inv(y)));
  return std::nullopt;
}

std::pair<Residue, Residue> slot_point(const RingDescriptor& r, std::int64_t index) {
  if (index < r.size()) return {r.one(), r.unrank(index)};
  return {r.maximal_unrank(index - r.size()), r.one()};
}

P1List::P1List(const IdealRep& n) : ring_(n) {
  const int m = ring_.active();
  card_.resize(m);
  stride_.resize(m);
  for (int i = 0; i < m; ++i) card_[i] = slot_cardinality(ring_.ring(i));
  std::int64_t s = 1;
  for (int i = m - 1; i >= 0; --i) {
    stride_[i] = s;
    s *= card_[i];
  }
  size_ = s;
}

std::int64_t P1List::compose(const std::int64_t* idx) const {
  std::int64_t out = 0;
  for (int i = 0; i < ring_.active(); ++i) out += idx[i] * stride_[i];
  return out;
}

void P1List::decompose(std::int64_t index, std::int64_t* idx) const {
  for (int i = 0; i < ring_.active(); ++i) {
    idx[i] = index / stride_[i];
    index %= stride_[i];
  }
}

std::int64_t P1List::index_of(const CrtElem& x, const CrtElem& y) const {
  std::int64_t out = 0;
  for (int i = 0; i < ring_.active(); ++i) {
    auto s = slot_normalize(ring_.ring(i), x.slots[i], y.slots[i]);
    if (!s) return -1;
    out += *s * stride_[i];
  }
  return out;
}

P1Point P1List::point_at(std::int64_t index) const {
  P1Point pt;
  pt.index = index;
  std::int64_t idx[kMaxSlots];
  decompose(index, idx);
  for (int i = 0; i < ring_.active(); ++i) {
    auto [a, b] = slot_point(ring_.ring(i), idx[i]);
    pt.x.slots[i] = a;
    pt.y.slots[i] = b;
  }
  return pt;
}

std::optional<P1Point> P1List::normalize(const CrtElem& x, const CrtElem& y) const {
  const std::int64_t i = index_of(x, y);
  if (i < 0) return std::nullopt;
  return point_at(i);
}

std::vector<P1Point> P1List::enumerate() const {
  std::vector<P1Point> out;
  out.reserve(static_cast<std::size_t>(size_));
  for (std::int64_t i = 0; i < size_; ++i) out.push_back(point_at(i));
  return out;
}

mpz_class p1_cardinality(const IdealRep& n) {
  mpz_class c = n.norm();
  for (const auto& f : n.factorization()) c = c / f.prime.norm * (f.prime.norm + 1);
  return c;
}

}  // namespace hilbert5
