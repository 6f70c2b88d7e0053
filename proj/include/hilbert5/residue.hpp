// Arithmetic in R/p^e for the four structural cases, and in R/n as a CRT tuple.
// Elements are plain pairs of 64-bit integers; nothing here allocates.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hilbert5/field.hpp"
#include "hilbert5/ideal.hpp"

namespace hilbert5 {

enum class RingCase { split, inert, ramified_even, ramified_odd };

std::string to_string(RingCase c);

/// u + v*phi (split, inert, ramified_even) or u + v*sqrt5 (ramified_odd).
struct Residue {
  std::int64_t u = 0;
  std::int64_t v = 0;
  friend bool operator==(const Residue&, const Residue&) = default;
};

class NotInvertible : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<__int128>(a) * b % m);
}

inline std::int64_t addmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  std::int64_t s = a + b;
  return s >= m ? s - m : s;
}

inline std::int64_t submod(std::int64_t a, std::int64_t b, std::int64_t m) {
  std::int64_t s = a - b;
  return s < 0 ? s + m : s;
}

/// Inverse of a modulo m; a must be coprime to m.
std::int64_t invmod(std::int64_t a, std::int64_t m);

/// R/p^e. For p = 5 the exponent counts powers of the ramified prime (2phi - 1).
struct RingDescriptor {
  RingCase tag = RingCase::split;
  std::int64_t p = 2;
  int e = 1;
  std::int64_t mod_main = 1;  // p^e, or 5^f in the ramified cases
  std::int64_t mod_aux = 1;   // 1 (split), 5^{f-1} (ramified_odd), else mod_main
  Residue phi;                // image of phi
  std::int64_t residue_size = 2;  // size of the residue field

  std::int64_t size() const { return mod_main * mod_aux; }

  Residue zero() const { return {0, 0}; }
  Residue one() const { return {mod_main == 1 ? 0 : 1, 0}; }

  Residue add(Residue x, Residue y) const {
    return {addmod(x.u, y.u, mod_main), addmod(x.v, y.v, mod_aux)};
  }
  Residue sub(Residue x, Residue y) const {
    return {submod(x.u, y.u, mod_main), submod(x.v, y.v, mod_aux)};
  }
  Residue neg(Residue x) const { return sub(zero(), x); }

  Residue mul(Residue x, Residue y) const {
    switch (tag) {
      case RingCase::split:
        return {mulmod(x.u, y.u, mod_main), 0};
      case RingCase::inert:
      case RingCase::ramified_even: {
        const std::int64_t m = mod_main;
        const std::int64_t ac = mulmod(x.u, y.u, m), bd = mulmod(x.v, y.v, m);
        const std::int64_t ad = mulmod(x.u, y.v, m), bc = mulmod(x.v, y.u, m);
        return {addmod(ac, bd, m), addmod(addmod(ad, bc, m), bd, m)};
      }
      case RingCase::ramified_odd: {
        const std::int64_t m = mod_main, n = mod_aux;
        const std::int64_t ac = mulmod(x.u, y.u, m);
        const std::int64_t bd5 = mulmod(mulmod(x.v, y.v, m), 5, m);
        const std::int64_t ad = mulmod(x.u, y.v, n), bc = mulmod(x.v, y.u, n);
        return {addmod(ac, bd5, m), addmod(ad, bc, n)};
      }
    }
    return {};
  }

  /// Scalar multiplication by an integer already reduced modulo mod_main.
  Residue scale(std::int64_t k, Residue x) const {
    return {mulmod(k, x.u, mod_main), mulmod(k % mod_aux, x.v, mod_aux)};
  }

  /// Membership in the maximal ideal.
  bool in_maximal_ideal(Residue x) const {
    switch (tag) {
      case RingCase::split:
        return x.u % p == 0;
      case RingCase::inert:
        return x.u % p == 0 && x.v % p == 0;
      case RingCase::ramified_even:
        return (x.u + 3 * x.v) % 5 == 0;
      case RingCase::ramified_odd:
        return x.u % 5 == 0;
    }
    return true;
  }
  bool is_unit(Residue x) const { return !in_maximal_ideal(x); }

  Residue inv(Residue x) const;

  /// Image of a + b*phi.
  Residue reduce(const FieldElem& x) const;
  Residue from_ints(std::int64_t a, std::int64_t b) const;

  /// Lexicographic rank of an element in [0, size()).
  std::int64_t rank(Residue x) const { return x.u * mod_aux + x.v; }
  Residue unrank(std::int64_t r) const { return {r / mod_aux, r % mod_aux}; }

  /// Number of elements of the maximal ideal and their ranking, in (u, v) order.
  std::int64_t maximal_ideal_size() const;
  std::int64_t maximal_rank(Residue x) const;
  Residue maximal_unrank(std::int64_t r) const;
};

/// Ring descriptor for R/P^e where P is the given prime.
RingDescriptor build_ring(const PrimeIdeal& prime, int e);
/// Split primes take the smaller root of x^2 - x - 1 mod p.
RingDescriptor build_ring(long p, int e);

constexpr int kMaxSlots = 16;

/// An element of R/n as a tuple over its prime-power factors.
struct CrtElem {
  std::array<Residue, kMaxSlots> slots{};
  friend bool operator==(const CrtElem&, const CrtElem&) = default;
};

class CrtRing {
 public:
  CrtRing() = default;
  explicit CrtRing(const IdealRep& n);

  const IdealRep& modulus() const { return n_; }
  int active() const { return static_cast<int>(rings_.size()); }
  const RingDescriptor& ring(int i) const { return rings_[i]; }
  const std::vector<PrimeIdeal>& primes() const { return primes_; }

  CrtElem reduce(const FieldElem& x) const;
  CrtElem add(const CrtElem& x, const CrtElem& y) const;
  CrtElem mul(const CrtElem& x, const CrtElem& y) const;
  CrtElem one() const;

 private:
  IdealRep n_;
  std::vector<RingDescriptor> rings_;
  std::vector<PrimeIdeal> primes_;
};

}  // namespace hilbert5
