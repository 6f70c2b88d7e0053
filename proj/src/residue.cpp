#include "hilbert5/residue.hpp"

namespace hilbert5 {

std::string to_string(RingCase c) {
  switch (c) {
    case RingCase::split:
      return "split";
    case RingCase::inert:
      return "inert";
    case RingCase::ramified_even:
      return "ramified_even";
    case RingCase::ramified_odd:
      return "ramified_odd";
  }
  return "?";
}

std::int64_t invmod(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t g = m, x = 0, x1 = 1, r = ((a % m) + m) % m;
  while (r != 0) {
    std::int64_t q = g / r;
    std::int64_t t = g - q * r;
    g = r;
    r = t;
    t = x - q * x1;
    x = x1;
    x1 = t;
  }
  if (g != 1) throw NotInvertible("integer not invertible modulo " + std::to_string(m));
  return ((x % m) + m) % m;
}

Residue RingDescriptor::inv(Residue x) const {
  if (!is_unit(x)) throw NotInvertible("element lies in the maximal ideal");
  switch (tag) {
    case RingCase::split:
      return {invmod(x.u, mod_main), 0};
    case RingCase::inert:
    case RingCase::ramified_even: {
      // x^{-1} = conj(x) / N(x) with conj(u + v phi) = (u + v) - v phi.
      const std::int64_t m = mod_main;
      const std::int64_t n = submod(addmod(mulmod(x.u, x.u, m), mulmod(x.u, x.v, m), m),
                                    mulmod(x.v, x.v, m), m);
      const std::int64_t ninv = invmod(n, m);
      return {mulmod(addmod(x.u, x.v, m), ninv, m), mulmod(submod(0, x.v, m), ninv, m)};
    }
    case RingCase::ramified_odd: {
      // (u + v sqrt5)^{-1} = (u - v sqrt5) / (u^2 - 5 v^2).
      const std::int64_t m = mod_main, a = mod_aux;
      const std::int64_t n = submod(mulmod(x.u, x.u, m), mulmod(5, mulmod(x.v, x.v, m), m), m);
      const std::int64_t ninv = invmod(n, m);
      return {mulmod(x.u, ninv, m), mulmod(submod(0, x.v % a, a), ninv % a, a)};
    }
  }
  return {};
}

Residue RingDescriptor::from_ints(std::int64_t a, std::int64_t b) const {
  auto md = [](std::int64_t x, std::int64_t m) { return ((x % m) + m) % m; };
  Residue ra{md(a, mod_main), 0};
  Residue rb{md(b, mod_main), 0};
  return add(ra, mul(rb, phi));
}

Residue RingDescriptor::reduce(const FieldElem& x) const {
  mpz_class a, b;
  mpz_fdiv_r_ui(a.get_mpz_t(), x.a().get_mpz_t(), static_cast<unsigned long>(mod_main));
  mpz_fdiv_r_ui(b.get_mpz_t(), x.b().get_mpz_t(), static_cast<unsigned long>(mod_main));
  return from_ints(a.get_si(), b.get_si());
}

std::int64_t RingDescriptor::maximal_ideal_size() const {
  switch (tag) {
    case RingCase::split:
      return mod_main / p;
    case RingCase::inert:
      return (mod_main / p) * (mod_main / p);
    case RingCase::ramified_even:
      return mod_main * (mod_main / 5);
    case RingCase::ramified_odd:
      return (mod_main / 5) * mod_aux;
  }
  return 0;
}

std::int64_t RingDescriptor::maximal_rank(Residue x) const {
  switch (tag) {
    case RingCase::split:
      return x.u / p;
    case RingCase::inert:
      return (x.u / p) * (mod_main / p) + x.v / p;
    case RingCase::ramified_even:
      return x.u * (mod_main / 5) + x.v / 5;
    case RingCase::ramified_odd:
      return (x.u / 5) * mod_aux + x.v;
  }
  return 0;
}

Residue RingDescriptor::maximal_unrank(std::int64_t r) const {
  switch (tag) {
    case RingCase::split:
      return {r * p, 0};
    case RingCase::inert: {
      const std::int64_t q = mod_main / p;
      return {(r / q) * p, (r % q) * p};
    }
    case RingCase::ramified_even: {
      const std::int64_t q = mod_main / 5;
      const std::int64_t u = r / q;
      return {u, (3 * u) % 5 + 5 * (r % q)};
    }
    case RingCase::ramified_odd:
      return {(r / mod_aux) * 5, r % mod_aux};
  }
  return {};
}

namespace {

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

constexpr std::int64_t kMaxModulus = std::int64_t{1} << 31;

void check_bound(long p, int e) {
  __int128 r = 1;
  for (int i = 0; i < e; ++i) {
    r *= p;
    if (r > kMaxModulus) throw std::overflow_error("prime power exceeds 2^31");
  }
}

// Hensel lift of a root of x^2 - x - 1 from mod p to mod p^e.
std::int64_t lift_golden_root(std::int64_t r, std::int64_t p, int e) {
  std::int64_t m = p;
  for (int k = 1; k < e; ++k) {
    m *= p;
    const std::int64_t f = submod(submod(mulmod(r, r, m), r % m, m), 1, m);
    const std::int64_t df = submod(mulmod(2, r, m), 1, m);
    r = submod(r % m, mulmod(f, invmod(df, m), m), m);
  }
  return r;
}

RingDescriptor make_split(long p, int e, std::int64_t root) {
  RingDescriptor d;
  d.tag = RingCase::split;
  d.p = p;
  d.e = e;
  d.mod_main = ipow(p, e);
  d.mod_aux = 1;
  d.residue_size = p;
  d.phi = {lift_golden_root(root, p, e), 0};
  return d;
}

}  // namespace

RingDescriptor build_ring(const PrimeIdeal& prime, int e) {
  if (e < 1) throw std::invalid_argument("exponent must be positive");
  const long p = prime.p.get_si();
  RingDescriptor d;
  d.p = p;
  d.e = e;
  switch (prime.kind) {
    case PrimeKind::split: {
      check_bound(p, e);
      // The root r with gen(r) = 0 mod p defines R/P.
      const std::int64_t r0 = golden_root_mod(prime.p).get_si();
      std::int64_t root = r0;
      for (std::int64_t cand : {r0, (p + 1 - r0) % p}) {
        mpz_class val = prime.gen.a() + prime.gen.b() * cand;
        if (mpz_divisible_ui_p(val.get_mpz_t(), static_cast<unsigned long>(p))) {
          root = cand;
          break;
        }
      }
      return make_split(p, e, root);
    }
    case PrimeKind::inert:
      check_bound(p, e);
      d.tag = RingCase::inert;
      d.mod_main = ipow(p, e);
      d.mod_aux = d.mod_main;
      d.residue_size = p * p;
      d.phi = {0, 1};
      return d;
    case PrimeKind::ramified: {
      const int f = (e + 1) / 2;
      check_bound(5, f);
      d.residue_size = 5;
      d.mod_main = ipow(5, f);
      if (e % 2 == 0) {
        d.tag = RingCase::ramified_even;
        d.mod_aux = d.mod_main;
        d.phi = {0, 1};
      } else {
        d.tag = RingCase::ramified_odd;
        d.mod_aux = ipow(5, f - 1);
        d.phi = {(d.mod_main + 1) / 2, d.mod_aux == 1 ? 0 : (d.mod_aux + 1) / 2};
      }
      return d;
    }
  }
  return d;
}

RingDescriptor build_ring(long p, int e) {
  const auto primes = primes_above(p);
  if (primes[0].kind == PrimeKind::split) {
    check_bound(p, e);
    return make_split(p, e, golden_root_mod(p).get_si());
  }
  return build_ring(primes[0], e);
}

CrtRing::CrtRing(const IdealRep& n) : n_(n) {
  if (n.factorization().size() > static_cast<std::size_t>(kMaxSlots))
    throw std::length_error("more than 16 prime factors");
  for (const auto& f : n.factorization()) {
    rings_.push_back(build_ring(f.prime, static_cast<int>(f.exponent)));
    primes_.push_back(f.prime);
  }
}

CrtElem CrtRing::reduce(const FieldElem& x) const {
  CrtElem out;
  for (int i = 0; i < active(); ++i) out.slots[i] = rings_[i].reduce(x);
  return out;
}

CrtElem CrtRing::add(const CrtElem& x, const CrtElem& y) const {
  CrtElem out;
  for (int i = 0; i < active(); ++i) out.slots[i] = rings_[i].add(x.slots[i], y.slots[i]);
  return out;
}

CrtElem CrtRing::mul(const CrtElem& x, const CrtElem& y) const {
  CrtElem out;
  for (int i = 0; i < active(); ++i) out.slots[i] = rings_[i].mul(x.slots[i], y.slots[i]);
  return out;
}

CrtElem CrtRing::one() const {
  CrtElem out;
  for (int i = 0; i < active(); ++i) out.slots[i] = rings_[i].one();
  return out;
}

}  // namespace hilbert5
