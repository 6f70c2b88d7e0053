#include "hilbert5/ideal.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace hilbert5 {

bool operator<(const PrimeIdeal& x, const PrimeIdeal& y) {
  if (x.norm != y.norm) return x.norm < y.norm;
  return x.gen < y.gen;
}

namespace {

mpz_class pollard_brent(const mpz_class& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    mpz_class y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1;
    const unsigned long m = 128;
    auto f = [&](const mpz_class& v) {
      mpz_class w = v * v + c;
      mpz_mod(w.get_mpz_t(), w.get_mpz_t(), n.get_mpz_t());
      return w;
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          mpz_class diff = x - y;
          q = (q * abs(diff)) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        mpz_class diff = x - ys;
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(const mpz_class& n, std::map<mpz_class, unsigned>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
    ++out[n];
    return;
  }
  mpz_class d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

// Tonelli-Shanks square root of a modulo an odd prime p (a must be a residue).
mpz_class sqrt_mod_prime(const mpz_class& a, const mpz_class& p) {
  mpz_class r;
  mpz_class q = p - 1;
  unsigned long s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  mpz_class z = 2;
  while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
  mpz_class m = s, c, t, rr;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  mpz_class e = (q + 1) / 2;
  mpz_powm(rr.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  unsigned long mm = s;
  while (t != 1) {
    unsigned long i = 0;
    mpz_class tt = t;
    while (tt != 1) {
      tt = (tt * tt) % p;
      ++i;
    }
    mpz_class b = c;
    for (unsigned long j = 0; j + i + 1 < mm; ++j) b = (b * b) % p;
    mm = i;
    c = (b * b) % p;
    t = (t * c) % p;
    rr = (rr * b) % p;
  }
  return rr;
}

// Shortest vector of the lattice {(a, b) : a + b r = 0 mod p} for the form
// Tr((a + b phi)^2) = 2a^2 + 2ab + 3b^2.
FieldElem reduce_ideal_lattice(const mpz_class& p, const mpz_class& r) {
  auto form = [](const mpz_class& a1, const mpz_class& b1, const mpz_class& a2,
                 const mpz_class& b2) -> mpz_class {
    return 2 * a1 * a2 + a1 * b2 + b1 * a2 + 3 * b1 * b2;
  };
  mpz_class ua = p, ub = 0, va = -r, vb = 1;
  for (;;) {
    if (form(ua, ub, ua, ub) > form(va, vb, va, vb)) {
      std::swap(ua, va);
      std::swap(ub, vb);
    }
    const mpz_class num = form(ua, ub, va, vb);
    const mpz_class den = form(ua, ub, ua, ub);
    // mu = round(num / den)
    mpz_class mu;
    mpz_class twice = 2 * num + den;
    mpz_class twice_den = 2 * den;
    mpz_fdiv_q(mu.get_mpz_t(), twice.get_mpz_t(), twice_den.get_mpz_t());
    if (mu == 0) break;
    va -= mu * ua;
    vb -= mu * ub;
  }
  return FieldElem(ua, ub);
}

}  // namespace

std::vector<std::pair<mpz_class, unsigned>> factor_integer(mpz_class n) {
  if (n == 0) throw std::domain_error("cannot factor zero");
  n = abs(n);
  std::map<mpz_class, unsigned> found;
  for (unsigned long d = 2; d < 10000 && d * d <= n; d += (d == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      ++found[d];
      n /= d;
    }
  }
  factor_into(n, found);
  return {found.begin(), found.end()};
}

mpz_class golden_root_mod(const mpz_class& p) {
  mpz_class five = 5;
  mpz_class s = sqrt_mod_prime(five % p, p);
  mpz_class inv2 = (p + 1) / 2;
  mpz_class r1 = ((1 + s) * inv2) % p;
  mpz_class r2 = ((1 - s + p) * inv2) % p;
  return std::min(r1, r2);
}

unsigned valuation(const FieldElem& x, const PrimeIdeal& p) {
  if (x.is_zero()) throw std::domain_error("valuation of zero");
  unsigned v = 0;
  if (p.kind == PrimeKind::inert) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), x.a().get_mpz_t(), x.b().get_mpz_t());
    while (mpz_divisible_p(g.get_mpz_t(), p.p.get_mpz_t())) {
      g /= p.p;
      ++v;
    }
    return v;
  }
  FieldElem y = x;
  while (auto q = y.divide(p.gen)) {
    y = *q;
    ++v;
  }
  return v;
}

PrimeIdeal prime_from_generator(const FieldElem& pi) {
  const mpz_class n = abs(pi.norm());
  auto f = factor_integer(n);
  if (f.size() != 1) throw std::invalid_argument("not a prime element: " + pi.to_string());
  for (const auto& q : primes_above(f[0].first))
    if (associates(q.gen, pi)) return q;
  throw std::invalid_argument("not a prime element: " + pi.to_string());
}

std::vector<PrimeIdeal> primes_above(const mpz_class& p) {
  std::vector<PrimeIdeal> out;
  if (p == 5) {
    out.push_back({positive_generator(FieldElem(-1, 2)), 5, 5, PrimeKind::ramified});
    return out;
  }
  const unsigned long r5 = mpz_fdiv_ui(p.get_mpz_t(), 5);
  if (r5 == 2 || r5 == 3) {
    out.push_back({FieldElem(p), p, p * p, PrimeKind::inert});
    return out;
  }
  const mpz_class r = golden_root_mod(p);
  FieldElem v = reduce_ideal_lattice(p, r);
  if (abs(v.norm()) != p) throw std::logic_error("split prime generator not found");
  out.push_back({positive_generator(v), p, p, PrimeKind::split});
  out.push_back({positive_generator(v.conjugate()), p, p, PrimeKind::split});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PrimeIdeal> primes_up_to(long bound) {
  std::vector<PrimeIdeal> out;
  if (bound < 2) return out;
  mpz_class p = 2;
  while (p <= bound) {
    for (auto& q : primes_above(p))
      if (q.norm <= bound) out.push_back(q);
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
  }
  std::sort(out.begin(), out.end());
  return out;
}

IdealRep::IdealRep(const FieldElem& x) {
  if (x.is_zero()) throw std::domain_error("zero ideal");
  gen_ = positive_generator(x);
  norm_ = abs(x.norm());
  for (const auto& [p, e] : factor_integer(norm_)) {
    for (const auto& q : primes_above(p)) {
      unsigned v = hilbert5::valuation(x, q);
      if (v > 0) factors_.push_back({q, v});
    }
  }
  std::sort(factors_.begin(), factors_.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
}

IdealRep IdealRep::from_factorization(std::vector<PrimePower> factors) {
  FieldElem g(1);
  for (const auto& f : factors) g *= f.prime.gen.pow(f.exponent);
  return IdealRep(g);
}

IdealRep factor_ideal(const FieldElem& x) { return IdealRep(x); }

unsigned IdealRep::valuation(const PrimeIdeal& p) const {
  for (const auto& f : factors_)
    if (f.prime == p) return f.exponent;
  return 0;
}

bool IdealRep::divides(const IdealRep& other) const {
  for (const auto& f : factors_)
    if (other.valuation(f.prime) < f.exponent) return false;
  return true;
}

bool IdealRep::contains(const FieldElem& x) const {
  if (x.is_zero()) return true;
  for (const auto& f : factors_)
    if (hilbert5::valuation(x, f.prime) < f.exponent) return false;
  return true;
}

bool IdealRep::is_square() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const PrimePower& f) { return f.exponent % 2 == 0; });
}

IdealRep IdealRep::operator*(const IdealRep& other) const { return IdealRep(gen_ * other.gen_); }

std::vector<IdealRep> ideals_up_to(long bound) {
  const auto primes = primes_up_to(bound);
  std::vector<FieldElem> gens;
  std::function<void(std::size_t, const FieldElem&, long)> rec = [&](std::size_t i,
                                                                     const FieldElem& g,
                                                                     long norm) {
    if (i == primes.size()) {
      gens.push_back(g);
      return;
    }
    rec(i + 1, g, norm);
    const long pn = primes[i].norm.get_si();
    FieldElem h = g;
    long n = norm;
    while (n * pn <= bound) {
      n *= pn;
      h *= primes[i].gen;
      rec(i + 1, h, n);
    }
  };
  rec(0, FieldElem(1), 1);
  std::vector<IdealRep> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.emplace_back(g);
  std::sort(out.begin(), out.end(), [](const IdealRep& a, const IdealRep& b) {
    if (a.norm() != b.norm()) return a.norm() < b.norm();
    return a.gen() < b.gen();
  });
  return out;
}

}  // namespace hilbert5
