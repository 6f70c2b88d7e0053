#include "hilbert5/ffield.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace hilbert5 {

namespace {
constexpr std::int64_t kChiTableLimit = 20000;
}

FiniteField::FiniteField(const PrimeIdeal& prime) : prime_(prime), ring_(build_ring(prime, 1)) {
  if (q() % 2 == 1 && q() <= kChiTableLimit) {
    chi_table_.assign(static_cast<std::size_t>(q()), -1);
    chi_table_[0] = 0;
    for (std::int64_t i = 1; i < q(); ++i) {
      const Residue x = element(i);
      chi_table_[static_cast<std::size_t>(index(mul(x, x)))] = 1;
    }
  }
}

Residue FiniteField::reduce(const FieldQ& x) const {
  const mpz_class d = x.denominator();
  const FieldQ y = x * FieldQ(FieldElem(d));
  const Residue dr = reduce(FieldElem(d));
  return mul(reduce(y.to_integral()), inv(dr));
}

FieldElem FiniteField::lift(Residue x) const {
  if (ring_.tag == RingCase::inert || ring_.tag == RingCase::ramified_even) return FieldElem(x.u, x.v);
  return FieldElem(x.u);
}

Residue FiniteField::pow(Residue x, std::uint64_t e) const {
  Residue r = one();
  while (e > 0) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}

Residue FiniteField::pow(Residue x, const mpz_class& e) const {
  Residue r = one();
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = mul(r, r);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, x);
  }
  return r;
}

int FiniteField::chi(Residue x) const {
  if (q() % 2 == 0) throw std::logic_error("quadratic character needs odd characteristic");
  if (!chi_table_.empty()) return chi_table_[static_cast<std::size_t>(index(x))];
  if (is_zero(x)) return 0;
  return pow(x, static_cast<std::uint64_t>((q() - 1) / 2)) == one() ? 1 : -1;
}

bool FiniteField::is_square(Residue x) const {
  if (q() % 2 == 0) return true;  // Frobenius is bijective
  return chi(x) >= 0;
}

std::optional<Residue> FiniteField::sqrt(Residue x) const {
  if (is_zero(x)) return zero();
  if (q() % 2 == 0) return pow(x, static_cast<std::uint64_t>(q() / 2));
  if (chi(x) != 1) return std::nullopt;
  // Tonelli-Shanks in the cyclic group of order q - 1.
  std::uint64_t t = static_cast<std::uint64_t>(q() - 1);
  int s = 0;
  while (t % 2 == 0) {
    t /= 2;
    ++s;
  }
  Residue z = one();
  for (std::int64_t i = 2; i < q(); ++i) {
    if (chi(element(i)) == -1) {
      z = element(i);
      break;
    }
  }
  Residue c = pow(z, t);
  Residue r = pow(x, (t + 1) / 2);
  Residue tt = pow(x, t);
  int m = s;
  while (tt != one()) {
    int i = 0;
    Residue w = tt;
    while (w != one()) {
      w = mul(w, w);
      ++i;
    }
    Residue b = c;
    for (int j = 0; j < m - i - 1; ++j) b = mul(b, b);
    r = mul(r, b);
    c = mul(b, b);
    tt = mul(tt, c);
    m = i;
  }
  return r;
}

std::vector<Residue> FiniteField::nth_roots(Residue x, int n) const {
  std::vector<Residue> out;
  for (std::int64_t i = 0; i < q(); ++i) {
    const Residue y = element(i);
    if (pow(y, static_cast<std::uint64_t>(n)) == x) out.push_back(y);
  }
  return out;
}

Residue FiniteField::random(std::mt19937_64& rng) const {
  std::uniform_int_distribution<std::int64_t> dist(0, q() - 1);
  return element(dist(rng));
}

namespace fq {

void trim(const FiniteField& k, FqPoly& f) {
  while (!f.empty() && k.is_zero(f.back())) f.pop_back();
}

int degree(const FqPoly& f) { return static_cast<int>(f.size()) - 1; }

FqPoly add(const FiniteField& k, const FqPoly& f, const FqPoly& g) {
  FqPoly r(std::max(f.size(), g.size()), k.zero());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i];
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = k.add(r[i], g[i]);
  trim(k, r);
  return r;
}

FqPoly sub(const FiniteField& k, const FqPoly& f, const FqPoly& g) {
  FqPoly r(std::max(f.size(), g.size()), k.zero());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i];
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = k.sub(r[i], g[i]);
  trim(k, r);
  return r;
}

FqPoly mul(const FiniteField& k, const FqPoly& f, const FqPoly& g) {
  if (f.empty() || g.empty()) return {};
  FqPoly r(f.size() + g.size() - 1, k.zero());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (k.is_zero(f[i])) continue;
    for (std::size_t j = 0; j < g.size(); ++j) r[i + j] = k.add(r[i + j], k.mul(f[i], g[j]));
  }
  trim(k, r);
  return r;
}

void divmod(const FiniteField& k, const FqPoly& f, const FqPoly& g, FqPoly& q, FqPoly& r) {
  if (g.empty()) throw std::domain_error("polynomial division by zero");
  r = f;
  trim(k, r);
  const int dg = degree(g);
  if (degree(r) < dg) {
    q.clear();
    return;
  }
  q.assign(static_cast<std::size_t>(degree(r) - dg + 1), k.zero());
  const Residue lead_inv = k.inv(g.back());
  for (int i = degree(r); i >= dg; --i) {
    const Residue c = k.mul(r[static_cast<std::size_t>(i)], lead_inv);
    q[static_cast<std::size_t>(i - dg)] = c;
    if (k.is_zero(c)) continue;
    for (int j = 0; j <= dg; ++j) {
      auto& slot = r[static_cast<std::size_t>(i - dg + j)];
      slot = k.sub(slot, k.mul(c, g[static_cast<std::size_t>(j)]));
    }
  }
  trim(k, r);
  trim(k, q);
}

FqPoly mod(const FiniteField& k, const FqPoly& f, const FqPoly& g) {
  FqPoly q, r;
  divmod(k, f, g, q, r);
  return r;
}

FqPoly monic(const FiniteField& k, const FqPoly& f) {
  if (f.empty()) return f;
  const Residue c = k.inv(f.back());
  FqPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = k.mul(f[i], c);
  return r;
}

FqPoly gcd(const FiniteField& k, FqPoly f, FqPoly g) {
  trim(k, f);
  trim(k, g);
  while (!g.empty()) {
    FqPoly r = mod(k, f, g);
    f = std::move(g);
    g = std::move(r);
  }
  return monic(k, f);
}

FqPoly derivative(const FiniteField& k, const FqPoly& f) {
  if (f.size() <= 1) return {};
  FqPoly r(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) r[i - 1] = k.ring().scale(static_cast<std::int64_t>(i) % k.ring().mod_main, f[i]);
  trim(k, r);
  return r;
}

FqPoly powmod(const FiniteField& k, const FqPoly& base, const mpz_class& e, const FqPoly& m) {
  FqPoly result{k.one()};
  result = mod(k, result, m);
  const FqPoly b = mod(k, base, m);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mod(k, mul(k, result, result), m);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mod(k, mul(k, result, b), m);
  }
  return result;
}

Residue eval(const FiniteField& k, const FqPoly& f, Residue x) {
  Residue r = k.zero();
  for (std::size_t i = f.size(); i-- > 0;) r = k.add(k.mul(r, x), f[i]);
  return r;
}

namespace {

// Equal-degree splitting of a product of distinct monic irreducibles of degree d (odd q).
void equal_degree_split(const FiniteField& k, const FqPoly& f, int d, std::mt19937_64& rng,
                        std::vector<FqPoly>& out) {
  if (degree(f) <= d) {
    if (degree(f) > 0) out.push_back(monic(k, f));
    return;
  }
  mpz_class qd = 1;
  for (int i = 0; i < d; ++i) qd *= static_cast<unsigned long>(k.q());
  const mpz_class e = (qd - 1) / 2;
  for (;;) {
    FqPoly a(static_cast<std::size_t>(degree(f)));
    for (auto& c : a) c = k.random(rng);
    trim(k, a);
    if (degree(a) < 1) continue;
    FqPoly b = sub(k, powmod(k, a, e, f), FqPoly{k.one()});
    FqPoly g = gcd(k, f, b);
    if (degree(g) > 0 && degree(g) < degree(f)) {
      FqPoly qt, rm;
      divmod(k, f, g, qt, rm);
      equal_degree_split(k, g, d, rng, out);
      equal_degree_split(k, qt, d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<Residue> roots(const FiniteField& k, const FqPoly& f0) {
  FqPoly f = f0;
  trim(k, f);
  std::vector<Residue> out;
  if (degree(f) < 1) return out;
  if (k.q() <= 1000 || k.q() % 2 == 0) {
    for (std::int64_t i = 0; i < k.q(); ++i)
      if (k.is_zero(eval(k, f, k.element(i)))) out.push_back(k.element(i));
    return out;
  }
  const FqPoly x{k.zero(), k.one()};
  FqPoly g = gcd(k, f, sub(k, powmod(k, x, mpz_class(k.q()), f), x));
  if (degree(g) < 1) return out;
  std::mt19937_64 rng(12345);
  std::vector<FqPoly> linear;
  equal_degree_split(k, g, 1, rng, linear);
  for (const auto& l : linear) out.push_back(k.neg(l[0]));
  std::sort(out.begin(), out.end(), [&](Residue a, Residue b) { return k.index(a) < k.index(b); });
  return out;
}

int count_roots_with_multiplicity(const FiniteField& k, const FqPoly& f0) {
  FqPoly f = f0;
  trim(k, f);
  int count = 0;
  for (Residue r : roots(k, f)) {
    const FqPoly lin{k.neg(r), k.one()};
    for (;;) {
      FqPoly qt, rm;
      divmod(k, f, lin, qt, rm);
      if (!rm.empty()) break;
      f = std::move(qt);
      ++count;
    }
  }
  return count;
}

std::vector<FqPoly> factor_squarefree(const FiniteField& k, const FqPoly& f0) {
  if (k.q() % 2 == 0) throw std::logic_error("factor_squarefree needs odd characteristic");
  FqPoly f = monic(k, f0);
  std::vector<FqPoly> out;
  std::mt19937_64 rng(987654321);
  const FqPoly x{k.zero(), k.one()};
  FqPoly h = x;
  for (int d = 1; 2 * d <= degree(f); ++d) {
    h = powmod(k, h, mpz_class(k.q()), f);
    FqPoly g = gcd(k, f, sub(k, h, x));
    if (degree(g) > 0) {
      equal_degree_split(k, g, d, rng, out);
      FqPoly qt, rm;
      divmod(k, f, g, qt, rm);
      f = monic(k, qt);
      h = mod(k, h, f);
    }
  }
  if (degree(f) > 0) out.push_back(f);
  return out;
}

}  // namespace fq

}  // namespace hilbert5
