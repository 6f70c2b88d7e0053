#include "hilbert5/isogeny.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>

#include "hilbert5/ideal.hpp"

namespace hilbert5 {

bool isogeny_possible(const CurveModel& e, long l, int primes) {
  if (l == 2) return !roots_in_field(two_division_polynomial(e)).empty();
  const FieldElem disc = discriminant(e);
  int used = 0;
  mpz_class p = 2;
  while (used < primes) {
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    if (p == l) continue;
    for (const PrimeIdeal& P : primes_above(p)) {
      if (valuation(disc, P) > 0 || P.norm % l == 0) continue;
      ++used;
      const long a = ap_good(e, P);
      const long n = P.norm.get_si();
      bool root = false;
      for (long x = 0; x < l && !root; ++x) root = ((x * x - a * x + n) % l + l) % l == 0;
      if (!root) return false;
    }
  }
  return true;
}

namespace {

PolyF mod_power(PolyF base, unsigned e, const PolyF& m) {
  PolyF r = PolyF::constant(FieldQ(1)) % m;
  base = base % m;
  while (e) {
    if (e & 1) r = (r * base) % m;
    base = (base * base) % m;
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_kernel_polynomial(const CurveModel& e, const PolyF& g) {
  if (g.degree() < 1) return false;
  const PolyF two_div = two_division_polynomial(e);
  if (g.degree() == 1 && (two_div % g).is_zero()) return true;
  // Roots must be roots of psi_l for l = 2 deg g + 1.
  const long l = 2L * g.degree() + 1;
  if (!(division_polynomial(e, l) % g).is_zero()) return false;
  if (!gcd(g, two_div).is_zero() && gcd(g, two_div).degree() > 0) return false;
  // x(2P) = N / D; closure under doubling means g(N/D) D^d vanishes mod g.
  const Invariants inv = invariants(e);
  const FieldQ b2(inv.b2), b4(inv.b4), b6(inv.b6), b8(inv.b8);
  const PolyF N({-b8, FieldQ(-2) * b6, -b4, FieldQ(), FieldQ(1)});
  const PolyF& D = two_div;
  const int d = g.degree();
  PolyF acc;
  for (int i = 0; i <= d; ++i) {
    const PolyF term = (mod_power(N, static_cast<unsigned>(i), g) * mod_power(D, static_cast<unsigned>(d - i), g)) % g;
    acc += term * g.coeff(i);
  }
  return (acc % g).is_zero();
}

std::vector<PolyF> kernel_polynomials(const CurveModel& e, long l) {
  std::vector<PolyF> out;
  if (l == 2) {
    for (const FieldQ& x0 : roots_in_field(two_division_polynomial(e))) out.push_back(PolyF::linear(x0));
    return out;
  }
  if (l < 3 || l % 2 == 0) throw std::invalid_argument("kernel_polynomials needs a prime degree");
  if (!isogeny_possible(e, l)) return out;
  const int d = static_cast<int>((l - 1) / 2);
  std::vector<PolyF> factors;
  for (PolyF& f : small_factors(division_polynomial(e, l), d)) factors.push_back(std::move(f));
  // Subsets of the small factors with total degree d.
  std::function<void(std::size_t, const PolyF&, int)> rec = [&](std::size_t i, const PolyF& prod, int deg) {
    if (deg == d) {
      if (is_kernel_polynomial(e, prod) && std::find(out.begin(), out.end(), prod) == out.end()) out.push_back(prod);
      return;
    }
    if (i == factors.size()) return;
    if (deg + factors[i].degree() <= d) rec(i + 1, prod * factors[i], deg + factors[i].degree());
    rec(i + 1, prod, deg);
  };
  rec(0, PolyF::constant(FieldQ(1)), 0);
  return out;
}

namespace {

// Power sums p_1..p_3 of the roots of a monic polynomial (Newton's identities).
std::array<FieldQ, 4> power_sums(const PolyF& g) {
  const int d = g.degree();
  // g = x^d + c_{d-1} x^{d-1} + ...; elementary symmetric e_k = (-1)^k c_{d-k}
  auto e = [&](int k) {
    if (k > d) return FieldQ();
    const FieldQ c = g.coeff(d - k);
    return k % 2 == 0 ? c : -c;
  };
  std::array<FieldQ, 4> p;
  p[0] = FieldQ(d);
  p[1] = e(1);
  p[2] = e(1) * p[1] - FieldQ(2) * e(2);
  p[3] = e(1) * p[2] - e(2) * p[1] + FieldQ(3) * e(3);
  return p;
}

CurveModel canonical(const AInvariantsQ& a) { return global_minimal_model(integral_model(a)); }

}  // namespace

CurveModel velu(const CurveModel& e, const PolyF& kernel_in) {
  if (kernel_in.degree() < 1) throw InvalidKernel("empty kernel");
  const PolyF g = kernel_in.monic();
  if (!is_kernel_polynomial(e, g)) throw InvalidKernel("not a kernel polynomial: " + g.to_string());
  const Invariants inv = invariants(e);
  const FieldQ b2(inv.b2), b4(inv.b4), b6(inv.b6);
  const auto p = power_sums(g);
  const FieldQ d(g.degree());
  FieldQ t = FieldQ(6) * p[2] + b2 * p[1] + d * b4;
  FieldQ w = FieldQ(10) * p[3] + FieldQ(2) * b2 * p[2] + FieldQ(3) * b4 * p[1] + d * b6;
  const bool two_torsion = g.degree() == 1 && (two_division_polynomial(e) % g).is_zero();
  if (two_torsion) {
    // A 2-torsion point is its own negative: half the paired contribution, and u_Q = 0.
    const FieldQ x0 = p[1];
    t = t * FieldQ(mpq_class(1, 2), mpq_class(0));
    w = x0 * t;
  }
  AInvariantsQ a = to_q(e);
  a[3] = a[3] - FieldQ(5) * t;
  a[4] = a[4] - b2 * t - FieldQ(7) * w;
  return canonical(a);
}

int IsogenyClass::index_of(const CurveModel& e) const {
  const CurveModel m = global_minimal_model(e);
  for (std::size_t i = 0; i < curves.size(); ++i)
    if (curves[i] == m) return static_cast<int>(i);
  return -1;
}

std::vector<CurveRecord> IsogenyClass::records() const {
  std::vector<CurveRecord> out;
  out.reserve(curves.size());
  for (const CurveModel& c : curves) out.push_back(make_record(c));
  return out;
}

IsogenyClass isogeny_closure(const CurveModel& e, const std::vector<long>& degrees, std::size_t budget) {
  IsogenyClass cls;
  cls.degree_set = degrees;
  std::sort(cls.degree_set.begin(), cls.degree_set.end());
  std::vector<CurveModel> nodes{global_minimal_model(e)};
  struct Edge {
    std::size_t a, b;
    long l;
  };
  std::vector<Edge> edges;
  auto find = [&](const CurveModel& m) -> std::ptrdiff_t {
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i] == m) return static_cast<std::ptrdiff_t>(i);
    return -1;
  };
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    const CurveModel cur = nodes[i];
    for (long l : cls.degree_set) {
      for (const PolyF& k : kernel_polynomials(cur, l)) {
        const CurveModel img = velu(cur, k);
        std::ptrdiff_t j = find(img);
        if (j < 0) {
          if (nodes.size() >= budget)
            throw ClosureBudgetExceeded("isogeny class exceeds " + std::to_string(budget) + " curves");
          nodes.push_back(img);
          j = static_cast<std::ptrdiff_t>(nodes.size() - 1);
          queue.push_back(static_cast<std::size_t>(j));
        }
        if (static_cast<std::size_t>(j) != i) edges.push_back({i, static_cast<std::size_t>(j), l});
      }
    }
  }
  // Sort the curves, then the minimal path degree between each pair.
  std::vector<std::size_t> order(nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const auto hx = model_height(nodes[x]), hy = model_height(nodes[y]);
    if (hx != hy) return hx < hy;
    return nodes[x].a < nodes[y].a;
  });
  std::vector<std::size_t> pos(nodes.size());
  for (std::size_t r = 0; r < order.size(); ++r) pos[order[r]] = r;
  const std::size_t n = nodes.size();
  constexpr long kInf = std::numeric_limits<long>::max();
  std::vector<std::vector<long>> dist(n, std::vector<long>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) dist[i][i] = 1;
  for (const Edge& ed : edges) {
    const std::size_t a = pos[ed.a], b = pos[ed.b];
    dist[a][b] = std::min(dist[a][b], ed.l);
    dist[b][a] = std::min(dist[b][a], ed.l);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (dist[i][k] != kInf && dist[k][j] != kInf) dist[i][j] = std::min(dist[i][j], dist[i][k] * dist[k][j]);
  cls.degrees.assign(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cls.degrees[i][j] = i == j ? 0 : dist[i][j];
  for (std::size_t r = 0; r < n; ++r) cls.curves.push_back(nodes[order[r]]);
  return cls;
}

}  // namespace hilbert5
