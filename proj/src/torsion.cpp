// Group law over F, division polynomials, and the torsion subgroup.
#include <algorithm>
#include <map>
#include <numeric>

#include "hilbert5/curve.hpp"
#include "hilbert5/ffield.hpp"

namespace hilbert5 {

bool on_curve(const CurveModel& e, const PointF& p) {
  if (p.infinity) return true;
  const AInvariantsQ a = to_q(e);
  const FieldQ lhs = p.y * p.y + a[0] * p.x * p.y + a[2] * p.y;
  const FieldQ rhs = ((p.x + a[1]) * p.x + a[3]) * p.x + a[4];
  return lhs == rhs;
}

PointF point_neg(const CurveModel& e, const PointF& p) {
  if (p.infinity) return p;
  return PointF::affine(p.x, -p.y - FieldQ(e.a1()) * p.x - FieldQ(e.a3()));
}

PointF point_add(const CurveModel& e, const PointF& p, const PointF& q) {
  if (p.infinity) return q;
  if (q.infinity) return p;
  const AInvariantsQ a = to_q(e);
  FieldQ lambda, nu;
  if (p.x == q.x) {
    const FieldQ denom = p.y + q.y + a[0] * q.x + a[2];
    if (denom.is_zero()) return PointF::zero();
    const FieldQ d = FieldQ(2) * p.y + a[0] * p.x + a[2];
    lambda = (FieldQ(3) * p.x * p.x + FieldQ(2) * a[1] * p.x + a[3] - a[0] * p.y) / d;
    nu = (-(p.x * p.x * p.x) + a[3] * p.x + FieldQ(2) * a[4] - a[2] * p.y) / d;
  } else {
    const FieldQ dx = q.x - p.x;
    lambda = (q.y - p.y) / dx;
    nu = (p.y * q.x - q.y * p.x) / dx;
  }
  const FieldQ x3 = lambda * lambda + a[0] * lambda - a[1] - p.x - q.x;
  const FieldQ y3 = -(lambda + a[0]) * x3 - nu - a[2];
  return PointF::affine(x3, y3);
}

PointF point_mul(const CurveModel& e, const PointF& p, long n) {
  PointF base = n < 0 ? point_neg(e, p) : p;
  unsigned long m = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  PointF r = PointF::zero();
  while (m > 0) {
    if (m & 1) r = point_add(e, r, base);
    m >>= 1;
    if (m) base = point_add(e, base, base);
  }
  return r;
}

long point_order(const CurveModel& e, const PointF& p, long bound) {
  PointF q = p;
  for (long k = 1; k <= bound; ++k) {
    if (q.infinity) return k;
    q = point_add(e, q, p);
  }
  return 0;
}

PolyF two_division_polynomial(const CurveModel& e) {
  const Invariants inv = invariants(e);
  return PolyF({FieldQ(inv.b6), FieldQ(FieldElem(2) * inv.b4), FieldQ(inv.b2), FieldQ(4)});
}

namespace {

class DivisionPolynomials {
 public:
  explicit DivisionPolynomials(const CurveModel& e) {
    const Invariants inv = invariants(e);
    const FieldQ b2(inv.b2), b4(inv.b4), b6(inv.b6), b8(inv.b8);
    F_ = PolyF({b6, FieldQ(2) * b4, b2, FieldQ(4)});
    F2_ = F_ * F_;
    f_[0] = PolyF();
    f_[1] = PolyF::constant(1);
    f_[2] = PolyF::constant(1);
    f_[3] = PolyF({b8, FieldQ(3) * b6, FieldQ(3) * b4, b2, FieldQ(3)});
    f_[4] = PolyF({b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, FieldQ(10) * b8, FieldQ(10) * b6,
                   FieldQ(5) * b4, b2, FieldQ(2)});
  }

  const PolyF& F() const { return F_; }

  // psi_n for odd n, psi_n / psi_2 for even n.
  const PolyF& f(long n) {
    auto it = f_.find(n);
    if (it != f_.end()) return it->second;
    PolyF r;
    const long m = n / 2;
    if (n % 2 == 1) {
      if (m % 2 == 0) {
        r = f(m + 2) * pow3(f(m)) * F2_ - f(m - 1) * pow3(f(m + 1));
      } else {
        r = f(m + 2) * pow3(f(m)) - F2_ * f(m - 1) * pow3(f(m + 1));
      }
    } else {
      r = f(m) * (f(m + 2) * f(m - 1) * f(m - 1) - f(m - 2) * f(m + 1) * f(m + 1));
    }
    return f_[n] = r;
  }

  // psi_n^2 as a polynomial in x.
  PolyF psi_squared(long n) {
    const PolyF& g = f(n);
    return n % 2 == 0 ? g * g * F_ : g * g;
  }

  // psi_{n-1} psi_{n+1} as a polynomial in x.
  PolyF psi_neighbors(long n) {
    PolyF prod = f(n - 1) * f(n + 1);
    return n % 2 == 1 ? prod * F_ : prod;
  }

 private:
  static PolyF pow3(const PolyF& g) { return g * g * g; }
  PolyF F_, F2_;
  std::map<long, PolyF> f_;
};

}  // namespace

PolyF division_polynomial(const CurveModel& e, long n) {
  DivisionPolynomials dp(e);
  return dp.f(n);
}

std::vector<PointF> points_with_x(const CurveModel& e, const FieldQ& x) {
  const AInvariantsQ a = to_q(e);
  const Invariants inv = invariants(e);
  const FieldQ disc = ((FieldQ(4) * x + FieldQ(inv.b2)) * x + FieldQ(FieldElem(2) * inv.b4)) * x + FieldQ(inv.b6);
  const FieldQ lin = a[0] * x + a[2];
  const FieldQ half(mpq_class(1, 2), mpq_class(0));
  std::vector<PointF> out;
  if (disc.is_zero()) {
    out.push_back(PointF::affine(x, -lin * half));
    return out;
  }
  const mpz_class d = disc.denominator();
  const FieldElem scaled = (disc * FieldQ(FieldElem(d * d))).to_integral();
  const auto root = sqrt_in_ring(scaled);
  if (!root) return out;
  const FieldQ s = FieldQ(*root) * FieldQ(mpq_class(mpz_class(1), d), mpq_class(0));
  out.push_back(PointF::affine(x, (-lin + s) * half));
  out.push_back(PointF::affine(x, (-lin - s) * half));
  return out;
}

std::string TorsionStructure::to_string() const {
  if (n1 == 1 && n2 == 1) return "1";
  if (n1 == 1) return "Z/" + std::to_string(n2) + "Z";
  return "Z/" + std::to_string(n1) + "Z x Z/" + std::to_string(n2) + "Z";
}

TorsionStructure TorsionStructure::parse(std::string_view text) {
  std::string s(text);
  if (s == "1" || s == "trivial") return {};
  std::vector<long> nums;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      nums.push_back(std::stol(s.substr(i, j - i)));
      i = j;
    } else {
      ++i;
    }
  }
  if (nums.size() == 1) return {1, nums[0]};
  if (nums.size() == 2) return {nums[0], nums[1]};
  throw std::invalid_argument("bad torsion symbol: " + s);
}

bool allowed_torsion(const TorsionStructure& t) {
  // Kamienny-Najman list for Q(sqrt 5).
  if (t.n1 == 1) return (t.n2 >= 1 && t.n2 <= 10) || t.n2 == 12 || t.n2 == 15;
  if (t.n1 == 2) return t.n2 % 2 == 0 && t.n2 >= 2 && t.n2 <= 8;
  return false;
}

long torsion_bound(const CurveModel& e, int primes) {
  const FieldElem disc = discriminant(e);
  long g = 0;
  int used = 0;
  mpz_class p = 2;
  while (used < primes) {
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    for (const PrimeIdeal& P : primes_above(p)) {
      if (valuation(disc, P) > 0) continue;
      g = std::gcd(g, count_points(e, P));
      ++used;
    }
  }
  return g;
}

namespace {

// Points Q with l*Q = target, found from the x-coordinates of l-division.
std::vector<PointF> divide_point(const CurveModel& e, DivisionPolynomials& dp, const PointF& target, long l) {
  std::vector<PointF> out;
  PolyF eq;
  if (target.infinity) {
    eq = l == 2 ? dp.F() : dp.f(l);
  } else {
    // x(lQ) = x - psi_{l-1} psi_{l+1} / psi_l^2
    const PolyF sq = dp.psi_squared(l);
    eq = PolyF::x() * sq - dp.psi_neighbors(l) - sq * target.x;
  }
  for (const FieldQ& x : roots_in_field(eq)) {
    for (const PointF& q : points_with_x(e, x)) {
      if (point_mul(e, q, l) == target && std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
    }
  }
  return out;
}

std::vector<long> prime_factors(long n) {
  std::vector<long> out;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

struct PrimaryPart {
  std::vector<PointF> points;  // all points of l-power order
  long exponent = 1;
};

PrimaryPart primary_part(const CurveModel& e, DivisionPolynomials& dp, long l, long max_size) {
  PrimaryPart part;
  part.points.push_back(PointF::zero());
  std::vector<PointF> frontier{PointF::zero()};
  long exponent = 1;
  while (!frontier.empty() && static_cast<long>(part.points.size()) * l <= max_size) {
    std::vector<PointF> next;
    for (const PointF& t : frontier) {
      for (const PointF& q : divide_point(e, dp, t, l)) {
        if (std::find(part.points.begin(), part.points.end(), q) == part.points.end()) {
          part.points.push_back(q);
          next.push_back(q);
        }
      }
    }
    if (!next.empty()) exponent *= l;
    if (static_cast<long>(part.points.size()) > max_size)
      throw TorsionOutsideClassification("torsion exceeds the reduction bound");
    frontier = std::move(next);
  }
  part.exponent = exponent;
  return part;
}

}  // namespace

std::vector<PointF> torsion_points(const CurveModel& e) {
  const long bound = torsion_bound(e);
  DivisionPolynomials dp(e);
  std::vector<PointF> all{PointF::zero()};
  for (long l : prime_factors(bound)) {
    if (l > 13) continue;
    long lpart = 1;
    for (long b = bound; b % l == 0; b /= l) lpart *= l;
    const PrimaryPart part = primary_part(e, dp, l, lpart);
    std::vector<PointF> combined;
    for (const PointF& p : all)
      for (const PointF& q : part.points) combined.push_back(point_add(e, p, q));
    all = std::move(combined);
  }
  return all;
}

TorsionStructure torsion_subgroup(const CurveModel& e) {
  const long bound = torsion_bound(e);
  DivisionPolynomials dp(e);
  TorsionStructure t;
  for (long l : prime_factors(bound)) {
    if (l > 13) continue;
    long lpart = 1;
    for (long b = bound; b % l == 0; b /= l) lpart *= l;
    const PrimaryPart part = primary_part(e, dp, l, lpart);
    const long size = static_cast<long>(part.points.size());
    const long cyclic = part.exponent;
    t.n1 *= size / cyclic;
    t.n2 *= cyclic;
  }
  if (!allowed_torsion(t)) throw TorsionOutsideClassification("torsion " + t.to_string() + " is not possible over F");
  return t;
}

}  // namespace hilbert5
