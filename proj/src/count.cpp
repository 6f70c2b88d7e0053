// Point counting on reductions: quadratic-character sweep for small fields and
// baby-step giant-step (with the quadratic-twist fallback) for large ones.
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_map>

#include "hilbert5/curve.hpp"
#include "hilbert5/ffield.hpp"

namespace hilbert5 {

namespace {

constexpr std::int64_t kSweepLimit = 10000;

std::int64_t isqrt64(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

long count_brute(const FiniteField& k, const std::array<Residue, 5>& a) {
  long count = 1;
  for (std::int64_t i = 0; i < k.q(); ++i) {
    const Residue x = k.element(i);
    const Residue rhs = k.add(k.mul(k.add(k.mul(k.add(x, a[1]), x), a[3]), x), a[4]);
    for (std::int64_t j = 0; j < k.q(); ++j) {
      const Residue y = k.element(j);
      const Residue lhs = k.mul(y, k.add(y, k.add(k.mul(a[0], x), a[2])));
      if (lhs == rhs) ++count;
    }
  }
  return count;
}

long count_sweep(const FiniteField& k, const std::array<Residue, 5>& a) {
  // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
  const Residue two = k.from_int(2), four = k.from_int(4);
  const Residue b2 = k.add(k.mul(a[0], a[0]), k.mul(four, a[1]));
  const Residue b4 = k.add(k.mul(two, a[3]), k.mul(a[0], a[2]));
  const Residue b6 = k.add(k.mul(a[2], a[2]), k.mul(four, a[4]));
  const Residue b4x2 = k.mul(two, b4);
  long sum = 0;
  for (std::int64_t i = 0; i < k.q(); ++i) {
    const Residue x = k.element(i);
    const Residue f = k.add(k.mul(k.add(k.mul(k.add(k.mul(four, x), b2), x), b4x2), x), b6);
    sum += k.chi(f);
  }
  return static_cast<long>(k.q()) + 1 + sum;
}

// Affine arithmetic on y^2 = x^3 + A x + B over a field of characteristic > 3.
struct ShortCurve {
  const FiniteField& k;
  Residue A, B;

  struct Pt {
    Residue x, y;
    bool inf = true;
  };

  Pt add(const Pt& p, const Pt& q) const {
    if (p.inf) return q;
    if (q.inf) return p;
    Residue lambda;
    if (p.x == q.x) {
      if (k.is_zero(k.add(p.y, q.y))) return Pt{};
      const Residue num = k.add(k.mul(k.from_int(3), k.mul(p.x, p.x)), A);
      lambda = k.mul(num, k.inv(k.mul(k.from_int(2), p.y)));
    } else {
      lambda = k.mul(k.sub(q.y, p.y), k.inv(k.sub(q.x, p.x)));
    }
    const Residue x3 = k.sub(k.sub(k.mul(lambda, lambda), p.x), q.x);
    const Residue y3 = k.sub(k.mul(lambda, k.sub(p.x, x3)), p.y);
    return Pt{x3, y3, false};
  }
  Pt neg(const Pt& p) const { return p.inf ? p : Pt{p.x, k.neg(p.y), false}; }
  Pt mul(Pt p, std::int64_t n) const {
    if (n < 0) {
      p = neg(p);
      n = -n;
    }
    Pt r;
    while (n > 0) {
      if (n & 1) r = add(r, p);
      p = add(p, p);
      n >>= 1;
    }
    return r;
  }
  Pt random_point(std::mt19937_64& rng) const {
    for (;;) {
      const Residue x = k.random(rng);
      const Residue f = k.add(k.mul(k.add(k.mul(x, x), A), x), B);
      const auto y = k.sqrt(f);
      if (!y) continue;
      Pt p{x, *y, false};
      if (rng() & 1) p = neg(p);
      return p;
    }
  }
};

std::uint64_t pt_key(const FiniteField& k, const ShortCurve::Pt& p) {
  if (p.inf) return ~std::uint64_t{0};
  return static_cast<std::uint64_t>(k.index(p.x)) * 0x9E3779B97F4A7C15ULL ^
         static_cast<std::uint64_t>(k.index(p.y));
}

// Order of p, knowing it divides some integer in [lo, hi].
std::int64_t point_order_bsgs(const ShortCurve& E, const ShortCurve::Pt& p, std::int64_t lo,
                              std::int64_t hi) {
  if (p.inf) return 1;
  const FiniteField& k = E.k;
  const std::int64_t width = hi - lo;
  const std::int64_t m = isqrt64(width) + 1;
  std::unordered_multimap<std::uint64_t, std::pair<std::int64_t, ShortCurve::Pt>> baby;
  ShortCurve::Pt jp;
  for (std::int64_t j = 0; j <= m; ++j) {
    baby.emplace(pt_key(k, jp), std::make_pair(j, jp));
    jp = E.add(jp, p);
  }
  const ShortCurve::Pt giant = E.mul(p, m);
  ShortCurve::Pt cur = E.mul(p, lo);
  std::int64_t n = -1;
  for (std::int64_t i = 0; lo + i * m <= hi + m && n < 0; ++i) {
    // lo + i m + j kills p iff cur = -jP
    const ShortCurve::Pt target = E.neg(cur);
    auto range = baby.equal_range(pt_key(k, target));
    for (auto it = range.first; it != range.second; ++it) {
      const auto& q = it->second.second;
      if (q.inf == target.inf && (q.inf || (q.x == target.x && q.y == target.y))) {
        n = lo + i * m + it->second.first;
        break;
      }
    }
    cur = E.add(cur, giant);
  }
  if (n <= 0) throw std::logic_error("BSGS failed to find a multiple of the point order");
  std::int64_t ord = n;
  for (const auto& [prime, mult] : factor_integer(mpz_class(static_cast<long>(n)))) {
    (void)mult;
    const std::int64_t l = prime.get_si();
    while (ord % l == 0 && E.mul(p, ord / l).inf) ord /= l;
  }
  return ord;
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return a / std::gcd(a, b) * b; }

std::optional<long> count_bsgs(const FiniteField& k, const std::array<Residue, 5>& a) {
  const Residue two = k.from_int(2), four = k.from_int(4);
  const Residue b2 = k.add(k.mul(a[0], a[0]), k.mul(four, a[1]));
  const Residue b4 = k.add(k.mul(two, a[3]), k.mul(a[0], a[2]));
  const Residue b6 = k.add(k.mul(a[2], a[2]), k.mul(four, a[4]));
  const Residue c4 = k.sub(k.mul(b2, b2), k.mul(k.from_int(24), b4));
  const Residue c6 = k.sub(k.add(k.neg(k.mul(b2, k.mul(b2, b2))), k.mul(k.from_int(36), k.mul(b2, b4))),
                           k.mul(k.from_int(216), b6));
  const ShortCurve E{k, k.mul(k.from_int(-27), c4), k.mul(k.from_int(-54), c6)};
  const std::int64_t q = k.q();
  const std::int64_t w = isqrt64(4 * q) + 1;
  const std::int64_t lo = q + 1 - w, hi = q + 1 + w;
  std::mt19937_64 rng(static_cast<std::uint64_t>(q) * 7919 + 17);

  std::int64_t L = 1;
  auto candidates = [&](std::int64_t mod) {
    std::vector<std::int64_t> out;
    std::int64_t start = ((lo + mod - 1) / mod) * mod;
    for (std::int64_t n = start; n <= hi && out.size() < 3; n += mod) out.push_back(n);
    return out;
  };
  for (int attempt = 0; attempt < 24; ++attempt) {
    L = lcm64(L, point_order_bsgs(E, E.random_point(rng), lo, hi));
    const auto c = candidates(L);
    if (c.size() == 1) return c.front();
  }
  // The twist by a nonsquare has 2q + 2 - #E points.
  Residue d = k.one();
  for (std::int64_t i = 1; i < q; ++i) {
    if (k.chi(k.element(i)) == -1) {
      d = k.element(i);
      break;
    }
  }
  const ShortCurve T{k, k.mul(E.A, k.mul(d, d)), k.mul(E.B, k.mul(d, k.mul(d, d)))};
  std::int64_t Lt = 1;
  for (int attempt = 0; attempt < 24; ++attempt) {
    Lt = lcm64(Lt, point_order_bsgs(T, T.random_point(rng), lo, hi));
    std::vector<std::int64_t> ok;
    std::int64_t start = ((lo + L - 1) / L) * L;
    for (std::int64_t n = start; n <= hi; n += L)
      if ((2 * q + 2 - n) % Lt == 0) ok.push_back(n);
    if (ok.size() == 1) return ok.front();
  }
  return std::nullopt;
}

}  // namespace

long count_points(const CurveModel& e, const PrimeIdeal& p, CountMethod method) {
  const FiniteField k(p);
  if (k.is_zero(k.reduce(discriminant(e))))
    throw BadReduction("bad reduction at " + p.to_string());
  std::array<Residue, 5> a;
  for (int i = 0; i < 5; ++i) a[static_cast<std::size_t>(i)] = k.reduce(e.a[static_cast<std::size_t>(i)]);
  if (k.q() % 2 == 0) return count_brute(k, a);
  const bool small = k.q() <= kSweepLimit;
  if (method == CountMethod::sweep || k.characteristic() == 3 ||
      (method == CountMethod::automatic && small)) {
    return count_sweep(k, a);
  }
  if (auto n = count_bsgs(k, a)) return *n;
  return count_sweep(k, a);
}

long count_points_reduced(const FiniteField& k, const std::array<Residue, 5>& a) {
  if (k.q() % 2 == 0) return count_brute(k, a);
  if (k.q() <= kSweepLimit || k.characteristic() == 3) return count_sweep(k, a);
  if (auto n = count_bsgs(k, a)) return *n;
  return count_sweep(k, a);
}

Residue discriminant_reduced(const FiniteField& k, const std::array<Residue, 5>& a) {
  const Residue b2 = k.add(k.mul(a[0], a[0]), k.mul(k.from_int(4), a[1]));
  const Residue b4 = k.add(k.mul(k.from_int(2), a[3]), k.mul(a[0], a[2]));
  const Residue b6 = k.add(k.mul(a[2], a[2]), k.mul(k.from_int(4), a[4]));
  const Residue b8 = k.sub(
      k.add(k.sub(k.add(k.mul(k.mul(a[0], a[0]), a[4]), k.mul(k.from_int(4), k.mul(a[1], a[4]))),
                  k.mul(a[0], k.mul(a[2], a[3]))),
            k.mul(a[1], k.mul(a[2], a[2]))),
      k.mul(a[3], a[3]));
  Residue d = k.neg(k.mul(k.mul(b2, b2), b8));
  d = k.sub(d, k.mul(k.from_int(8), k.mul(b4, k.mul(b4, b4))));
  d = k.sub(d, k.mul(k.from_int(27), k.mul(b6, b6)));
  d = k.add(d, k.mul(k.from_int(9), k.mul(b2, k.mul(b4, b6))));
  return d;
}

long ap_good(const CurveModel& e, const PrimeIdeal& p) {
  return p.norm.get_si() + 1 - count_points(e, p);
}

long ap(const CurveModel& e, const PrimeIdeal& p) {
  if (valuation(discriminant(e), p) == 0) return ap_good(e, p);
  const LocalData ld = local_data(e, p);
  switch (ld.reduction) {
    case Reduction::good:
      return ap_good(ld.minimal_model, p);
    case Reduction::split_multiplicative:
      return 1;
    case Reduction::nonsplit_multiplicative:
      return -1;
    case Reduction::additive:
      return 0;
  }
  return 0;
}

}  // namespace hilbert5
