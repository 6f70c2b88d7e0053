#include "hilbert5/curve.hpp"

#include <gmpxx.h>

#include <cmath>
#include <sstream>

namespace hilbert5 {

std::string CurveModel::to_string() const {
  std::string out = "[";
  for (int i = 0; i < 5; ++i) {
    if (i) out += ",";
    out += a[static_cast<std::size_t>(i)].to_string();
  }
  return out + "]";
}

CurveModel CurveModel::parse(std::string_view text) {
  std::string s(text);
  std::string inner;
  for (char c : s)
    if (c != '[' && c != ']') inner += c;
  std::vector<std::string> parts;
  std::string cur;
  for (char c : inner) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 5) throw std::invalid_argument("curve needs five coefficients: " + s);
  CurveModel e;
  for (int i = 0; i < 5; ++i) e.a[static_cast<std::size_t>(i)] = FieldElem::parse(parts[static_cast<std::size_t>(i)]);
  return e;
}

namespace {

template <class T>
struct BInv {
  T b2, b4, b6, b8, c4, c6, disc;
};

template <class T>
BInv<T> compute_binv(const T& a1, const T& a2, const T& a3, const T& a4, const T& a6) {
  BInv<T> r;
  r.b2 = a1 * a1 + T(4) * a2;
  r.b4 = T(2) * a4 + a1 * a3;
  r.b6 = a3 * a3 + T(4) * a6;
  r.b8 = a1 * a1 * a6 + T(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  r.c4 = r.b2 * r.b2 - T(24) * r.b4;
  r.c6 = -(r.b2 * r.b2 * r.b2) + T(36) * r.b2 * r.b4 - T(216) * r.b6;
  r.disc = -(r.b2 * r.b2 * r.b8) - T(8) * r.b4 * r.b4 * r.b4 - T(27) * r.b6 * r.b6 +
           T(9) * r.b2 * r.b4 * r.b6;
  return r;
}

}  // namespace

Invariants invariants(const CurveModel& e) {
  const auto r = compute_binv<FieldElem>(e.a1(), e.a2(), e.a3(), e.a4(), e.a6());
  if (r.disc.is_zero()) throw SingularModel("singular model " + e.to_string());
  Invariants out{r.b2, r.b4, r.b6, r.b8, r.c4, r.c6, r.disc, FieldQ()};
  out.j = FieldQ(r.c4 * r.c4 * r.c4) / FieldQ(r.disc);
  return out;
}

InvariantsQ invariants(const AInvariantsQ& a) {
  const auto r = compute_binv<FieldQ>(a[0], a[1], a[2], a[3], a[4]);
  return InvariantsQ{r.b2, r.b4, r.b6, r.b8, r.c4, r.c6, r.disc};
}

FieldElem discriminant(const CurveModel& e) {
  return compute_binv<FieldElem>(e.a1(), e.a2(), e.a3(), e.a4(), e.a6()).disc;
}

FieldQ j_invariant(const CurveModel& e) { return invariants(e).j; }

AInvariantsQ transform(const AInvariantsQ& a, const FieldQ& u, const FieldQ& r, const FieldQ& s,
                       const FieldQ& t) {
  const FieldQ &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a6 = a[4];
  const FieldQ ui = u.inverse();
  const FieldQ u2 = ui * ui, u3 = u2 * ui, u4 = u2 * u2, u6 = u3 * u3;
  AInvariantsQ o;
  o[0] = (a1 + FieldQ(2) * s) * ui;
  o[1] = (a2 - s * a1 + FieldQ(3) * r - s * s) * u2;
  o[2] = (a3 + r * a1 + FieldQ(2) * t) * u3;
  o[3] = (a4 - s * a3 + FieldQ(2) * r * a2 - (t + r * s) * a1 + FieldQ(3) * r * r - FieldQ(2) * s * t) * u4;
  o[4] = (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) * u6;
  return o;
}

CurveModel rst_transform(const CurveModel& e, const FieldElem& r, const FieldElem& s,
                         const FieldElem& t) {
  const FieldElem &a1 = e.a[0], &a2 = e.a[1], &a3 = e.a[2], &a4 = e.a[3], &a6 = e.a[4];
  CurveModel o;
  o.a[0] = a1 + FieldElem(2) * s;
  o.a[1] = a2 - s * a1 + FieldElem(3) * r - s * s;
  o.a[2] = a3 + r * a1 + FieldElem(2) * t;
  o.a[3] = a4 - s * a3 + FieldElem(2) * r * a2 - (t + r * s) * a1 + FieldElem(3) * r * r - FieldElem(2) * s * t;
  o.a[4] = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
  return o;
}

CurveModel unit_scale(const CurveModel& e, const FieldElem& u) {
  const auto inv = FieldElem(1).divide(u);
  if (!inv) throw std::invalid_argument("unit_scale needs a unit");
  static constexpr int kWeights[5] = {1, 2, 3, 4, 6};
  CurveModel o;
  for (int i = 0; i < 5; ++i) o.a[static_cast<std::size_t>(i)] = e.a[static_cast<std::size_t>(i)] * inv->pow(static_cast<unsigned long>(kWeights[i]));
  return o;
}

AInvariantsQ to_q(const CurveModel& e) {
  AInvariantsQ o;
  for (int i = 0; i < 5; ++i) o[static_cast<std::size_t>(i)] = FieldQ(e.a[static_cast<std::size_t>(i)]);
  return o;
}

CurveModel integral_model(const AInvariantsQ& a) {
  mpz_class d = 1;
  for (const auto& c : a) {
    const mpz_class den = c.denominator();
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), den.get_mpz_t());
  }
  const AInvariantsQ t = transform(a, FieldQ(mpq_class(mpz_class(1), d), mpq_class(0)), FieldQ(), FieldQ(), FieldQ());
  CurveModel o;
  for (int i = 0; i < 5; ++i) o.a[static_cast<std::size_t>(i)] = t[static_cast<std::size_t>(i)].to_integral();
  return o;
}

CurveModel from_c4c6(const FieldElem& c4, const FieldElem& c6) {
  CurveModel o;
  o.a[3] = FieldElem(-27) * c4;
  o.a[4] = FieldElem(-54) * c6;
  return o;
}

std::string to_string(Reduction r) {
  switch (r) {
    case Reduction::good:
      return "good";
    case Reduction::split_multiplicative:
      return "split";
    case Reduction::nonsplit_multiplicative:
      return "nonsplit";
    case Reduction::additive:
      return "additive";
  }
  return "?";
}

CurveModel quadratic_twist(const CurveModel& e, const FieldElem& d) {
  if (d.is_zero()) throw std::invalid_argument("twist by zero");
  const Invariants inv = invariants(e);
  return global_minimal_model(from_c4c6(d * d * inv.c4, d * d * d * inv.c6));
}

namespace {

// log |sigma_i(x)| computed with enough precision for huge coordinates.
double log_abs_sigma(const FieldElem& x, int which) {
  mpf_class s5(5, 256);
  s5 = sqrt(s5);
  mpf_class phi_i(0, 256);
  if (which == 1) {
    phi_i = (1 + s5) / 2;
  } else {
    phi_i = (1 - s5) / 2;
  }
  mpf_class v(0, 256);
  v = mpf_class(x.a(), 256) + mpf_class(x.b(), 256) * phi_i;
  v = abs(v);
  long exp = 0;
  const double mant = mpf_get_d_2exp(&exp, v.get_mpf_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

FieldElem canonical_rep_mod2(const FieldElem& x) {
  mpz_class a, b;
  mpz_fdiv_r_ui(a.get_mpz_t(), x.a().get_mpz_t(), 2);
  mpz_fdiv_r_ui(b.get_mpz_t(), x.b().get_mpz_t(), 2);
  return FieldElem(a, b);
}

FieldElem canonical_rep_mod3(const FieldElem& x) {
  auto sym = [](const mpz_class& v) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), 3);
    if (r == 2) r = -1;
    return r;
  };
  return FieldElem(sym(x.a()), sym(x.b()));
}

CurveModel reduce_translations(const CurveModel& e) {
  const FieldElem s = *(canonical_rep_mod2(e.a1()) - e.a1()).divide(FieldElem(2));
  CurveModel m = rst_transform(e, 0, s, 0);
  const FieldElem r = *(canonical_rep_mod3(m.a2()) - m.a2()).divide(FieldElem(3));
  m = rst_transform(m, r, 0, 0);
  const FieldElem t = *(canonical_rep_mod2(m.a3()) - m.a3()).divide(FieldElem(2));
  return rst_transform(m, 0, 0, t);
}

// Smaller models first; ties by the coefficient list.
bool model_less(const CurveModel& x, const CurveModel& y) {
  std::size_t hx = 0, hy = 0;
  for (int i = 0; i < 5; ++i) {
    hx += x.a[static_cast<std::size_t>(i)].bit_height();
    hy += y.a[static_cast<std::size_t>(i)].bit_height();
  }
  if (hx != hy) return hx < hy;
  return x.a < y.a;
}

}  // namespace

CurveModel reduce_model(const CurveModel& e) {
  const FieldElem disc = discriminant(e);
  if (disc.is_zero()) throw SingularModel("singular model " + e.to_string());
  const double l1 = log_abs_sigma(disc, 1), l2 = log_abs_sigma(disc, 2);
  const double lphi = std::log((1 + std::sqrt(5.0)) / 2);
  // Scaling by u = phi^k multiplies the embeddings of the discriminant by phi^{-12k}
  // and phi^{12k}; pick k balancing them.
  const double kstar = (l1 - l2) / (24 * lphi);
  const long k0 = static_cast<long>(std::floor(kstar));
  auto size = [&](long k) {
    const double x1 = l1 - 12.0 * static_cast<double>(k) * lphi;
    const double x2 = l2 + 12.0 * static_cast<double>(k) * lphi;
    const double m = std::max(x1, x2);
    return m + std::log(std::exp(x1 - m) + std::exp(x2 - m));
  };
  std::vector<long> ks;
  const double s0 = size(k0), s1 = size(k0 + 1);
  if (std::fabs(s0 - s1) < 1e-9) {
    ks = {k0, k0 + 1};
  } else {
    ks = {s0 < s1 ? k0 : k0 + 1};
  }
  std::optional<CurveModel> best;
  for (long k : ks) {
    for (int sign : {1, -1}) {
      const FieldElem u = phi_power(k) * FieldElem(sign);
      const CurveModel cand = reduce_translations(unit_scale(e, u));
      if (!best || model_less(cand, *best)) best = cand;
    }
  }
  return *best;
}

CurveModel global_minimal_model(const CurveModel& e) {
  CurveModel m = e;
  for (const PrimeIdeal& p : bad_primes(e)) m = local_data(m, p).minimal_model;
  return reduce_model(m);
}

bool isomorphic(const CurveModel& e1, const CurveModel& e2) {
  if (!(j_invariant(e1) == j_invariant(e2))) return false;
  return global_minimal_model(e1) == global_minimal_model(e2);
}

std::size_t model_height(const CurveModel& e) {
  std::size_t h = 0;
  for (const FieldElem& c : e.a) h += c.bit_height();
  return h;
}

}  // namespace hilbert5
