#include "hilbert5/poly.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "hilbert5/ffield.hpp"
#include "hilbert5/ideal.hpp"

namespace hilbert5 {

PolyF::PolyF(std::vector<FieldQ> coeffs) : c_(std::move(coeffs)) { trim(); }

PolyF PolyF::x() { return PolyF({FieldQ(0), FieldQ(1)}); }
PolyF PolyF::constant(const FieldQ& c) { return PolyF({c}); }
PolyF PolyF::linear(const FieldQ& r) { return PolyF({-r, FieldQ(1)}); }

void PolyF::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FieldQ PolyF::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return FieldQ();
  return c_[static_cast<std::size_t>(i)];
}

FieldQ PolyF::eval(const FieldQ& x) const {
  FieldQ r;
  for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
  return r;
}

PolyF PolyF::monic() const {
  if (c_.empty()) return *this;
  const FieldQ inv = c_.back().inverse();
  PolyF r = *this;
  for (auto& c : r.c_) c *= inv;
  return r;
}

PolyF PolyF::derivative() const {
  std::vector<FieldQ> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * FieldQ(static_cast<long>(i)));
  return PolyF(std::move(d));
}

PolyF PolyF::scale_variable(const FieldQ& lambda) const {
  PolyF r = *this;
  FieldQ pw(1);
  for (auto& c : r.c_) {
    c *= pw;
    pw *= lambda;
  }
  r.trim();
  return r;
}

PolyF& PolyF::operator+=(const PolyF& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

PolyF& PolyF::operator-=(const PolyF& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

PolyF& PolyF::operator*=(const PolyF& o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<FieldQ> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

PolyF& PolyF::operator*=(const FieldQ& s) {
  for (auto& c : c_) c *= s;
  trim();
  return *this;
}

PolyF PolyF::operator-() const {
  PolyF r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

void PolyF::divmod(const PolyF& g, PolyF& q, PolyF& r) const {
  if (g.is_zero()) throw std::domain_error("polynomial division by zero");
  r = *this;
  q = PolyF();
  const int dg = g.degree();
  if (r.degree() < dg) return;
  std::vector<FieldQ> qc(static_cast<std::size_t>(r.degree() - dg + 1));
  const FieldQ lead_inv = g.leading().inverse();
  for (int i = r.degree(); i >= dg; --i) {
    const FieldQ c = r.c_[static_cast<std::size_t>(i)] * lead_inv;
    qc[static_cast<std::size_t>(i - dg)] = c;
    if (c.is_zero()) continue;
    for (int j = 0; j <= dg; ++j) r.c_[static_cast<std::size_t>(i - dg + j)] -= c * g.c_[static_cast<std::size_t>(j)];
  }
  r.trim();
  q = PolyF(std::move(qc));
}

PolyF PolyF::operator%(const PolyF& g) const {
  PolyF q, r;
  divmod(g, q, r);
  return r;
}

PolyF PolyF::operator/(const PolyF& g) const {
  PolyF q, r;
  divmod(g, q, r);
  return q;
}

std::string PolyF::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    std::string coef = c_[i].to_string();
    const bool compound = coef.find_first_of("+-", 1) != std::string::npos;
    std::string term;
    if (i == 0) {
      term = compound ? "(" + coef + ")" : coef;
    } else {
      if (coef == "1") {
        term = "";
      } else if (coef == "-1") {
        term = "-";
      } else {
        term = (compound ? "(" + coef + ")" : coef) + "*";
      }
      term += var;
      if (i > 1) term += "^" + std::to_string(i);
    }
    if (!out.empty()) out += " + ";
    out += term;
  }
  return out;
}

PolyF gcd(PolyF a, PolyF b) {
  while (!b.is_zero()) {
    PolyF r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

PolyF squarefree_part(const PolyF& f) {
  if (f.degree() < 1) return f.monic();
  return (f / gcd(f, f.derivative())).monic();
}

namespace {

using ZPoly = std::vector<mpz_class>;

mpz_class mod_pos(const mpz_class& x, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  for (auto& c : r) c = mod_pos(c, m);
  return r;
}

bool less_fieldq(const FieldQ& x, const FieldQ& y) {
  if (x.a() != y.a()) return x.a() < y.a();
  return x.b() < y.b();
}

bool less_poly(const PolyF& f, const PolyF& g) {
  if (f.degree() != g.degree()) return f.degree() < g.degree();
  for (int i = f.degree(); i >= 0; --i) {
    if (!(f.coeff(i) == g.coeff(i))) return less_fieldq(f.coeff(i), g.coeff(i));
  }
  return false;
}

// A monic polynomial with coefficients in R, together with the scaling that produced it
// from a monic polynomial over F: g(y) = D^n f(y / D).
struct IntegralForm {
  std::vector<FieldElem> g;  // monic, low degree first
  mpz_class D;
};

IntegralForm integral_form(const PolyF& f_monic) {
  IntegralForm out;
  out.D = 1;
  for (const auto& c : f_monic.coeffs()) {
    const mpz_class d = c.denominator();
    mpz_lcm(out.D.get_mpz_t(), out.D.get_mpz_t(), d.get_mpz_t());
  }
  const int n = f_monic.degree();
  for (int i = 0; i <= n; ++i) {
    mpz_class scale;
    mpz_pow_ui(scale.get_mpz_t(), out.D.get_mpz_t(), static_cast<unsigned long>(n - i));
    out.g.push_back((f_monic.coeff(i) * FieldQ(FieldElem(scale))).to_integral());
  }
  return out;
}

PolyF from_integral(const std::vector<FieldElem>& h, const mpz_class& D) {
  // h(y) -> D^{-deg} h(D x)
  const int d = static_cast<int>(h.size()) - 1;
  std::vector<FieldQ> c(h.size());
  for (int i = 0; i <= d; ++i) {
    mpz_class den;
    mpz_pow_ui(den.get_mpz_t(), D.get_mpz_t(), static_cast<unsigned long>(d - i));
    c[static_cast<std::size_t>(i)] = FieldQ(h[static_cast<std::size_t>(i)]) * FieldQ(mpq_class(mpz_class(1), den), mpq_class(0));
  }
  return PolyF(std::move(c));
}

// Arithmetic modulo P^k for a split prime P = (p, phi - r), using the image of R in Z/p^k.
class PadicContext {
 public:
  PadicContext(const PrimeIdeal& prime, double log_bound)
      : field_(prime), p_(prime.p.get_si()) {
    // p^k > 64 B^2 makes the closest lattice vector unique with room to spare.
    const double need = std::log(64.0) + 2.0 * log_bound;
    k_ = std::max(1, static_cast<int>(std::ceil(need / std::log(static_cast<double>(p_)))) + 1);
    mpz_ui_pow_ui(pk_.get_mpz_t(), static_cast<unsigned long>(p_), static_cast<unsigned long>(k_));
    // Hensel lift of the image of phi.
    r_ = field_.ring().phi.u;
    for (int it = 0; it < 64; ++it) {
      const mpz_class f = mod_pos(r_ * r_ - r_ - 1, pk_);
      if (f == 0) break;
      mpz_class inv;
      const mpz_class df = mod_pos(2 * r_ - 1, pk_);
      mpz_invert(inv.get_mpz_t(), df.get_mpz_t(), pk_.get_mpz_t());
      r_ = mod_pos(r_ - f * inv, pk_);
    }
    // Gauss reduction of {(a, b) : a + b r = 0 mod p^k} for 2a^2 + 2ab + 3b^2.
    u_ = {pk_, 0};
    v_ = {-r_, 1};
    for (;;) {
      if (quad(v_) < quad(u_)) std::swap(u_, v_);
      const mpz_class num = bil(u_, v_), den = quad(u_);
      mpz_class m;
      mpq_class ratio(num, den);
      ratio.canonicalize();
      m = round_q(ratio);
      if (m == 0) break;
      v_ = {v_[0] - m * u_[0], v_[1] - m * u_[1]};
    }
  }

  const FiniteField& field() const { return field_; }
  long p() const { return p_; }
  int k() const { return k_; }
  const mpz_class& pk() const { return pk_; }

  mpz_class image(const FieldElem& x) const { return mod_pos(x.a() + x.b() * r_, pk_); }

  FieldElem reconstruct(const mpz_class& c) const {
    const mpz_class det = u_[0] * v_[1] - u_[1] * v_[0];
    mpq_class x1(c * v_[1], det), x2(-u_[1] * c, det);
    x1.canonicalize();
    x2.canonicalize();
    const mpz_class r1 = round_q(x1), r2 = round_q(x2);
    std::array<mpz_class, 2> best;
    mpz_class best_q = -1;
    for (int d1 = -1; d1 <= 1; ++d1) {
      for (int d2 = -1; d2 <= 1; ++d2) {
        const mpz_class m1 = r1 + d1, m2 = r2 + d2;
        std::array<mpz_class, 2> diff = {c - m1 * u_[0] - m2 * v_[0], -m1 * u_[1] - m2 * v_[1]};
        const mpz_class qv = quad(diff);
        if (best_q < 0 || qv < best_q) {
          best_q = qv;
          best = diff;
        }
      }
    }
    return FieldElem(best[0], best[1]);
  }

 private:
  static mpz_class quad(const std::array<mpz_class, 2>& w) {
    return 2 * w[0] * w[0] + 2 * w[0] * w[1] + 3 * w[1] * w[1];
  }
  static mpz_class bil(const std::array<mpz_class, 2>& x, const std::array<mpz_class, 2>& y) {
    return 2 * x[0] * y[0] + x[0] * y[1] + x[1] * y[0] + 3 * x[1] * y[1];
  }
  static mpz_class round_q(const mpq_class& x) {
    mpq_class h = x + mpq_class(1, 2);
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
    return r;
  }

  FiniteField field_;
  long p_;
  int k_ = 1;
  mpz_class pk_;
  mpz_class r_;
  std::array<mpz_class, 2> u_, v_;
};

FqPoly to_fq(const FiniteField& k, const ZPoly& a) {
  FqPoly r;
  for (const auto& c : a) {
    mpz_class m = mod_pos(c, mpz_class(k.characteristic()));
    r.push_back(Residue{m.get_si(), 0});
  }
  fq::trim(k, r);
  return r;
}

ZPoly to_z(const FqPoly& a) {
  ZPoly r;
  for (const auto& c : a) r.push_back(mpz_class(static_cast<long>(c.u)));
  return r;
}

// s*a + t*b = 1 over F_p for coprime a, b.
void xgcd(const FiniteField& k, const FqPoly& a, const FqPoly& b, FqPoly& s, FqPoly& t) {
  FqPoly r0 = a, r1 = b, s0{k.one()}, s1{}, t0{}, t1{k.one()};
  while (!r1.empty()) {
    FqPoly q, r;
    fq::divmod(k, r0, r1, q, r);
    FqPoly s2 = fq::sub(k, s0, fq::mul(k, q, s1));
    FqPoly t2 = fq::sub(k, t0, fq::mul(k, q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  const Residue inv = k.inv(r0.back());
  for (auto& c : s0) c = k.mul(c, inv);
  for (auto& c : t0) c = k.mul(c, inv);
  s = s0;
  t = t0;
}

// Lifts g = A*B from mod p to mod p^k (all monic).
void hensel_pair(const PadicContext& ctx, const ZPoly& g, ZPoly& A, ZPoly& B) {
  const FiniteField& k = ctx.field();
  const mpz_class p = ctx.p();
  const FqPoly Ap = to_fq(k, A), Bp = to_fq(k, B);
  FqPoly s, t;
  xgcd(k, Ap, Bp, s, t);
  mpz_class pj = p;
  for (int j = 1; j < ctx.k(); ++j) {
    const mpz_class pj1 = pj * p;
    ZPoly AB = zmul(A, B, pj1);
    ZPoly E(g.size(), 0);
    for (std::size_t i = 0; i < g.size(); ++i) {
      mpz_class diff = mod_pos(g[i] - (i < AB.size() ? AB[i] : mpz_class(0)), pj1);
      E[i] = diff / pj;
    }
    const FqPoly e = to_fq(k, E);
    FqPoly q, a;
    fq::divmod(k, fq::mul(k, t, e), Ap, q, a);
    FqPoly rem, b;
    fq::divmod(k, fq::sub(k, e, fq::mul(k, a, Bp)), Ap, b, rem);
    const ZPoly az = to_z(a), bz = to_z(b);
    for (std::size_t i = 0; i < az.size(); ++i) A[i] += pj * az[i];
    for (std::size_t i = 0; i < bz.size(); ++i) B[i] += pj * bz[i];
    pj = pj1;
  }
  for (auto& c : A) c = mod_pos(c, ctx.pk());
  for (auto& c : B) c = mod_pos(c, ctx.pk());
}

void hensel_multi(const PadicContext& ctx, const ZPoly& g, const std::vector<FqPoly>& local,
                  std::vector<ZPoly>& out) {
  if (local.size() == 1) {
    ZPoly r = g;
    for (auto& c : r) c = mod_pos(c, ctx.pk());
    out.push_back(r);
    return;
  }
  const FiniteField& k = ctx.field();
  const std::size_t half = local.size() / 2;
  std::vector<FqPoly> left(local.begin(), local.begin() + static_cast<long>(half));
  std::vector<FqPoly> right(local.begin() + static_cast<long>(half), local.end());
  FqPoly a{k.one()}, b{k.one()};
  for (const auto& f : left) a = fq::mul(k, a, f);
  for (const auto& f : right) b = fq::mul(k, b, f);
  ZPoly A = to_z(a), B = to_z(b);
  hensel_pair(ctx, g, A, B);
  hensel_multi(ctx, A, left, out);
  hensel_multi(ctx, B, right, out);
}

double log_root_bound(const std::vector<FieldElem>& g) {
  double r1 = 0, r2 = 0;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    r1 = std::max(r1, std::fabs(g[i].sigma1()));
    r2 = std::max(r2, std::fabs(g[i].sigma2()));
  }
  return std::log(1.0 + std::max(r1, r2));
}

ZPoly image_poly(const PadicContext& ctx, const std::vector<FieldElem>& g) {
  ZPoly r;
  for (const auto& c : g) r.push_back(ctx.image(c));
  return r;
}

// Split primes p = +-1 mod 5 for which g stays squarefree modulo P, with the number of
// local irreducible factors; the one with the fewest factors wins.
PrimeIdeal choose_prime(const std::vector<FieldElem>& g, std::vector<FqPoly>* local_out, bool roots_only) {
  mpz_class p = 10;
  int tried = 0;
  std::optional<PrimeIdeal> best;
  std::size_t best_count = 0;
  std::vector<FqPoly> best_local;
  while (tried < (roots_only ? 1 : 6)) {
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    const long pm = mpz_fdiv_ui(p.get_mpz_t(), 5);
    if (pm != 1 && pm != 4) continue;
    const PrimeIdeal P = primes_above(p)[0];
    FiniteField k(P);
    FqPoly gp;
    for (const auto& c : g) gp.push_back(k.reduce(c));
    fq::trim(k, gp);
    if (fq::degree(fq::gcd(k, gp, fq::derivative(k, gp))) > 0) continue;
    ++tried;
    if (roots_only) return P;
    std::vector<FqPoly> local = fq::factor_squarefree(k, gp);
    if (!best || local.size() < best_count) {
      best = P;
      best_count = local.size();
      best_local = std::move(local);
    }
    if (best_count == 1) break;
  }
  if (local_out) *local_out = best_local;
  return *best;
}

bool modularly_squarefree(const PolyF& f_monic) {
  if (f_monic.degree() <= 1) return true;
  const IntegralForm form = integral_form(f_monic);
  mpz_class p = 10;
  for (int tried = 0; tried < 12;) {
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    const long pm = mpz_fdiv_ui(p.get_mpz_t(), 5);
    if (pm != 1 && pm != 4) continue;
    ++tried;
    const FiniteField k(primes_above(p)[0]);
    FqPoly gp;
    for (const auto& c : form.g) gp.push_back(k.reduce(c));
    fq::trim(k, gp);
    if (fq::degree(fq::gcd(k, gp, fq::derivative(k, gp))) == 0) return true;
  }
  return false;
}

bool divides_exactly(const PolyF& g, const PolyF& h) { return (g % h).is_zero(); }

}  // namespace

std::vector<FieldQ> roots_in_field(const PolyF& f0) {
  std::vector<FieldQ> out;
  if (f0.degree() < 1) return out;
  // The gcd with the derivative is expensive over F; skip it when some small split prime
  // already shows f to be squarefree.
  const PolyF f = modularly_squarefree(f0.monic()) ? f0.monic() : squarefree_part(f0);
  if (f.degree() == 1) {
    out.push_back(-f.coeff(0));
    return out;
  }
  const IntegralForm form = integral_form(f);
  const PrimeIdeal P = choose_prime(form.g, nullptr, true);
  const PadicContext ctx(P, log_root_bound(form.g));
  const FiniteField& k = ctx.field();
  FqPoly gp;
  for (const auto& c : form.g) gp.push_back(k.reduce(c));
  fq::trim(k, gp);
  const ZPoly gz = image_poly(ctx, form.g);
  ZPoly dgz;
  for (std::size_t i = 1; i < gz.size(); ++i) dgz.push_back(gz[i] * static_cast<unsigned long>(i));
  auto zeval = [&](const ZPoly& h, const mpz_class& x) {
    mpz_class r = 0;
    for (std::size_t i = h.size(); i-- > 0;) r = mod_pos(r * x + h[i], ctx.pk());
    return r;
  };
  std::vector<FieldElem> gcoeffs = form.g;
  std::vector<FieldQ> gq(gcoeffs.begin(), gcoeffs.end());
  const PolyF gpoly(gq);
  for (Residue r0 : fq::roots(k, gp)) {
    mpz_class a = static_cast<long>(r0.u);
    for (int it = 0; it < 200; ++it) {
      const mpz_class v = zeval(gz, a);
      if (v == 0) break;
      mpz_class inv;
      const mpz_class d = zeval(dgz, a);
      mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), ctx.pk().get_mpz_t());
      a = mod_pos(a - v * inv, ctx.pk());
    }
    const FieldElem y = ctx.reconstruct(a);
    if (gpoly.eval(FieldQ(y)).is_zero()) {
      out.push_back(FieldQ(y) * FieldQ(mpq_class(mpz_class(1), form.D), mpq_class(0)));
    }
  }
  std::sort(out.begin(), out.end(), less_fieldq);
  return out;
}

namespace {

// Irreducible monic factors of f of degree <= max_degree (all of them when max_degree >= deg f).
std::vector<PolyF> factor_bounded(const PolyF& f0, int max_degree) {
  std::vector<PolyF> out;
  if (f0.degree() < 1) return out;
  const bool full = max_degree >= f0.degree();
  const PolyF f = modularly_squarefree(f0.monic()) ? f0.monic() : squarefree_part(f0);
  if (f.degree() == 1) return {f};
  const IntegralForm form = integral_form(f);
  std::vector<FqPoly> local;
  const PrimeIdeal P = choose_prime(form.g, &local, false);
  if (local.size() == 1) {
    if (f.degree() <= max_degree) out.push_back(f);
    return out;
  }
  const int target = full ? f.degree() : std::min(max_degree, f.degree());

  // Coefficients of a monic factor of degree d are bounded by 2^d rho^d in each embedding.
  const double log_bound = target * (std::log(2.0) + log_root_bound(form.g));
  const PadicContext ctx(P, log_bound);
  const ZPoly gz = image_poly(ctx, form.g);
  std::vector<ZPoly> lifted;
  hensel_multi(ctx, gz, local, lifted);

  // A second split prime screens candidates before exact division over F.
  mpz_class q = P.norm;
  std::optional<FiniteField> screen;
  while (!screen) {
    mpz_nextprime(q.get_mpz_t(), q.get_mpz_t());
    const long qm = mpz_fdiv_ui(q.get_mpz_t(), 5);
    if (qm == 1 || qm == 4) screen.emplace(primes_above(q)[0]);
  }
  auto reduce_screen = [&](const PolyF& h) {
    FqPoly r;
    for (const auto& c : h.coeffs()) r.push_back(screen->reduce(c.to_integral()));
    fq::trim(*screen, r);
    return r;
  };

  std::vector<FieldQ> gq(form.g.begin(), form.g.end());
  PolyF gcur(gq);
  FqPoly gscreen = reduce_screen(gcur);
  std::vector<std::size_t> remaining(lifted.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;
  std::vector<PolyF> found;

  std::size_t s = 1;
  auto s_limit = [&] { return full ? remaining.size() / 2 : std::min<std::size_t>(remaining.size(), static_cast<std::size_t>(target)); };
  while (s <= s_limit()) {
    bool hit = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    for (;;) {
      int deg = 0;
      for (std::size_t i : idx) deg += static_cast<int>(lifted[remaining[i]].size()) - 1;
      if (deg <= target) {
        ZPoly prod{1};
        for (std::size_t i : idx) prod = zmul(prod, lifted[remaining[i]], ctx.pk());
        std::vector<FieldQ> hc;
        for (const auto& c : prod) hc.emplace_back(ctx.reconstruct(c));
        PolyF cand(hc);
        if (fq::degree(fq::mod(*screen, gscreen, reduce_screen(cand))) < 0 && divides_exactly(gcur, cand)) {
          found.push_back(cand);
          gcur = gcur / cand;
          gscreen = reduce_screen(gcur);
          std::vector<std::size_t> keep;
          for (std::size_t i = 0; i < remaining.size(); ++i)
            if (std::find(idx.begin(), idx.end(), i) == idx.end()) keep.push_back(remaining[i]);
          remaining = std::move(keep);
          hit = true;
          break;
        }
      }
      // next combination
      std::size_t pos = s;
      while (pos > 0 && idx[pos - 1] == remaining.size() - s + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < s; ++i) idx[i] = idx[i - 1] + 1;
    }
    if (!hit) ++s;
  }
  // What is left has no proper factor among the subsets tried, so it is irreducible when
  // either every subset was tried or it is small enough to have been tried whole.
  if (gcur.degree() > 0 && (full || gcur.degree() <= target)) found.push_back(gcur);

  for (const auto& h : found) {
    std::vector<FieldElem> hc;
    for (const auto& c : h.coeffs()) hc.push_back(c.to_integral());
    out.push_back(from_integral(hc, form.D).monic());
  }
  std::sort(out.begin(), out.end(), less_poly);
  return out;
}

}  // namespace

std::vector<PolyF> factor_over_field(const PolyF& f) { return factor_bounded(f, f.degree()); }

std::vector<PolyF> small_factors(const PolyF& f, int max_degree) {
  if (max_degree < 1) return {};
  return factor_bounded(f, max_degree);
}

}  // namespace hilbert5
