#include "hilbert5/periods.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "hilbert5/ffield.hpp"
#include "hilbert5/search.hpp"

namespace hilbert5 {

// ---------------------------------------------------------------------------
// Characters

int QuadraticCharacter::operator()(const FieldElem& x) const {
  return table[static_cast<std::size_t>(ring.rank(ring.reduce(x)))];
}

QuadraticCharacter quadratic_character(const PrimeIdeal& p) {
  if (p.norm % 2 == 0) throw std::invalid_argument("quadratic_character needs an odd prime, got " + p.to_string());
  const FiniteField k(p);
  QuadraticCharacter chi;
  chi.conductor = p;
  chi.ring = k.ring();
  chi.table.assign(static_cast<std::size_t>(k.q()), -1);
  chi.table[static_cast<std::size_t>(k.index(k.zero()))] = 0;
  for (std::int64_t i = 0; i < k.q(); ++i) {
    const Residue x = k.element(i);
    if (k.is_zero(x)) continue;
    chi.table[static_cast<std::size_t>(k.index(k.mul(x, x)))] = 1;
  }
  chi.phi_value = chi(FieldElem::phi());
  chi.one_minus_phi_value = chi(FieldElem(1, -1));
  chi.minus_one_value = chi(FieldElem(-1));
  return chi;
}

Complex gauss_sum(const QuadraticCharacter& chi) {
  const FiniteField k(chi.conductor);
  const auto m = totally_positive_associate(chi.conductor.gen);
  if (!m) throw std::logic_error("no totally positive generator for " + chi.conductor.to_string());
  const FieldQ sqrt5(FieldElem(-1, 2));
  const FieldQ y = (FieldQ(*m) * sqrt5).inverse();
  const mpq_class tr_y = y.trace();
  const mpq_class tr_phi_y = (FieldQ(FieldElem::phi()) * y).trace();
  Complex sum;
  for (std::int64_t i = 0; i < k.q(); ++i) {
    const int c = chi.table[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const FieldElem alpha = k.lift(k.element(i));
    const mpq_class t = mpq_class(alpha.a()) * tr_y + mpq_class(alpha.b()) * tr_phi_y;
    const Complex z = unit_root(t);
    if (c > 0) {
      sum += z;
    } else {
      sum -= z;
    }
  }
  return sum;
}

int sign_index(int s, int sp) { return (s > 0 ? 2 : 0) + (sp > 0 ? 1 : 0); }
int sign_s(int index) { return index >= 2 ? 1 : -1; }
int sign_sp(int index) { return index % 2 == 1 ? 1 : -1; }
std::string sign_label(int index) {
  std::string out;
  out += sign_s(index) > 0 ? '+' : '-';
  out += sign_sp(index) > 0 ? '+' : '-';
  return out;
}

std::array<std::vector<QuadraticCharacter>, 4> character_lists(const IdealRep& level, int eps, long bound) {
  std::array<std::vector<QuadraticCharacter>, 4> lists;
  if (bound <= 3) return lists;
  const auto n = totally_positive_associate(level.gen());
  if (!n) throw std::logic_error("no totally positive generator for " + level.to_string());
  const FieldElem minus_n = -*n;
  for (const PrimeIdeal& p : primes_up_to(bound - 1)) {
    if (p.norm % 2 == 0 || !level.coprime_to(p)) continue;
    QuadraticCharacter chi = quadratic_character(p);
    if (chi(minus_n) != eps) continue;
    const int idx = sign_index(chi.one_minus_phi_value, chi.phi_value);
    lists[static_cast<std::size_t>(idx)].push_back(std::move(chi));
  }
  for (auto& l : lists)
    std::stable_sort(l.begin(), l.end(), [](const QuadraticCharacter& a, const QuadraticCharacter& b) {
      return a.conductor.norm < b.conductor.norm;
    });
  return lists;
}

// ---------------------------------------------------------------------------
// L-value files

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

LValueSet read_lvalues(std::istream& in) {
  LValueSet set;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line == "scaled") {
      set.scaled = true;
      continue;
    }
    std::istringstream ls(line);
    std::string signs, gen, norm, re, im;
    if (!(ls >> signs >> gen >> norm >> re >> im) || signs.size() != 2 ||
        (signs[0] != '+' && signs[0] != '-') || (signs[1] != '+' && signs[1] != '-'))
      throw std::invalid_argument("L-value line " + std::to_string(lineno) + ": expected <s><s'> gen norm re im");
    LValueRecord r;
    r.s = signs[0] == '+' ? 1 : -1;
    r.sp = signs[1] == '+' ? 1 : -1;
    r.conductor_gen = FieldElem::parse(gen);
    r.conductor_norm = mpz_class(norm);
    if (abs(r.conductor_gen.norm()) != r.conductor_norm)
      throw std::invalid_argument("L-value line " + std::to_string(lineno) + ": norm of " + gen + " is " +
                                  mpz_class(abs(r.conductor_gen.norm())).get_str() + ", not " + norm);
    r.value = Complex(Real::parse(re), Real::parse(im));
    set.records.push_back(std::move(r));
  }
  return set;
}

void write_lvalues(std::ostream& out, const LValueSet& set) {
  if (set.scaled) out << "scaled\n";
  for (const LValueRecord& r : set.records) {
    out << (r.s > 0 ? '+' : '-') << (r.sp > 0 ? '+' : '-') << ' ' << r.conductor_gen.to_string() << ' '
        << r.conductor_norm.get_str() << ' ' << r.value.re.to_string(20) << ' ' << r.value.im.to_string(20) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Period guesses

mpq_class recognize_rational(const Real& x, const RecognitionOptions& opt) {
  const Real tol = Real(opt.tolerance) * std::max(Real(1), abs(x));
  // Convergents h/k of the continued fraction of x.
  mpz_class h_prev = 1, h = x.floor(), k_prev = 0, k = 1;
  Real rest = x - Real(h);
  for (int step = 0; step < 200; ++step) {
    if (abs(x - Real(mpq_class(h, k))) <= tol) return mpq_class(h, k);
    if (rest.is_zero()) break;
    const Real inv = Real(1) / rest;
    const mpz_class a = inv.floor();
    rest = inv - Real(a);
    const mpz_class h_next = a * h + h_prev, k_next = a * k + k_prev;
    if (k_next > opt.denominator_cap) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  throw RatioNotRational("no rational with denominator <= " + std::to_string(opt.denominator_cap) +
                         " within tolerance of " + x.to_string());
}

MixedPeriods guess_mixed_periods(const LValueSet& values, const RecognitionOptions& opt) {
  MixedPeriods mp;
  for (const LValueRecord& r : values.records) {
    Complex v = r.value;
    if (!values.scaled) {
      // i^k with k the number of minus signs, times sqrt(5 N(p)).
      const int k = (r.s < 0) + (r.sp < 0);
      const Real scale = sqrt(Real(mpz_class(5 * r.conductor_norm)));
      v = Complex(v.re * scale, v.im * scale);
      if (k == 1) v = Complex(-v.im, v.re);
      if (k == 2) v = -v;
    }
    mp.scaled[static_cast<std::size_t>(sign_index(r.s, r.sp))].push_back(v);
  }
  for (std::size_t idx = 0; idx < 4; ++idx) {
    auto& list = mp.scaled[idx];
    Real biggest;
    for (const Complex& v : list) biggest = std::max(biggest, v.abs());
    if (biggest.is_zero()) throw std::invalid_argument("no nonzero L-values for signs " + sign_label(static_cast<int>(idx)));
    const Real cutoff = biggest * Real(opt.tolerance);
    std::erase_if(list, [&](const Complex& v) { return v.abs() <= cutoff; });
    const Complex& l0 = list.front();
    mpz_class lcm = 1;
    for (const Complex& lk : list) {
      const Complex q = l0 / lk;
      if (abs(q.im) > Real(opt.tolerance) * std::max(Real(1), abs(q.re)))
        throw RatioNotRational("ratio of L-values is not real: " + q.to_string());
      const mpq_class r = recognize_rational(q.re, opt);
      mp.ratios[idx].push_back(r);
      mpz_class num = abs(r.get_num());
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), num.get_mpz_t());
    }
    const Real d(lcm);
    mp.omega[idx] = Complex(l0.re / d, l0.im / d);
  }
  return mp;
}

std::vector<PeriodCandidate> consistent_period_sets(const MixedPeriods& guess) {
  static const double kFactors[] = {1, 0.5, 2, 0.25, 4, 0.125, 8};
  // --, -+, +-, ++ : omega[0] omega[3] = omega[1] omega[2]
  std::vector<std::pair<double, PeriodCandidate>> scored;
  std::set<std::pair<long long, long long>> seen;
  for (int derived : {3, 0, 1, 2}) {
    std::array<int, 3> others{};
    int n = 0;
    for (int i = 0; i < 4; ++i)
      if (i != derived) others[static_cast<std::size_t>(n++)] = i;
    for (double f0 : kFactors) {
      for (double f1 : kFactors) {
        for (double f2 : kFactors) {
          PeriodCandidate c;
          c.derived = derived;
          const double fs[3] = {f0, f1, f2};
          for (int t = 0; t < 3; ++t) {
            const int i = others[static_cast<std::size_t>(t)];
            c.factors[static_cast<std::size_t>(i)] = fs[t];
            c.omega[static_cast<std::size_t>(i)] = guess.omega[static_cast<std::size_t>(i)] * Complex(Real(fs[t]));
          }
          const auto& w = c.omega;
          Complex d;
          switch (derived) {
            case 0: d = w[1] * w[2] / w[3]; break;
            case 3: d = w[1] * w[2] / w[0]; break;
            case 1: d = w[0] * w[3] / w[2]; break;
            default: d = w[0] * w[3] / w[1]; break;
          }
          c.omega[static_cast<std::size_t>(derived)] = d;
          const Complex ratio = d / guess.omega[static_cast<std::size_t>(derived)];
          c.factors[static_cast<std::size_t>(derived)] = ratio.re.to_double();
          // j only depends on omega^{-+}/omega^{++} and omega^{+-}/omega^{++}.
          const double r1 = c.factors[1] / c.factors[3], r2 = c.factors[2] / c.factors[3];
          if (!(r1 > 0) || !(r2 > 0)) continue;
          const auto key = std::make_pair(std::llround(std::log2(r1) * 1e6), std::llround(std::log2(r2) * 1e6));
          if (!seen.insert(key).second) continue;
          double score = 0;
          for (double f : c.factors) score += std::fabs(std::log2(std::fabs(f)));
          scored.emplace_back(score, std::move(c));
        }
      }
    }
  }
  std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<PeriodCandidate> out;
  out.reserve(scored.size());
  for (auto& s : scored) out.push_back(std::move(s.second));
  return out;
}

// ---------------------------------------------------------------------------
// j from periods

Complex j_of_tau(const Complex& tau_in, int terms) {
  if (tau_in.im.sign() <= 0) throw SeriesDivergence("tau must lie in the upper half-plane, got " + tau_in.to_string());
  Complex tau = tau_in;
  for (int iter = 0; iter < 10000; ++iter) {
    tau.re -= Real(tau.re.round());
    if (tau.norm() >= Real(1) - Real(1e-30)) break;
    tau = Complex(Real(-1)) / tau;
  }
  const Real two_pi = Real(2) * pi_value();
  const Complex q = exp(Complex(-two_pi * tau.im, two_pi * tau.re));
  if (q.abs() >= Real(1)) throw SeriesDivergence("|q| >= 1");
  if (terms <= 0) {
    const double bits = static_cast<double>(working_precision());
    terms = static_cast<int>(std::ceil(bits * std::log(2.0) / (two_pi.to_double() * tau.im.to_double()))) + 2;
  }
  // j = E4^3 / Delta with Delta = q prod (1 - q^n)^24, which avoids the cancellation in
  // E4^3 - E6^2 when |q| is tiny.
  Complex s3, prod(Real(1));
  Complex qn = q;
  for (int n = 1; n <= terms; ++n) {
    const Complex one_minus = Complex(Real(1)) - qn;
    const Real n3 = Real(static_cast<long>(n) * n * n);
    s3 += qn / one_minus * Complex(n3);
    prod *= one_minus;
    qn *= q;
  }
  const Complex e4 = Complex(Real(1)) + Complex(Real(240)) * s3;
  Complex p24 = prod * prod * prod;  // ^3
  p24 *= p24;                        // ^6
  p24 *= p24;                        // ^12
  p24 *= p24;                        // ^24
  return e4 * e4 * e4 / (q * p24);
}

namespace {

Real j_for_ratio(Complex tau, int delta_sign) {
  if (tau.im.sign() < 0) tau = -tau;
  if (delta_sign < 0) tau = (Complex(Real(1)) + tau) / Complex(Real(2));
  return j_of_tau(tau).re;
}

}  // namespace

std::pair<Real, Real> j_embeddings(const std::array<Complex, 4>& omega, int sign1, int sign2) {
  const Complex tau1 = omega[1] / omega[3];
  const Complex tau2 = omega[2] / omega[3];
  return {j_for_ratio(tau1, sign1), j_for_ratio(tau2, sign2)};
}

namespace {

Complex complex_sqrt(const Complex& z) {
  const Real r = z.abs();
  Real re = sqrt(std::max(Real(), (r + z.re) / Real(2)));
  Real im = sqrt(std::max(Real(), (r - z.re) / Real(2)));
  if (z.im.sign() < 0) im = -im;
  return Complex(re, im);
}

// Real period of Y^2 = 4x^3 + c2 x^2 + c1 x + c0.
Real real_period(const Real& c2, const Real& c1, const Real& c0) {
  auto f = [&](const Real& x) { return ((Real(4) * x + c2) * x + c1) * x + c0; };
  Real bound = Real(1) + std::max({abs(c2), abs(c1), abs(c0)});
  Real lo = -bound, hi = bound;
  // f(lo) < 0 < f(hi); bisect then polish with Newton.
  for (int i = 0; i < static_cast<int>(working_precision()) + 64; ++i) {
    const Real mid = (lo + hi) / Real(2);
    if (f(mid).sign() < 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  Real e = (lo + hi) / Real(2);
  for (int i = 0; i < 3; ++i) {
    const Real d = (Real(12) * e + Real(2) * c2) * e + c1;
    if (d.is_zero()) break;
    e -= f(e) / d;
  }
  // 4x^2 + B x + C with the remaining roots.
  const Real B = c2 + Real(4) * e;
  const Real C = c1 + e * B;
  const Real disc = B * B - Real(16) * C;
  const Real pi = pi_value();
  if (disc.sign() >= 0) {
    const Real s = sqrt(disc);
    std::array<Real, 3> r{e, (-B + s) / Real(8), (-B - s) / Real(8)};
    std::sort(r.begin(), r.end(), [](const Real& a, const Real& b) { return a > b; });
    return pi / agm(sqrt(r[0] - r[2]), sqrt(r[0] - r[1]));
  }
  const Complex e2(-B / Real(8), sqrt(-disc) / Real(8));
  const Complex root = complex_sqrt(Complex(e) - e2);
  return pi / agm(root.re, root.abs());
}

}  // namespace

std::array<Complex, 4> mixed_periods_of(const CurveModel& e) {
  const Invariants inv = invariants(e);
  std::array<Complex, 2> plus, minus;
  for (int which = 1; which <= 2; ++which) {
    const Real b2 = embed(inv.b2, which), b4 = embed(inv.b4, which), b6 = embed(inv.b6, which);
    plus[static_cast<std::size_t>(which - 1)] = Complex(real_period(b2, Real(2) * b4, b6));
    minus[static_cast<std::size_t>(which - 1)] = Complex(Real(), real_period(-b2, Real(2) * b4, -b6));
  }
  std::array<Complex, 4> w;
  for (int idx = 0; idx < 4; ++idx) {
    const Complex& first = sign_s(idx) > 0 ? plus[0] : minus[0];
    const Complex& second = sign_sp(idx) > 0 ? plus[1] : minus[1];
    w[static_cast<std::size_t>(idx)] = first * second;
  }
  return w;
}

// ---------------------------------------------------------------------------
// Recognition

std::optional<Recognition> recognize_curve(const Real& j1, const Real& j2, const FieldElem& delta, long radius,
                                           const CurveTest& accept) {
  if (delta.is_zero()) throw std::invalid_argument("recognize_curve needs a nonzero discriminant");
  const Real s1 = cbrt(j1 * embed(delta, 1));
  const Real s2 = cbrt(j2 * embed(delta, 2));
  const Real alpha = (s1 + s2) / Real(2);
  const Real beta = (s1 - s2) / (Real(2) * sqrt(Real(5)));
  // c4 = a + b phi with b = 2 beta and a = alpha - beta; try both roundings of each.
  const Real b_real = Real(2) * beta;
  std::vector<FieldElem> bases;
  for (const mpz_class& b : {b_real.round(), b_real.floor(), mpz_class(b_real.floor() + 1)}) {
    const Real a_real = alpha - Real(b) / Real(2);
    for (const mpz_class& a : {a_real.round(), a_real.floor(), mpz_class(a_real.floor() + 1)}) {
      const FieldElem c(a, b);
      if (std::find(bases.begin(), bases.end(), c) == bases.end()) bases.push_back(c);
    }
  }
  std::vector<FieldElem> tried;
  const FieldElem d1728 = FieldElem(1728) * delta;
  for (long m = 0; m <= radius; ++m) {
    for (const FieldElem& base : bases) {
      for (long da = -m; da <= m; ++da) {
        for (long db = -m; db <= m; ++db) {
          if (std::max(std::labs(da), std::labs(db)) != m) continue;
          const FieldElem c4 = base + FieldElem(da, db);
          if (std::find(tried.begin(), tried.end(), c4) != tried.end()) continue;
          tried.push_back(c4);
          const auto root = sqrt_in_ring(c4 * c4 * c4 - d1728);
          if (!root || root->is_zero()) continue;
          for (const FieldElem& c6 : {*root, -*root}) {
            CurveModel e;
            try {
              e = global_minimal_model(from_c4c6(c4, c6));
            } catch (const SingularModel&) {
              continue;
            }
            if (accept(e)) return Recognition{e, c4, c6};
          }
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<Recognition> recognize_curve(const Real& j1, const Real& j2, const FieldElem& delta, long radius,
                                           const NewformRecord& form) {
  return recognize_curve(j1, j2, delta, radius, [&](const CurveModel& e) { return match(e, form); });
}

// ---------------------------------------------------------------------------
// Discriminant guesses

DeltaGuesses::DeltaGuesses(const IdealRep& level, int max_exponent, int unit_range) {
  std::vector<FieldElem> gens;
  std::vector<int> level_exps;
  for (const PrimePower& pp : level.factorization()) {
    gens.push_back(pp.prime.gen);
    level_exps.push_back(static_cast<int>(pp.exponent));
  }
  bases_.push_back(level.gen());
  const std::size_t k = gens.size();
  for (int top = 1; top <= max_exponent && k > 0; ++top) {
    std::vector<int> e(k, 1);
    for (;;) {
      if (*std::max_element(e.begin(), e.end()) == top && e != level_exps) {
        FieldElem g(1);
        for (std::size_t i = 0; i < k; ++i) g *= gens[i].pow(static_cast<unsigned long>(e[i]));
        bases_.push_back(canonical_associate(g));
      }
      std::size_t i = 0;
      while (i < k && e[i] == top) e[i++] = 1;
      if (i == k) break;
      ++e[i];
    }
  }
  units_.push_back(FieldElem(1));
  units_.push_back(FieldElem(-1));
  for (int j = 1; j <= unit_range; ++j) {
    for (long sgn : {1L, -1L}) {
      units_.push_back(phi_power(j) * FieldElem(sgn));
      units_.push_back(phi_power(-j) * FieldElem(sgn));
    }
  }
}

std::optional<FieldElem> DeltaGuesses::next() {
  if (base_ >= bases_.size()) return std::nullopt;
  FieldElem out = units_[unit_] * bases_[base_];
  if (++unit_ == units_.size()) {
    unit_ = 0;
    ++base_;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pipeline

RecoveryResult recover_curve(const LValueSet& values, const NewformRecord& form, const RecoveryOptions& opt) {
  RecoveryResult res;
  res.guesses = guess_mixed_periods(values, opt.recognition);
  const auto candidates = consistent_period_sets(res.guesses);
  std::vector<FieldElem> deltas;
  {
    DeltaGuesses it(form.level, opt.max_exponent, opt.unit_range);
    while (auto d = it.next()) deltas.push_back(*d);
  }
  const CurveTest accept = [&](const CurveModel& e) { return match(e, form); };
  for (const PeriodCandidate& cand : candidates) {
    std::map<std::pair<int, int>, std::pair<Real, Real>> jcache;
    for (const FieldElem& delta : deltas) {
      ++res.deltas_tried;
      const int g1 = delta.sigma1() > 0 ? 1 : -1, g2 = delta.sigma2() > 0 ? 1 : -1;
      auto it = jcache.find({g1, g2});
      if (it == jcache.end()) it = jcache.emplace(std::make_pair(g1, g2), j_embeddings(cand.omega, g1, g2)).first;
      const auto& [j1, j2] = it->second;
      if (auto found = recognize_curve(j1, j2, delta, opt.radius, accept)) {
        res.found = std::move(found);
        res.delta = delta;
        res.periods = cand;
        res.j = it->second;
        return res;
      }
    }
  }
  return res;
}

}  // namespace hilbert5
