#include "hilbert5/search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

#include "hilbert5/ffield.hpp"

namespace hilbert5 {

namespace {

// Cheap necessary condition: point counts at the form's good primes, skipping primes
// where this particular model happens to be singular.
class FormFilter {
 public:
  explicit FormFilter(const NewformRecord& form) {
    for (const auto& [p, a] : form.good_eigenvalues()) checks_.push_back({FiniteField(p), p.norm.get_si() + 1 - a});
  }

  bool passes(const CurveModel& e) const {
    for (const Check& c : checks_) {
      std::array<Residue, 5> r;
      for (std::size_t i = 0; i < 5; ++i) r[i] = c.k.reduce(e.a[i]);
      if (c.k.is_zero(discriminant_reduced(c.k, r))) continue;
      if (count_points_reduced(c.k, r) != c.count) return false;
    }
    return true;
  }

 private:
  struct Check {
    FiniteField k;
    long count;
  };
  std::vector<Check> checks_;
};

std::vector<FieldElem> mod2_reps() { return {FieldElem(0), FieldElem(1), FieldElem(0, 1), FieldElem(1, 1)}; }

std::vector<FieldElem> mod3_reps() {
  std::vector<FieldElem> out;
  for (long x = -1; x <= 1; ++x)
    for (long y = -1; y <= 1; ++y) out.emplace_back(x, y);
  return out;
}

bool fits(const FieldElem& x, long h) { return abs(x.a()) <= h && abs(x.b()) <= h; }

std::vector<FieldElem> box_elements(long h) {
  std::vector<FieldElem> out;
  for (long x = -h; x <= h; ++x)
    for (long y = -h; y <= h; ++y) out.emplace_back(x, y);
  return out;
}

struct Normalized {
  FieldElem a1, a2, a3;
};

std::vector<Normalized> normalized_prefixes(long h1, long h2, long h3) {
  std::vector<Normalized> out;
  for (const FieldElem& a1 : mod2_reps()) {
    if (!fits(a1, h1)) continue;
    for (const FieldElem& a2 : mod3_reps()) {
      if (!fits(a2, h2)) continue;
      for (const FieldElem& a3 : mod2_reps()) {
        if (fits(a3, h3)) out.push_back({a1, a2, a3});
      }
    }
  }
  return out;
}

class Collector {
 public:
  void add(const CurveModel& e) { found_.insert(global_minimal_model(e).a); }
  std::vector<CurveModel> curves() const {
    std::vector<CurveModel> out;
    for (const auto& a : found_) out.push_back(CurveModel{a});
    return out;
  }

 private:
  std::set<std::array<FieldElem, 5>> found_;
};

// Lifting residues modulo a product of distinct primes to small elements of R.
class CrtLattice {
 public:
  explicit CrtLattice(const std::vector<PrimeIdeal>& primes) {
    FieldElem g(1);
    for (const PrimeIdeal& p : primes) {
      fields_.emplace_back(p);
      g = g * p.gen;
    }
    for (std::size_t i = 0; i < primes.size(); ++i) {
      FieldElem h(1);
      for (std::size_t j = 0; j < primes.size(); ++j)
        if (j != i) h = h * primes[j].gen;
      const FiniteField& k = fields_[i];
      const FieldElem u = k.lift(k.inv(k.reduce(h)));
      idempotents_.push_back(h * u);
    }
    // Hermite basis {(c, 0), (s, t)} of the ideal generated by g, in coordinates (a, b).
    const mpz_class v1a = g.a(), v1b = g.b(), v2a = g.b(), v2b = g.a() + g.b();
    mpz_class t, x, y;
    mpz_gcdext(t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), v1b.get_mpz_t(), v2b.get_mpz_t());
    const mpz_class wa = x * v1a + y * v2a;
    const mpz_class det = abs(v1a * v2b - v1b * v2a);
    mpz_class c = det / t, s;
    mpz_fdiv_r(s.get_mpz_t(), wa.get_mpz_t(), c.get_mpz_t());
    c_ = c.get_si();
    s_ = s.get_si();
    t_ = t.get_si();
  }

  std::size_t size() const { return fields_.size(); }
  const FiniteField& field(std::size_t i) const { return fields_[i]; }
  long modulus() const { return c_ * t_; }

  std::vector<FieldElem> lifts(const std::vector<Residue>& residues, long h) const {
    FieldElem x0(0);
    for (std::size_t i = 0; i < fields_.size(); ++i) x0 = x0 + fields_[i].lift(residues[i]) * idempotents_[i];
    mpz_class b0, j;
    mpz_fdiv_r_ui(b0.get_mpz_t(), x0.b().get_mpz_t(), static_cast<unsigned long>(t_));
    j = (x0.b() - b0) / t_;
    mpz_class a0 = x0.a() - j * s_;
    mpz_fdiv_r_ui(a0.get_mpz_t(), a0.get_mpz_t(), static_cast<unsigned long>(c_));
    const long a_start = a0.get_si(), b_start = b0.get_si();
    std::vector<FieldElem> out;
    auto floor_div = [](long n, long d) { return n >= 0 ? n / d : -((-n + d - 1) / d); };
    for (long jj = floor_div(-h - b_start + t_ - 1, t_); b_start + jj * t_ <= h; ++jj) {
      const long b = b_start + jj * t_;
      const long base = a_start + jj * s_;
      for (long ii = floor_div(-h - base + c_ - 1, c_); base + ii * c_ <= h; ++ii) out.emplace_back(base + ii * c_, b);
    }
    return out;
  }

 private:
  std::vector<FiniteField> fields_;
  std::vector<FieldElem> idempotents_;
  long c_ = 1, s_ = 0, t_ = 1;
};

}  // namespace

bool SearchBox::empty() const {
  return std::any_of(bound.begin(), bound.end(), [](long b) { return b < 0; });
}

bool match(const CurveModel& e, const NewformRecord& form) {
  for (const auto& [p, a] : form.good_eigenvalues())
    if (ap(e, p) != a) return false;
  return conductor(e) == form.level;
}

SearchResult naive_search(const SearchBox& box, const NewformRecord& form) {
  SearchResult res;
  if (box.empty()) return res;
  const FormFilter filter(form);
  const auto a4s = box_elements(box.bound[3]);
  const auto a6s = box_elements(box.bound[4]);
  Collector found;
  for (const Normalized& pre : normalized_prefixes(box.bound[0], box.bound[1], box.bound[2])) {
    for (const FieldElem& a4 : a4s) {
      for (const FieldElem& a6 : a6s) {
        ++res.visited;
        const CurveModel e{{pre.a1, pre.a2, pre.a3, a4, a6}};
        if (discriminant(e).is_zero() || !filter.passes(e) || !match(e, form)) continue;
        found.add(e);
      }
    }
  }
  res.curves = found.curves();
  return res;
}

SieveSpec sieve_for_primes(const NewformRecord& form, const std::vector<PrimeIdeal>& primes, long lift_height) {
  SieveSpec spec;
  spec.lift_height = lift_height;
  for (const PrimeIdeal& p : primes) {
    bool found = false;
    for (const auto& e : form.eigenvalues) {
      if (e.prime == p) {
        if (!e.good) throw std::invalid_argument("sieve prime divides the level: " + p.to_string());
        spec.primes.push_back(p);
        spec.counts.push_back(p.norm.get_si() + 1 - e.ap);
        found = true;
      }
    }
    if (!found) throw std::invalid_argument("no eigenvalue at sieve prime " + p.to_string());
  }
  return spec;
}

SieveSpec default_sieve(const NewformRecord& form, long lift_height) {
  std::vector<PrimeIdeal> chosen;
  long modulus = 1;
  for (const auto& [p, a] : form.good_eigenvalues()) {
    (void)a;
    if (p.kind != PrimeKind::split) continue;
    chosen.push_back(p);
    modulus *= p.norm.get_si();
    if (modulus > 2 * lift_height + 1) break;
  }
  return sieve_for_primes(form, chosen, lift_height);
}

SearchResult sieved_search(const SieveSpec& spec, const NewformRecord& form) {
  SearchResult res;
  if (spec.primes.empty() || spec.primes.size() != spec.counts.size())
    throw std::invalid_argument("sieve needs one count per prime");
  const CrtLattice lattice(spec.primes);
  const FormFilter filter(form);
  Collector found;
  const long h = spec.lift_height;
  for (const Normalized& pre : normalized_prefixes(1, 1, 1)) {
    // Residue pairs (a4, a6) with the required point count, prime by prime.
    std::vector<std::vector<std::pair<Residue, Residue>>> options(lattice.size());
    bool feasible = true;
    for (std::size_t i = 0; i < lattice.size() && feasible; ++i) {
      const FiniteField& k = lattice.field(i);
      const Residue r1 = k.reduce(pre.a1), r2 = k.reduce(pre.a2), r3 = k.reduce(pre.a3);
      for (std::int64_t x = 0; x < k.q(); ++x) {
        for (std::int64_t y = 0; y < k.q(); ++y) {
          const std::array<Residue, 5> r{r1, r2, r3, k.element(x), k.element(y)};
          if (k.is_zero(discriminant_reduced(k, r))) continue;
          if (count_points_reduced(k, r) == spec.counts[i]) options[i].emplace_back(r[3], r[4]);
        }
      }
      feasible = !options[i].empty();
    }
    if (!feasible) continue;
    std::vector<std::size_t> idx(lattice.size(), 0);
    for (;;) {
      std::vector<Residue> r4, r6;
      for (std::size_t i = 0; i < idx.size(); ++i) {
        r4.push_back(options[i][idx[i]].first);
        r6.push_back(options[i][idx[i]].second);
      }
      const auto a4s = lattice.lifts(r4, h);
      const auto a6s = lattice.lifts(r6, h);
      for (const FieldElem& a4 : a4s) {
        for (const FieldElem& a6 : a6s) {
          ++res.visited;
          const CurveModel e{{pre.a1, pre.a2, pre.a3, a4, a6}};
          if (discriminant(e).is_zero() || !filter.passes(e) || !match(e, form)) continue;
          found.add(e);
        }
      }
      std::size_t i = 0;
      while (i < idx.size() && ++idx[i] == options[i].size()) idx[i++] = 0;
      if (i == idx.size()) break;
    }
  }
  res.curves = found.curves();
  return res;
}

bool torsion_filter(const NewformRecord& form, long l) {
  for (const auto& [p, a] : form.good_eigenvalues()) {
    if (p.p == 2) continue;
    if ((p.norm.get_si() + 1 - a) % l != 0) return false;
  }
  return true;
}

namespace {

// (b, c) of the Tate normal form y^2 + (1 - c) xy - b y = x^3 - b x^2 with a point of order n.
std::optional<std::pair<FieldQ, FieldQ>> kubert(int n, const FieldQ& t) {
  const FieldQ one(1);
  try {
    switch (n) {
      case 4:
        return std::make_pair(t, FieldQ());
      case 5:
        return std::make_pair(t, t);
      case 6:
        return std::make_pair(t + t * t, t);
      case 7:
        return std::make_pair(t * t * t - t * t, t * t - t);
      case 8: {
        const FieldQ b = (FieldQ(2) * t - one) * (t - one);
        return std::make_pair(b, b / t);
      }
      case 9: {
        const FieldQ c = t * t * (t - one);
        return std::make_pair(c * (t * t - t + one), c);
      }
      case 10: {
        const FieldQ d = t * t / (t - (t - one) * (t - one));
        const FieldQ c = t * (d - one);
        return std::make_pair(c * d, c);
      }
      case 12: {
        const FieldQ m = (FieldQ(3) * t - FieldQ(3) * t * t - one) / (t - one);
        const FieldQ f = m / (one - t);
        const FieldQ d = m + t;
        const FieldQ c = f * (d - one);
        return std::make_pair(c * d, c);
      }
      default:
        throw std::invalid_argument("no Tate normal form family for torsion order " + std::to_string(n));
    }
  } catch (const std::domain_error&) {
    return std::nullopt;  // division by zero at a degenerate parameter
  }
}

std::vector<AInvariantsQ> family_models(int n, const FamilyParams& params) {
  std::vector<AInvariantsQ> out;
  const auto nums = box_elements(params.numerator_height);
  if (n == 2 || n == 3) {
    for (const FieldElem& u : nums) {
      for (const FieldElem& v : nums) {
        if (v.is_zero()) continue;
        AInvariantsQ a;
        if (n == 2) {
          a[1] = FieldQ(u);
          a[3] = FieldQ(v);
        } else {
          a[0] = FieldQ(u);
          a[2] = FieldQ(v);
        }
        out.push_back(a);
      }
    }
    return out;
  }
  std::set<std::pair<mpq_class, mpq_class>> seen;
  for (const FieldElem& num : nums) {
    for (const FieldElem& den : box_elements(params.denominator_height)) {
      if (den.is_zero()) continue;
      const FieldQ t = FieldQ(num) / FieldQ(den);
      if (!seen.insert({t.a(), t.b()}).second) continue;
      const auto bc = kubert(n, t);
      if (!bc) continue;
      const auto& [b, c] = *bc;
      out.push_back(AInvariantsQ{FieldQ(1) - c, -b, -b, FieldQ(), FieldQ()});
    }
  }
  return out;
}

template <class Accept>
SearchResult run_family(int n, const FamilyParams& params, Accept accept) {
  if (n < 2 || n > 12 || n == 11) throw std::invalid_argument("unsupported torsion order " + std::to_string(n));
  SearchResult res;
  Collector found;
  for (const AInvariantsQ& a : family_models(n, params)) {
    ++res.visited;
    if (invariants(a).disc.is_zero()) continue;
    const CurveModel e = integral_model(a);
    // Scaling by an integer keeps (0, 0) in place.
    if (point_order(e, PointF::affine(FieldQ(), FieldQ()), n) != n) continue;
    if (accept(e)) found.add(e);
  }
  res.curves = found.curves();
  return res;
}

}  // namespace

SearchResult family_curves(int n, const FamilyParams& params) {
  return run_family(n, params, [](const CurveModel&) { return true; });
}

SearchResult family_search(int n, const FamilyParams& params, const NewformRecord& form) {
  const FormFilter filter(form);
  return run_family(n, params, [&](const CurveModel& e) { return filter.passes(e) && match(e, form); });
}

int twist_character(const FieldElem& d, const PrimeIdeal& p) {
  const FiniteField k(p);
  if (k.characteristic() == 2) throw std::invalid_argument("twist character at a prime above 2");
  return k.chi(k.reduce(d));
}

std::vector<FieldElem> twist_d1_candidates(const IdealRep& level, long bound) {
  mpz_class c = 1;
  for (const PrimePower& pp : level.factorization())
    if (pp.exponent == 1) c *= pp.prime.norm;
  // |N(d1)|^2 * C <= B
  const long limit = static_cast<long>(std::floor(std::sqrt(static_cast<double>(bound) / c.get_d()))) + 1;
  std::vector<PrimeIdeal> primes;
  for (const PrimeIdeal& p : primes_up_to(limit))
    if (level.coprime_to(p)) primes.push_back(p);
  auto ok = [&](const mpz_class& norm) { return norm * norm * c <= bound; };
  std::vector<std::pair<mpz_class, FieldElem>> out;
  std::function<void(std::size_t, const FieldElem&, const mpz_class&)> walk = [&](std::size_t i, const FieldElem& d,
                                                                                   const mpz_class& norm) {
    if (i == primes.size()) {
      out.emplace_back(norm, d);
      return;
    }
    walk(i + 1, d, norm);
    const mpz_class n2 = norm * primes[i].norm;
    if (ok(n2)) walk(i + 1, d * primes[i].gen, n2);
  };
  walk(0, FieldElem(1), mpz_class(1));
  std::sort(out.begin(), out.end());
  std::vector<FieldElem> ds;
  for (const auto& [n, d] : out) {
    (void)n;
    ds.push_back(d);
  }
  return ds;
}

std::vector<TwistOutcome> twist_closure(const TwistSpec& spec) {
  const CurveModel base = global_minimal_model(spec.base);
  const IdealRep level = conductor(base);
  std::vector<FieldElem> d0s{FieldElem(1)};
  for (const PrimePower& pp : level.factorization()) {
    const std::size_t m = d0s.size();
    for (std::size_t i = 0; i < m; ++i) d0s.push_back(d0s[i] * pp.prime.gen);
  }
  const auto d1s = twist_d1_candidates(level, spec.bound);
  std::set<std::array<FieldElem, 5>> seen{base.a};
  std::vector<TwistOutcome> out;
  for (const FieldElem& d1 : d1s) {
    for (const FieldElem& d0 : d0s) {
      for (int delta = 0; delta <= 1; ++delta) {
        for (int sign : {1, -1}) {
          const FieldElem d = FieldElem(sign) * phi_power(delta) * d0 * d1;
          if (d == FieldElem(1)) continue;
          const CurveModel t = quadratic_twist(base, d);
          if (!seen.insert(t.a).second) continue;
          const IdealRep n = conductor(t);
          if (n.norm() > spec.bound) continue;
          out.push_back({d, make_record(t)});
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const TwistOutcome& x, const TwistOutcome& y) {
    if (x.record.conductor_norm != y.record.conductor_norm) return x.record.conductor_norm < y.record.conductor_norm;
    return x.record.model.a < y.record.model.a;
  });
  return out;
}

}  // namespace hilbert5
