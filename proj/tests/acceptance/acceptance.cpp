// Acceptance suite: one PASS/FAIL line per criterion. Criterion 11 (bound-200 regeneration)
// only runs with --long.
#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hilbert5/cm.hpp"
#include "hilbert5/dataset.hpp"
#include "hilbert5/hecke.hpp"
#include "hilbert5/isogeny.hpp"
#include "hilbert5/p1.hpp"
#include "hilbert5/periods.hpp"
#include "hilbert5/residue.hpp"
#include "hilbert5/search.hpp"

using namespace hilbert5;

namespace {

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
  void note(const std::string& what) { notes.push_back(what); }
};

struct Criterion {
  int number;
  std::string title;
  double limit_seconds;
  std::function<Outcome()> run;
};

CurveModel curve(const char* text) { return CurveModel::parse(text); }

std::vector<PrimeIdeal> good_primes(const IdealRep& level, long bound) {
  std::vector<PrimeIdeal> out;
  for (const PrimeIdeal& p : primes_up_to(bound))
    if (level.coprime_to(p)) out.push_back(p);
  return out;
}

// ---------------------------------------------------------------------------------------------
// 1. P^1 sizes against the closed formula and a direct count over R/n.

// Representatives a + b phi (0 <= a < A, 0 <= b < B) of R/n from a triangular basis
// {(A, 0), (c, B)} of the lattice n inside Z^2 = Z + Z phi.
struct QuotientRing {
  long A = 1, B = 1, c = 0;

  explicit QuotientRing(const FieldElem& g) {
    // n is spanned by g = (a, b) and g phi = (b, a + b).
    const long a = g.a().get_si(), b = g.b().get_si();
    const long x1 = a, y1 = b, x2 = b, y2 = a + b;
    // Extended gcd on the second coordinates.
    long r0 = y1, r1 = y2, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
      const long q = r0 / r1;
      std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
      std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
      std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
    }
    if (r0 < 0) {
      r0 = -r0;
      s0 = -s0;
      t0 = -t0;
    }
    B = r0;
    const long norm = std::labs(g.norm().get_si());
    A = norm / B;
    c = ((s0 * x1 + t0 * x2) % A + A) % A;
  }

  long size() const { return A * B; }
  long index(const FieldElem& z) const {
    const long a = z.a().get_si(), b = z.b().get_si();
    const long q = (b >= 0) ? b / B : -((-b + B - 1) / B);
    const long bb = b - q * B;
    long aa = (a - q * c) % A;
    if (aa < 0) aa += A;
    return aa * B + bb;
  }
  FieldElem element(long i) const { return FieldElem(i / B, i % B); }
};

std::int64_t oracle_p1_count(const IdealRep& n) {
  const QuotientRing q(n.gen());
  const long size = q.size();
  // Bit k set when the element lies in the k-th prime above n.
  std::vector<unsigned> in_prime(static_cast<std::size_t>(size), 0);
  const auto& fac = n.factorization();
  for (long i = 0; i < size; ++i)
    for (std::size_t k = 0; k < fac.size(); ++k)
      if (q.element(i).divisible_by(fac[k].prime.gen)) in_prime[static_cast<std::size_t>(i)] |= 1u << k;
  std::vector<long> units;
  for (long i = 0; i < size; ++i)
    if (in_prime[static_cast<std::size_t>(i)] == 0) units.push_back(i);
  // Orbits of coprime pairs under scaling by units, counted explicitly.
  std::vector<char> seen(static_cast<std::size_t>(size * size), 0);
  std::int64_t orbits = 0;
  for (long x = 0; x < size; ++x)
    for (long y = 0; y < size; ++y) {
      if (in_prime[static_cast<std::size_t>(x)] & in_prime[static_cast<std::size_t>(y)]) continue;
      if (seen[static_cast<std::size_t>(x * size + y)]) continue;
      ++orbits;
      for (long u : units) {
        const long ux = q.index(q.element(u) * q.element(x));
        const long uy = q.index(q.element(u) * q.element(y));
        seen[static_cast<std::size_t>(ux * size + uy)] = 1;
      }
    }
  return orbits;
}

Outcome criterion1() {
  Outcome out;
  long ideals = 0;
  for (const IdealRep& n : ideals_up_to(200)) {
    ++ideals;
    const P1List pl(n);
    const std::int64_t enumerated = static_cast<std::int64_t>(pl.enumerate().size());
    mpq_class formula = n.norm();
    for (const PrimePower& pp : n.factorization()) formula *= mpq_class(pp.prime.norm + 1, pp.prime.norm);
    const std::int64_t oracle = oracle_p1_count(n);
    if (mpq_class(enumerated) != formula || enumerated != oracle)
      out.require(false, n.to_string() + ": enumerate " + std::to_string(enumerated) + ", formula " + formula.get_str() +
                             ", oracle " + std::to_string(oracle));
  }
  out.summary = std::to_string(ideals) + " ideals of norm <= 200; enumeration = formula = orbit count";
  return out;
}

// ---------------------------------------------------------------------------------------------
// 2. Residue ring laws.

Outcome criterion2() {
  Outcome out;
  struct Case {
    RingCase tag;
    RingDescriptor ring;
  };
  const std::vector<Case> cases = {{RingCase::split, build_ring(11, 2)},
                                   {RingCase::inert, build_ring(3, 2)},
                                   {RingCase::ramified_even, build_ring(5, 4)},
                                   {RingCase::ramified_odd, build_ring(5, 3)}};
  std::mt19937_64 rng(1729);
  long checks = 0;
  for (const Case& c : cases) {
    const RingDescriptor& r = c.ring;
    out.require(r.tag == c.tag, "ring case " + to_string(c.tag));
    out.require(r.mul(r.phi, r.phi) == r.add(r.phi, r.one()), "phi^2 = phi + 1 in " + to_string(c.tag));
    auto rand_elem = [&] {
      return Residue{static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(r.mod_main)),
                     static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(r.mod_aux))};
    };
    auto rand_field = [&] {
      return FieldElem(static_cast<long>(rng() % 200001) - 100000, static_cast<long>(rng() % 200001) - 100000);
    };
    long failures = 0;
    for (int i = 0; i < 10000; ++i) {
      const Residue x = rand_elem(), y = rand_elem(), z = rand_elem();
      bool ok = r.mul(x, r.mul(y, z)) == r.mul(r.mul(x, y), z);
      ok = ok && r.add(x, r.add(y, z)) == r.add(r.add(x, y), z);
      ok = ok && r.mul(x, r.add(y, z)) == r.add(r.mul(x, y), r.mul(x, z));
      ok = ok && r.mul(x, y) == r.mul(y, x) && r.add(x, y) == r.add(y, x);
      ok = ok && r.add(x, r.neg(x)) == r.zero() && r.mul(x, r.one()) == x;
      if (r.is_unit(x)) ok = ok && r.mul(x, r.inv(x)) == r.one();
      const FieldElem a = rand_field(), b = rand_field();
      ok = ok && r.reduce(a + b) == r.add(r.reduce(a), r.reduce(b));
      ok = ok && r.reduce(a * b) == r.mul(r.reduce(a), r.reduce(b));
      if (!ok) ++failures;
      ++checks;
    }
    out.require(failures == 0, std::to_string(failures) + " law violations in " + to_string(c.tag));
  }
  out.summary = std::to_string(checks) + " randomized law and homomorphism checks over four ring cases";
  return out;
}

// ---------------------------------------------------------------------------------------------
// 3. Hecke eigenvalues at norm 31 against point counts.

long mismatches(const CurveModel& e, const NewformRecord& f, long bound) {
  const IdealRep n = conductor(e);
  long bad = 0;
  for (const PrimeIdeal& p : primes_up_to(bound)) {
    if (!n.coprime_to(p) || !f.level.coprime_to(p)) continue;
    const auto a = f.ap(p);
    if (!a || *a != ap_good(e, p)) ++bad;
  }
  return bad;
}

Outcome criterion3() {
  Outcome out;
  const IdealRep level(FieldElem(-3, 5));  // 5 phi - 3
  const auto forms = rational_newforms(level, 100);
  out.require(forms.size() == 1, "expected one rational newform, found " + std::to_string(forms.size()));
  const CurveModel listed = curve("[1,phi+1,phi,phi,0]");
  if (!forms.empty()) {
    const long bad = mismatches(listed, forms.front(), 100);
    out.require(bad == 0 && conductor(listed) == level,
                "[1,phi+1,phi,phi,0] has conductor " + conductor(listed).to_string() + " and disagrees with the form at " +
                    std::to_string(bad) + " good primes of norm <= 100");
    const CurveModel conj = curve("[1,-phi-1,phi,0,0]");
    const long bad_conj = mismatches(conj, forms.front(), 100);
    out.note("the form matches the conjugate model [1,-phi-1,phi,0,0] (conductor " + conductor(conj).to_string() +
             ") with " + std::to_string(bad_conj) + " mismatches");
    const IdealRep conj_level(level.gen().conjugate());
    const auto conj_forms = rational_newforms(conj_level, 100);
    if (conj_forms.size() == 1)
      out.note("[1,phi+1,phi,phi,0] matches the form at the conjugate level " + conj_level.to_string() + " with " +
               std::to_string(mismatches(listed, conj_forms.front(), 100)) + " mismatches");
  }
  out.summary = "level " + level.to_string() + ", " + std::to_string(forms.size()) + " rational newform(s)";
  return out;
}

// ---------------------------------------------------------------------------------------------
// 4. Eigenvalues at level (-38 phi + 26).

std::optional<NewformRecord> g_form_1756;

Outcome criterion4() {
  Outcome out;
  const IdealRep level(FieldElem(26, -38));
  const auto forms = rational_newforms(level, 100);
  const std::pair<FieldElem, long> wanted[] = {
      {FieldElem(2), -1}, {FieldElem(3), -1}, {FieldElem(1, -3), -1}, {FieldElem(2, -3), -6}};
  for (const NewformRecord& f : forms) {
    bool all = true;
    for (const auto& [gen, value] : wanted) {
      const auto a = f.ap(prime_from_generator(gen));
      all = all && a && *a == value;
    }
    if (all) {
      g_form_1756 = f;
      break;
    }
  }
  out.require(g_form_1756.has_value(), "no newform with a_(2) = -1, a_(3) = -1, a_(-3phi+1) = -1, a_(-3phi+2) = -6");
  out.summary = "level " + level.to_string() + " has " + std::to_string(forms.size()) + " rational newforms; " +
                (g_form_1756 ? "one reproduces the four eigenvalues" : "none reproduces the four eigenvalues");
  return out;
}

// ---------------------------------------------------------------------------------------------
// 5. Twists of the norm-31 curve.

Outcome criterion5() {
  Outcome out;
  const CurveModel base = curve("[1,-phi-1,phi,0,0]");
  const IdealRep level = conductor(base);
  const auto tw = twist_closure({base, 1831});
  std::set<long> norms;
  for (const TwistOutcome& o : tw) norms.insert(o.record.conductor_norm.get_si());
  out.require(norms == std::set<long>{775, 961}, "conductor norms differ from {775, 961}");

  const auto d1 = twist_d1_candidates(level, 1831);
  std::string listed;
  for (const FieldElem& d : d1) listed += (listed.empty() ? "" : ", ") + d.to_string();
  const std::vector<FieldElem> expected{FieldElem(1), FieldElem(2), FieldElem::phi(), FieldElem(0, 2)};
  out.require(d1 == expected, "d1 candidates are {" + listed + "}, expected {1, 2, phi, 2*phi}");

  long checked = 0, wrong = 0;
  for (const TwistOutcome& o : tw)
    for (const PrimeIdeal& p : good_primes(level, 200)) {
      if (p.p == 2 || !o.record.conductor.coprime_to(p)) continue;
      if (twist_character(o.d, p) != 1) continue;
      ++checked;
      if (ap_good(o.record.model, p) != ap_good(base, p)) ++wrong;
    }
  out.require(checked > 0 && wrong == 0, "a_p of a twist differs at a chi-trivial prime");
  out.note("norm-31 curve taken as [1,-phi-1,phi,0,0], the model whose conductor is (5phi-3)");
  out.summary = "twists at B = 1831 have conductor norms {" +
                std::accumulate(norms.begin(), norms.end(), std::string(),
                                [](std::string s, long n) { return s + (s.empty() ? "" : ", ") + std::to_string(n); }) +
                "}; a_p invariant at " + std::to_string(checked) + " chi-trivial primes";
  return out;
}

// ---------------------------------------------------------------------------------------------
// 6. Period pipeline replay.

bool close_rel(double x, double expected, double tol) { return std::fabs(x - expected) <= tol * std::fabs(expected); }

Outcome criterion6() {
  Outcome out;
  std::ifstream lin(HILBERT5_TEST_DATA "/lvalues_1756.txt");
  const LValueSet values = read_lvalues(lin);
  NewformRecord form;
  if (g_form_1756) {
    form = *g_form_1756;
  } else {
    std::ifstream ein(HILBERT5_TEST_DATA "/eigenvalues_1756.txt");
    form = read_eigenvalues(ein);
    out.note("criterion 4 found no form; using the stored eigenvalue table");
  }
  const MixedPeriods mp = guess_mixed_periods(values);
  const std::vector<std::vector<mpq_class>> ratios = {
      {1, 9, mpq_class(9, 5)}, {1, mpq_class(5, 9), 5}, {1, 5, 1}, {1, mpq_class(1, 5), mpq_class(1, 5)}};
  for (std::size_t i = 0; i < 4; ++i) out.require(mp.ratios[i] == ratios[i], "ratio list " + sign_label(static_cast<int>(i)));
  out.require(close_rel(mp.omega[0].re.to_double(), -3.73093775402674, 1e-6) && std::fabs(mp.omega[0].im.to_double()) < 1e-9,
              "Omega^{--} guess");
  out.require(close_rel(mp.omega[1].im.to_double(), 3.65297235472034, 1e-6) && std::fabs(mp.omega[1].re.to_double()) < 1e-9,
              "Omega^{-+} guess");
  out.require(close_rel(mp.omega[2].im.to_double(), 8.29611313850684, 1e-6) && std::fabs(mp.omega[2].re.to_double()) < 1e-9,
              "Omega^{+-} guess");
  out.require(close_rel(mp.omega[3].re.to_double(), 32.4909970742969, 1e-6) && std::fabs(mp.omega[3].im.to_double()) < 1e-9,
              "Omega^{++} guess");
  const RecoveryResult r = recover_curve(values, form);
  out.require(r.found.has_value(), "no curve recognized");
  if (r.found) {
    out.require(r.found->c4 == FieldElem::parse("48019*phi+30154"), "c4 = " + r.found->c4.to_string());
    out.require(r.found->c6 == FieldElem::parse("-15835084*phi-9796985"), "c6 = " + r.found->c6.to_string());
    out.require(r.found->curve == curve("[phi,phi-1,phi,-1001*phi-628,17899*phi+11079]"),
                "final curve " + r.found->curve.to_string());
    out.require(conductor(r.found->curve).norm() == 1756, "conductor norm");
    out.summary = "recovered " + r.found->curve.to_string() + " after " + std::to_string(r.deltas_tried) +
                  " discriminant guesses";
  } else {
    out.summary = "no curve";
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// 7. Gauss sums.

Outcome criterion7() {
  Outcome out;
  long count = 0;
  double worst = 0;
  for (const PrimeIdeal& p : primes_up_to(500)) {
    if (p.p == 2) continue;
    const QuadraticCharacter chi = quadratic_character(p);
    const Complex tau = gauss_sum(chi);
    const double n = p.norm.get_d();
    const double abs2 = tau.norm().to_double();
    worst = std::max(worst, std::fabs(abs2 - n));
    out.require(std::fabs(abs2 - n) <= 1e-9 * std::max(1.0, n), "|tau|^2 at " + p.to_string());
    const double re = std::fabs(tau.re.to_double()), im = std::fabs(tau.im.to_double());
    if (chi.minus_one_value == 1) out.require(im <= 1e-9, "tau real at " + p.to_string());
    else out.require(re <= 1e-9, "tau imaginary at " + p.to_string());
    ++count;
  }
  std::ostringstream s;
  s << count << " odd prime conductors of norm <= 500; max | |tau|^2 - N | = " << worst;
  out.summary = s.str();
  return out;
}

// ---------------------------------------------------------------------------------------------
// 8. Torsion table rows and the order-7 family.

Outcome criterion8() {
  Outcome out;
  const std::pair<const char*, const char*> rows[] = {
      {"[0,-1,1,-8,-7]", "1"},
      {"[phi,-1,0,-phi-1,phi-3]", "Z/2Z"},
      {"[1,0,1,-1,-2]", "Z/3Z"},
      {"[phi+1,phi-1,phi,0,0]", "Z/4Z"},
      {"[0,phi+1,0,phi,0]", "Z/2Z x Z/2Z"},
      {"[1,1,1,22,-9]", "Z/5Z"},
      {"[1,phi,1,phi-1,0]", "Z/6Z"},
      {"[0,phi-1,phi+1,0,-phi]", "Z/7Z"},
      {"[1,phi+1,phi,phi,0]", "Z/8Z"},
      {"[phi+1,0,0,-4,-3*phi-2]", "Z/2Z x Z/4Z"},
      {"[phi,-phi+1,1,-1,0]", "Z/9Z"},
      {"[phi+1,phi,phi,0,0]", "Z/10Z"},
      {"[phi,phi+1,0,2*phi-3,-phi+2]", "Z/12Z"},
      {"[0,1,0,-1,0]", "Z/2Z x Z/6Z"},
      {"[1,1,1,-3,1]", "Z/15Z"},
      {"[1,1,1,-5,2]", "Z/2Z x Z/8Z"},
  };
  int ok = 0;
  for (const auto& [model, torsion] : rows) {
    const TorsionStructure t = torsion_subgroup(curve(model));
    const bool same = t == TorsionStructure::parse(torsion);
    out.require(same, std::string(model) + " has torsion " + t.to_string() + ", listed " + torsion);
    ok += same;
  }
  const CurveModel e145 = curve("[0,0,phi,27*phi-43,-80*phi+128]");
  std::optional<NewformRecord> form;
  for (const NewformRecord& f : rational_newforms(IdealRep(FieldElem(11, 3)), 100))
    if (torsion_filter(f, 7)) form = f;
  out.require(form.has_value(), "no newform at (3phi+11) passes the 7-torsion filter");
  bool found = false;
  if (form) {
    const SearchResult r = family_search(7, FamilyParams{}, *form);
    found = std::find(r.curves.begin(), r.curves.end(), e145) != r.curves.end();
    out.require(found, "family_search(7) at norm 145 did not return " + e145.to_string());
  }
  out.summary = std::to_string(ok) + "/16 torsion rows; family_search(7) at norm 145 " +
                (found ? "returns " + e145.to_string() : std::string("misses the curve"));
  return out;
}

// ---------------------------------------------------------------------------------------------
// 9. Isogeny properties on dataset curves.

Outcome criterion9() {
  Outcome out;
  const Dataset ds = read_dataset_file(HILBERT5_DATA_DIR "/curves_200.txt");
  const auto groups = ds.classes();
  std::vector<CurveModel> sample;
  for (std::size_t g = 0; g < groups.size() && sample.size() < 10; g += groups.size() / 10)
    sample.push_back(ds.records[groups[g].front()].model);
  long members = 0, duals = 0;
  for (const CurveModel& e : sample) {
    const IsogenyClass cls = isogeny_closure(e);
    const IdealRep n = conductor(e);
    const auto bad = bad_primes(e);
    for (const CurveModel& m : cls.curves) {
      ++members;
      out.require(conductor(m) == n, m.to_string() + " conductor");
      for (const PrimeIdeal& p : good_primes(n, 50))
        if (ap_good(m, p) != ap_good(e, p)) out.require(false, m.to_string() + " a_p at " + p.to_string());
    }
    for (long l : {2L, 3L, 5L, 7L})
      for (const PolyF& k : kernel_polynomials(e, l)) {
        const CurveModel img = velu(e, k);
        bool back = false;
        for (const PolyF& kd : kernel_polynomials(img, l)) back = back || j_invariant(velu(img, kd)) == j_invariant(e);
        out.require(back, "no dual isogeny returns to j(" + e.to_string() + ") at degree " + std::to_string(l));
        ++duals;
      }
  }
  out.require(sample.size() == 10, "dataset has fewer than 10 classes");
  const IsogenyClass cls99 = isogeny_closure(curve("[phi,-phi+1,0,-4,3*phi-5]"));
  out.require(cls99.size() >= 2, "norm-99 class has size " + std::to_string(cls99.size()));
  out.summary = std::to_string(sample.size()) + " dataset curves, " + std::to_string(members) + " class members, " +
                std::to_string(duals) + " isogenies with duals; norm-99 class size " + std::to_string(cls99.size());
  return out;
}

// ---------------------------------------------------------------------------------------------
// 10. CM catalog.

Outcome criterion10() {
  Outcome out;
  const auto& cat = cm_j_invariants();
  out.require(cat.size() == 31, "catalog has " + std::to_string(cat.size()) + " entries");
  out.require(discriminants_with_class_number(1, 2000) == linear_cm_discriminants(), "class number one list");
  out.require(linear_cm_discriminants().size() == 13, "13 linear discriminants");
  std::vector<long> split;
  for (long D : discriminants_with_class_number(2, 2000)) {
    const mpz_class disc = class_polynomial_auto(D).discriminant();
    if (disc % 5 == 0 && exact_isqrt(disc / 5)) split.push_back(D);
  }
  out.require(split == quadratic_cm_discriminants_over_f() && split.size() == 9, "quadratic-over-F list");
  long roots = 0;
  for (const CmEntry& e : cat) {
    const ClassPolynomial H = class_polynomial_auto(e.D);
    FieldElem value;
    for (int i = H.degree(); i >= 0; --i) value = value * e.j + FieldElem(H.coeffs[static_cast<std::size_t>(i)]);
    out.require(value.is_zero(), "j = " + e.j.to_string() + " is not a root of H_" + std::to_string(e.D));
    roots += value.is_zero();
  }
  std::set<FieldElem> distinct;
  for (const CmEntry& e : cat) distinct.insert(e.j);
  out.require(distinct.size() == cat.size(), "repeated j-invariant");
  out.summary = std::to_string(cat.size()) + " j-invariants (13 linear + 9 quadratic H_D), " + std::to_string(roots) +
                " verified roots";
  return out;
}

// ---------------------------------------------------------------------------------------------
// 11. Bound-200 regeneration.

Outcome criterion11() {
  Outcome out;
  GenerateReport report;
  const Dataset ds = generate_dataset(200, {}, &report);
  const Tables t = generate_tables(ds);
  out.require(report.unmatched.empty(), std::to_string(report.unmatched.size()) + " newforms without a curve");
  out.require(t.grand_total.isog == 64, "isogeny classes: " + std::to_string(t.grand_total.isog));
  out.require(t.grand_total.isom == 263, "curves: " + std::to_string(t.grand_total.isom));
  const std::map<long, long> expected{{1, 2}, {2, 21}, {3, 3}, {4, 20}, {6, 8}, {8, 9}, {10, 1}};
  out.require(!t.size_histogram.empty() && t.size_histogram.front().by_size == expected, "bound-199 size histogram");
  const VerifyReport v = verify(ds);
  out.require(v.clean(), std::to_string(v.violations.size()) + " verification violations");
  out.note("rank columns not checked: no external rank data supplied");
  out.summary = std::to_string(t.grand_total.isog) + " classes, " + std::to_string(t.grand_total.isom) +
                " curves; class sizes at bound 199 match";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  bool run_long = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--long") == 0) run_long = true;

  std::vector<Criterion> criteria = {
      {1, "P1 structure", 5, criterion1},
      {2, "residue ring laws", 5, criterion2},
      {3, "Hecke eigenvalues at norm 31", 60, criterion3},
      {4, "eigenvalues at level (-38phi+26)", 600, criterion4},
      {5, "twist closure of the norm-31 curve", 60, criterion5},
      {6, "period pipeline replay", 300, criterion6},
      {7, "Gauss sums", 30, criterion7},
      {8, "torsion rows and families", 300, criterion8},
      {9, "isogeny properties", 120, criterion9},
      {10, "CM catalog", 120, criterion10},
  };
  if (run_long) criteria.push_back({11, "bound-200 regeneration", 6 * 3600, criterion11});

  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_seconds) o.require(false, "time limit of " + std::to_string(c.limit_seconds) + " s exceeded");
    std::ostringstream time;
    time.precision(2);
    time << std::fixed << secs;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.number << " (" << c.title << "): " << o.summary
              << " [" << time.str() << " s]\n";
    for (const std::string& n : o.notes) std::cout << "      " << n << "\n";
    std::cout.flush();
    failed += o.pass ? 0 : 1;
  }
  if (!run_long) std::cout << "SKIP  criterion 11 (bound-200 regeneration): run with --long\n";
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
