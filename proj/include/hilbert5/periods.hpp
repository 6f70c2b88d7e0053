// Recovering a curve from twisted central L-values: quadratic characters and Gauss sums,
// character lists, mixed-period guesses, j-invariant embeddings and c4/c6 recognition.
#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hilbert5/curve.hpp"
#include "hilbert5/hecke.hpp"
#include "hilbert5/real.hpp"
#include "hilbert5/residue.hpp"

namespace hilbert5 {

class RatioNotRational : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SeriesDivergence : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The quadratic residue symbol modulo an odd prime.
struct QuadraticCharacter {
  PrimeIdeal conductor;
  RingDescriptor ring;             // the residue field
  std::vector<signed char> table;  // indexed by residue rank; 0 at zero
  int phi_value = 0;               // chi(phi)
  int one_minus_phi_value = 0;     // chi(1 - phi)
  int minus_one_value = 0;         // chi(-1)

  int operator()(const FieldElem& x) const;
  /// Value on the canonical totally positive generator.
  int on_ideal(const IdealRep& a) const { return (*this)(a.gen()); }
};

QuadraticCharacter quadratic_character(const PrimeIdeal& p);

/// sum over alpha mod c of chi(alpha) exp(2 pi i Tr(alpha / (m sqrt 5))), m the totally
/// positive generator of the conductor.
Complex gauss_sum(const QuadraticCharacter& chi);

/// Index of the list for signs (s, s') = (chi(1 - phi), chi(phi)): "--", "-+", "+-", "++".
int sign_index(int s, int sp);
int sign_s(int index);
int sign_sp(int index);
std::string sign_label(int index);

/// The four lists S^{s s'}: odd primes p coprime to the level with N(p) < bound and
/// chi(-N) = eps, N the totally positive generator of the level; each by norm.
std::array<std::vector<QuadraticCharacter>, 4> character_lists(const IdealRep& level, int eps, long bound);

struct LValueRecord {
  int s = 1, sp = 1;
  FieldElem conductor_gen;
  mpz_class conductor_norm;
  Complex value;
};

/// Lines `<s><s'> <cond_gen> <cond_norm> <re> <im>`; '#' starts a comment. A line
/// `scaled` declares the values already multiplied by i^k sqrt(5 N(p)), where k counts
/// the minus signs among s, s'; otherwise they are raw central values L(E, chi, 1).
struct LValueSet {
  bool scaled = false;
  std::vector<LValueRecord> records;
};
LValueSet read_lvalues(std::istream& in);
void write_lvalues(std::ostream& out, const LValueSet& set);

struct RecognitionOptions {
  long denominator_cap = 10000;
  double tolerance = 1e-6;
};

/// Best rational approximation by continued fractions; throws RatioNotRational.
mpq_class recognize_rational(const Real& x, const RecognitionOptions& opt = {});

struct MixedPeriods {
  std::array<Complex, 4> omega;                   // by sign_index
  std::array<std::vector<Complex>, 4> scaled;     // the scaled L-values used
  std::array<std::vector<mpq_class>, 4> ratios;   // L_0 / L_k, k = 0, 1, ...
};

MixedPeriods guess_mixed_periods(const LValueSet& values, const RecognitionOptions& opt = {});

/// Consistent sets Omega^{--} Omega^{++} = Omega^{-+} Omega^{+-} obtained from the guesses
/// by rescaling three of them by small powers of 2 and deriving the fourth. Sets giving the
/// same pair of period ratios are merged; smaller total corrections come first.
struct PeriodCandidate {
  std::array<Complex, 4> omega;
  std::array<double, 4> factors;  // omega[i] = factors[i] * guess[i]
  int derived = 0;                // index computed from the other three
};
std::vector<PeriodCandidate> consistent_period_sets(const MixedPeriods& guess);

/// j(tau) via Eisenstein series after reducing tau to the fundamental domain. terms = 0
/// picks enough terms for the working precision. Throws SeriesDivergence if Im tau <= 0.
Complex j_of_tau(const Complex& tau, int terms = 0);

/// (sigma_1 j, sigma_2 j) from mixed periods, using tau_1 when the corresponding embedding
/// of the discriminant is positive and tau_2 = (1 + tau_1) / 2 otherwise.
std::pair<Real, Real> j_embeddings(const std::array<Complex, 4>& omega, int sign1, int sign2);

/// True mixed periods of a curve from the AGM (an oracle for tests).
std::array<Complex, 4> mixed_periods_of(const CurveModel& e);

/// c4 from the embeddings of j and the guessed discriminant, rounded to R and shifted by
/// offsets up to radius; returns the first (c4, c6) giving a curve that matches the form.
struct Recognition {
  CurveModel curve;
  FieldElem c4, c6;
};
using CurveTest = std::function<bool(const CurveModel&)>;
std::optional<Recognition> recognize_curve(const Real& j1, const Real& j2, const FieldElem& delta, long radius,
                                           const CurveTest& accept);
std::optional<Recognition> recognize_curve(const Real& j1, const Real& j2, const FieldElem& delta, long radius,
                                           const NewformRecord& form);

/// u * prod p_i^{k_i}, starting with the level itself, then by increasing max exponent,
/// with u = +-phi^j, |j| <= unit_range.
class DeltaGuesses {
 public:
  explicit DeltaGuesses(const IdealRep& level, int max_exponent = 8, int unit_range = 4);
  std::optional<FieldElem> next();

 private:
  std::vector<FieldElem> bases_;  // one per exponent vector, in enumeration order
  std::vector<FieldElem> units_;
  std::size_t base_ = 0, unit_ = 0;
};

struct RecoveryOptions {
  long radius = 1;
  int max_exponent = 8;
  int unit_range = 4;
  RecognitionOptions recognition;
};

struct RecoveryResult {
  MixedPeriods guesses;
  std::optional<Recognition> found;
  FieldElem delta;
  PeriodCandidate periods;
  std::pair<Real, Real> j;
  long deltas_tried = 0;
};

/// The whole pipeline: guesses, consistent period sets, discriminant guesses, recognition.
RecoveryResult recover_curve(const LValueSet& values, const NewformRecord& form, const RecoveryOptions& opt = {});

}  // namespace hilbert5
