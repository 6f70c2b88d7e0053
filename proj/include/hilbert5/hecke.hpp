// Hecke operators on C[S* \ P^1(R/n)] and extraction of rational newforms.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hilbert5/ideal.hpp"
#include "hilbert5/linalg.hpp"
#include "hilbert5/p1.hpp"
#include "hilbert5/quaternion.hpp"

namespace hilbert5 {

class HeckeSpace {
 public:
  explicit HeckeSpace(const IdealRep& level);

  const IdealRep& level() const { return level_; }
  const P1List& p1() const { return p1_; }
  std::size_t dimension() const { return reps_.size(); }
  int orbit_of(std::int64_t point) const { return orbit_[point]; }
  const std::vector<std::int64_t>& orbit_representatives() const { return reps_; }
  const std::vector<std::int64_t>& orbit_sizes() const { return sizes_; }

  /// Matrix of T_p on orbit classes: entry (o', o) counts alpha with [alpha x_o] in o'.
  /// The prime must not divide the level.
  QMatrix hecke_matrix(const PrimeIdeal& p) const;
  /// Same, using an explicit totally positive generator of p.
  QMatrix hecke_matrix(const FieldElem& pi) const;
  /// Atkin-Lehner involution at a prime dividing the level exactly once.
  QMatrix atkin_lehner(const PrimeIdeal& q) const;

 private:
  std::int64_t act(const std::vector<Mat2>& images, std::int64_t point) const;
  std::vector<Mat2> slot_images(const Quat& alpha) const;

  IdealRep level_;
  P1List p1_;
  std::vector<SplittingMap> splittings_;
  std::vector<int> orbit_;
  std::vector<std::int64_t> reps_;
  std::vector<std::int64_t> sizes_;
};

struct EigenEntry {
  PrimeIdeal prime;
  long ap = 0;
  bool good = true;
};

struct NewformRecord {
  IdealRep level;
  std::vector<EigenEntry> eigenvalues;  // canonical prime order
  std::optional<int> sign;              // functional-equation sign when known

  std::optional<long> ap(const PrimeIdeal& p) const;
  /// Good eigenvalues only.
  std::vector<std::pair<PrimeIdeal, long>> good_eigenvalues() const;
};

class AmbiguousSplit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One record per rational cuspidal newform at the level, using good primes of norm <= bound.
std::vector<NewformRecord> rational_newforms(const IdealRep& level, long bound = 100);

/// Eigenvalue table file: "LEVEL <gen> <norm>" then "<prime_gen> <prime_norm> <a_p>" lines.
void write_eigenvalues(std::ostream& out, const NewformRecord& f);
NewformRecord read_eigenvalues(std::istream& in);

}  // namespace hilbert5
