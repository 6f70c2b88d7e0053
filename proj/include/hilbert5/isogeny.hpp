// Prime-degree isogenies over F: kernel polynomials, Velu/Kohel codomains and isogeny classes.
#pragma once

#include <stdexcept>
#include <vector>

#include "hilbert5/curve.hpp"
#include "hilbert5/poly.hpp"
#include "hilbert5/record.hpp"

namespace hilbert5 {

class InvalidKernel : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ClosureBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// False when some good prime shows Frobenius has no eigenvalue mod l, which rules out an
/// F-rational l-isogeny. True means "possible", not "present".
bool isogeny_possible(const CurveModel& e, long l, int primes = 25);

/// Kernel polynomials of the F-rational cyclic subgroups of order l: for l = 2 the linear
/// factors x - x0 of the 2-division polynomial, for odd l the monic degree-(l-1)/2 divisors of
/// psi_l whose root set is closed under multiplication by 2.
std::vector<PolyF> kernel_polynomials(const CurveModel& e, long l);

/// True when the roots of g are the x-coordinates of a cyclic subgroup of odd order (or a
/// single 2-torsion point when deg g = 1 and g divides the 2-division polynomial).
bool is_kernel_polynomial(const CurveModel& e, const PolyF& g);

/// Codomain of the isogeny with the given kernel, as a global minimal model.
CurveModel velu(const CurveModel& e, const PolyF& kernel);

struct IsogenyClass {
  std::vector<CurveModel> curves;            // global minimal models, sorted
  std::vector<std::vector<long>> degrees;    // minimal isogeny degree, 0 on the diagonal
  std::vector<long> degree_set;

  std::size_t size() const { return curves.size(); }
  /// Index of the curve isomorphic to e, or -1.
  int index_of(const CurveModel& e) const;
  std::vector<CurveRecord> records() const;
};

IsogenyClass isogeny_closure(const CurveModel& e, const std::vector<long>& degrees = {2, 3, 5, 7},
                             std::size_t budget = 32);

}  // namespace hilbert5
