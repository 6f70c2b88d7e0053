// The icosian order S inside the Hamilton quaternions over F, short-vector enumeration
// of elements of given reduced norm, and local splittings S/P^e S = M_2(R/P^e).
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "hilbert5/field.hpp"
#include "hilbert5/residue.hpp"

namespace hilbert5 {

/// Coordinates over R in the basis e1..e4 of S.
using Quat = std::array<FieldElem, 4>;

class IcosianOrder {
 public:
  static const IcosianOrder& instance();

  Quat one() const { return one_; }
  Quat mul(const Quat& x, const Quat& y) const;
  FieldElem nrd(const Quat& x) const;
  FieldElem trd(const Quat& x) const;
  /// Hamilton coordinates (x0, x1, x2, x3) of x0 + x1 i + x2 j + x3 k.
  std::array<FieldQ, 4> hamilton(const Quat& x) const;

  /// Structure constants: e_m e_n = sum_k c[m][n][k] e_k.
  const FieldElem& structure(int m, int n, int k) const { return mult_[m][n][k]; }
  /// Nrd(sum r_m e_m) = sum_{m <= n} nrd_form(m, n) r_m r_n.
  const FieldElem& nrd_form(int m, int n) const { return nrd_form_[m][n]; }
  const FieldElem& trd_basis(int m) const { return trd_[m]; }

  /// The 120 elements of reduced norm 1.
  const std::vector<Quat>& norm_one_units() const { return units_; }

  /// All elements with Nrd = pi (pi totally positive), by Fincke-Pohst on Tr(Nrd).
  std::vector<Quat> elements_of_norm(const FieldElem& pi) const;

  /// Coordinates over Z: c_m + c_{m+4} phi in slot m.
  using ZQuat = std::array<long, 8>;
  static Quat from_z(const ZQuat& c);
  /// Product in Z-coordinates; entries must stay well inside 64 bits.
  ZQuat mul_z(const ZQuat& x, const ZQuat& y) const;
  std::vector<ZQuat> elements_of_norm_z(const FieldElem& pi) const;
  const std::vector<ZQuat>& norm_one_units_z() const { return units_z_; }

 private:
  IcosianOrder();
  std::array<std::array<Quat, 4>, 4> mult_;
  std::array<std::array<FieldElem, 4>, 4> nrd_form_;
  std::array<FieldElem, 4> trd_;
  std::array<std::array<FieldQ, 4>, 4> basis_hamilton_;  // basis_hamilton_[m] = e_m
  std::array<std::array<FieldQ, 4>, 4> to_basis_;         // inverse change of basis
  Quat one_;
  std::vector<Quat> units_;
  std::vector<ZQuat> units_z_;
  std::array<std::array<std::array<long, 8>, 8>, 8> zmul_{};
  // Integer forms over the Z-basis (e_m, phi e_m).
  std::array<std::array<long, 8>, 8> tr_form_{};          // Tr(Nrd) coefficients, k <= l
  std::array<std::array<long, 8>, 8> nrd_a_{}, nrd_b_{};  // Nrd coefficients, k <= l
};

/// Lexicographically least element of the left coset S^1 * alpha.
Quat canonical_left_coset(const Quat& alpha);

/// Representatives of S^1 \ {alpha in S : Nrd(alpha) = pi}; there are N(pi) + 1 of them
/// for a prime pi. Results are cached per pi.
const std::vector<Quat>& hecke_representatives(const FieldElem& pi);

class EnumerationIncomplete : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 2x2 matrix (a b; c d) over a residue ring.
struct Mat2 {
  Residue a, b, c, d;
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// An algebra isomorphism S/P^e S -> M_2(R/P^e), built from an idempotent.
class SplittingMap {
 public:
  explicit SplittingMap(const RingDescriptor& ring);

  const RingDescriptor& ring() const { return ring_; }
  const Mat2& basis_image(int m) const { return images_[m]; }
  Mat2 image(const Quat& x) const;
  Mat2 mul(const Mat2& x, const Mat2& y) const;
  Residue det(const Mat2& x) const;
  /// Images of i and j, recovered from the basis images (requires 2 invertible).
  std::pair<Mat2, Mat2> ij_images() const;

 private:
  RingDescriptor ring_;
  std::array<Mat2, 4> images_;
};

}  // namespace hilbert5
