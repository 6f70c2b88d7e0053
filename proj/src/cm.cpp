#include "hilbert5/cm.hpp"

#include <cmath>
#include <numeric>

#include "hilbert5/periods.hpp"
#include "hilbert5/real.hpp"

namespace hilbert5 {

std::vector<QuadraticForm> reduced_forms(long D) {
  if (D >= 0 || (((D % 4) + 4) % 4 != 0 && ((D % 4) + 4) % 4 != 1))
    throw std::invalid_argument("not a negative discriminant: " + std::to_string(D));
  std::vector<QuadraticForm> out;
  for (long a = 1; 3 * a * a <= -D; ++a) {
    for (long b = -a + 1; b <= a; ++b) {
      if (((b - D) % 2) != 0) continue;
      const long num = b * b - D;
      if (num % (4 * a) != 0) continue;
      const long c = num / (4 * a);
      if (c < a || (c == a && b < 0)) continue;
      if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
      out.push_back({a, b, c});
    }
  }
  return out;
}

long class_number(long D) { return static_cast<long>(reduced_forms(D).size()); }

mpz_class ClassPolynomial::discriminant() const {
  if (degree() == 1) return 0;
  if (degree() != 2) throw std::logic_error("discriminant only for degree <= 2");
  return coeffs[1] * coeffs[1] - 4 * coeffs[0];
}

namespace {

class PrecisionScope {
 public:
  explicit PrecisionScope(mpfr_prec_t bits) : old_(working_precision()) { set_working_precision(bits); }
  ~PrecisionScope() { set_working_precision(old_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  mpfr_prec_t old_;
};

}  // namespace

ClassPolynomial class_polynomial(long D, long bits) {
  const auto forms = reduced_forms(D);
  const long h = static_cast<long>(forms.size());
  if (bits <= 0) bits = 200 + static_cast<long>(std::ceil(10.0 * static_cast<double>(h) * std::sqrt(-static_cast<double>(D))));
  const PrecisionScope scope(bits);
  const Real root_d = sqrt(Real(-D));
  std::vector<Complex> poly{Complex(Real(1))};  // constant term first
  for (const QuadraticForm& f : forms) {
    const Complex tau(Real(-f.b) / Real(2 * f.a), root_d / Real(2 * f.a));
    const Complex j = j_of_tau(tau);
    std::vector<Complex> next(poly.size() + 1);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= poly[i] * j;
    }
    poly = std::move(next);
  }
  ClassPolynomial out;
  out.D = D;
  const Real quarter(0.25);
  for (const Complex& c : poly) {
    const mpz_class r = c.re.round();
    if (abs(c.re - Real(r)) > quarter || abs(c.im) > quarter)
      throw PrecisionInsufficient("H_" + std::to_string(D) + " at " + std::to_string(bits) + " bits");
    out.coeffs.push_back(r);
  }
  return out;
}

ClassPolynomial class_polynomial_auto(long D) {
  long bits = 0;
  for (int attempt = 0; attempt < 6; ++attempt) {
    try {
      return class_polynomial(D, bits);
    } catch (const PrecisionInsufficient&) {
      if (bits == 0) bits = 200 + static_cast<long>(10.0 * static_cast<double>(class_number(D)) * std::sqrt(-static_cast<double>(D)));
      bits *= 2;
    }
  }
  throw PrecisionInsufficient("H_" + std::to_string(D) + " failed after retries");
}

std::vector<long> discriminants_with_class_number(long h, long bound) {
  std::vector<long> out;
  for (long D = -3; D >= -bound; --D) {
    const long r = ((D % 4) + 4) % 4;
    if (r != 0 && r != 1) continue;
    if (class_number(D) == h) out.push_back(D);
  }
  return out;
}

const std::vector<long>& linear_cm_discriminants() {
  static const std::vector<long> v = {-3, -4, -7, -8, -11, -12, -16, -19, -27, -28, -43, -67, -163};
  return v;
}

const std::vector<long>& quadratic_cm_discriminants_over_f() {
  static const std::vector<long> v = {-15, -20, -35, -40, -60, -75, -100, -115, -235};
  return v;
}

namespace {

std::vector<CmEntry> build_catalog() {
  std::vector<CmEntry> out;
  for (long D : linear_cm_discriminants()) {
    const ClassPolynomial H = class_polynomial_auto(D);
    if (H.degree() != 1) throw std::logic_error("H_" + std::to_string(D) + " is not linear");
    out.push_back({D, FieldElem(-H.coeffs[0])});
  }
  for (long D : quadratic_cm_discriminants_over_f()) {
    const ClassPolynomial H = class_polynomial_auto(D);
    if (H.degree() != 2) throw std::logic_error("H_" + std::to_string(D) + " is not quadratic");
    const mpz_class disc = H.discriminant();
    if (disc % 5 != 0) throw std::logic_error("H_" + std::to_string(D) + " does not split over F");
    const auto s = exact_isqrt(disc / 5);
    if (!s) throw std::logic_error("H_" + std::to_string(D) + " does not split over F");
    // roots (-b +- s sqrt5) / 2 with sqrt5 = 2 phi - 1
    const mpz_class& b = H.coeffs[1];
    std::vector<FieldElem> roots;
    for (int sign : {1, -1}) {
      const mpz_class t = sign * *s;
      const mpz_class num = -b - t;
      if (num % 2 != 0) throw std::logic_error("non-integral CM j-invariant");
      roots.emplace_back(num / 2, t);
    }
    std::sort(roots.begin(), roots.end());
    for (const FieldElem& j : roots) out.push_back({D, j});
  }
  return out;
}

}  // namespace

const std::vector<CmEntry>& cm_j_invariants() {
  static const std::vector<CmEntry> catalog = build_catalog();
  return catalog;
}

std::optional<long> is_cm(const FieldElem& j) {
  for (const CmEntry& e : cm_j_invariants())
    if (e.j == j) return e.D;
  return std::nullopt;
}

std::optional<long> is_cm(const FieldQ& j) {
  if (!j.is_integral()) return std::nullopt;
  return is_cm(j.to_integral());
}

CurveModel curve_with_j(const FieldQ& j) {
  if (j.is_zero()) return CurveModel::parse("[0,0,1,0,0]");
  if (j == FieldQ(1728)) return CurveModel::parse("[0,0,0,1,0]");
  const FieldQ k = (j - FieldQ(1728)).inverse();
  const AInvariantsQ a{FieldQ(1), FieldQ(), FieldQ(), FieldQ(-36) * k, -k};
  return integral_model(a);
}

}  // namespace hilbert5
