#include "hilbert5/field.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace hilbert5 {

namespace {

constexpr double kPhi1 = 1.6180339887498948482;
constexpr double kPhi2 = -0.6180339887498948482;

// Both embeddings, with the smaller one recovered from the norm to avoid cancellation.
std::pair<double, double> embeddings(const mpz_class& a, const mpz_class& b) {
  const double da = a.get_d();
  const double db = b.get_d();
  double s1 = da + db * kPhi1;
  double s2 = da + db * kPhi2;
  const mpz_class n = a * a + a * b - b * b;
  const double dn = n.get_d();
  if (std::abs(s1) >= std::abs(s2)) {
    if (s1 != 0) s2 = dn / s1;
  } else {
    s1 = dn / s2;
  }
  return {s1, s2};
}

}  // namespace

FieldElem& FieldElem::operator+=(const FieldElem& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

// (a + b phi)(c + d phi) = ac + bd + (ad + bc + bd) phi
FieldElem& FieldElem::operator*=(const FieldElem& o) {
  mpz_class bd = b_ * o.b_;
  mpz_class na = a_ * o.a_ + bd;
  mpz_class nb = a_ * o.b_ + b_ * o.a_ + bd;
  a_ = std::move(na);
  b_ = std::move(nb);
  return *this;
}

std::strong_ordering operator<=>(const FieldElem& x, const FieldElem& y) {
  int c = cmp(x.a_, y.a_);
  if (c == 0) c = cmp(x.b_, y.b_);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::optional<FieldElem> FieldElem::divide(const FieldElem& y) const {
  if (y.is_zero()) throw std::domain_error("division by zero in R");
  const mpz_class n = y.norm();
  const FieldElem num = *this * y.conjugate();
  if (!mpz_divisible_p(num.a_.get_mpz_t(), n.get_mpz_t()) ||
      !mpz_divisible_p(num.b_.get_mpz_t(), n.get_mpz_t()))
    return std::nullopt;
  mpz_class qa, qb;
  mpz_divexact(qa.get_mpz_t(), num.a_.get_mpz_t(), n.get_mpz_t());
  mpz_divexact(qb.get_mpz_t(), num.b_.get_mpz_t(), n.get_mpz_t());
  return FieldElem(qa, qb);
}

FieldElem FieldElem::pow(unsigned long e) const {
  FieldElem result(1);
  FieldElem base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

double FieldElem::sigma1() const { return embeddings(a_, b_).first; }
double FieldElem::sigma2() const { return embeddings(a_, b_).second; }

std::size_t FieldElem::bit_height() const {
  std::size_t ha = a_ == 0 ? 0 : mpz_sizeinbase(a_.get_mpz_t(), 2);
  std::size_t hb = b_ == 0 ? 0 : mpz_sizeinbase(b_.get_mpz_t(), 2);
  return std::max(ha, hb);
}

std::string FieldElem::to_string() const {
  if (b_ == 0) return a_.get_str();
  std::string out;
  if (b_ == 1) {
    out = "phi";
  } else if (b_ == -1) {
    out = "-phi";
  } else {
    out = b_.get_str() + "*phi";
  }
  if (a_ > 0) {
    out += "+" + a_.get_str();
  } else if (a_ < 0) {
    out += a_.get_str();
  }
  return out;
}

FieldElem FieldElem::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty field element");
  mpz_class a = 0, b = 0;
  std::size_t i = 0;
  bool any = false;
  while (i < s.size()) {
    int sign = 1;
    bool had_sign = false;
    while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      if (s[i] == '-') sign = -sign;
      had_sign = true;
      ++i;
    }
    if (any && !had_sign) throw std::invalid_argument("malformed field element: " + s);
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    mpz_class coeff = 1;
    bool has_num = i > start;
    if (has_num) coeff = mpz_class(s.substr(start, i - start));
    bool is_phi = false;
    if (i < s.size() && s[i] == '*') {
      ++i;
      if (s.compare(i, 3, "phi") != 0)
        throw std::invalid_argument("malformed field element: " + s);
      i += 3;
      is_phi = true;
    } else if (s.compare(i, 3, "phi") == 0) {
      i += 3;
      is_phi = true;
      if (i < s.size() && s[i] == '*') {
        ++i;
        std::size_t st = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == st) throw std::invalid_argument("malformed field element: " + s);
        coeff *= mpz_class(s.substr(st, i - st));
      }
    } else if (!has_num) {
      throw std::invalid_argument("malformed field element: " + s);
    }
    if (is_phi)
      b += sign * coeff;
    else
      a += sign * coeff;
    any = true;
  }
  return FieldElem(a, b);
}

std::size_t FieldElemHash::operator()(const FieldElem& x) const {
  std::size_t h1 = std::hash<std::string>{}(x.a().get_str(16));
  std::size_t h2 = std::hash<std::string>{}(x.b().get_str(16));
  return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
}

// ---------------------------------------------------------------------------

FieldElem FieldQ::to_integral() const {
  if (!is_integral()) throw std::domain_error("element is not integral: " + to_string());
  return FieldElem(a_.get_num(), b_.get_num());
}

mpz_class FieldQ::denominator() const {
  mpz_class d;
  mpz_lcm(d.get_mpz_t(), a_.get_den_mpz_t(), b_.get_den_mpz_t());
  return d;
}

FieldQ FieldQ::inverse() const {
  const mpq_class n = norm();
  if (n == 0) throw std::domain_error("inverse of zero in F");
  FieldQ c = conjugate();
  return FieldQ(c.a_ / n, c.b_ / n);
}

FieldQ& FieldQ::operator+=(const FieldQ& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

FieldQ& FieldQ::operator-=(const FieldQ& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

FieldQ& FieldQ::operator*=(const FieldQ& o) {
  mpq_class bd = b_ * o.b_;
  mpq_class na = a_ * o.a_ + bd;
  mpq_class nb = a_ * o.b_ + b_ * o.a_ + bd;
  a_ = std::move(na);
  b_ = std::move(nb);
  return *this;
}

FieldQ FieldQ::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  FieldQ result(1);
  FieldQ base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

double FieldQ::sigma1() const {
  const mpz_class d = denominator();
  FieldElem num(mpq_class(a_ * d).get_num(), mpq_class(b_ * d).get_num());
  return num.sigma1() / d.get_d();
}

double FieldQ::sigma2() const {
  const mpz_class d = denominator();
  FieldElem num(mpq_class(a_ * d).get_num(), mpq_class(b_ * d).get_num());
  return num.sigma2() / d.get_d();
}

std::string FieldQ::to_string() const {
  if (is_integral()) return to_integral().to_string();
  const mpz_class d = denominator();
  FieldElem num(mpq_class(a_ * d).get_num(), mpq_class(b_ * d).get_num());
  return "(" + num.to_string() + ")/" + d.get_str();
}

// ---------------------------------------------------------------------------

FieldElem phi_power(long k) {
  if (k >= 0) return FieldElem::phi().pow(static_cast<unsigned long>(k));
  // phi^-1 = phi - 1
  return FieldElem(-1, 1).pow(static_cast<unsigned long>(-k));
}

std::optional<mpz_class> exact_isqrt(const mpz_class& n) {
  if (n < 0) return std::nullopt;
  if (!mpz_perfect_square_p(n.get_mpz_t())) return std::nullopt;
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

// y = c + d phi with y^2 = x: N(y)^2 = N(x), Tr(y)^2 = Tr(x) + 2 N(y), and
// (y - conj y)^2 = 5 d^2 = Tr(y)^2 - 4 N(y).
std::optional<FieldElem> sqrt_in_ring(const FieldElem& x) {
  if (x.is_zero()) return FieldElem(0);
  auto n_root = exact_isqrt(x.norm());
  if (!n_root) return std::nullopt;
  for (int ns : {1, -1}) {
    const mpz_class ny = ns * *n_root;
    auto t = exact_isqrt(x.trace() + 2 * ny);
    if (!t) continue;
    const mpz_class disc = (*t) * (*t) - 4 * ny;
    if (disc < 0 || disc % 5 != 0) continue;
    auto d = exact_isqrt(disc / 5);
    if (!d) continue;
    for (int ts : {1, -1}) {
      for (int ds : {1, -1}) {
        const mpz_class tt = ts * *t;
        const mpz_class dd = ds * *d;
        const mpz_class twice_c = tt - dd;
        if (twice_c % 2 != 0) continue;
        FieldElem y(twice_c / 2, dd);
        if (y * y == x) return y;
      }
    }
  }
  return std::nullopt;
}

namespace {

// Index k minimizing A phi^k + B phi^-k, where A = |sigma1 x|, B = |sigma2 x|.
long balancing_exponent(const FieldElem& x) {
  const double s1 = std::abs(x.sigma1());
  const double s2 = std::abs(x.sigma2());
  if (s1 == 0 || s2 == 0) return 0;
  return std::lround(0.5 * std::log(s2 / s1) / std::log(kPhi1));
}

bool close(double u, double v) {
  return std::abs(u - v) <= 1e-12 * std::max({1.0, std::abs(u), std::abs(v)});
}

}  // namespace

FieldElem canonical_associate(const FieldElem& x) {
  if (x.is_zero()) return x;
  const long k0 = balancing_exponent(x);
  std::optional<FieldElem> best;
  double best_size = 0;
  for (long k = k0 - 2; k <= k0 + 2; ++k) {
    FieldElem y = x * phi_power(k);
    for (int sign : {1, -1}) {
      FieldElem z = sign == 1 ? y : -y;
      const double s1 = z.sigma1();
      const double size = std::abs(s1) + std::abs(z.sigma2());
      bool better = false;
      if (!best) {
        better = true;
      } else if (!close(size, best_size)) {
        better = size < best_size;
      } else {
        const bool pos = s1 > 0;
        const bool best_pos = best->sigma1() > 0;
        if (pos != best_pos) {
          better = pos;
        } else {
          const bool nonneg_b = z.b() >= 0;
          const bool best_nonneg_b = best->b() >= 0;
          if (nonneg_b != best_nonneg_b)
            better = nonneg_b;
          else
            better = z < *best;
        }
      }
      if (better) {
        best = z;
        best_size = size;
      }
    }
  }
  return *best;
}

bool is_totally_positive(const FieldElem& x) {
  if (x.is_zero()) return false;
  // Sign of sigma1 and of the norm decide it exactly when the norm is positive.
  if (x.norm() <= 0) return false;
  return x.sigma1() > 0;
}

std::optional<FieldElem> totally_positive_associate(const FieldElem& x) {
  if (x.is_zero()) return std::nullopt;
  FieldElem y = x;
  if (y.norm() < 0) y *= FieldElem::phi();
  if (y.sigma1() < 0) y = -y;
  // y is totally positive; minimize the trace over y * phi^(2k).
  const long k0 = balancing_exponent(y);
  const long center = 2 * (k0 >= 0 ? k0 / 2 : (k0 - 1) / 2);
  std::optional<FieldElem> best;
  for (long e = center - 4; e <= center + 4; e += 2) {
    FieldElem z = y * phi_power(e);
    if (!best) {
      best = z;
      continue;
    }
    int c = cmp(z.trace(), best->trace());
    if (c < 0 || (c == 0 && z.b() >= 0 && best->b() < 0) ||
        (c == 0 && (z.b() >= 0) == (best->b() >= 0) && z < *best))
      best = z;
  }
  return best;
}

FieldElem positive_generator(const FieldElem& x) {
  auto g = totally_positive_associate(x);
  if (!g) throw std::domain_error("the zero ideal has no generator");
  return *g;
}

bool associates(const FieldElem& x, const FieldElem& y) {
  if (x.is_zero() || y.is_zero()) return x.is_zero() && y.is_zero();
  if (abs(x.norm()) != abs(y.norm())) return false;
  auto q = x.divide(y);
  return q.has_value() && abs(q->norm()) == 1;
}

}  // namespace hilbert5
