// Tate's algorithm over the completion of R at a prime, following the classical loop
// (Cremona's formulation); residue characteristics 2 and 3 take the special branches.
#include <map>
#include <stdexcept>

#include "hilbert5/curve.hpp"
#include "hilbert5/ffield.hpp"

namespace hilbert5 {

namespace {

class TateRunner {
 public:
  TateRunner(const PrimeIdeal& prime) : prime_(prime), k_(prime), pi_(prime.gen) {
    p_ = prime.p.get_si();
    if (p_ != 2) half_ = pinv(FieldElem(2));
  }

  LocalData run(const CurveModel& input);

 private:
  int pval(const FieldElem& x) const {
    if (x.is_zero()) return 1 << 20;
    return static_cast<int>(valuation(x, prime_));
  }
  bool pdiv(const FieldElem& x) const { return k_.is_zero(k_.reduce(x)); }
  FieldElem pinv(const FieldElem& x) const { return k_.lift(k_.inv(k_.reduce(x))); }
  FieldElem preduce(const FieldElem& x) const { return k_.lift(k_.reduce(x)); }
  FieldElem proot(const FieldElem& x, int e) const {
    const auto roots = k_.nth_roots(k_.reduce(x), e);
    if (roots.empty()) throw std::logic_error("Tate: missing root in residue field");
    return k_.lift(roots.front());
  }
  FieldElem div(const FieldElem& x, const FieldElem& y) const {
    const auto q = x.divide(y);
    if (!q) throw std::logic_error("Tate: inexact division by a power of the uniformizer");
    return *q;
  }
  // Does a x^2 + b x + c have a root mod P?
  bool quadroots(const FieldElem& a, const FieldElem& b, const FieldElem& c) const {
    const Residue A = k_.reduce(a), B = k_.reduce(b), C = k_.reduce(c);
    if (k_.is_zero(A)) return !k_.is_zero(B) || k_.is_zero(C);
    if (p_ == 2) {
      for (std::int64_t i = 0; i < k_.q(); ++i) {
        const Residue x = k_.element(i);
        if (k_.is_zero(k_.add(k_.mul(k_.add(k_.mul(A, x), B), x), C))) return true;
      }
      return false;
    }
    const Residue d = k_.sub(k_.mul(B, B), k_.mul(k_.from_int(4), k_.mul(A, C)));
    return k_.is_square(d);
  }
  int cubicroots(const FieldElem& b, const FieldElem& c, const FieldElem& d) const {
    FqPoly f{k_.reduce(d), k_.reduce(c), k_.reduce(b), k_.one()};
    return fq::count_roots_with_multiplicity(k_, f);
  }

  PrimeIdeal prime_;
  FiniteField k_;
  FieldElem pi_;
  long p_ = 2;
  FieldElem half_;
};

LocalData TateRunner::run(const CurveModel& input) {
  LocalData out;
  out.prime = prime_;
  const FieldElem pi2 = pi_ * pi_, pi3 = pi2 * pi_, pi4 = pi3 * pi_;
  CurveModel C = input;

  for (;;) {
    Invariants inv = invariants(C);
    const int val_disc = pval(inv.disc);
    out.minimal_disc_valuation = val_disc;
    if (val_disc == 0) {
      out.kodaira = "I0";
      out.conductor_exponent = 0;
      out.tamagawa = 1;
      out.reduction = Reduction::good;
      break;
    }

    // Move the singular point to (0, 0).
    FieldElem r, t;
    {
      const FieldElem &a1 = C.a[0], &a2 = C.a[1], &a3 = C.a[2], &a4 = C.a[3], &a6 = C.a[4];
      if (p_ == 2) {
        if (pdiv(inv.b2)) {
          r = proot(a4, 2);
          t = proot(((r + a2) * r + a4) * r + a6, 2);
        } else {
          const FieldElem temp = pinv(a1);
          r = temp * a3;
          t = temp * (a4 + r * r);
        }
      } else if (p_ == 3) {
        if (pdiv(inv.b2)) {
          r = proot(-inv.b6, 3);
        } else {
          r = -pinv(inv.b2) * inv.b4;
        }
        t = a1 * r + a3;
      } else {
        if (pdiv(inv.c4)) {
          r = -pinv(FieldElem(12)) * inv.b2;
        } else {
          r = -pinv(FieldElem(12) * inv.c4) * (inv.c6 + inv.b2 * inv.c4);
        }
        t = -half_ * (a1 * r + a3);
      }
    }
    r = preduce(r);
    t = preduce(t);
    C = rst_transform(C, r, 0, t);
    inv = invariants(C);

    if (!pdiv(inv.c4)) {
      // Multiplicative reduction.
      const bool split = quadroots(FieldElem(1), C.a1(), -C.a2());
      out.reduction = split ? Reduction::split_multiplicative : Reduction::nonsplit_multiplicative;
      if (split) {
        out.tamagawa = val_disc;
      } else {
        out.tamagawa = val_disc % 2 == 0 ? 2 : 1;
      }
      out.kodaira = "I" + std::to_string(val_disc);
      out.conductor_exponent = 1;
      break;
    }
    out.reduction = Reduction::additive;

    if (pval(C.a6()) < 2) {
      out.kodaira = "II";
      out.conductor_exponent = val_disc;
      out.tamagawa = 1;
      break;
    }
    if (pval(inv.b8) < 3) {
      out.kodaira = "III";
      out.conductor_exponent = val_disc - 1;
      out.tamagawa = 2;
      break;
    }
    if (pval(inv.b6) < 3) {
      out.kodaira = "IV";
      out.tamagawa = quadroots(FieldElem(1), div(C.a3(), pi_), -div(C.a6(), pi2)) ? 3 : 1;
      out.conductor_exponent = val_disc - 2;
      break;
    }

    // Change coordinates so that p | a1, a2; p^2 | a3, a4; p^3 | a6.
    FieldElem s;
    if (p_ == 2) {
      s = proot(C.a2(), 2);
      t = pi_ * proot(div(C.a6(), pi2), 2);
    } else if (p_ == 3) {
      s = C.a1();
      t = C.a3();
    } else {
      s = -C.a1() * half_;
      t = -C.a3() * half_;
    }
    C = rst_transform(C, 0, s, t);

    // Cubic T^3 + b T^2 + c T + d with b = a2/pi, c = a4/pi^2, d = a6/pi^3.
    const FieldElem b = div(C.a2(), pi_), c = div(C.a4(), pi2), d = div(C.a6(), pi3);
    const FieldElem bb = b * b, cc = c * c, bc = b * c;
    const FieldElem w = FieldElem(27) * d * d - bb * cc + FieldElem(4) * b * bb * d -
                        FieldElem(18) * bc * d + FieldElem(4) * c * cc;
    const FieldElem x = FieldElem(3) * c - bb;
    int sw;
    if (pdiv(w)) {
      sw = pdiv(x) ? 3 : 2;
    } else {
      sw = 1;
    }

    if (sw == 1) {
      out.kodaira = "I0*";
      out.tamagawa = 1 + cubicroots(b, c, d);
      out.conductor_exponent = val_disc - 4;
      break;
    }
    if (sw == 2) {
      // One double root: move it to T = 0.
      FieldElem rr;
      if (p_ == 2) {
        rr = proot(c, 2);
      } else if (p_ == 3) {
        rr = c * pinv(b);
      } else {
        rr = (bc - FieldElem(9) * d) * pinv(FieldElem(2) * x);
      }
      rr = pi_ * preduce(rr);
      C = rst_transform(C, rr, 0, 0);
      int ix = 3, iy = 3;
      FieldElem mx = pi2, my = pi2;
      for (;;) {
        FieldElem a2t = div(C.a2(), pi_);
        FieldElem a3t = div(C.a3(), my);
        FieldElem a4t = div(C.a4(), pi_ * mx);
        FieldElem a6t = div(C.a6(), mx * my);
        if (pdiv(a3t * a3t + FieldElem(4) * a6t)) {
          FieldElem tt;
          if (p_ == 2) {
            tt = my * proot(a6t, 2);
          } else {
            tt = my * preduce(-a3t * half_);
          }
          C = rst_transform(C, 0, 0, tt);
          my = my * pi_;
          ++iy;
          a2t = div(C.a2(), pi_);
          a3t = div(C.a3(), my);
          a4t = div(C.a4(), pi_ * mx);
          a6t = div(C.a6(), mx * my);
          if (pdiv(a4t * a4t - FieldElem(4) * a6t * a2t)) {
            FieldElem r2;
            if (p_ == 2) {
              r2 = mx * proot(a6t * pinv(a2t), 2);
            } else {
              r2 = mx * preduce(-a4t * pinv(FieldElem(2) * a2t));
            }
            C = rst_transform(C, r2, 0, 0);
            mx = mx * pi_;
            ++ix;
          } else {
            out.tamagawa = quadroots(a2t, a4t, a6t) ? 4 : 2;
            break;
          }
        } else {
          out.tamagawa = quadroots(FieldElem(1), a3t, -a6t) ? 4 : 2;
          break;
        }
      }
      out.kodaira = "I" + std::to_string(ix + iy - 5) + "*";
      out.conductor_exponent = val_disc - ix - iy + 1;
      break;
    }

    // Triple root: move it to T = 0.
    FieldElem rr;
    if (p_ == 2) {
      rr = b;
    } else if (p_ == 3) {
      rr = proot(-d, 3);
    } else {
      rr = -b * pinv(FieldElem(3));
    }
    rr = pi_ * preduce(rr);
    C = rst_transform(C, rr, 0, 0);
    const FieldElem a3t = div(C.a3(), pi2), a6t = div(C.a6(), pi4);
    if (!pdiv(a3t * a3t + FieldElem(4) * a6t)) {
      out.kodaira = "IV*";
      out.tamagawa = quadroots(FieldElem(1), a3t, -a6t) ? 3 : 1;
      out.conductor_exponent = val_disc - 6;
      break;
    }
    FieldElem tt;
    if (p_ == 2) {
      tt = -pi2 * proot(a6t, 2);
    } else {
      tt = pi2 * preduce(-a3t * half_);
    }
    C = rst_transform(C, 0, 0, tt);
    if (pval(C.a4()) < 4) {
      out.kodaira = "III*";
      out.conductor_exponent = val_disc - 7;
      out.tamagawa = 2;
      break;
    }
    if (pval(C.a6()) < 6) {
      out.kodaira = "II*";
      out.conductor_exponent = val_disc - 8;
      out.tamagawa = 1;
      break;
    }
    // Not minimal: divide out pi.
    C.a[0] = div(C.a[0], pi_);
    C.a[1] = div(C.a[1], pi2);
    C.a[2] = div(C.a[2], pi3);
    C.a[3] = div(C.a[3], pi4);
    C.a[4] = div(C.a[4], pi3 * pi3);
  }
  out.minimal_model = C;
  return out;
}

}  // namespace

LocalData local_data(const CurveModel& e, const PrimeIdeal& p) {
  TateRunner runner(p);
  return runner.run(e);
}

std::vector<PrimeIdeal> bad_primes(const CurveModel& e) {
  const FieldElem disc = discriminant(e);
  if (disc.is_zero()) throw SingularModel("singular model " + e.to_string());
  std::vector<PrimeIdeal> out;
  mpz_class n = abs(disc.norm());
  for (const auto& [p, mult] : factor_integer(n)) {
    (void)mult;
    for (const PrimeIdeal& P : primes_above(p))
      if (valuation(disc, P) > 0) out.push_back(P);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LocalData> all_local_data(const CurveModel& e) {
  std::vector<LocalData> out;
  for (const PrimeIdeal& p : bad_primes(e)) out.push_back(local_data(e, p));
  return out;
}

IdealRep conductor(const CurveModel& e) {
  std::vector<PrimePower> f;
  for (const LocalData& ld : all_local_data(e)) {
    if (ld.conductor_exponent > 0) f.push_back({ld.prime, static_cast<unsigned>(ld.conductor_exponent)});
  }
  return IdealRep::from_factorization(std::move(f));
}

}  // namespace hilbert5
