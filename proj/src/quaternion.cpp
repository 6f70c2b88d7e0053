#include "hilbert5/quaternion.hpp"

#include <cmath>
#include <functional>
#include <mutex>
#include <random>
#include <set>
#include <stdexcept>

namespace hilbert5 {

namespace {

using HQ = std::array<FieldQ, 4>;

HQ hamilton_mul(const HQ& x, const HQ& y) {
  return {x[0] * y[0] - x[1] * y[1] - x[2] * y[2] - x[3] * y[3],
          x[0] * y[1] + x[1] * y[0] + x[2] * y[3] - x[3] * y[2],
          x[0] * y[2] - x[1] * y[3] + x[2] * y[0] + x[3] * y[1],
          x[0] * y[3] + x[1] * y[2] - x[2] * y[1] + x[3] * y[0]};
}

// Inverse of a 4x4 matrix over F by Gauss-Jordan elimination.
std::array<std::array<FieldQ, 4>, 4> invert4(std::array<std::array<FieldQ, 4>, 4> m) {
  std::array<std::array<FieldQ, 4>, 4> inv{};
  for (int i = 0; i < 4; ++i) inv[i][i] = FieldQ(1);
  for (int c = 0; c < 4; ++c) {
    int p = c;
    while (p < 4 && m[p][c].is_zero()) ++p;
    if (p == 4) throw std::logic_error("singular basis matrix");
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    const FieldQ s = m[c][c].inverse();
    for (int j = 0; j < 4; ++j) {
      m[c][j] *= s;
      inv[c][j] *= s;
    }
    for (int r = 0; r < 4; ++r) {
      if (r == c || m[r][c].is_zero()) continue;
      const FieldQ f = m[r][c];
      for (int j = 0; j < 4; ++j) {
        m[r][j] -= f * m[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

}  // namespace

IcosianOrder::IcosianOrder() {
  const FieldQ phi(FieldElem::phi());
  const FieldQ half(mpq_class(1, 2), 0);
  const FieldQ mbar = phi - FieldQ(1);  // -phibar
  // e1 = (1 - phibar i + phi j)/2, e2 = (-phibar i + j + phi k)/2,
  // e3 = (phi i - phibar j + k)/2, e4 = (i + phi j - phibar k)/2.
  basis_hamilton_[0] = {half, half * mbar, half * phi, FieldQ(0)};
  basis_hamilton_[1] = {FieldQ(0), half * mbar, half, half * phi};
  basis_hamilton_[2] = {FieldQ(0), half * phi, half * mbar, half};
  basis_hamilton_[3] = {FieldQ(0), half, half * phi, half * mbar};

  std::array<std::array<FieldQ, 4>, 4> cols{};  // cols[row][m] = coordinate row of e_m
  for (int m = 0; m < 4; ++m)
    for (int r = 0; r < 4; ++r) cols[r][m] = basis_hamilton_[m][r];
  to_basis_ = invert4(cols);

  auto to_quat = [&](const HQ& h) {
    Quat q;
    for (int r = 0; r < 4; ++r) {
      FieldQ s(0);
      for (int c = 0; c < 4; ++c) s += to_basis_[r][c] * h[c];
      if (!s.is_integral()) throw std::logic_error("icosian basis is not closed");
      q[r] = s.to_integral();
    }
    return q;
  };

  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) mult_[m][n] = to_quat(hamilton_mul(basis_hamilton_[m], basis_hamilton_[n]));
  one_ = to_quat({FieldQ(1), FieldQ(0), FieldQ(0), FieldQ(0)});

  for (int m = 0; m < 4; ++m) trd_[m] = (FieldQ(2) * basis_hamilton_[m][0]).to_integral();

  auto nrd_h = [](const HQ& h) {
    FieldQ s(0);
    for (const auto& c : h) s += c * c;
    return s.to_integral();
  };
  auto add_h = [](const HQ& x, const HQ& y) {
    HQ z;
    for (int i = 0; i < 4; ++i) z[i] = x[i] + y[i];
    return z;
  };
  for (int m = 0; m < 4; ++m) {
    nrd_form_[m][m] = nrd_h(basis_hamilton_[m]);
    for (int n = m + 1; n < 4; ++n)
      nrd_form_[m][n] = nrd_h(add_h(basis_hamilton_[m], basis_hamilton_[n])) -
                        nrd_h(basis_hamilton_[m]) - nrd_h(basis_hamilton_[n]);
  }

  // Integer forms over the Z-basis b_k = e_k, b_{k+4} = phi e_k.
  auto zbasis = [&](int k) {
    HQ h = basis_hamilton_[k % 4];
    if (k >= 4)
      for (auto& c : h) c *= phi;
    return h;
  };
  for (int k = 0; k < 8; ++k)
    for (int l = k; l < 8; ++l) {
      FieldElem v = (k == l) ? nrd_h(zbasis(k))
                             : nrd_h(add_h(zbasis(k), zbasis(l))) - nrd_h(zbasis(k)) - nrd_h(zbasis(l));
      nrd_a_[k][l] = v.a().get_si();
      nrd_b_[k][l] = v.b().get_si();
      tr_form_[k][l] = v.trace().get_si();
    }

  // Z-structure constants: b_k b_l with b_{m + 4s} = phi^s e_m.
  for (int k = 0; k < 8; ++k)
    for (int l = 0; l < 8; ++l) {
      const FieldElem scal = phi_power(k / 4 + l / 4);
      const Quat& prod = mult_[k % 4][l % 4];
      for (int m = 0; m < 4; ++m) {
        const FieldElem c = scal * prod[m];
        zmul_[k][l][m] = c.a().get_si();
        zmul_[k][l][m + 4] = c.b().get_si();
      }
    }

  units_z_ = elements_of_norm_z(FieldElem(1));
  for (const auto& u : units_z_) units_.push_back(from_z(u));
  if (units_.size() != 120) throw std::logic_error("expected 120 norm-one icosians");
}

const IcosianOrder& IcosianOrder::instance() {
  static const IcosianOrder order;
  return order;
}

IcosianOrder::ZQuat IcosianOrder::mul_z(const ZQuat& x, const ZQuat& y) const {
  ZQuat out{};
  for (int k = 0; k < 8; ++k) {
    if (x[k] == 0) continue;
    for (int l = 0; l < 8; ++l) {
      if (y[l] == 0) continue;
      const long c = x[k] * y[l];
      for (int m = 0; m < 8; ++m) out[m] += c * zmul_[k][l][m];
    }
  }
  return out;
}

Quat IcosianOrder::from_z(const ZQuat& c) {
  return {FieldElem(c[0], c[4]), FieldElem(c[1], c[5]), FieldElem(c[2], c[6]), FieldElem(c[3], c[7])};
}

Quat IcosianOrder::mul(const Quat& x, const Quat& y) const {
  Quat out{};
  for (int m = 0; m < 4; ++m) {
    if (x[m].is_zero()) continue;
    for (int n = 0; n < 4; ++n) {
      if (y[n].is_zero()) continue;
      const FieldElem xy = x[m] * y[n];
      for (int k = 0; k < 4; ++k)
        if (!mult_[m][n][k].is_zero()) out[k] += xy * mult_[m][n][k];
    }
  }
  return out;
}

FieldElem IcosianOrder::nrd(const Quat& x) const {
  FieldElem s(0);
  for (int m = 0; m < 4; ++m)
    for (int n = m; n < 4; ++n)
      if (!nrd_form_[m][n].is_zero()) s += nrd_form_[m][n] * x[m] * x[n];
  return s;
}

FieldElem IcosianOrder::trd(const Quat& x) const {
  FieldElem s(0);
  for (int m = 0; m < 4; ++m) s += trd_[m] * x[m];
  return s;
}

std::array<FieldQ, 4> IcosianOrder::hamilton(const Quat& x) const {
  std::array<FieldQ, 4> h{};
  for (int m = 0; m < 4; ++m)
    for (int r = 0; r < 4; ++r) h[r] += basis_hamilton_[m][r] * FieldQ(x[m]);
  return h;
}

std::vector<Quat> IcosianOrder::elements_of_norm(const FieldElem& pi) const {
  std::vector<Quat> out;
  for (const auto& z : elements_of_norm_z(pi)) out.push_back(from_z(z));
  return out;
}

std::vector<IcosianOrder::ZQuat> IcosianOrder::elements_of_norm_z(const FieldElem& pi) const {
  if (!is_totally_positive(pi)) throw std::invalid_argument("reduced norm must be totally positive");
  const long target = pi.trace().get_si();
  const long pa = pi.a().get_si(), pb = pi.b().get_si();

  // Fincke-Pohst decomposition Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2.
  constexpr int n = 8;
  double q[n][n] = {};
  for (int k = 0; k < n; ++k)
    for (int l = k; l < n; ++l) {
      q[k][l] = k == l ? static_cast<double>(tr_form_[k][l]) : tr_form_[k][l] / 2.0;
      q[l][k] = q[k][l];
    }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      q[j][i] = q[i][j];
      q[i][j] /= q[i][i];
    }
    for (int k = i + 1; k < n; ++k)
      for (int l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
  }

  std::vector<ZQuat> out;
  ZQuat x{};
  const double bound = static_cast<double>(target) + 1e-6;
  std::function<void(int, double)> rec = [&](int i, double remaining) {
    double center = 0;
    for (int j = i + 1; j < n; ++j) center -= q[i][j] * x[j];
    const double radius = std::sqrt(std::max(0.0, remaining / q[i][i]));
    const long lo = static_cast<long>(std::ceil(center - radius - 1e-9));
    const long hi = static_cast<long>(std::floor(center + radius + 1e-9));
    for (long v = lo; v <= hi; ++v) {
      x[i] = v;
      const double d = v - center;
      const double rem = remaining - q[i][i] * d * d;
      if (rem < -1e-6) continue;
      if (i > 0) {
        rec(i - 1, rem);
        continue;
      }
      long tr = 0, na = 0, nb = 0;
      for (int k = 0; k < n; ++k) {
        if (x[k] == 0) continue;
        for (int l = k; l < n; ++l) {
          if (x[l] == 0) continue;
          const long c = x[k] * x[l];
          tr += tr_form_[k][l] * c;
          na += nrd_a_[k][l] * c;
          nb += nrd_b_[k][l] * c;
        }
      }
      if (tr == target && na == pa && nb == pb) out.push_back(x);
    }
    x[i] = 0;
  };
  rec(n - 1, bound);
  return out;
}

Quat canonical_left_coset(const Quat& alpha) {
  const auto& S = IcosianOrder::instance();
  Quat best = alpha;
  for (const auto& u : S.norm_one_units()) {
    Quat c = S.mul(u, alpha);
    if (c < best) best = std::move(c);
  }
  return best;
}

const std::vector<Quat>& hecke_representatives(const FieldElem& pi) {
  static std::mutex mu;
  static std::map<FieldElem, std::vector<Quat>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(pi);
  if (it != cache.end()) return it->second;
  const auto& S = IcosianOrder::instance();
  // S^1 acts freely on the left, so partition the elements into orbits of size 120.
  std::set<IcosianOrder::ZQuat> seen;
  std::set<Quat> reps;
  for (const auto& a : S.elements_of_norm_z(pi)) {
    if (seen.count(a)) continue;
    Quat best = IcosianOrder::from_z(a);
    for (const auto& u : S.norm_one_units_z()) {
      const auto ua = S.mul_z(u, a);
      seen.insert(ua);
      Quat q = IcosianOrder::from_z(ua);
      if (q < best) best = std::move(q);
    }
    reps.insert(best);
  }
  const mpz_class expected = abs(pi.norm()) + 1;
  if (mpz_class(static_cast<unsigned long>(reps.size())) != expected)
    throw EnumerationIncomplete("found " + std::to_string(reps.size()) + " classes of norm " +
                                pi.to_string() + ", expected " + expected.get_str());
  return cache.emplace(pi, std::vector<Quat>(reps.begin(), reps.end())).first->second;
}

// ---------------------------------------------------------------------------

namespace {

using SA = std::array<Residue, 4>;

}  // namespace

SplittingMap::SplittingMap(const RingDescriptor& ring) : ring_(ring) {
  const auto& S = IcosianOrder::instance();
  const RingDescriptor& A = ring_;
  Residue C[4][4][4];
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n)
      for (int k = 0; k < 4; ++k) C[m][n][k] = A.reduce(S.structure(m, n, k));
  auto mul = [&](const SA& x, const SA& y) {
    SA out{};
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) {
        const Residue xy = A.mul(x[m], y[n]);
        for (int k = 0; k < 4; ++k) out[k] = A.add(out[k], A.mul(xy, C[m][n][k]));
      }
    return out;
  };
  auto lin = [&](const Residue& s, const SA& x, const Residue& t, const SA& y) {
    SA out;
    for (int k = 0; k < 4; ++k) out[k] = A.add(A.mul(s, x[k]), A.mul(t, y[k]));
    return out;
  };
  SA one;
  for (int m = 0; m < 4; ++m) one[m] = A.reduce(S.one()[m]);
  Residue trd[4], nf[4][4];
  for (int m = 0; m < 4; ++m) {
    trd[m] = A.reduce(S.trd_basis(m));
    for (int n = m; n < 4; ++n) nf[m][n] = A.reduce(S.nrd_form(m, n));
  }

  // Residue field representatives.
  std::vector<Residue> field;
  const bool two_dim = A.tag == RingCase::inert || A.tag == RingCase::ramified_even;
  const std::int64_t p = A.p;
  if (A.residue_size > 1000000) throw std::runtime_error("residue field too large for splitting search");
  for (std::int64_t u = 0; u < p; ++u) {
    if (two_dim)
      for (std::int64_t v = 0; v < p; ++v) field.push_back({u, v});
    else
      field.push_back({u, 0});
  }

  std::mt19937_64 rng(0x5eed + A.p);
  SA eps{};
  bool found = false;
  for (int attempt = 0; attempt < 10000 && !found; ++attempt) {
    SA z;
    for (auto& c : z) c = {static_cast<std::int64_t>(rng() % A.mod_main), static_cast<std::int64_t>(rng() % A.mod_aux)};
    Residue t = A.zero(), nn = A.zero();
    for (int m = 0; m < 4; ++m) {
      t = A.add(t, A.mul(trd[m], z[m]));
      for (int n = m; n < 4; ++n) nn = A.add(nn, A.mul(nf[m][n], A.mul(z[m], z[n])));
    }
    std::vector<Residue> roots;
    for (const auto& l : field) {
      const Residue f = A.add(A.sub(A.mul(l, l), A.mul(t, l)), nn);
      if (A.in_maximal_ideal(f)) roots.push_back(l);
    }
    for (std::size_t i = 0; i < roots.size() && !found; ++i)
      for (std::size_t j = 0; j < roots.size() && !found; ++j) {
        const Residue diff = A.sub(roots[i], roots[j]);
        if (!A.is_unit(diff)) continue;
        // (z - l2)(z - l1) = 0 mod P, so (z - l2)/(l1 - l2) is idempotent mod P.
        eps = lin(A.one(), z, A.neg(roots[j]), one);
        const Residue s = A.inv(diff);
        for (auto& c : eps) c = A.mul(c, s);
        found = true;
      }
  }
  if (!found) throw std::runtime_error("no idempotent found in splitting search");
  for (int it = 0; it < 64; ++it) {
    const SA e2 = mul(eps, eps);
    if (e2 == eps) break;
    const SA e3 = mul(e2, eps);
    // eps <- 3 eps^2 - 2 eps^3
    eps = lin(A.from_ints(3, 0), e2, A.from_ints(-2, 0), e3);
  }
  if (mul(eps, eps) != eps) throw std::runtime_error("idempotent lifting failed");

  // The left ideal S eps is free of rank 2; find a basis with a unit minor.
  SA v[4];
  for (int m = 0; m < 4; ++m) {
    SA em{};
    em[m] = A.one();
    v[m] = mul(em, eps);
  }
  int b1 = -1, b2 = -1, r1 = -1, r2 = -1;
  for (int i = 0; i < 4 && b1 < 0; ++i)
    for (int j = i + 1; j < 4 && b1 < 0; ++j)
      for (int r = 0; r < 4 && b1 < 0; ++r)
        for (int s = r + 1; s < 4 && b1 < 0; ++s) {
          const Residue d = A.sub(A.mul(v[i][r], v[j][s]), A.mul(v[j][r], v[i][s]));
          if (A.is_unit(d)) {
            b1 = i;
            b2 = j;
            r1 = r;
            r2 = s;
          }
        }
  if (b1 < 0) throw std::runtime_error("left ideal basis not found");
  const SA& w1 = v[b1];
  const SA& w2 = v[b2];
  const Residue dinv = A.inv(A.sub(A.mul(w1[r1], w2[r2]), A.mul(w2[r1], w1[r2])));
  auto coords = [&](const SA& w) {
    const Residue c1 = A.mul(dinv, A.sub(A.mul(w[r1], w2[r2]), A.mul(w2[r1], w[r2])));
    const Residue c2 = A.mul(dinv, A.sub(A.mul(w1[r1], w[r2]), A.mul(w[r1], w1[r2])));
    if (lin(c1, w1, c2, w2) != w) throw std::logic_error("vector outside the left ideal");
    return std::pair{c1, c2};
  };
  for (int m = 0; m < 4; ++m) {
    SA em{};
    em[m] = A.one();
    auto [a, c] = coords(mul(em, w1));
    auto [b, d] = coords(mul(em, w2));
    images_[m] = {a, b, c, d};
  }
}

Mat2 SplittingMap::image(const Quat& x) const {
  Mat2 out{};
  const RingDescriptor& A = ring_;
  for (int m = 0; m < 4; ++m) {
    if (x[m].is_zero()) continue;
    const Residue r = A.reduce(x[m]);
    const Mat2& e = images_[m];
    out.a = A.add(out.a, A.mul(r, e.a));
    out.b = A.add(out.b, A.mul(r, e.b));
    out.c = A.add(out.c, A.mul(r, e.c));
    out.d = A.add(out.d, A.mul(r, e.d));
  }
  return out;
}

Mat2 SplittingMap::mul(const Mat2& x, const Mat2& y) const {
  const RingDescriptor& A = ring_;
  return {A.add(A.mul(x.a, y.a), A.mul(x.b, y.c)), A.add(A.mul(x.a, y.b), A.mul(x.b, y.d)),
          A.add(A.mul(x.c, y.a), A.mul(x.d, y.c)), A.add(A.mul(x.c, y.b), A.mul(x.d, y.d))};
}

Residue SplittingMap::det(const Mat2& x) const {
  return ring_.sub(ring_.mul(x.a, x.d), ring_.mul(x.b, x.c));
}

std::pair<Mat2, Mat2> SplittingMap::ij_images() const {
  const auto& S = IcosianOrder::instance();
  // i and j lie in S; find their coordinates among the norm-one units.
  Quat qi{}, qj{};
  for (const auto& u : S.norm_one_units()) {
    auto h = S.hamilton(u);
    if (h[0].is_zero() && h[1] == FieldQ(1) && h[2].is_zero() && h[3].is_zero()) qi = u;
    if (h[0].is_zero() && h[1].is_zero() && h[2] == FieldQ(1) && h[3].is_zero()) qj = u;
  }
  return {image(qi), image(qj)};
}

}  // namespace hilbert5
