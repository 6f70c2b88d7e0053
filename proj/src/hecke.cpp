#include "hilbert5/hecke.hpp"

#include <cmath>
#include <istream>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

namespace hilbert5 {

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

long hasse_bound(const mpz_class& q) {
  mpz_class r = 4 * q;
  mpz_sqrt(r.get_mpz_t(), r.get_mpz_t());
  return r.get_si();
}

}  // namespace

HeckeSpace::HeckeSpace(const IdealRep& level) : level_(level), p1_(level) {
  for (int s = 0; s < p1_.ring().active(); ++s) splittings_.emplace_back(p1_.ring().ring(s));

  const std::int64_t n = p1_.size();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  // The projective image of S* is that of the norm-one units, as phi acts by a scalar.
  const auto& units = IcosianOrder::instance().norm_one_units();
  std::vector<std::vector<Mat2>> unit_images;
  for (const auto& u : units) unit_images.push_back(slot_images(u));
  for (std::int64_t i = 0; i < n; ++i)
    for (const auto& img : unit_images) {
      const std::int64_t j = act(img, i);
      if (j < 0) throw std::logic_error("unit moved a point off the projective line");
      const int a = find_root(parent, static_cast<int>(i)), b = find_root(parent, static_cast<int>(j));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  orbit_.assign(static_cast<std::size_t>(n), -1);
  std::vector<int> root_to_orbit(static_cast<std::size_t>(n), -1);
  for (std::int64_t i = 0; i < n; ++i) {
    const int r = find_root(parent, static_cast<int>(i));
    if (root_to_orbit[r] < 0) {
      root_to_orbit[r] = static_cast<int>(reps_.size());
      reps_.push_back(i);
      sizes_.push_back(0);
    }
    orbit_[i] = root_to_orbit[r];
    ++sizes_[orbit_[i]];
  }
}

std::vector<Mat2> HeckeSpace::slot_images(const Quat& alpha) const {
  std::vector<Mat2> out;
  out.reserve(splittings_.size());
  for (const auto& s : splittings_) out.push_back(s.image(alpha));
  return out;
}

std::int64_t HeckeSpace::act(const std::vector<Mat2>& images, std::int64_t point) const {
  std::int64_t idx[kMaxSlots];
  p1_.decompose(point, idx);
  for (std::size_t s = 0; s < splittings_.size(); ++s) {
    const RingDescriptor& r = splittings_[s].ring();
    const auto [x, y] = slot_point(r, idx[s]);
    const Mat2& m = images[s];
    const Residue nx = r.add(r.mul(m.a, x), r.mul(m.b, y));
    const Residue ny = r.add(r.mul(m.c, x), r.mul(m.d, y));
    const auto k = slot_normalize(r, nx, ny);
    if (!k) return -1;
    idx[s] = *k;
  }
  return p1_.compose(idx);
}

QMatrix HeckeSpace::hecke_matrix(const PrimeIdeal& p) const { return hecke_matrix(p.gen); }

QMatrix HeckeSpace::hecke_matrix(const FieldElem& pi) const {
  for (const auto& f : level_.factorization())
    if (valuation(pi, f.prime) > 0) throw std::invalid_argument("Hecke prime divides the level");
  const auto& alphas = hecke_representatives(pi);
  std::vector<std::vector<Mat2>> images;
  for (const auto& a : alphas) images.push_back(slot_images(a));
  const std::size_t d = dimension();
  QMatrix t(d, d);
  for (std::size_t o = 0; o < d; ++o)
    for (const auto& img : images) {
      const std::int64_t j = act(img, reps_[o]);
      if (j < 0) throw std::logic_error("Hecke translate is not a point");
      t(static_cast<std::size_t>(orbit_[j]), o) += 1;
    }
  return t;
}

QMatrix HeckeSpace::atkin_lehner(const PrimeIdeal& q) const {
  int slot = -1;
  for (std::size_t s = 0; s < level_.factorization().size(); ++s)
    if (level_.factorization()[s].prime == q) {
      if (level_.factorization()[s].exponent != 1)
        throw std::invalid_argument("Atkin-Lehner prime must divide the level exactly once");
      slot = static_cast<int>(s);
    }
  if (slot < 0) throw std::invalid_argument("Atkin-Lehner prime does not divide the level");
  const auto& alphas = hecke_representatives(q.gen);
  std::vector<std::vector<Mat2>> images;
  for (const auto& a : alphas) images.push_back(slot_images(a));
  const RingDescriptor& r = splittings_[slot].ring();

  auto apply = [&](std::int64_t point) -> std::int64_t {
    std::int64_t idx[kMaxSlots];
    p1_.decompose(point, idx);
    const auto [x, y] = slot_point(r, idx[slot]);
    for (const auto& img : images) {
      const Mat2& m = img[slot];
      const Residue nx = r.add(r.mul(m.a, x), r.mul(m.b, y));
      const Residue ny = r.add(r.mul(m.c, x), r.mul(m.d, y));
      if (!(nx == r.zero() && ny == r.zero())) continue;
      // alpha kills the slot point; the new slot point is the image line of alpha.
      std::int64_t out[kMaxSlots];
      for (std::size_t s = 0; s < splittings_.size(); ++s) {
        const RingDescriptor& rs = splittings_[s].ring();
        const Mat2& ms = img[s];
        std::optional<std::int64_t> k;
        if (static_cast<int>(s) == slot) {
          k = slot_normalize(rs, ms.a, ms.c);
          if (!k) k = slot_normalize(rs, ms.b, ms.d);
        } else {
          const auto [xs, ys] = slot_point(rs, idx[s]);
          k = slot_normalize(rs, rs.add(rs.mul(ms.a, xs), rs.mul(ms.b, ys)),
                             rs.add(rs.mul(ms.c, xs), rs.mul(ms.d, ys)));
        }
        if (!k) throw std::logic_error("Atkin-Lehner image is not a point");
        out[s] = *k;
      }
      return p1_.compose(out);
    }
    throw std::logic_error("no Atkin-Lehner element kills the point");
  };

  const std::size_t d = dimension();
  QMatrix w(d, d);
  std::vector<int> target(d, -1);
  for (std::int64_t i = 0; i < p1_.size(); ++i) {
    const int o = orbit_[i];
    const int t = orbit_[apply(i)];
    if (target[o] < 0) target[o] = t;
    if (target[o] != t) throw std::logic_error("Atkin-Lehner map is not defined on orbits");
  }
  for (std::size_t o = 0; o < d; ++o) w(static_cast<std::size_t>(target[o]), o) = 1;
  return w;
}

// ---------------------------------------------------------------------------

std::optional<long> NewformRecord::ap(const PrimeIdeal& p) const {
  for (const auto& e : eigenvalues)
    if (e.prime == p) return e.ap;
  return std::nullopt;
}

std::vector<std::pair<PrimeIdeal, long>> NewformRecord::good_eigenvalues() const {
  std::vector<std::pair<PrimeIdeal, long>> out;
  for (const auto& e : eigenvalues)
    if (e.good) out.emplace_back(e.prime, e.ap);
  return out;
}

namespace {

std::mutex newform_mu;
std::map<std::pair<FieldElem, long>, std::vector<NewformRecord>> newform_cache;

std::vector<IdealRep> proper_divisors(const IdealRep& n) {
  std::vector<IdealRep> out{IdealRep(FieldElem(1))};
  for (const auto& f : n.factorization()) {
    std::vector<IdealRep> next;
    for (const auto& d : out) {
      FieldElem g = d.gen();
      for (unsigned e = 0; e <= f.exponent; ++e) {
        next.emplace_back(g);
        g *= f.prime.gen;
      }
    }
    out = std::move(next);
  }
  std::vector<IdealRep> proper;
  for (const auto& d : out)
    if (d.norm() != n.norm()) proper.push_back(d);
  return proper;
}

std::vector<NewformRecord> compute_newforms(const IdealRep& level, long bound) {
  HeckeSpace space(level);
  const std::size_t d = space.dimension();
  std::vector<PrimeIdeal> good, all = primes_up_to(bound);
  for (const auto& p : all)
    if (level.coprime_to(p)) good.push_back(p);

  std::vector<QMatrix> hecke(good.size());
  auto T = [&](std::size_t i) -> const QMatrix& {
    if (hecke[i].rows() == 0) hecke[i] = space.hecke_matrix(good[i]);
    return hecke[i];
  };

  struct Piece {
    QMatrix basis;
    std::vector<long> ap;  // eigenvalues at good[0..]
  };
  std::vector<Piece> pieces{{QMatrix::identity(d), {}}};
  for (std::size_t i = 0; i < good.size(); ++i) {
    const long hb = hasse_bound(good[i].norm);
    std::vector<Piece> next;
    for (auto& pc : pieces) {
      const QMatrix x = restrict_to(T(i), pc.basis);
      if (pc.basis.cols() == 1) {
        const mpq_class a = x(0, 0);
        if (a.get_den() != 1 || abs(a) > hb) continue;  // not a cuspidal rational system
        pc.ap.push_back(a.get_num().get_si());
        next.push_back(std::move(pc));
        continue;
      }
      for (long a = -hb; a <= hb; ++a) {
        const QMatrix k = x.minus_scalar(a).kernel();
        if (k.cols() == 0) continue;
        Piece sub{pc.basis * k, pc.ap};
        sub.ap.push_back(a);
        next.push_back(std::move(sub));
      }
    }
    pieces = std::move(next);
  }

  std::vector<NewformRecord> lower;
  bool lower_loaded = false;
  std::vector<NewformRecord> out;
  for (const auto& pc : pieces) {
    if (pc.basis.cols() > 1) {
      if (!lower_loaded) {
        for (const auto& m : proper_divisors(level))
          for (auto& f : rational_newforms(m, bound)) lower.push_back(std::move(f));
        lower_loaded = true;
      }
      bool old = false;
      for (const auto& f : lower) {
        bool same = true;
        for (std::size_t i = 0; i < good.size() && same; ++i) {
          auto a = f.ap(good[i]);
          if (a && *a != pc.ap[i]) same = false;
        }
        if (same) old = true;
      }
      if (old) continue;
      throw AmbiguousSplit("eigenspace of dimension " + std::to_string(pc.basis.cols()) + " at level " +
                           level.to_string() + " is not separated by primes of norm <= " +
                           std::to_string(bound));
    }
    NewformRecord rec;
    rec.level = level;
    std::optional<int> sign = 1;
    std::size_t gi = 0;
    for (const auto& p : all) {
      EigenEntry e{p, 0, true};
      if (gi < good.size() && good[gi] == p) {
        e.ap = pc.ap[gi++];
      } else {
        e.good = false;
        if (level.valuation(p) == 1) {
          const QMatrix w = restrict_to(space.atkin_lehner(p), pc.basis);
          const long wv = w(0, 0).get_num().get_si();
          e.ap = -wv;
          if (sign) *sign *= static_cast<int>(wv);
        } else {
          e.ap = 0;
        }
      }
      rec.eigenvalues.push_back(e);
    }
    // Primes above the bound that divide the level still determine the sign.
    for (const auto& f : level.factorization()) {
      if (f.exponent > 1) {
        sign.reset();
        continue;
      }
      if (f.prime.norm <= bound) continue;
      const QMatrix w = restrict_to(space.atkin_lehner(f.prime), pc.basis);
      if (sign) *sign *= static_cast<int>(w(0, 0).get_num().get_si());
    }
    rec.sign = sign;
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace

std::vector<NewformRecord> rational_newforms(const IdealRep& level, long bound) {
  const auto key = std::make_pair(level.gen(), bound);
  {
    std::lock_guard<std::mutex> lock(newform_mu);
    auto it = newform_cache.find(key);
    if (it != newform_cache.end()) return it->second;
  }
  auto forms = compute_newforms(level, bound);
  std::lock_guard<std::mutex> lock(newform_mu);
  newform_cache[key] = forms;
  return forms;
}

void write_eigenvalues(std::ostream& out, const NewformRecord& f) {
  out << "LEVEL " << f.level.gen().to_string() << ' ' << f.level.norm().get_str() << '\n';
  for (const auto& e : f.eigenvalues)
    out << e.prime.gen.to_string() << ' ' << e.prime.norm.get_str() << ' ' << e.ap << '\n';
}

NewformRecord read_eigenvalues(std::istream& in) {
  NewformRecord f;
  std::string line;
  int lineno = 0;
  bool have_level = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string a, b, c;
    ss >> a >> b >> c;
    if (a == "LEVEL") {
      f.level = IdealRep(FieldElem::parse(b));
      if (f.level.norm() != mpz_class(c))
        throw std::runtime_error("line " + std::to_string(lineno) + ": level norm mismatch");
      have_level = true;
      continue;
    }
    if (!have_level) throw std::runtime_error("line " + std::to_string(lineno) + ": missing LEVEL header");
    if (c.empty()) throw std::runtime_error("line " + std::to_string(lineno) + ": expected three fields");
    const PrimeIdeal p = prime_from_generator(FieldElem::parse(a));
    if (p.norm != mpz_class(b))
      throw std::runtime_error("line " + std::to_string(lineno) + ": prime norm mismatch");
    EigenEntry e{p, std::stol(c), f.level.coprime_to(p)};
    f.eigenvalues.push_back(e);
  }
  if (!have_level) throw std::runtime_error("eigenvalue file has no LEVEL line");
  return f;
}

}  // namespace hilbert5
