#include <sstream>

#include "doctest.h"
#include "hilbert5/hecke.hpp"

using namespace hilbert5;

namespace {

std::vector<PrimeIdeal> good_primes(const IdealRep& n, std::size_t count) {
  std::vector<PrimeIdeal> out;
  for (const auto& p : primes_up_to(200))
    if (n.coprime_to(p) && out.size() < count) out.push_back(p);
  return out;
}

}  // namespace

TEST_CASE("level one has only the Eisenstein class") {
  HeckeSpace sp(IdealRep(FieldElem(1)));
  CHECK(sp.dimension() == 1);
  CHECK(rational_newforms(IdealRep(FieldElem(1)), 50).empty());
}

TEST_CASE("Hecke matrices at norm 31") {
  IdealRep n(FieldElem(-3, 5));
  HeckeSpace sp(n);
  std::int64_t total = 0;
  for (auto s : sp.orbit_sizes()) total += s;
  CHECK(total == sp.p1().size());
  CHECK(sp.dimension() >= 2);
  const auto primes = good_primes(n, 5);
  std::vector<QMatrix> ts;
  for (const auto& p : primes) {
    QMatrix t = sp.hecke_matrix(p);
    for (std::size_t c = 0; c < t.cols(); ++c) {
      mpq_class sum = 0;
      for (std::size_t r = 0; r < t.rows(); ++r) sum += t(r, c);
      CHECK(sum == p.norm + 1);
    }
    ts.push_back(t);
  }
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = i + 1; j < ts.size(); ++j) CHECK(ts[i] * ts[j] == ts[j] * ts[i]);
  // Generator independence: pi * phi^2 gives the same operator.
  for (const auto& p : primes) CHECK(sp.hecke_matrix(p.gen * phi_power(2)) == sp.hecke_matrix(p));
  CHECK_THROWS(sp.hecke_matrix(n.factorization()[0].prime));
  const QMatrix w = sp.atkin_lehner(n.factorization()[0].prime);
  CHECK(w * w == QMatrix::identity(sp.dimension()));
  for (const auto& t : ts) CHECK(w * t == t * w);
}

TEST_CASE("Atkin-Lehner at a composite level") {
  IdealRep n(FieldElem(26, -38));
  HeckeSpace sp(n);
  for (const auto& f : n.factorization()) {
    const QMatrix w = sp.atkin_lehner(f.prime);
    CHECK(w * w == QMatrix::identity(sp.dimension()));
    const QMatrix t = sp.hecke_matrix(primes_above(3)[0]);
    CHECK(w * t == t * w);
  }
}

TEST_CASE("newforms at norm 31 and eigenvalue files") {
  IdealRep n(FieldElem(-3, 5));
  auto forms = rational_newforms(n, 100);
  REQUIRE(forms.size() == 1);
  for (const auto& [p, a] : forms[0].good_eigenvalues()) CHECK(a * a <= 4 * p.norm);
  std::stringstream ss;
  write_eigenvalues(ss, forms[0]);
  const std::string text = ss.str();
  NewformRecord back = read_eigenvalues(ss);
  std::stringstream again;
  write_eigenvalues(again, back);
  CHECK(again.str() == text);
  CHECK(text.rfind("LEVEL 2*phi+5 31\n", 0) == 0);
}
