#include <algorithm>
#include <random>
#include <sstream>

#include "doctest.h"
#include "hilbert5/dataset.hpp"

using namespace hilbert5;

namespace {

const Dataset& shipped() {
  static const Dataset ds = read_dataset_file(std::string(HILBERT5_DATA_DIR) + "/curves_200.txt");
  return ds;
}

std::string serialize(const Dataset& ds) {
  std::ostringstream out;
  write_dataset(out, ds);
  return out.str();
}

bool has_violation(const VerifyReport& r, const std::string& kind) {
  return std::any_of(r.violations.begin(), r.violations.end(), [&](const Violation& v) { return v.kind == kind; });
}

}  // namespace

TEST_CASE("class letters") {
  CHECK(class_letter(0) == "a");
  CHECK(class_letter(25) == "z");
  CHECK(class_letter(26) == "ba");
  CHECK(class_letter(27) == "bb");
  CHECK(class_letter(26 * 26) == "baa");
}

TEST_CASE("record lines survive a write and read") {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<long> coef(-5000, 5000), small(-3, 3), rank(-1, 3);
  const TorsionStructure tors[] = {{1, 1}, {1, 2}, {2, 2}, {1, 7}, {2, 8}, {1, 15}};
  for (int trial = 0; trial < 300; ++trial) {
    CurveRecord r;
    FieldElem g(coef(rng), coef(rng));
    if (g.is_zero()) g = FieldElem(1);
    r.conductor = IdealRep(g);
    r.conductor_norm = r.conductor.norm();
    for (auto& c : r.model.a) c = FieldElem(coef(rng), small(rng));
    r.isogeny_class = r.conductor_norm.get_str() + "." + class_letter(static_cast<std::size_t>(trial % 40));
    r.label = r.isogeny_class + "." + std::to_string(trial % 9 + 1);
    r.torsion = tors[trial % 6];
    const long k = rank(rng);
    if (k >= 0) r.rank = k;
    const std::string line = r.to_line();
    const CurveRecord back = CurveRecord::parse_line(line);
    CHECK(back.to_line() == line);
    CHECK(back.model == r.model);
    CHECK(back.rank == r.rank);
  }
  CHECK_THROWS(CurveRecord::parse_line("31.a.1|2*phi+5|32|1,-phi-1,phi,0,0|31.a|Z/8Z|"));
  CHECK_THROWS(CurveRecord::parse_line("31.a.1|2*phi+5|31|1,-phi-1,phi,0,0|31.a|Z/8Z"));
}

TEST_CASE("the shipped bound-200 dataset") {
  const Dataset& ds = shipped();
  CHECK(ds.bound == 200);
  CHECK(ds.records.size() == 263);
  CHECK(ds.classes().size() == 64);
  std::istringstream text(serialize(ds));
  CHECK(serialize(read_dataset(text)) == serialize(ds));
  const VerifyReport report = verify(ds);
  for (const Violation& v : report.violations) CAPTURE(v.label + " " + v.kind + " " + v.detail);
  CHECK(report.clean());
  CHECK(report.records_checked == 263);
  const Tables t = generate_tables(ds);
  CHECK(t.grand_total.isog == 64);
  CHECK(t.grand_total.isom == 263);
  REQUIRE(t.size_histogram.size() == 2);
  CHECK(t.size_histogram[0].bound == 199);
  const std::map<long, long> expected{{1, 2}, {2, 21}, {3, 3}, {4, 20}, {6, 8}, {8, 9}, {10, 1}};
  CHECK(t.size_histogram[0].by_size == expected);
  REQUIRE(t.cumulative.size() == 1);
  CHECK(t.cumulative[0].bound == 200);
  CHECK(t.cumulative[0].counts.total_isog == 64);
  CHECK(t.cumulative[0].counts.total_isom == 263);
  // no rank data: everything is in the unknown column
  CHECK(t.cumulative[0].counts.isog.at(std::nullopt) == 64);
  CHECK(t.cumulative[0].counts.isog.at(0L) == 0);
  long torsion_total = 0;
  for (const TorsionRow& row : t.torsion) {
    CHECK(allowed_torsion(row.structure));
    torsion_total += row.isom;
  }
  CHECK(torsion_total == 263);
  CHECK(t.degrees.front().isog == 2);  // the two singleton classes at norm 179
}

TEST_CASE("verification catches injected faults") {
  Dataset ds;
  ds.bound = 200;
  ds.add_class(isogeny_closure(CurveModel::parse("[0,-1,1,-10,-20]")), Provenance::family);
  ds.add_class(isogeny_closure(CurveModel::parse("[phi,-phi+1,0,-4,3*phi-5]")), Provenance::naive);
  relabel(ds);
  CHECK(verify(ds).clean());
  CHECK(ds.records.front().label == "99.a.1");

  SUBCASE("corrupted a4") {
    ds.records[0].model.a[3] += FieldElem(1);
    const VerifyReport r = verify(ds);
    CHECK(has_violation(r, "conductor"));
    CHECK(has_violation(r, "class-closure"));
  }
  SUBCASE("duplicate label") {
    ds.records[1].label = ds.records[0].label;
    CHECK(has_violation(verify(ds), "duplicate-label"));
  }
  SUBCASE("wrong torsion") {
    ds.records[0].torsion = TorsionStructure{1, 3};
    CHECK(has_violation(verify(ds), "torsion"));
  }
  SUBCASE("missing class member") {
    ds.records.pop_back();
    ds.provenance.pop_back();
    CHECK(has_violation(verify(ds), "class-closure"));
  }
  SUBCASE("bound") {
    ds.bound = 100;
    CHECK(has_violation(verify(ds), "bound"));
  }
}

TEST_CASE("tables are a pure fold") {
  Dataset ds = shipped();
  const std::string before = generate_tables(ds).render();
  std::mt19937 rng(7);
  std::vector<std::size_t> perm(ds.records.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  Dataset shuffled;
  shuffled.bound = ds.bound;
  for (std::size_t i : perm) {
    shuffled.records.push_back(ds.records[i]);
    shuffled.provenance.push_back(ds.provenance[i]);
  }
  CHECK(generate_tables(shuffled).render() == before);

  const Tables empty = generate_tables(Dataset{});
  CHECK(empty.grand_total.isog == 0);
  CHECK(empty.grand_total.isom == 0);
  for (const auto& row : empty.size_histogram) CHECK(row.total == 0);
  for (const auto& row : empty.torsion) CHECK(row.isom == 0);
  for (const auto& row : empty.degrees) CHECK(row.isom == 0);
}

TEST_CASE("ingesting external lists") {
  SUBCASE("bare models are normalized, grouped and keep their rank") {
    std::istringstream in(
        "# a small list\n"
        "[0,-1,1,-10,-20] 0\n"
        "[0,-1,1,-7820,-263580]\n"
        "[0,-1,1,0,0] 0\n"
        "[0,-4,8,-160,-1280] 0\n");  // 11a1 scaled by u = 2: not minimal
    const IngestResult r = ingest_external(in);
    const Dataset& ds = r.dataset;
    CHECK(ds.records.size() == 3);
    CHECK(ds.classes().size() == 1);
    CHECK(ds.bound == 121);
    bool normalized = false, duplicate = false;
    for (const std::string& n : r.notes) {
      if (n.find("line 5") != std::string::npos && n.find("normalized") != std::string::npos) normalized = true;
      if (n.find("line 5") != std::string::npos && n.find("duplicate") != std::string::npos) duplicate = true;
    }
    CHECK(normalized);
    CHECK(duplicate);
    for (const CurveRecord& rec : ds.records) {
      if (rec.model == CurveModel::parse("[0,-1,1,-7820,-263580]")) CHECK_FALSE(rec.rank.has_value());
      else CHECK(rec.rank == 0);
    }
  }
  SUBCASE("a second pass is stable") {
    std::istringstream in(serialize(shipped()));
    const IngestResult once = ingest_external(in);
    CHECK(once.notes.empty());
    std::istringstream again(serialize(once.dataset));
    const IngestResult twice = ingest_external(again);
    CHECK(serialize(twice.dataset) == serialize(once.dataset));
    CHECK(once.dataset.records.size() == 263);
  }
  SUBCASE("parse errors carry line numbers") {
    std::istringstream in("[0,-1,1,-10,-20]\n\n[0,-1,1,x,-20]\n");
    try {
      ingest_external(in);
      FAIL("expected a parse error");
    } catch (const DatasetParseError& e) {
      CHECK(e.line() == 3);
    }
    std::istringstream singular("[0,0,0,0,0]\n");
    CHECK_THROWS_AS(ingest_external(singular), DatasetParseError);
  }
  SUBCASE("stored conductors that disagree are noted") {
    std::istringstream in("x|7|49|0,-1,1,-10,-20|x.a|1|1\n");
    const IngestResult r = ingest_external(in);
    REQUIRE(r.dataset.records.size() == 1);
    CHECK(r.dataset.records[0].label == "121.a.1");
    CHECK(r.dataset.records[0].rank == 1);
    CHECK(r.notes.size() == 2);  // conductor and torsion
  }
}
