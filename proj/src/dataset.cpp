#include "hilbert5/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

#include "hilbert5/ideal.hpp"

namespace hilbert5 {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::naive: return "naive";
    case Provenance::sieve: return "sieve";
    case Provenance::family: return "family";
    case Provenance::twist: return "twist";
    case Provenance::periods: return "periods";
    case Provenance::external: return "external";
  }
  return "external";
}

Provenance parse_provenance(std::string_view text) {
  for (Provenance p : {Provenance::naive, Provenance::sieve, Provenance::family, Provenance::twist,
                       Provenance::periods, Provenance::external})
    if (to_string(p) == text) return p;
  throw std::invalid_argument("unknown provenance tag: " + std::string(text));
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool model_less(const CurveModel& x, const CurveModel& y) {
  const auto hx = model_height(x), hy = model_height(y);
  if (hx != hy) return hx < hy;
  return x.a < y.a;
}

// Runs f(i) for i in [0, n) on a few threads; f must only touch its own output slot.
template <class F>
void parallel_for(std::size_t n, F f) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w)
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < n; i += workers) f(i);
    }));
  for (auto& j : jobs) j.get();
}

}  // namespace

void Dataset::add_class(const IsogenyClass& cls, Provenance how) {
  const std::string key = "#pending-" + std::to_string(records.size());
  for (const CurveModel& c : cls.curves) {
    CurveRecord r = make_record(c);
    r.isogeny_class = key;
    records.push_back(std::move(r));
    provenance.push_back(how);
  }
}

std::vector<std::vector<std::size_t>> Dataset::classes() const {
  std::vector<std::vector<std::size_t>> out;
  std::map<std::string, std::size_t> where;
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto [it, fresh] = where.emplace(records[i].isogeny_class, out.size());
    if (fresh) out.emplace_back();
    out[it->second].push_back(i);
  }
  return out;
}

std::string class_letter(std::size_t index) {
  std::string s;
  do {
    s.insert(s.begin(), static_cast<char>('a' + index % 26));
    index /= 26;
  } while (index > 0);
  return s;
}

void relabel(Dataset& ds) {
  if (ds.provenance.size() != ds.records.size()) ds.provenance.resize(ds.records.size(), Provenance::external);
  auto groups = ds.classes();
  for (auto& g : groups)
    std::sort(g.begin(), g.end(),
              [&](std::size_t x, std::size_t y) { return model_less(ds.records[x].model, ds.records[y].model); });
  std::sort(groups.begin(), groups.end(), [&](const auto& x, const auto& y) {
    const CurveRecord& rx = ds.records[x.front()];
    const CurveRecord& ry = ds.records[y.front()];
    if (rx.conductor_norm != ry.conductor_norm) return rx.conductor_norm < ry.conductor_norm;
    return model_less(rx.model, ry.model);
  });
  std::vector<CurveRecord> records;
  std::vector<Provenance> provenance;
  mpz_class norm = -1;
  std::size_t letter = 0;
  for (const auto& g : groups) {
    const mpz_class& n = ds.records[g.front()].conductor_norm;
    if (n != norm) {
      norm = n;
      letter = 0;
    }
    const std::string cls = n.get_str() + "." + class_letter(letter++);
    for (std::size_t k = 0; k < g.size(); ++k) {
      CurveRecord r = ds.records[g[k]];
      r.isogeny_class = cls;
      r.label = cls + "." + std::to_string(k + 1);
      records.push_back(std::move(r));
      provenance.push_back(ds.provenance[g[k]]);
    }
  }
  ds.records = std::move(records);
  ds.provenance = std::move(provenance);
}

void write_dataset(std::ostream& out, const Dataset& ds) {
  out << "BOUND " << ds.bound << "\n";
  out << "DEGREES";
  for (long l : ds.degrees) out << " " << l;
  out << "\n";
  for (std::size_t i = 0; i < ds.records.size(); ++i) {
    out << ds.records[i].to_line();
    if (i < ds.provenance.size()) out << " # " << to_string(ds.provenance[i]);
    out << "\n";
  }
}

namespace {

struct SplitLine {
  std::string body;
  std::string comment;
};

SplitLine split_comment(const std::string& line) {
  const auto hash = line.find('#');
  if (hash == std::string::npos) return {trim(line), ""};
  return {trim(std::string_view(line).substr(0, hash)), trim(std::string_view(line).substr(hash + 1))};
}

// Returns true when the line was a BOUND or DEGREES header.
bool read_header(const std::string& body, std::size_t lineno, long& bound, std::vector<long>& degrees) {
  std::istringstream in(body);
  std::string word;
  in >> word;
  if (word == "BOUND") {
    if (!(in >> bound)) throw DatasetParseError(lineno, "BOUND needs an integer");
    return true;
  }
  if (word == "DEGREES") {
    degrees.clear();
    long l;
    while (in >> l) degrees.push_back(l);
    if (degrees.empty()) throw DatasetParseError(lineno, "DEGREES needs at least one degree");
    return true;
  }
  return false;
}

}  // namespace

Dataset read_dataset(std::istream& in) {
  Dataset ds;
  std::string line;
  std::size_t lineno = 0;
  bool saw_bound = false;
  while (std::getline(in, line)) {
    ++lineno;
    const SplitLine parts = split_comment(line);
    if (parts.body.empty()) continue;
    long b = ds.bound;
    if (read_header(parts.body, lineno, b, ds.degrees)) {
      if (parts.body.rfind("BOUND", 0) == 0) saw_bound = true;
      ds.bound = b;
      continue;
    }
    try {
      ds.records.push_back(CurveRecord::parse_line(parts.body));
      ds.provenance.push_back(parts.comment.empty() ? Provenance::external : parse_provenance(parts.comment));
    } catch (const std::exception& e) {
      throw DatasetParseError(lineno, e.what());
    }
  }
  if (!saw_bound)
    for (const CurveRecord& r : ds.records) ds.bound = std::max(ds.bound, r.conductor_norm.get_si());
  return ds;
}

Dataset read_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset " + path);
  return read_dataset(in);
}

IngestResult ingest_external(std::istream& in) {
  IngestResult res;
  Dataset& ds = res.dataset;
  ds.bound = -1;
  std::string line;
  std::size_t lineno = 0;
  std::set<std::array<FieldElem, 5>> seen;
  while (std::getline(in, line)) {
    ++lineno;
    const SplitLine parts = split_comment(line);
    if (parts.body.empty()) continue;
    if (read_header(parts.body, lineno, ds.bound, ds.degrees)) continue;
    CurveModel model;
    std::optional<CurveRecord> given;
    std::optional<long> rank;
    try {
      if (parts.body.find('|') != std::string::npos) {
        given = CurveRecord::parse_line(parts.body);
        model = given->model;
        rank = given->rank;
      } else {
        const auto close = parts.body.find(']');
        if (parts.body.front() != '[' || close == std::string::npos)
          throw std::invalid_argument("expected [a1,a2,a3,a4,a6] or a record line");
        model = CurveModel::parse(parts.body.substr(0, close + 1));
        const std::string rest = trim(std::string_view(parts.body).substr(close + 1));
        if (!rest.empty()) {
          std::size_t used = 0;
          rank = std::stol(rest, &used);
          if (used != rest.size()) throw std::invalid_argument("trailing text after rank: " + rest);
        }
      }
    } catch (const std::exception& e) {
      throw DatasetParseError(lineno, e.what());
    }
    CurveRecord r;
    try {
      r = make_record(model);
    } catch (const std::exception& e) {
      throw DatasetParseError(lineno, std::string("invalid curve: ") + e.what());
    }
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (!(r.model == model)) res.notes.push_back(where + model.to_string() + " normalized to " + r.model.to_string());
    if (given) {
      if (!(given->conductor == r.conductor)) res.notes.push_back(where + "conductor recomputed as " + r.conductor.gen().to_string());
      if (!(given->torsion == r.torsion)) res.notes.push_back(where + "torsion recomputed as " + r.torsion.to_string());
      r.isogeny_class = given->isogeny_class.empty() ? "" : "#given-" + given->isogeny_class;
    }
    r.rank = rank;
    if (!seen.insert(r.model.a).second) {
      res.notes.push_back(where + "duplicate of an earlier curve, dropped");
      continue;
    }
    ds.records.push_back(std::move(r));
    ds.provenance.push_back(Provenance::external);
  }
  // Curves without a class label are grouped by isogeny closure.
  std::size_t fresh = 0;
  for (std::size_t i = 0; i < ds.records.size(); ++i) {
    if (!ds.records[i].isogeny_class.empty()) continue;
    const std::string key = "#closure-" + std::to_string(fresh++);
    ds.records[i].isogeny_class = key;
    const IsogenyClass cls = isogeny_closure(ds.records[i].model, ds.degrees);
    for (std::size_t j = i + 1; j < ds.records.size(); ++j)
      if (ds.records[j].isogeny_class.empty() && cls.index_of(ds.records[j].model) >= 0) ds.records[j].isogeny_class = key;
  }
  if (ds.bound < 0) {
    ds.bound = 0;
    for (const CurveRecord& r : ds.records) ds.bound = std::max(ds.bound, r.conductor_norm.get_si());
  }
  relabel(ds);
  return res;
}

IngestResult ingest_external_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return ingest_external(in);
}

VerifyReport verify(const Dataset& ds, long ap_bound) {
  VerifyReport report;
  report.records_checked = ds.records.size();
  auto& out = report.violations;
  std::map<std::string, std::size_t> first;
  for (const CurveRecord& r : ds.records) {
    if (!first.emplace(r.label, 0).second) out.push_back({r.label, "duplicate-label", "label occurs more than once"});
    const auto dot = r.label.rfind('.');
    const bool well_formed = dot != std::string::npos && r.label.substr(0, dot) == r.isogeny_class &&
                             r.isogeny_class.rfind(r.conductor_norm.get_str() + ".", 0) == 0;
    if (!well_formed) out.push_back({r.label, "label-form", "label, class and conductor norm disagree"});
  }
  std::vector<std::vector<Violation>> per_record(ds.records.size());
  parallel_for(ds.records.size(), [&](std::size_t i) {
    const CurveRecord& r = ds.records[i];
    auto& v = per_record[i];
    try {
      const CurveModel m = global_minimal_model(r.model);
      if (!(m == r.model)) v.push_back({r.label, "model", "stored model is not the canonical minimal model " + m.to_string()});
      const IdealRep n = conductor(r.model);
      if (!(n == r.conductor) || n.norm() != r.conductor_norm)
        v.push_back({r.label, "conductor", "recomputed conductor " + n.gen().to_string() + " of norm " + n.norm().get_str()});
      const TorsionStructure t = torsion_subgroup(r.model);
      if (!(t == r.torsion)) v.push_back({r.label, "torsion", "recomputed torsion " + t.to_string()});
    } catch (const std::exception& e) {
      v.push_back({r.label, "model", std::string("cannot recompute: ") + e.what()});
    }
    if (r.conductor_norm > ds.bound) v.push_back({r.label, "bound", "conductor norm above " + std::to_string(ds.bound)});
  });
  for (auto& v : per_record) out.insert(out.end(), v.begin(), v.end());

  const auto groups = ds.classes();
  const auto primes = primes_up_to(ap_bound);
  std::vector<std::vector<Violation>> per_class(groups.size());
  parallel_for(groups.size(), [&](std::size_t g) {
    const auto& members = groups[g];
    auto& v = per_class[g];
    const CurveRecord& head = ds.records[members.front()];
    try {
      const IsogenyClass cls = isogeny_closure(head.model, ds.degrees);
      std::set<std::array<FieldElem, 5>> expected, stored;
      for (const CurveModel& c : cls.curves) expected.insert(c.a);
      for (std::size_t i : members) stored.insert(ds.records[i].model.a);
      if (expected != stored)
        v.push_back({head.isogeny_class, "class-closure",
                     "closure has " + std::to_string(expected.size()) + " curves, dataset has " + std::to_string(stored.size())});
    } catch (const std::exception& e) {
      v.push_back({head.isogeny_class, "class-closure", e.what()});
    }
    try {
      const auto bad = bad_primes(head.model);
      for (const PrimeIdeal& p : primes) {
        if (std::find(bad.begin(), bad.end(), p) != bad.end()) continue;
        const long a0 = ap_good(head.model, p);
        for (std::size_t i : members) {
          const CurveRecord& r = ds.records[i];
          const auto bad_r = bad_primes(r.model);
          if (std::find(bad_r.begin(), bad_r.end(), p) != bad_r.end()) {
            v.push_back({r.label, "ap", "bad at " + p.to_string() + " unlike " + head.label});
            continue;
          }
          const long a = ap_good(r.model, p);
          if (a != a0)
            v.push_back({r.label, "ap", "a_p at " + p.to_string() + " is " + std::to_string(a) + ", " + head.label +
                                            " has " + std::to_string(a0)});
        }
      }
    } catch (const std::exception& e) {
      v.push_back({head.isogeny_class, "ap", e.what()});
    }
  });
  for (auto& v : per_class) out.insert(out.end(), v.begin(), v.end());
  return report;
}

namespace {

const std::vector<TorsionStructure>& torsion_rows() {
  static const std::vector<TorsionStructure> rows = {{1, 1}, {1, 2}, {1, 3},  {1, 4},  {2, 2},  {1, 5},
                                                      {1, 6}, {1, 7}, {1, 8},  {2, 4},  {1, 9},  {1, 10},
                                                      {1, 12}, {2, 6}, {1, 15}, {2, 8}};
  return rows;
}

bool example_before(const CurveRecord& x, const CurveRecord& y) {
  if (x.conductor_norm != y.conductor_norm) return x.conductor_norm < y.conductor_norm;
  return x.label < y.label;
}

void offer_example(std::optional<CurveRecord>& slot, const CurveRecord& r) {
  if (!slot || example_before(r, *slot)) slot = r;
}

RankCounts count_by_rank(const Dataset& ds, const std::vector<std::vector<std::size_t>>& groups, long bound) {
  RankCounts c;
  for (const auto& g : groups) {
    const CurveRecord& head = ds.records[g.front()];
    if (head.conductor_norm > bound) continue;
    c.isog[head.rank] += 1;
    c.isom[head.rank] += static_cast<long>(g.size());
    c.total_isog += 1;
    c.total_isom += static_cast<long>(g.size());
  }
  return c;
}

std::string rank_name(const RankKey& r) { return r ? std::to_string(*r) : "unknown"; }

}  // namespace

Tables generate_tables(const Dataset& ds, std::optional<long> bound_opt) {
  const long bound = bound_opt.value_or(ds.bound);
  Tables t;
  auto groups = ds.classes();
  groups.erase(std::remove_if(groups.begin(), groups.end(),
                              [&](const auto& g) { return ds.records[g.front()].conductor_norm > bound; }),
               groups.end());

  std::set<RankKey> ranks{0L, 1L, 2L};
  for (const auto& g : groups) ranks.insert(ds.records[g.front()].rank);

  // Totals by rank.
  for (const RankKey& rank : ranks) {
    TotalsRow row;
    row.rank = rank;
    for (const auto& g : groups) {
      const CurveRecord& head = ds.records[g.front()];
      if (head.rank != rank) continue;
      row.isog += 1;
      row.isom += static_cast<long>(g.size());
      if (!row.smallest_norm || head.conductor_norm < *row.smallest_norm) row.smallest_norm = head.conductor_norm;
    }
    t.grand_total.isog += row.isog;
    t.grand_total.isom += row.isom;
    t.totals.push_back(row);
  }

  // Class sizes.
  std::set<long> sizes{1, 2, 3, 4, 6, 8, 10};
  for (const auto& g : groups) sizes.insert(static_cast<long>(g.size()));
  t.sizes.assign(sizes.begin(), sizes.end());
  std::vector<long> hist_bounds{199};
  if (bound != 199) hist_bounds.push_back(bound);
  for (long b : hist_bounds) {
    SizeHistogramRow row;
    row.bound = b;
    for (long s : t.sizes) row.by_size[s] = 0;
    for (const auto& g : groups) {
      if (ds.records[g.front()].conductor_norm > b) continue;
      row.by_size[static_cast<long>(g.size())] += 1;
      row.total += 1;
    }
    t.size_histogram.push_back(row);
  }

  // Cumulative counts.
  std::vector<long> cuts;
  for (long c : {200L, 400L, 600L, 800L, 1000L, 1200L, 1400L, 1600L, 1800L, 1831L})
    if (c <= bound) cuts.push_back(c);
  if (cuts.empty()) cuts.push_back(bound);
  for (long c : cuts) {
    CumulativeRow row;
    row.bound = c;
    row.counts = count_by_rank(ds, groups, c);
    for (const RankKey& r : ranks) {
      row.counts.isog.try_emplace(r, 0);
      row.counts.isom.try_emplace(r, 0);
    }
    t.cumulative.push_back(row);
  }

  // Isogeny degrees: which curves admit an l-isogeny, computed per record.
  std::vector<std::size_t> in_bound;
  for (const auto& g : groups) in_bound.insert(in_bound.end(), g.begin(), g.end());
  std::vector<std::vector<char>> has(ds.records.size(), std::vector<char>(ds.degrees.size(), 0));
  parallel_for(in_bound.size(), [&](std::size_t k) {
    const std::size_t i = in_bound[k];
    for (std::size_t d = 0; d < ds.degrees.size(); ++d)
      has[i][d] = kernel_polynomials(ds.records[i].model, ds.degrees[d]).empty() ? 0 : 1;
  });
  DegreeRow none;
  for (const auto& g : groups) {
    if (g.size() != 1) continue;
    none.isog += 1;
    none.isom += 1;
    offer_example(none.example, ds.records[g.front()]);
  }
  t.degrees.push_back(none);
  for (std::size_t d = 0; d < ds.degrees.size(); ++d) {
    DegreeRow row;
    row.degree = ds.degrees[d];
    for (const auto& g : groups) {
      bool any = false;
      for (std::size_t i : g) {
        if (!has[i][d]) continue;
        any = true;
        row.isom += 1;
        offer_example(row.example, ds.records[i]);
      }
      if (any) row.isog += 1;
    }
    t.degrees.push_back(row);
  }

  // Torsion structures.
  for (const TorsionStructure& s : torsion_rows()) {
    TorsionRow row;
    row.structure = s;
    for (const auto& g : groups)
      for (std::size_t i : g)
        if (ds.records[i].torsion == s) {
          row.isom += 1;
          offer_example(row.example, ds.records[i]);
        }
    t.torsion.push_back(row);
  }
  return t;
}

std::string Tables::render() const {
  std::ostringstream out;
  auto example = [](const std::optional<CurveRecord>& r) {
    return r ? r->model.to_string() + "  " + r->conductor_norm.get_str() : std::string("-");
  };
  out << "Table 1: curves by rank\n";
  out << std::left << std::setw(10) << "rank" << std::right << std::setw(8) << "#isog" << std::setw(8) << "#isom"
      << std::setw(16) << "smallest norm" << "\n";
  for (const TotalsRow& r : totals)
    out << std::left << std::setw(10) << rank_name(r.rank) << std::right << std::setw(8) << r.isog << std::setw(8)
        << r.isom << std::setw(16) << (r.smallest_norm ? r.smallest_norm->get_str() : "-") << "\n";
  out << std::left << std::setw(10) << "total" << std::right << std::setw(8) << grand_total.isog << std::setw(8)
      << grand_total.isom << std::setw(16) << "-" << "\n\n";

  out << "Table 2: isogeny classes by size\n" << std::left << std::setw(8) << "bound" << std::right;
  for (long s : sizes) out << std::setw(6) << s;
  out << std::setw(8) << "total" << "\n";
  for (const SizeHistogramRow& r : size_histogram) {
    out << std::left << std::setw(8) << r.bound << std::right;
    for (long s : sizes) out << std::setw(6) << r.by_size.at(s);
    out << std::setw(8) << r.total << "\n";
  }
  out << "\n";

  out << "Table 3: cumulative counts by rank (#isog | #isom)\n";
  if (!cumulative.empty()) {
    const auto& keys = cumulative.front().counts.isog;
    out << std::left << std::setw(8) << "bound" << std::right;
    for (const auto& [k, v] : keys) out << std::setw(9) << rank_name(k);
    out << std::setw(8) << "total" << "  |";
    for (const auto& [k, v] : keys) out << std::setw(9) << rank_name(k);
    out << std::setw(8) << "total" << "\n";
    for (const CumulativeRow& r : cumulative) {
      out << std::left << std::setw(8) << r.bound << std::right;
      for (const auto& [k, v] : r.counts.isog) out << std::setw(9) << v;
      out << std::setw(8) << r.counts.total_isog << "  |";
      for (const auto& [k, v] : r.counts.isom) out << std::setw(9) << v;
      out << std::setw(8) << r.counts.total_isom << "\n";
    }
  }
  out << "\n";

  out << "Table 4: isogeny degrees\n";
  for (const DegreeRow& r : degrees)
    out << std::left << std::setw(8) << (r.degree ? std::to_string(*r.degree) : "None") << std::right << std::setw(8)
        << r.isog << std::setw(8) << r.isom << "  " << example(r.example) << "\n";
  out << "\n";

  out << "Table 5: torsion structures\n";
  for (const TorsionRow& r : torsion)
    out << std::left << std::setw(14) << r.structure.to_string() << std::right << std::setw(8) << r.isom << "  "
        << example(r.example) << "\n";
  return out.str();
}

namespace {

struct Seed {
  CurveModel curve;
  Provenance how;
};

std::optional<Seed> find_curve(const NewformRecord& form, const GenerateOptions& opt) {
  for (int n : {2, 3, 4, 5, 6, 7, 8, 9, 10, 12}) {
    if (!torsion_filter(form, n)) continue;
    const SearchResult r = family_search(n, opt.family, form);
    if (!r.curves.empty()) return Seed{r.curves.front(), Provenance::family};
  }
  {
    const SearchResult r = naive_search(SearchBox::uniform(opt.naive_height), form);
    if (!r.curves.empty()) return Seed{r.curves.front(), Provenance::naive};
  }
  for (long h : opt.sieve_heights) {
    const SearchResult r = sieved_search(default_sieve(form, h), form);
    if (!r.curves.empty()) return Seed{r.curves.front(), Provenance::sieve};
  }
  return std::nullopt;
}

}  // namespace

Dataset generate_dataset(long bound, const GenerateOptions& options, GenerateReport* report, const ProgressFn& progress) {
  Dataset ds;
  ds.bound = bound;
  std::set<std::array<FieldElem, 5>> known;
  for (const IdealRep& level : ideals_up_to(bound)) {
    for (const NewformRecord& form : rational_newforms(level, options.ap_bound)) {
      const std::optional<Seed> seed = find_curve(form, options);
      const std::string name = level.norm().get_str() + " " + level.gen().to_string();
      if (!seed) {
        if (report) report->unmatched.push_back(form);
        if (progress) progress(name + ": no curve found");
        continue;
      }
      if (known.count(seed->curve.a)) continue;
      const IsogenyClass cls = isogeny_closure(seed->curve, ds.degrees, options.closure_budget);
      for (const CurveModel& c : cls.curves) known.insert(c.a);
      ds.add_class(cls, seed->how);
      if (report) report->seeds[seed->how] += 1;
      if (progress)
        progress(name + ": " + seed->curve.to_string() + " via " + to_string(seed->how) + ", class size " +
                 std::to_string(cls.size()));
    }
  }
  relabel(ds);
  return ds;
}

}  // namespace hilbert5
