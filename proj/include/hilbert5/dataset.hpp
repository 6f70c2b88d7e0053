// Curve datasets: labelling, the on-disk format, ingestion of external lists, verification,
// summary tables and regeneration from newforms.
#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hilbert5/hecke.hpp"
#include "hilbert5/isogeny.hpp"
#include "hilbert5/record.hpp"
#include "hilbert5/search.hpp"

namespace hilbert5 {

enum class Provenance { naive, sieve, family, twist, periods, external };
std::string to_string(Provenance p);
Provenance parse_provenance(std::string_view text);

class DatasetParseError : public std::runtime_error {
 public:
  DatasetParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Records sharing an isogeny_class string form one class. Provenance runs parallel to records.
struct Dataset {
  long bound = 0;
  std::vector<long> degrees{2, 3, 5, 7};
  std::vector<CurveRecord> records;
  std::vector<Provenance> provenance;

  /// Appends the class under a placeholder class label; call relabel() afterwards.
  void add_class(const IsogenyClass& cls, Provenance how);
  /// Indices of the records in each class, classes in label order.
  std::vector<std::vector<std::size_t>> classes() const;
};

/// Class letters for 0, 1, ..., 25, 26, ... : a, b, ..., z, ba, bb, ... (base 26, a = 0).
std::string class_letter(std::size_t index);

/// Reassigns labels. Classes are grouped by their current isogeny_class string; within a
/// conductor norm, classes are ordered by the height of their smallest member and then by its
/// coefficients, and members within a class likewise. Records end up sorted by label.
void relabel(Dataset& ds);

/// "BOUND <n>" and "DEGREES <l> ..." headers, then one record line per curve followed by
/// " # <provenance>". Blank lines and lines starting with '#' are ignored.
void write_dataset(std::ostream& out, const Dataset& ds);
Dataset read_dataset(std::istream& in);
Dataset read_dataset_file(const std::string& path);

struct IngestResult {
  Dataset dataset;
  std::vector<std::string> notes;  // normalizations and recomputed fields, with line numbers
};

/// Accepts full record lines (recomputed and relabelled; stored conductor or torsion that
/// disagrees is noted) and bare lines "[a1,a2,a3,a4,a6] [rank]". Non-minimal models are
/// replaced by the canonical minimal model and noted. Records without a class label are
/// grouped by isogeny closure. Rank values are kept as given.
IngestResult ingest_external(std::istream& in);
IngestResult ingest_external_file(const std::string& path);

struct Violation {
  std::string label;
  std::string kind;  // duplicate-label, conductor, torsion, model, bound, class-closure, ap, label-form
  std::string detail;
};

struct VerifyReport {
  std::vector<Violation> violations;
  std::size_t records_checked = 0;
  bool clean() const { return violations.empty(); }
};

/// Checks label uniqueness and form, minimality of stored models, conductor and torsion
/// recomputation, the bound, closure of each class under the dataset's isogeny degrees, and
/// agreement of a_p within each class at good primes of norm <= ap_bound. Records are checked
/// on several threads.
VerifyReport verify(const Dataset& ds, long ap_bound = 50);

using RankKey = std::optional<long>;  // nullopt for unknown rank

struct RankCounts {
  std::map<RankKey, long> isog;
  std::map<RankKey, long> isom;
  long total_isog = 0;
  long total_isom = 0;
};

struct TotalsRow {
  RankKey rank;
  long isog = 0;
  long isom = 0;
  std::optional<mpz_class> smallest_norm;
};

struct SizeHistogramRow {
  long bound = 0;
  std::map<long, long> by_size;  // class size -> number of classes
  long total = 0;
};

struct CumulativeRow {
  long bound = 0;
  RankCounts counts;
};

struct DegreeRow {
  std::optional<long> degree;  // nullopt: classes with no isogeny
  long isog = 0;
  long isom = 0;
  std::optional<CurveRecord> example;
};

struct TorsionRow {
  TorsionStructure structure;
  long isom = 0;
  std::optional<CurveRecord> example;
};

struct Tables {
  std::vector<TotalsRow> totals;          // by rank
  TotalsRow grand_total;                  // rank left unset
  std::vector<long> sizes;                // class sizes shown as columns
  std::vector<SizeHistogramRow> size_histogram;
  std::vector<CumulativeRow> cumulative;
  std::vector<DegreeRow> degrees;
  std::vector<TorsionRow> torsion;

  std::string render() const;
};

/// The rank column always lists ranks 0, 1 and 2; an "unknown" rank column appears whenever some
/// record has no rank. Class sizes 1, 2, 3, 4, 6, 8, 10 are always shown; the histogram has
/// rows for bound 199 and the dataset bound (or an explicit bound). Cumulative rows use the cut
/// points 200, 400, ..., 1800, 1831 up to the bound, or the bound itself when it is below 200.
/// Examples are the record of smallest conductor norm, ties by label.
Tables generate_tables(const Dataset& ds, std::optional<long> bound = std::nullopt);

struct GenerateOptions {
  long ap_bound = 100;
  std::vector<long> sieve_heights{8, 16, 32, 64};
  long naive_height = 2;
  FamilyParams family;
  std::size_t closure_budget = 32;
};

struct GenerateReport {
  std::vector<NewformRecord> unmatched;  // forms no strategy found a curve for
  std::map<Provenance, long> seeds;      // classes by the strategy that found them
};

using ProgressFn = std::function<void(const std::string&)>;

/// Every rational newform at every level of norm <= bound, a curve for each via torsion
/// families, a small naive box and then the sieve at increasing lift heights, closed under
/// isogenies and relabelled.
Dataset generate_dataset(long bound, const GenerateOptions& options = {}, GenerateReport* report = nullptr,
                         const ProgressFn& progress = {});

}  // namespace hilbert5
