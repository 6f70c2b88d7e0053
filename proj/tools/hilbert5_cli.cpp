#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "hilbert5/cm.hpp"
#include "hilbert5/dataset.hpp"
#include "hilbert5/hecke.hpp"
#include "hilbert5/isogeny.hpp"
#include "hilbert5/periods.hpp"
#include "hilbert5/search.hpp"

using namespace hilbert5;

namespace {

IdealRep parse_level(const std::string& text) { return IdealRep(FieldElem::parse(text)); }

NewformRecord pick_form(const IdealRep& level, long bound_ap, std::size_t index) {
  const auto forms = rational_newforms(level, bound_ap);
  if (index >= forms.size())
    throw std::runtime_error("level " + level.gen().to_string() + " has " + std::to_string(forms.size()) +
                             " rational newforms; index " + std::to_string(index) + " requested");
  return forms[index];
}

void print_records(const std::vector<CurveModel>& curves) {
  for (const CurveModel& c : curves) std::cout << make_record(c).to_line() << "\n";
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elliptic curves over Q(sqrt 5): newforms, curve searches, isogenies, periods, CM and datasets"};
  app.require_subcommand(1);

  // hmf
  auto* hmf = app.add_subcommand("hmf", "rational Hilbert newforms of parallel weight 2 at a level");
  std::string hmf_level;
  long hmf_bound = 100;
  hmf->add_option("--level", hmf_level, "generator of the level, e.g. 5*phi-3")->required();
  hmf->add_option("--bound-ap", hmf_bound, "largest prime norm in the eigenvalue tables");
  hmf->callback([&] {
    const auto forms = rational_newforms(parse_level(hmf_level), hmf_bound);
    std::cout << "# " << forms.size() << " rational newform(s)\n";
    for (const NewformRecord& f : forms) {
      write_eigenvalues(std::cout, f);
      std::cout << "\n";
    }
  });

  // search
  auto* search = app.add_subcommand("search", "curves matching a newform");
  std::string search_level, strategy = "sieve";
  long search_bound = 100, height = 8;
  std::size_t form_index = 0;
  int torsion = 0;
  search->add_option("--level", search_level, "generator of the level")->required();
  search->add_option("--form", form_index, "index of the newform at the level");
  search->add_option("--bound-ap", search_bound, "eigenvalue table bound");
  search->add_option("--strategy", strategy, "naive, sieve or family")->check(CLI::IsMember({"naive", "sieve", "family"}));
  search->add_option("--height", height, "box height (naive) or lift height (sieve)");
  search->add_option("--torsion", torsion, "torsion order for the family strategy");
  search->callback([&] {
    const NewformRecord form = pick_form(parse_level(search_level), search_bound, form_index);
    SearchResult r;
    if (strategy == "naive") {
      r = naive_search(SearchBox::uniform(height), form);
    } else if (strategy == "sieve") {
      r = sieved_search(default_sieve(form, height), form);
    } else {
      if (torsion == 0) throw CLI::ValidationError("--torsion", "family search needs --torsion");
      r = family_search(torsion, FamilyParams{}, form);
    }
    std::cout << "# visited " << r.visited << " models\n";
    print_records(r.curves);
  });

  // twist
  auto* twist = app.add_subcommand("twist", "quadratic twists of bounded conductor norm");
  std::string twist_curve;
  long twist_bound = 0;
  twist->add_option("--curve", twist_curve, "[a1,a2,a3,a4,a6]")->required();
  twist->add_option("--bound", twist_bound, "largest conductor norm kept")->required();
  twist->callback([&] {
    for (const TwistOutcome& t : twist_closure({CurveModel::parse(twist_curve), twist_bound}))
      std::cout << "d=" << t.d.to_string() << " " << t.record.to_line() << "\n";
  });

  // isogeny
  auto* iso = app.add_subcommand("isogeny", "isogeny class under prime degrees");
  std::string iso_curve;
  std::vector<long> iso_degrees{2, 3, 5, 7};
  std::size_t budget = 32;
  iso->add_option("--curve", iso_curve, "[a1,a2,a3,a4,a6]")->required();
  iso->add_option("--degrees", iso_degrees, "prime degrees to follow")->delimiter(',');
  iso->add_option("--budget", budget, "largest class size before giving up");
  iso->callback([&] {
    const IsogenyClass cls = isogeny_closure(CurveModel::parse(iso_curve), iso_degrees, budget);
    std::cerr << "warning: the class is closed only under the requested degrees;"
                 " isogenies of other prime degrees are not searched\n";
    for (const CurveRecord& r : cls.records()) std::cout << r.to_line() << "\n";
    std::cout << "# degree matrix\n";
    for (const auto& row : cls.degrees) {
      for (std::size_t j = 0; j < row.size(); ++j) std::cout << (j ? " " : "") << row[j];
      std::cout << "\n";
    }
  });

  // periods
  auto* per = app.add_subcommand("periods", "recover a curve from twisted L-values");
  std::string lvalues_path, eig_path, per_level;
  std::optional<int> sign;
  long radius = 1;
  per->add_option("--level", per_level, "level generator; checked against the eigenvalue file");
  per->add_option("--lvalues", lvalues_path, "L-value file")->required()->check(CLI::ExistingFile);
  per->add_option("--eigenvalues", eig_path, "eigenvalue table of the form")->required()->check(CLI::ExistingFile);
  per->add_option("--sign", sign, "functional equation sign, +1 or -1");
  per->add_option("--radius", radius, "search radius around the rounded coefficients");
  per->callback([&] {
    std::ifstream lin(lvalues_path), ein(eig_path);
    const LValueSet values = read_lvalues(lin);
    NewformRecord form = read_eigenvalues(ein);
    if (!per_level.empty() && !(parse_level(per_level) == form.level))
      throw std::runtime_error("the eigenvalue file is for level " + form.level.gen().to_string());
    if (sign) form.sign = *sign;
    RecoveryOptions opt;
    opt.radius = radius;
    const RecoveryResult r = recover_curve(values, form, opt);
    for (int i = 0; i < 4; ++i)
      std::cout << "Omega^" << sign_label(i) << " ~ " << r.guesses.omega[static_cast<std::size_t>(i)].to_string(15) << "\n";
    std::cout << "discriminants tried: " << r.deltas_tried << "\n";
    if (!r.found) {
      std::cout << "no curve recognized\n";
      throw CLI::RuntimeError(2);
    }
    std::cout << "j ~ " << r.j.first.to_string(15) << ", " << r.j.second.to_string(15) << "\n";
    std::cout << "Delta = " << r.delta.to_string() << "\n";
    std::cout << "c4 = " << r.found->c4.to_string() << "\nc6 = " << r.found->c6.to_string() << "\n";
    std::cout << make_record(r.found->curve).to_line() << "\n";
  });

  // cm
  auto* cm = app.add_subcommand("cm", "CM j-invariants in F");
  bool cm_list = false;
  std::string cm_j;
  cm->add_flag("--list", cm_list, "print the catalog with a model for each j");
  cm->add_option("--j", cm_j, "test an integral j-invariant (CM j-invariants are integral)");
  cm->callback([&] {
    if (!cm_j.empty()) {
      const auto d = is_cm(FieldElem::parse(cm_j));
      std::cout << (d ? "CM by discriminant " + std::to_string(*d) : std::string("not CM")) << "\n";
    }
    if (cm_list || cm_j.empty())
      for (const CmEntry& e : cm_j_invariants())
        std::cout << e.D << " " << e.j.to_string() << " " << curve_with_j(FieldQ(e.j)).to_string() << "\n";
  });

  // generate
  auto* gen = app.add_subcommand("generate", "rebuild the curve dataset up to a conductor norm bound");
  long gen_bound = 200;
  std::string gen_out;
  gen->add_option("--bound", gen_bound, "largest conductor norm");
  gen->add_option("--out", gen_out, "dataset file to write")->required();
  gen->callback([&] {
    GenerateReport report;
    const Dataset ds =
        generate_dataset(gen_bound, {}, &report, [](const std::string& line) { std::cerr << line << "\n"; });
    auto out = open_out(gen_out);
    write_dataset(out, ds);
    std::cerr << ds.classes().size() << " classes, " << ds.records.size() << " curves; " << report.unmatched.size()
              << " newform(s) without a curve\n";
    if (!report.unmatched.empty()) throw CLI::RuntimeError(2);
  });

  // ingest
  auto* ing = app.add_subcommand("ingest", "normalize an external curve list into a dataset");
  std::string ing_in, ing_out;
  ing->add_option("--input", ing_in, "external file")->required()->check(CLI::ExistingFile);
  ing->add_option("--out", ing_out, "dataset file to write")->required();
  ing->callback([&] {
    const IngestResult r = ingest_external_file(ing_in);
    for (const std::string& n : r.notes) std::cerr << n << "\n";
    auto out = open_out(ing_out);
    write_dataset(out, r.dataset);
  });

  // tables
  auto* tab = app.add_subcommand("tables", "summary tables of a dataset");
  std::string tab_path;
  std::optional<long> tab_bound;
  tab->add_option("--dataset", tab_path, "dataset file")->required()->check(CLI::ExistingFile);
  tab->add_option("--bound", tab_bound, "restrict to conductor norm <= bound");
  tab->callback([&] { std::cout << generate_tables(read_dataset_file(tab_path), tab_bound).render(); });

  // verify
  auto* ver = app.add_subcommand("verify", "recheck every record of a dataset");
  std::string ver_path;
  ver->add_option("--dataset", ver_path, "dataset file")->required()->check(CLI::ExistingFile);
  ver->callback([&] {
    const VerifyReport r = verify(read_dataset_file(ver_path));
    for (const Violation& v : r.violations) std::cout << v.label << " " << v.kind << ": " << v.detail << "\n";
    std::cout << r.records_checked << " records, " << r.violations.size() << " violation(s)\n";
    if (!r.clean()) throw CLI::RuntimeError(1);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
