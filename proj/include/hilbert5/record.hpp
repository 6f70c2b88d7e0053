// One line per curve in the dataset files.
#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "hilbert5/curve.hpp"

namespace hilbert5 {

struct CurveRecord {
  std::string label;  // "<cond_norm>.<class_letter>.<index>", empty until labelled
  CurveModel model;   // global minimal, canonical form
  IdealRep conductor;
  mpz_class conductor_norm;
  TorsionStructure torsion;
  std::string isogeny_class;  // "<cond_norm>.<class_letter>"
  std::optional<long> rank;   // ingested only

  /// `<label>|<cond_gen>|<cond_norm>|<a1>,<a2>,<a3>,<a4>,<a6>|<class_label>|<torsion>|<rank?>`
  std::string to_line() const;
  static CurveRecord parse_line(std::string_view line);
};

/// Minimal model, conductor and torsion of a curve; labels left empty.
CurveRecord make_record(const CurveModel& e);

}  // namespace hilbert5
