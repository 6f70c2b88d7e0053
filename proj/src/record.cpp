#include "hilbert5/record.hpp"

#include <stdexcept>
#include <vector>

namespace hilbert5 {

std::string CurveRecord::to_line() const {
  std::string m = model.to_string();
  m = m.substr(1, m.size() - 2);
  std::string out = label + "|" + conductor.gen().to_string() + "|" + conductor_norm.get_str() + "|" + m + "|" +
                    isogeny_class + "|" + torsion.to_string() + "|";
  if (rank) out += std::to_string(*rank);
  return out;
}

CurveRecord CurveRecord::parse_line(std::string_view line) {
  std::vector<std::string> f;
  std::string cur;
  for (char c : line) {
    if (c == '|') {
      f.push_back(cur);
      cur.clear();
    } else if (c != '\r' && c != '\n') {
      cur += c;
    }
  }
  f.push_back(cur);
  if (f.size() != 7) throw std::invalid_argument("curve record needs 7 fields: " + std::string(line));
  CurveRecord r;
  r.label = f[0];
  r.conductor = IdealRep(FieldElem::parse(f[1]));
  r.conductor_norm = mpz_class(f[2]);
  if (r.conductor.norm() != r.conductor_norm)
    throw std::invalid_argument("conductor norm does not match generator: " + std::string(line));
  r.model = CurveModel::parse(f[3]);
  r.isogeny_class = f[4];
  r.torsion = TorsionStructure::parse(f[5]);
  if (!f[6].empty()) r.rank = std::stol(f[6]);
  return r;
}

CurveRecord make_record(const CurveModel& e) {
  CurveRecord r;
  r.model = global_minimal_model(e);
  r.conductor = conductor(r.model);
  r.conductor_norm = r.conductor.norm();
  r.torsion = torsion_subgroup(r.model);
  return r;
}

}  // namespace hilbert5
