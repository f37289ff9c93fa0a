#include "addmatch/report.hpp"

namespace addmatch {

Json report_header(const std::string& kind, const std::string& command) {
  Json j;
  j["schema"] = kReportSchema;
  j["kind"] = kind;
  j["command"] = command;
  return j;
}

Json element_json(const Group& g, Element x) {
  if (g.is_single_cyclic()) return x;
  return g.element_to_string(x);
}

Json certificate_json(const Group& g, const MatchingCertificate& cert) {
  Json pairs = Json::array();
  for (const auto& [a, b] : cert.pairs) pairs.push_back(Json::array({element_json(g, a), element_json(g, b)}));
  return pairs;
}

Json violator_json(const Group& g, const HallViolator& v) {
  Json j;
  j["S"] = v.subset.to_string(g);
  j["V_S"] = v.common_non_neighbours.to_string(g);
  return j;
}

Json condition_json(const ConditionResult& r) {
  Json j;
  j["part"] = r.part;
  j["holds"] = r.holds;
  j["evidence"] = r.evidence;
  if (r.l) j["l"] = *r.l;
  if (r.max_l) j["max_l"] = *r.max_l;
  if (r.note) j["note"] = *r.note;
  return j;
}

Json structure_witness_json(const Group& g, const StructureWitness& w) {
  Json j;
  j["S"] = w.s.to_string(g);
  j["W"] = w.w.to_string(g);
  j["SW"] = w.sumset.to_string(g);
  j["classification"] = w.classification;
  j["min_length"] = w.min_length;
  if (w.quasi_periodic) {
    j["period"] = w.quasi_periodic->period.elements.to_string(g);
    j["periodic_part"] = w.quasi_periodic->periodic_part.to_string(g);
    j["remainder"] = w.quasi_periodic->remainder.to_string(g);
  }
  if (w.progression) {
    j["progression"] = {{"initial", element_json(g, w.progression->initial)},
                        {"ratio", element_json(g, w.progression->ratio)},
                        {"length", w.progression->length}};
  }
  return j;
}

Json basis_json(const FieldExtension& e, const OrderedBasis& basis) {
  Json arr = Json::array();
  for (auto x : basis.vectors) arr.push_back(e.element_to_string(x));
  return arr;
}

Json linear_condition_json(const LinearConditionResult& r) {
  Json j;
  j["part"] = r.part;
  j["holds"] = r.holds;
  j["evidence"] = r.evidence;
  return j;
}

Json atom_report_json(const FieldExtension& e, const AtomReport& r) {
  Json j;
  j["psi_nonempty"] = r.psi_nonempty;
  j["kappa"] = r.kappa ? Json(*r.kappa) : Json(nullptr);
  if (r.psi_nonempty) {
    j["fragment"] = subspace_to_string(e, r.fragment);
    j["atom"] = subspace_to_string(e, r.atom);
    j["atom_dim"] = r.atom.dim();
    j["atom_is_field"] = is_subfield(e, r.atom);
  }
  j["fragment_count"] = r.fragment_count;
  j["subspaces_scanned"] = r.subspaces_scanned;
  return j;
}

Json subfield_witness_json(const FieldExtension& e, const SubfieldAtomWitness& w) {
  Json j;
  Json jj = Json::array();
  for (auto i : w.j) jj.push_back(i + 1);
  j["J"] = jj;
  j["V_J"] = subspace_to_string(e, w.v_j);
  j["W_J"] = subspace_to_string(e, w.w_j);
  j["S_J"] = subspace_to_string(e, w.s_j);
  j["premise_holds"] = w.premise_holds;
  j["atom"] = subspace_to_string(e, w.atom);
  j["atom_degree"] = w.atom_degree;
  j["atom_is_field"] = w.atom_is_field;
  j["kappa"] = w.report.kappa ? Json(*w.report.kappa) : Json(nullptr);
  return j;
}

namespace {

void render(const Json& j, const std::string& indent, std::string& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& v = it.value();
    const std::string key = j.is_array() ? "-" : it.key() + ":";
    if (v.is_object() || (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array()))) {
      out += indent + key + "\n";
      render(v, indent + "  ", out);
    } else if (v.is_string()) {
      out += indent + key + " " + v.get<std::string>() + "\n";
    } else {
      out += indent + key + " " + v.dump() + "\n";
    }
  }
}

}  // namespace

std::string render_text(const Json& j) {
  std::string out;
  render(j, "", out);
  return out;
}

}  // namespace addmatch
