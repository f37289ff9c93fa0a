#pragma once

// JSON reports. Every top-level report carries "schema" and a "kind"
// discriminator ("group", "linear" or "scan"); sets and subspaces are written
// as instance literals so they can be fed back to the command line.

#include <string>

#include <json.hpp>

#include "addmatch/field.hpp"
#include "addmatch/group.hpp"
#include "addmatch/group_matching.hpp"
#include "addmatch/linear_matching.hpp"

namespace addmatch {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "addmatch-report/1";

Json report_header(const std::string& kind, const std::string& command);

/// Integers for a cyclic group, "(x,y)" strings otherwise.
Json element_json(const Group& g, Element x);
Json certificate_json(const Group& g, const MatchingCertificate& cert);
Json violator_json(const Group& g, const HallViolator& v);
Json condition_json(const ConditionResult& r);
Json structure_witness_json(const Group& g, const StructureWitness& w);

Json basis_json(const FieldExtension& e, const OrderedBasis& basis);
Json linear_condition_json(const LinearConditionResult& r);
Json atom_report_json(const FieldExtension& e, const AtomReport& r);
Json subfield_witness_json(const FieldExtension& e, const SubfieldAtomWitness& w);

/// Indented "key: value" rendering used by --text.
std::string render_text(const Json& j);

}  // namespace addmatch
