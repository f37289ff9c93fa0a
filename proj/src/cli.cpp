#include "addmatch/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <optional>
#include <regex>

#include "addmatch/error.hpp"
#include "addmatch/group_matching.hpp"
#include "addmatch/instance.hpp"
#include "addmatch/linear_matching.hpp"
#include "addmatch/report.hpp"
#include "addmatch/search.hpp"

namespace addmatch::cli {

namespace {

struct Options {
  std::string command;
  std::vector<std::string> tokens;
  std::string out;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> budget;
  std::string time_limit;
  bool exhaustive = false;
  std::optional<std::uint64_t> samples;
  std::uint32_t min_progression_length = 3;
  bool text = false;
  std::optional<int> part;
  unsigned threads = 1;
  bool orbit_reduction = false;
};

struct Outcome {
  int exit_code = kExitDecided;
  std::vector<Json> lines;  // records first, then the summary for scans
};

std::string joined(const std::vector<std::string>& tokens) {
  std::string s;
  for (const auto& t : tokens) s += (s.empty() ? "" : " ") + t;
  return s;
}

std::chrono::milliseconds parse_duration(const std::string& text) {
  static const std::regex re(R"(^\s*(\d+)\s*(ms|s|m|h)?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw Error(ErrorKind::InvalidArgument, "bad duration '" + text + "'");
  const std::int64_t v = std::stoll(m[1]);
  const std::string unit = m[2];
  if (unit == "ms") return std::chrono::milliseconds(v);
  if (unit == "m") return std::chrono::minutes(v);
  if (unit == "h") return std::chrono::hours(v);
  return std::chrono::seconds(v);
}

std::uint32_t word_uint(const Instance& inst, const std::string& key, std::uint32_t fallback) {
  const auto w = inst.word(key);
  if (!w) return fallback;
  try {
    std::size_t used = 0;
    const auto v = std::stoul(*w, &used);
    if (used != w->size()) throw std::invalid_argument(key);
    return static_cast<std::uint32_t>(v);
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::InvalidArgument, "parameter " + key + " must be a nonnegative integer");
  }
}

SearchBudget make_budget(const Options& o) {
  SearchBudget b;
  b.seed = o.seed;
  b.threads = o.threads;
  if (!o.time_limit.empty()) b.time_limit = parse_duration(o.time_limit);
  if (o.samples && !o.exhaustive) {
    b.exhaustive = false;
    b.max_instances = *o.samples;
  }
  if (o.budget) b.max_instances = *o.budget;
  return b;
}

Json base(const std::string& kind, const Options& o, const Instance& inst) {
  Json j = report_header(kind, o.command);
  j["instance"] = print_instance(inst);
  return j;
}

const Group& need_group(const Instance& inst) {
  if (!inst.is_group()) throw Error(ErrorKind::InvalidArgument, "command needs a group instance");
  return *inst.group;
}

const FieldExtension& need_field(const Instance& inst) {
  if (!inst.is_field()) throw Error(ErrorKind::InvalidArgument, "command needs a field instance");
  return *inst.field;
}

OrderedBasis generator_basis(const FieldExtension& e, const SubspaceValue& v) {
  return make_ordered_basis(e, v.generators);
}

// --- group commands -----------------------------------------------------

Outcome group_match(const Options& o, const Instance& inst, bool certify) {
  const Group& g = need_group(inst);
  const auto& a = inst.subset("A");
  const auto& b = inst.subset("B");
  Json j = base("group", o, inst);
  Outcome out;
  if (const auto cert = find_matching(g, a, b)) {
    j["matched"] = true;
    j["certificate"] = certificate_json(g, *cert);
    if (certify) j["verified"] = verify_certificate(g, a, b, *cert);
  } else {
    j["matched"] = false;
    j["violator"] = violator_json(g, *hall_violator(g, a, b));
    out.exit_code = kExitFound;
  }
  out.lines.push_back(std::move(j));
  return out;
}

Outcome linear_match(const Options& o, const Instance& inst, bool certify) {
  const FieldExtension& e = need_field(inst);
  const auto& av = inst.subspace("A");
  const auto& b = inst.subspace("B").space;
  Json j = base("linear", o, inst);
  Outcome out;
  if (certify) {
    const auto basis = generator_basis(e, av);
    j["basis_A"] = basis_json(e, basis);
    const auto crit = evaluate_basis_criterion(e, basis, b);
    if (const auto cert = find_matched_basis(e, basis, b)) {
      j["matched"] = true;
      j["basis_B"] = basis_json(e, cert->basis_b);
      j["verified"] = verify_matched_basis(e, b, *cert);
    } else {
      j["matched"] = false;
      Json jj = Json::array();
      for (auto i : crit.violating_j) jj.push_back(i + 1);
      j["J"] = jj;
      j["V_J"] = subspace_to_string(e, crit.v_j);
      out.exit_code = kExitFound;
    }
    out.lines.push_back(std::move(j));
    return out;
  }
  MatchMode mode = MatchMode::exhaustive_mode(o.budget.value_or(kDefaultBasisBudget));
  if (o.samples && !o.exhaustive) mode = MatchMode::sampled(*o.samples, o.seed);
  const auto r = space_matchable(e, av.space, b, mode);
  j["verdict"] = to_string(r.verdict);
  j["mode"] = mode.exhaustive ? "exhaustive" : "sampled";
  j["bases_checked"] = r.bases_checked;
  if (r.verdict == Verdict::Unmatched) {
    j["failing_basis"] = basis_json(e, *r.failing_basis);
    Json jj = Json::array();
    for (auto i : r.failure.violating_j) jj.push_back(i + 1);
    j["J"] = jj;
    j["V_J"] = subspace_to_string(e, r.failure.v_j);
    out.exit_code = kExitFound;
  } else if (const auto cert = find_matched_basis(e, canonical_basis(av.space), b)) {
    j["basis_A"] = basis_json(e, cert->basis_a);
    j["basis_B"] = basis_json(e, cert->basis_b);
  }
  out.lines.push_back(std::move(j));
  return out;
}

Outcome group_conditions(const Options& o, const Instance& inst) {
  const Group& g = need_group(inst);
  const auto& a = inst.subset("A");
  const auto& b = inst.subset("B");
  Json j = base("group", o, inst);
  Json parts = Json::array();
  if (o.part) {
    parts.push_back(condition_json(check_condition(g, a, b, *o.part)));
  } else {
    for (const auto& r : check_conditions(g, a, b)) parts.push_back(condition_json(r));
  }
  j["conditions"] = parts;
  if (o.part) j["holds"] = parts[0]["holds"];
  return {kExitDecided, {j}};
}

Outcome linear_conditions(const Options& o, const Instance& inst) {
  const FieldExtension& e = need_field(inst);
  const auto& a = inst.subspace("A").space;
  const auto& b = inst.subspace("B").space;
  Json j = base("linear", o, inst);
  Json parts = Json::array();
  if (o.part) {
    parts.push_back(linear_condition_json(check_linear_condition(e, a, b, *o.part)));
  } else {
    for (const auto& r : check_linear_conditions(e, a, b)) parts.push_back(linear_condition_json(r));
  }
  j["conditions"] = parts;
  if (o.part) j["holds"] = parts[0]["holds"];
  return {kExitDecided, {j}};
}

Outcome witness(const Options& o, const Instance& inst) {
  if (inst.is_group()) {
    const Group& g = need_group(inst);
    const auto& a = inst.subset("A");
    const auto& b = inst.subset("B");
    if (has_matching(g, a, b)) throw Error(ErrorKind::NotUnmatchable, "A is matched to B");
    Json j = base("group", o, inst);
    j["violator"] = violator_json(g, *hall_violator(g, a, b));
    j["witness"] = structure_witness_json(g, structure_witness(g, a, b, o.min_progression_length));
    return {kExitDecided, {j}};
  }
  const FieldExtension& e = need_field(inst);
  Json j = base("linear", o, inst);
  j["witness"] = subfield_witness_json(e, subfield_atom_witness(e, inst.subspace("A").space, inst.subspace("B").space));
  return {kExitDecided, {j}};
}

Outcome scan_property(const Options& o, const Instance& inst) {
  const Group& g = need_group(inst);
  const std::uint32_t max = word_uint(inst, "max", g.order() - 1);
  const auto r = matching_property_scan(g, max);
  Json j = base("group", o, inst);
  j["max_size"] = max;
  j["matching_property"] = r.holds;
  j["pairs_checked"] = r.pairs_checked;
  if (r.counterexample) {
    j["counterexample"] = {{"A", r.counterexample->first.to_string(g)}, {"B", r.counterexample->second.to_string(g)}};
  }
  return {r.holds ? kExitDecided : kExitFound, {j}};
}

Outcome atom(const Options& o, const Instance& inst) {
  const FieldExtension& e = need_field(inst);
  Json j = base("linear", o, inst);
  j["atom_report"] = atom_report_json(e, atom_report(e, inst.subspace("A").space));
  return {kExitDecided, {j}};
}

// --- scans --------------------------------------------------------------

Outcome from_scan(const ScanReport& r, const Instance& inst) {
  Outcome out;
  out.lines = r.records;
  Json s = r.summary();
  s["instance"] = print_instance(inst);
  out.lines.push_back(std::move(s));
  out.exit_code = r.records.empty() ? kExitDecided : kExitFound;
  return out;
}

Outcome conjecture1(const Options& o, const Instance& inst) {
  const auto& e = need_field(inst);
  return from_scan(conjecture_5_1_scan(e, word_uint(inst, "dims", 2), make_budget(o)), inst);
}

Outcome conjecture2(const Options& o, const Instance& inst) {
  const auto& e = need_field(inst);
  return from_scan(conjecture_5_2_scan(e, word_uint(inst, "n", 2), make_budget(o)), inst);
}

Outcome chowla_max(const Options& o, const Instance& inst) {
  const auto& e = need_field(inst);
  const auto r = max_chowla_dimension(e, make_budget(o));
  Json j = base("linear", o, inst);
  j["dimension"] = r.dimension;
  j["witness"] = subspace_to_string(e, r.witness);
  j["exhaustive"] = r.exhaustive;
  j["lower_bound"] = r.lower_bound;
  j["meets_lower_bound"] = r.meets_lower_bound;
  j["subspaces_checked"] = r.subspaces_checked;
  return {kExitDecided, {j}};
}

Outcome search_unmatchable(const Options& o, std::vector<std::string> tokens) {
  if (!tokens.empty() && tokens[0].find("..") != std::string::npos) {
    const auto [lo, hi] = parse_cyclic_range(tokens[0]);
    tokens[0] = "Z" + std::to_string(lo);
    const Instance inst = parse_instance(joined(tokens));
    GroupSearchOptions go;
    go.min_order = lo;
    go.max_order = hi;
    go.max_size = word_uint(inst, "sizes", 4);
    go.min_progression_length = o.min_progression_length;
    go.orbit_reduction = o.orbit_reduction;
    auto out = from_scan(unmatchable_group_search(go, make_budget(o)), inst);
    out.lines.back().erase("instance");
    return out;
  }
  const Instance inst = parse_instance(joined(tokens));
  if (inst.is_group()) {
    const auto& g = need_group(inst);
    if (!g.is_single_cyclic()) throw Error(ErrorKind::InvalidArgument, "group search covers cyclic groups only");
    GroupSearchOptions go;
    go.min_order = go.max_order = g.order();
    go.max_size = word_uint(inst, "sizes", 4);
    go.min_progression_length = o.min_progression_length;
    go.orbit_reduction = o.orbit_reduction;
    return from_scan(unmatchable_group_search(go, make_budget(o)), inst);
  }
  return from_scan(unmatchable_field_search(need_field(inst), word_uint(inst, "n", 2), make_budget(o)), inst);
}

Outcome dispatch(const Options& o) {
  if (o.command == "search-unmatchable") return search_unmatchable(o, o.tokens);
  const Instance inst = parse_instance(joined(o.tokens));
  if (o.command == "match") return inst.is_field() ? linear_match(o, inst, false) : group_match(o, inst, false);
  if (o.command == "certify") return inst.is_field() ? linear_match(o, inst, true) : group_match(o, inst, true);
  if (o.command == "conditions") return inst.is_field() ? linear_conditions(o, inst) : group_conditions(o, inst);
  if (o.command == "witness") return witness(o, inst);
  if (o.command == "scan-property") return scan_property(o, inst);
  if (o.command == "linear-match") return linear_match(o, inst, false);
  if (o.command == "linear-conditions") return linear_conditions(o, inst);
  if (o.command == "atom") return atom(o, inst);
  if (o.command == "conjecture1") return conjecture1(o, inst);
  if (o.command == "conjecture2") return conjecture2(o, inst);
  if (o.command == "chowla-max") return chowla_max(o, inst);
  throw Error(ErrorKind::InvalidArgument, "unknown command " + o.command);
}

std::string render(const Outcome& out, bool text) {
  std::string s;
  for (const auto& j : out.lines) {
    if (text) {
      s += render_text(j);
      if (out.lines.size() > 1) s += "\n";
    } else {
      s += j.dump() + "\n";
    }
  }
  return s;
}

const std::vector<std::pair<std::string, std::string>> kCommands = {
    {"match", "decide whether A is matched to B"},
    {"certify", "produce and verify a matching or matched basis"},
    {"conditions", "check the sufficient conditions"},
    {"witness", "structure witness for an unmatchable pair"},
    {"scan-property", "exhaustive matching-property scan of a group"},
    {"linear-match", "decide whether subspace A is matched to B"},
    {"linear-conditions", "check the linear sufficient conditions"},
    {"atom", "1-atom and fragment report for a subspace A"},
    {"conjecture1", "counterexample scan for Conjecture 5.1"},
    {"conjecture2", "counterexample scan for Conjecture 5.2"},
    {"chowla-max", "largest dimension of a Chowla subspace"},
    {"search-unmatchable", "list unmatchable pairs"},
};

}  // namespace

RunResult run(const std::vector<std::string>& args) {
  Options o;
  CLI::App app{"Matchings in abelian groups and field extensions", "addmatch"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "addmatch 1.0");
  for (const auto& [name, help] : kCommands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("instance", o.tokens, "instance literal, e.g. Z15 A={5,6,7} B={1,2,3}")->required();
    sub->add_option("--out", o.out, "write the report to this path");
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--budget", o.budget, "instance or basis budget");
    sub->add_option("--time-limit", o.time_limit, "scan time limit: 500ms, 10s, 2m");
    sub->add_flag("--exhaustive", o.exhaustive, "force exhaustive enumeration");
    sub->add_option("--samples", o.samples, "use K seeded random samples instead of enumeration");
    sub->add_option("--min-progression-length", o.min_progression_length, "shortest progression accepted in witnesses");
    auto* json = sub->add_flag("--json", "JSON output (default)");
    sub->add_flag("--text", o.text, "human-readable output")->excludes(json);
    sub->add_option("--part", o.part, "single condition part")->check(CLI::Range(1, 7));
    sub->add_option("--threads", o.threads, "worker threads for scans")->check(CLI::Range(1u, 256u));
    sub->add_flag("--orbit-reduction", o.orbit_reduction, "group search: A up to translation and units");
    sub->callback([&o, name = name] { o.command = name; });
  }

  RunResult res;
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    res.output = app.help();
    return res;
  } catch (const CLI::CallForAllHelp&) {
    res.output = app.help("", CLI::AppFormatMode::All);
    return res;
  } catch (const CLI::CallForVersion&) {
    res.output = app.version() + "\n";
    return res;
  } catch (const CLI::ParseError& e) {
    res.exit_code = kExitError;
    res.error = std::string("error: ") + e.what() + "\n";
    return res;
  }

  try {
    const Outcome out = dispatch(o);
    res.exit_code = out.exit_code;
    const std::string body = render(out, o.text);
    if (o.out.empty()) {
      res.output = body;
    } else {
      std::ofstream f(o.out, std::ios::binary);
      f << body;
      if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + o.out);
    }
  } catch (const Error& e) {
    res.exit_code = kExitError;
    res.error = "error: " + std::string(to_string(e.kind())) + ": " + e.what() + "\n";
  } catch (const std::exception& e) {
    res.exit_code = kExitError;
    res.error = std::string("error: internal: ") + e.what() + "\n";
  }
  return res;
}

}  // namespace addmatch::cli
