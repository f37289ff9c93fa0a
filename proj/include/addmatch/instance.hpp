#pragma once

// Instance literals.
//
//   instance  := structure { param }
//   structure := group | field
//   group     := "Z" INT { "x" "Z" INT }                   Z15, Z2xZ4
//   field     := "GF(" INT "^" INT [ "|" poly ] ")"        GF(2^4|x^4+x+1)
//   param     := KEY "=" ( subset | subspace | WORD )
//   subset    := "{" [ element { "," element } ] "}"       {5,6,7}, {(1,3),(0,1)}
//   element   := INT | "(" INT { "," INT } ")"
//   subspace  := "<" expr { "," expr } ">"                 <1, g^5, g*(g+1), #13>
//   expr      := polynomial in g with integer coefficients; "#n" is the raw
//                encoding n = sum c_i p^i.
//
// Printing produces the canonical form: sorted subsets, subspaces as their
// reduced row-echelon rows. Parsing a printed instance gives it back.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "addmatch/error.hpp"
#include "addmatch/field.hpp"
#include "addmatch/group.hpp"

namespace addmatch {

class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, std::size_t position, const std::string& what)
      : Error(kind, what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A subspace literal keeps its generators in the order written, so that
/// commands taking an ordered basis can use them.
struct SubspaceValue {
  Subspace space;
  std::vector<FieldElem> generators;
};

using ParamValue = std::variant<Subset, SubspaceValue, std::string>;

struct Instance {
  std::optional<Group> group;
  std::optional<FieldExtension> field;
  std::vector<std::pair<std::string, ParamValue>> params;

  bool is_group() const { return group.has_value(); }
  bool is_field() const { return field.has_value(); }

  const ParamValue* find(std::string_view key) const;
  const Subset& subset(std::string_view key) const;
  const SubspaceValue& subspace(std::string_view key) const;
  std::optional<std::string> word(std::string_view key) const;
};

Instance parse_instance(std::string_view text);
std::string print_instance(const Instance& inst);

Group parse_group(std::string_view text);
FieldExtension parse_field(std::string_view text);
/// "Z4..Z10": the cyclic orders from 4 to 10.
std::pair<std::uint32_t, std::uint32_t> parse_cyclic_range(std::string_view text);
FieldElem parse_field_element(const FieldExtension& e, std::string_view text);

std::string group_instance_string(const Group& g, const Subset& a, const Subset& b);
std::string field_instance_string(const FieldExtension& e, const Subspace& a, const Subspace& b);

}  // namespace addmatch
