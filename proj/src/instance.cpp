#include "addmatch/instance.hpp"

#include <cctype>
#include <charconv>
#include <limits>

namespace addmatch {

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t offset = 0) : s_(text), offset_(offset) {}

  std::size_t pos() const { return offset_ + i_; }
  bool done() const { return i_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[i_]; }

  void skip_ws() {
    while (!done() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool accept(char c) {
    skip_ws();
    if (peek() != c) return false;
    ++i_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  // Exact prefix match without skipping whitespace.
  bool accept_word(std::string_view w) {
    if (s_.substr(i_, w.size()) != w) return false;
    i_ += w.size();
    return true;
  }

  std::uint64_t integer() {
    skip_ws();
    const std::size_t start = i_;
    while (!done() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected an integer");
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + i_, v);
    if (ec != std::errc()) {
      i_ = start;
      fail("integer out of range");
    }
    return v;
  }

  std::string identifier() {
    skip_ws();
    const std::size_t start = i_;
    while (!done() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    if (start == i_) fail("expected a name");
    return std::string(s_.substr(start, i_ - start));
  }

  std::string word() {
    const std::size_t start = i_;
    while (!done() && !std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected a value");
    return std::string(s_.substr(start, i_ - start));
  }

  [[noreturn]] void fail(const std::string& msg, ErrorKind kind = ErrorKind::Syntax) const {
    throw ParseError(kind, pos(), msg);
  }

  // --- structures --------------------------------------------------------

  Group group() {
    const std::size_t start = pos();
    std::vector<std::uint32_t> factors;
    do {
      if (!accept_word("Z")) fail("expected 'Z'");
      const auto n = integer();
      if (n > std::numeric_limits<std::uint32_t>::max()) fail("factor too large");
      factors.push_back(static_cast<std::uint32_t>(n));
    } while (accept_word("x"));
    try {
      return Group(factors);
    } catch (const Error& e) {
      throw ParseError(e.kind(), start, e.what());
    }
  }

  std::vector<std::uint32_t> polynomial(std::uint32_t p) {
    std::vector<std::uint32_t> coeffs;
    auto add_term = [&](std::uint64_t c, std::uint64_t k, bool negative) {
      if (k > 64) fail("polynomial degree too large");
      if (coeffs.size() <= k) coeffs.resize(k + 1, 0);
      c %= p;
      if (negative) c = (p - c) % p;
      coeffs[k] = static_cast<std::uint32_t>((coeffs[k] + c) % p);
    };
    bool negative = accept('-');
    while (true) {
      skip_ws();
      std::uint64_t c = 1, k = 0;
      bool has_coeff = false;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        c = integer();
        has_coeff = true;
        accept('*');
      }
      skip_ws();
      if (accept_word("x")) {
        k = 1;
        if (accept('^')) k = integer();
      } else if (!has_coeff) {
        fail("expected a polynomial term");
      }
      add_term(c, k, negative);
      if (accept('+')) {
        negative = false;
      } else if (accept('-')) {
        negative = true;
      } else {
        break;
      }
    }
    return coeffs;
  }

  FieldExtension field() {
    const std::size_t start = pos();
    if (!accept_word("GF(")) fail("expected 'GF('");
    const auto p = integer();
    expect('^');
    const auto m = integer();
    if (p > std::numeric_limits<std::uint32_t>::max() || m > 64) fail("field parameters too large");
    std::optional<std::vector<std::uint32_t>> modulus;
    if (accept('|')) {
      if (!is_prime(p)) {
        throw ParseError(ErrorKind::NonprimeCharacteristic, start, std::to_string(p) + " is not prime");
      }
      modulus = polynomial(static_cast<std::uint32_t>(p));
    }
    expect(')');
    try {
      return FieldExtension::make(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(m), modulus);
    } catch (const Error& e) {
      throw ParseError(e.kind(), start, e.what());
    }
  }

  // --- values ------------------------------------------------------------

  Element group_element(const Group& g) {
    const std::size_t start = pos();
    if (accept('(')) {
      std::vector<std::int64_t> coords;
      do {
        coords.push_back(static_cast<std::int64_t>(integer()));
      } while (accept(','));
      expect(')');
      if (coords.size() != g.factors().size()) {
        throw ParseError(ErrorKind::Syntax, start, "tuple has the wrong number of coordinates");
      }
      for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] >= static_cast<std::int64_t>(g.factors()[i])) {
          throw ParseError(ErrorKind::OutOfRange, start, "element outside " + g.to_string());
        }
      }
      return g.from_coords(coords);
    }
    if (!g.is_single_cyclic()) fail("expected a coordinate tuple");
    const auto v = integer();
    if (v >= g.order()) {
      throw ParseError(ErrorKind::OutOfRange, start, "element " + std::to_string(v) + " outside " + g.to_string());
    }
    return static_cast<Element>(v);
  }

  Subset subset(const Group& g) {
    expect('{');
    std::vector<Element> elems;
    if (!accept('}')) {
      do {
        elems.push_back(group_element(g));
      } while (accept(','));
      expect('}');
    }
    return Subset(g, std::move(elems));
  }

  FieldElem expr(const FieldExtension& e) {
    FieldElem acc = 0;
    bool negative = accept('-');
    while (true) {
      FieldElem t = term(e);
      if (negative) t = e.neg(t);
      acc = e.add(acc, t);
      if (accept('+')) {
        negative = false;
      } else if (accept('-')) {
        negative = true;
      } else {
        return acc;
      }
    }
  }

  FieldElem term(const FieldExtension& e) {
    FieldElem acc = factor(e);
    while (accept('*')) acc = e.mul(acc, factor(e));
    return acc;
  }

  FieldElem factor(const FieldExtension& e) {
    const FieldElem base = primary(e);
    if (accept('^')) return e.pow(base, integer());
    return base;
  }

  FieldElem primary(const FieldExtension& e) {
    skip_ws();
    const std::size_t start = pos();
    if (accept('(')) {
      const FieldElem v = expr(e);
      expect(')');
      return v;
    }
    if (accept('#')) {
      const auto v = integer();
      if (v >= e.size()) {
        throw ParseError(ErrorKind::OutOfRange, start, "encoding " + std::to_string(v) + " outside " + e.to_string());
      }
      return static_cast<FieldElem>(v);
    }
    if (accept_word("g")) return e.generator();
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      return e.scale(static_cast<std::uint32_t>(integer() % e.p()), e.one());
    }
    fail("expected a field element");
  }

  SubspaceValue subspace(const FieldExtension& e) {
    expect('<');
    SubspaceValue v;
    if (!accept('>')) {
      do {
        v.generators.push_back(expr(e));
      } while (accept(','));
      expect('>');
    }
    v.space = span(e, v.generators);
    return v;
  }

 private:
  std::string_view s_;
  std::size_t offset_;
  std::size_t i_ = 0;
};

}  // namespace

const ParamValue* Instance::find(std::string_view key) const {
  for (const auto& [k, v] : params) {
    if (k == key) return &v;
  }
  return nullptr;
}

const Subset& Instance::subset(std::string_view key) const {
  const auto* v = find(key);
  if (!v || !std::holds_alternative<Subset>(*v)) {
    throw Error(ErrorKind::InvalidArgument, "instance needs a subset " + std::string(key) + "={...}");
  }
  return std::get<Subset>(*v);
}

const SubspaceValue& Instance::subspace(std::string_view key) const {
  const auto* v = find(key);
  if (!v || !std::holds_alternative<SubspaceValue>(*v)) {
    throw Error(ErrorKind::InvalidArgument, "instance needs a subspace " + std::string(key) + "=<...>");
  }
  return std::get<SubspaceValue>(*v);
}

std::optional<std::string> Instance::word(std::string_view key) const {
  const auto* v = find(key);
  if (!v) return std::nullopt;
  if (!std::holds_alternative<std::string>(*v)) {
    throw Error(ErrorKind::InvalidArgument, "parameter " + std::string(key) + " must be a plain value");
  }
  return std::get<std::string>(*v);
}

Instance parse_instance(std::string_view text) {
  Parser ps(text);
  ps.skip_ws();
  Instance inst;
  if (ps.peek() == 'Z') {
    inst.group = ps.group();
  } else if (ps.peek() == 'G') {
    inst.field = ps.field();
  } else {
    ps.fail("expected a group 'Z..' or a field 'GF(..)'");
  }
  while (true) {
    const bool had_space = !ps.done() && std::isspace(static_cast<unsigned char>(ps.peek()));
    ps.skip_ws();
    if (ps.done()) break;
    if (!had_space) ps.fail("expected whitespace before a parameter");
    std::string key = ps.identifier();
    if (inst.find(key)) ps.fail("duplicate parameter " + key);
    ps.expect('=');
    ps.skip_ws();
    if (ps.peek() == '{') {
      if (!inst.group) ps.fail("subset literal needs a group");
      inst.params.emplace_back(std::move(key), ps.subset(*inst.group));
    } else if (ps.peek() == '<') {
      if (!inst.field) ps.fail("subspace literal needs a field");
      inst.params.emplace_back(std::move(key), ps.subspace(*inst.field));
    } else {
      inst.params.emplace_back(std::move(key), ps.word());
    }
  }
  return inst;
}

std::string print_instance(const Instance& inst) {
  std::string out = inst.group ? inst.group->to_string() : inst.field->to_string();
  for (const auto& [k, v] : inst.params) {
    out += ' ' + k + '=';
    if (const auto* s = std::get_if<Subset>(&v)) {
      out += s->to_string(*inst.group);
    } else if (const auto* u = std::get_if<SubspaceValue>(&v)) {
      out += subspace_to_string(*inst.field, u->space);
    } else {
      out += std::get<std::string>(v);
    }
  }
  return out;
}

Group parse_group(std::string_view text) {
  Parser ps(text);
  ps.skip_ws();
  auto g = ps.group();
  ps.skip_ws();
  if (!ps.done()) ps.fail("trailing characters");
  return g;
}

FieldExtension parse_field(std::string_view text) {
  Parser ps(text);
  ps.skip_ws();
  auto f = ps.field();
  ps.skip_ws();
  if (!ps.done()) ps.fail("trailing characters");
  return f;
}

std::pair<std::uint32_t, std::uint32_t> parse_cyclic_range(std::string_view text) {
  Parser ps(text);
  ps.skip_ws();
  if (!ps.accept_word("Z")) ps.fail("expected 'Z'");
  const auto lo = ps.integer();
  if (!ps.accept_word("..Z")) ps.fail("expected '..Z'");
  const auto hi = ps.integer();
  ps.skip_ws();
  if (!ps.done()) ps.fail("trailing characters");
  if (lo < 2 || hi < lo || hi > (1u << 20)) {
    throw ParseError(ErrorKind::InvalidArgument, 0, "range must satisfy 2 <= lo <= hi");
  }
  return {static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(hi)};
}

FieldElem parse_field_element(const FieldExtension& e, std::string_view text) {
  Parser ps(text);
  const FieldElem x = ps.expr(e);
  ps.skip_ws();
  if (!ps.done()) ps.fail("trailing characters");
  return x;
}

std::string group_instance_string(const Group& g, const Subset& a, const Subset& b) {
  return g.to_string() + " A=" + a.to_string(g) + " B=" + b.to_string(g);
}

std::string field_instance_string(const FieldExtension& e, const Subspace& a, const Subspace& b) {
  return e.to_string() + " A=" + subspace_to_string(e, a) + " B=" + subspace_to_string(e, b);
}

}  // namespace addmatch
