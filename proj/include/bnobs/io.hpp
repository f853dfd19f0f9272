#pragma once

#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bnobs/network.hpp"

namespace bnobs {

struct ParseError : std::runtime_error {
  int line;

  ParseError(int line_number, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_number) + ": " + msg),
        line(line_number) {}
};

struct ParsedNetwork {
  Network net;
  std::optional<ObservationScheme> scheme;
};

namespace detail {

// Cursor over one line's text, after comment stripping.
struct Scanner {
  std::string_view text;
  std::size_t pos = 0;
  int line;

  Scanner(std::string_view t, int line_number) : text(t), line(line_number) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(line, msg);
  }

  void skip_ws() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  bool eat_word(std::string_view word) {
    skip_ws();
    if (text.substr(pos, word.size()) == word) {
      pos += word.size();
      return true;
    }
    return false;
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  int parse_int() {
    skip_ws();
    int value = 0;
    auto first = text.data() + pos;
    auto last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr == first) fail("expected a number");
    pos += static_cast<std::size_t>(ptr - first);
    return value;
  }

  // "x<i>"
  int parse_var() {
    skip_ws();
    if (pos >= text.size() || text[pos] != 'x') fail("expected a variable");
    ++pos;
    return parse_int();
  }

  // "x<i>" or "!x<i>"
  Literal parse_literal() {
    skip_ws();
    bool neg = eat('!');
    return Literal{parse_var(), neg};
  }

  // Comma-separated literals; stops before ';' or ')'.
  std::vector<Literal> parse_literal_list() {
    std::vector<Literal> lits;
    lits.push_back(parse_literal());
    while (eat(',')) lits.push_back(parse_literal());
    return lits;
  }
};

inline BooleanFunction parse_function(Scanner& sc) {
  auto list_body = [&sc]() {
    sc.expect('(');
    auto lits = sc.parse_literal_list();
    sc.expect(')');
    return lits;
  };
  if (sc.eat_word("AND")) return BooleanFunction::and_of(list_body());
  if (sc.eat_word("OR")) return BooleanFunction::or_of(list_body());
  if (sc.eat_word("XOR")) return BooleanFunction::xor_of(list_body());
  if (sc.eat_word("NC")) {
    sc.expect('(');
    std::vector<std::vector<Literal>> groups;
    if (sc.eat(';')) groups.push_back({});  // empty outermost OR level
    groups.push_back(sc.parse_literal_list());
    while (sc.eat(';')) groups.push_back(sc.parse_literal_list());
    sc.expect(')');
    return BooleanFunction::nested_canalyzing(std::move(groups));
  }
  if (sc.eat_word("TT")) {
    sc.expect('(');
    if (!sc.eat_word("vars")) sc.fail("expected vars=[...]");
    sc.expect('=');
    sc.expect('[');
    std::vector<int> vars;
    if (!sc.eat(']')) {
      vars.push_back(sc.parse_var());
      while (sc.eat(',')) vars.push_back(sc.parse_var());
      sc.expect(']');
    }
    sc.expect(',');
    if (!sc.eat_word("bits")) sc.fail("expected bits=...");
    sc.expect('=');
    sc.skip_ws();
    std::vector<bool> bits;
    while (sc.pos < sc.text.size() &&
           (sc.text[sc.pos] == '0' || sc.text[sc.pos] == '1'))
      bits.push_back(sc.text[sc.pos++] == '1');
    sc.expect(')');
    return BooleanFunction::truth_table(std::move(vars), std::move(bits));
  }
  sc.fail("unknown function (expected AND, OR, XOR, NC or TT)");
}

}  // namespace detail

// Text format, one declaration per line.  '#' starts a comment.
//
//   nodes: 4
//   x1 = AND(!x2, x3)
//   x4 = NC(x2 ; !x1, !x3, !x4)
//   observe: x1, x4
//
// Node lines may come in any order but each node must be defined exactly
// once; the observe line is optional.
inline ParsedNetwork parse_network(std::string_view text) {
  int n = -1;
  std::vector<std::optional<BooleanFunction>> fns;
  std::optional<ObservationScheme> scheme;
  int line_number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t eol = text.find('\n', start);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(start, eol - start);
    start = eol + 1;
    ++line_number;
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    detail::Scanner sc(line, line_number);
    if (sc.at_end()) continue;
    if (n < 0) {
      if (!sc.eat_word("nodes")) sc.fail("expected 'nodes: <n>' first");
      sc.expect(':');
      n = sc.parse_int();
      if (n < 1 || n > kMaxNodes)
        sc.fail("node count must be in [1, " + std::to_string(kMaxNodes) +
                "]");
      fns.resize(static_cast<std::size_t>(n));
      if (!sc.at_end()) sc.fail("trailing text after node count");
      continue;
    }
    if (sc.eat_word("observe")) {
      sc.expect(':');
      if (scheme) sc.fail("duplicate observe line");
      std::vector<int> nodes;
      nodes.push_back(sc.parse_var());
      while (sc.eat(',')) nodes.push_back(sc.parse_var());
      if (!sc.at_end()) sc.fail("trailing text after observe list");
      for (int v : nodes)
        if (v < 1 || v > n)
          sc.fail("observed node " + detail::var_name(v) +
                  " outside the network");
      scheme = ObservationScheme::of(std::move(nodes));
      continue;
    }
    int node = sc.parse_var();
    if (node < 1 || node > n)
      sc.fail("node " + detail::var_name(node) + " outside the network");
    if (fns[node - 1]) sc.fail("duplicate definition of " + detail::var_name(node));
    sc.expect('=');
    try {
      fns[node - 1] = detail::parse_function(sc);
    } catch (const std::invalid_argument& err) {
      sc.fail(detail::var_name(node) + ": " + err.what());
    }
    if (!sc.at_end()) sc.fail("trailing text after function");
  }
  if (n < 0) throw ParseError(line_number, "missing 'nodes: <n>' line");
  std::vector<BooleanFunction> built;
  built.reserve(fns.size());
  for (int i = 1; i <= n; ++i) {
    if (!fns[i - 1])
      throw ParseError(line_number, "missing definition of " +
                                        detail::var_name(i));
    built.push_back(std::move(*fns[i - 1]));
  }
  try {
    Network net(std::move(built));
    return ParsedNetwork{std::move(net), std::move(scheme)};
  } catch (const std::invalid_argument& err) {
    throw ParseError(line_number, err.what());
  }
}

// Canonical text form; parse_network(serialize(...)) reproduces the model.
inline std::string serialize(
    const Network& net,
    const std::optional<ObservationScheme>& scheme = std::nullopt) {
  std::ostringstream out;
  out << "nodes: " << net.node_count() << "\n";
  auto put_literal = [&](const Literal& lit) {
    if (lit.negated) out << '!';
    out << 'x' << lit.var;
  };
  auto put_list = [&](const std::vector<Literal>& lits) {
    for (std::size_t i = 0; i < lits.size(); ++i) {
      if (i) out << ", ";
      put_literal(lits[i]);
    }
  };
  for (int i = 1; i <= net.node_count(); ++i) {
    const BooleanFunction& f = net.function(i);
    out << 'x' << i << " = ";
    switch (f.kind()) {
      case BooleanFunction::Kind::And:
        out << "AND(";
        put_list(f.literals());
        out << ')';
        break;
      case BooleanFunction::Kind::Or:
        out << "OR(";
        put_list(f.literals());
        out << ')';
        break;
      case BooleanFunction::Kind::Xor:
        out << "XOR(";
        put_list(f.literals());
        out << ')';
        break;
      case BooleanFunction::Kind::NestedCanalyzing: {
        out << "NC(";
        const auto& groups = f.groups();
        for (std::size_t g = 0; g < groups.size(); ++g) {
          if (g) out << " ; ";
          put_list(groups[g]);
        }
        out << ')';
        break;
      }
      case BooleanFunction::Kind::TruthTable: {
        out << "TT(vars=[";
        const auto& vars = f.table_vars();
        for (std::size_t j = 0; j < vars.size(); ++j) {
          if (j) out << ", ";
          out << 'x' << vars[j];
        }
        out << "], bits=";
        for (bool b : f.table_bits()) out << (b ? '1' : '0');
        out << ')';
        break;
      }
    }
    out << "\n";
  }
  if (scheme) {
    out << "observe: ";
    for (std::size_t j = 0; j < scheme->observed.size(); ++j) {
      if (j) out << ", ";
      out << 'x' << scheme->observed[j];
    }
    out << "\n";
  }
  return out.str();
}

inline ParsedNetwork load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_network(buf.str());
}

}  // namespace bnobs
