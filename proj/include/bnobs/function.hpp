#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bnobs {

// Packed network state: bit (i-1) holds the value of variable x_i, so x1 is
// the least significant bit.  Display routines order the other way around
// (x1 printed first); see state.hpp helpers.
using State = std::uint32_t;

inline bool state_bit(State s, int var) { return (s >> (var - 1)) & 1u; }

// A possibly negated reference to a variable.  Variables are 1-based
// everywhere in the public interface.
struct Literal {
  int var = 0;
  bool negated = false;

  bool eval(State s) const { return state_bit(s, var) != negated; }
};

inline bool operator==(const Literal& a, const Literal& b) {
  return a.var == b.var && a.negated == b.negated;
}
inline bool operator!=(const Literal& a, const Literal& b) { return !(a == b); }

namespace detail {

inline void check_arg(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

inline std::string var_name(int var) { return "x" + std::to_string(var); }

// Rejects repeated variables; every update function reads each of its
// variables exactly once.
inline void check_distinct_vars(std::vector<int>& vars) {
  std::sort(vars.begin(), vars.end());
  auto dup = std::adjacent_find(vars.begin(), vars.end());
  if (dup != vars.end())
    throw std::invalid_argument("duplicate variable " + var_name(*dup));
}

}  // namespace detail

// One node's update rule.  Five shapes are supported: AND/OR/XOR of literals,
// nested canalyzing functions (alternating OR/AND levels, outermost level
// first), and explicit truth tables.  Construction validates the shape;
// evaluation works on packed states via precomputed masks.
class BooleanFunction {
 public:
  enum class Kind { And, Or, Xor, NestedCanalyzing, TruthTable };

  static BooleanFunction and_of(std::vector<Literal> lits) {
    return literal_list(Kind::And, std::move(lits));
  }

  static BooleanFunction or_of(std::vector<Literal> lits) {
    return literal_list(Kind::Or, std::move(lits));
  }

  static BooleanFunction xor_of(std::vector<Literal> lits) {
    return literal_list(Kind::Xor, std::move(lits));
  }

  // groups[0] is the outermost OR level and may be empty (the function is
  // then the conjunction headed by groups[1]); deeper groups alternate
  // AND, OR, ... and must be nonempty.
  static BooleanFunction nested_canalyzing(
      std::vector<std::vector<Literal>> groups) {
    detail::check_arg(!groups.empty(), "nested canalyzing needs a group");
    BooleanFunction f;
    f.kind_ = Kind::NestedCanalyzing;
    std::vector<int> vars;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      detail::check_arg(g == 0 || !groups[g].empty(),
                        "empty group " + std::to_string(g + 1) +
                            " in nested canalyzing function");
      State pos = 0, neg = 0;
      for (const Literal& lit : groups[g]) {
        check_literal(lit);
        vars.push_back(lit.var);
        (lit.negated ? neg : pos) |= bit_of(lit.var);
      }
      f.group_masks_.push_back({pos, neg});
    }
    detail::check_arg(!vars.empty(), "nested canalyzing needs a literal");
    detail::check_distinct_vars(vars);
    f.groups_ = std::move(groups);
    return f;
  }

  // bits[i] is the output for the assignment where the j-th listed variable
  // carries bit j of i (first listed variable = least significant).  Every
  // listed variable must be relevant; an empty list encodes a constant.
  static BooleanFunction truth_table(std::vector<int> vars,
                                     std::vector<bool> bits) {
    detail::check_arg(vars.size() <= 20, "truth table too wide");
    detail::check_arg(bits.size() == (std::size_t{1} << vars.size()),
                      "truth table needs " +
                          std::to_string(std::size_t{1} << vars.size()) +
                          " bits, got " + std::to_string(bits.size()));
    BooleanFunction f;
    f.kind_ = Kind::TruthTable;
    std::vector<int> sorted = vars;
    for (int v : vars) detail::check_arg(v >= 1, "variable index must be >= 1");
    detail::check_distinct_vars(sorted);
    for (std::size_t j = 0; j < vars.size(); ++j) {
      bool relevant = false;
      for (std::size_t i = 0; i < bits.size() && !relevant; ++i)
        relevant = bits[i] != bits[i ^ (std::size_t{1} << j)];
      detail::check_arg(relevant, "irrelevant variable " +
                                      detail::var_name(vars[j]) +
                                      " in truth table");
    }
    f.table_vars_ = std::move(vars);
    f.table_bits_ = std::move(bits);
    return f;
  }

  Kind kind() const { return kind_; }

  // Literals of an And/Or/Xor function, in construction order.
  const std::vector<Literal>& literals() const { return literals_; }

  // Groups of a nested canalyzing function, outermost first.
  const std::vector<std::vector<Literal>>& groups() const { return groups_; }

  const std::vector<int>& table_vars() const { return table_vars_; }
  const std::vector<bool>& table_bits() const { return table_bits_; }

  // Number of distinct variables read.
  int fan_in() const {
    switch (kind_) {
      case Kind::And:
      case Kind::Or:
      case Kind::Xor:
        return static_cast<int>(literals_.size());
      case Kind::NestedCanalyzing: {
        std::size_t total = 0;
        for (const auto& g : groups_) total += g.size();
        return static_cast<int>(total);
      }
      case Kind::TruthTable:
        return static_cast<int>(table_vars_.size());
    }
    return 0;
  }

  std::vector<int> support() const {
    std::vector<int> vars;
    visit_vars([&](int v) { vars.push_back(v); });
    std::sort(vars.begin(), vars.end());
    return vars;
  }

  int max_var() const {
    int m = 0;
    visit_vars([&](int v) { m = std::max(m, v); });
    return m;
  }

  bool eval(State s) const {
    switch (kind_) {
      case Kind::And:
        return (s & pos_mask_) == pos_mask_ && (s & neg_mask_) == 0;
      case Kind::Or:
        return (s & pos_mask_) != 0 || (neg_mask_ & ~s) != 0;
      case Kind::Xor:
        return (popcount32(s & pos_mask_) + popcount32(neg_mask_ & ~s)) & 1;
      case Kind::NestedCanalyzing:
        return eval_groups(s);
      case Kind::TruthTable: {
        std::size_t idx = 0;
        for (std::size_t j = 0; j < table_vars_.size(); ++j)
          idx |= std::size_t{state_bit(s, table_vars_[j])} << j;
        return table_bits_[idx];
      }
    }
    return false;
  }

  friend bool operator==(const BooleanFunction& a, const BooleanFunction& b) {
    return a.kind_ == b.kind_ && a.literals_ == b.literals_ &&
           a.groups_ == b.groups_ && a.table_vars_ == b.table_vars_ &&
           a.table_bits_ == b.table_bits_;
  }
  friend bool operator!=(const BooleanFunction& a, const BooleanFunction& b) {
    return !(a == b);
  }

 private:
  BooleanFunction() = default;

  static int popcount32(State v) { return __builtin_popcount(v); }

  static State bit_of(int var) { return State{1} << (var - 1); }

  static void check_literal(const Literal& lit) {
    detail::check_arg(lit.var >= 1, "variable index must be >= 1");
    detail::check_arg(lit.var <= 30, "variable index above x30");
  }

  static BooleanFunction literal_list(Kind kind, std::vector<Literal> lits) {
    detail::check_arg(!lits.empty(), "function needs at least one literal");
    BooleanFunction f;
    f.kind_ = kind;
    std::vector<int> vars;
    for (const Literal& lit : lits) {
      check_literal(lit);
      vars.push_back(lit.var);
      (lit.negated ? f.neg_mask_ : f.pos_mask_) |= bit_of(lit.var);
    }
    detail::check_distinct_vars(vars);
    f.literals_ = std::move(lits);
    return f;
  }

  bool eval_groups(State s) const {
    // Group g (0-based) sits at an OR level when g is even.  Evaluate from
    // the innermost group outward; an empty outermost group simply passes
    // the inner value through.
    bool acc = false;
    for (std::size_t g = group_masks_.size(); g-- > 0;) {
      auto [pos, neg] = group_masks_[g];
      bool or_level = g % 2 == 0;
      bool inner = g + 1 < group_masks_.size();
      if (or_level) {
        bool any = (s & pos) != 0 || (neg & ~s) != 0;
        acc = inner ? any || acc : any;
      } else {
        bool all = (s & pos) == pos && (s & neg) == 0;
        acc = inner ? all && acc : all;
      }
    }
    return acc;
  }

  template <class Fn>
  void visit_vars(Fn&& fn) const {
    for (const Literal& lit : literals_) fn(lit.var);
    for (const auto& g : groups_)
      for (const Literal& lit : g) fn(lit.var);
    for (int v : table_vars_) fn(v);
  }

  Kind kind_ = Kind::And;
  std::vector<Literal> literals_;
  std::vector<std::vector<Literal>> groups_;
  std::vector<std::pair<State, State>> group_masks_;
  std::vector<int> table_vars_;
  std::vector<bool> table_bits_;
  State pos_mask_ = 0;
  State neg_mask_ = 0;
};

}  // namespace bnobs
