#pragma once

#include <string>

#include "bnobs/network.hpp"

namespace bnobs {

// Syntactic class of a network: K-AND-OR (every node an AND or OR of K
// literals), K-XOR, or K-NC, each for a uniform fan-in K.  AND/OR and XOR
// functions count as nested canalyzing only when declared that way.
struct Classification {
  enum class Family { AndOr, Xor, NestedCanalyzing, General };

  Family family = Family::General;
  int k = 0;  // uniform fan-in; 0 for General

  std::string name() const {
    switch (family) {
      case Family::AndOr:
        return std::to_string(k) + "-AND-OR";
      case Family::Xor:
        return std::to_string(k) + "-XOR";
      case Family::NestedCanalyzing:
        return std::to_string(k) + "-NC";
      case Family::General:
        return "general";
    }
    return "general";
  }
};

inline Classification classify(const Network& net) {
  using Kind = BooleanFunction::Kind;
  bool and_or = true, xors = true, nc = true;
  int k = net.function(1).fan_in();
  for (const BooleanFunction& f : net.functions()) {
    if (f.fan_in() != k) return {};
    switch (f.kind()) {
      case Kind::And:
      case Kind::Or:
        xors = nc = false;
        break;
      case Kind::Xor:
        and_or = nc = false;
        break;
      case Kind::NestedCanalyzing:
        and_or = xors = false;
        break;
      case Kind::TruthTable:
        return {};
    }
  }
  if (and_or) return {Classification::Family::AndOr, k};
  if (xors) return {Classification::Family::Xor, k};
  if (nc) return {Classification::Family::NestedCanalyzing, k};
  return {};
}

}  // namespace bnobs
