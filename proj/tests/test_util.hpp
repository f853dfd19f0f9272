#pragma once

#include <random>
#include <vector>

#include "bnobs/function.hpp"
#include "bnobs/network.hpp"

namespace testutil {

using bnobs::BooleanFunction;
using bnobs::Literal;
using bnobs::Network;
using bnobs::ObservationScheme;
using bnobs::State;

// k distinct variables out of x1..xn, shuffled, with random polarities.
inline std::vector<Literal> random_literals(std::mt19937& rng, int n, int k) {
  std::vector<int> vars(n);
  for (int i = 0; i < n; ++i) vars[i] = i + 1;
  std::shuffle(vars.begin(), vars.end(), rng);
  std::vector<Literal> lits;
  for (int i = 0; i < k; ++i) lits.push_back({vars[i], rng() % 2 == 0});
  return lits;
}

// A random function over x1..xn of any supported kind.
inline BooleanFunction random_function(std::mt19937& rng, int n) {
  const int kind = int(rng() % 5);
  const int k = 1 + int(rng() % n);
  switch (kind) {
    case 0:
      return BooleanFunction::and_of(random_literals(rng, n, k));
    case 1:
      return BooleanFunction::or_of(random_literals(rng, n, k));
    case 2:
      return BooleanFunction::xor_of(random_literals(rng, n, k));
    case 3: {
      auto lits = random_literals(rng, n, k);
      std::vector<std::vector<Literal>> groups;
      if (rng() % 4 == 0) groups.push_back({});
      std::size_t at = 0;
      while (at < lits.size()) {
        std::size_t take = 1 + rng() % 2;
        take = std::min(take, lits.size() - at);
        groups.push_back(
            {lits.begin() + long(at), lits.begin() + long(at + take)});
        at += take;
      }
      return BooleanFunction::nested_canalyzing(std::move(groups));
    }
    default: {
      // random truth table reduced to its relevant variables
      std::vector<bool> bits(std::size_t{1} << n);
      for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = rng() % 2 == 0;
      std::vector<int> rel;
      for (int j = 0; j < n; ++j) {
        bool relevant = false;
        for (std::size_t i = 0; i < bits.size() && !relevant; ++i)
          relevant = bits[i] != bits[i ^ (std::size_t{1} << j)];
        if (relevant) rel.push_back(j);
      }
      std::vector<bool> proj(std::size_t{1} << rel.size());
      for (std::size_t a = 0; a < proj.size(); ++a) {
        std::size_t full = 0;
        for (std::size_t r = 0; r < rel.size(); ++r)
          if ((a >> r) & 1) full |= std::size_t{1} << rel[r];
        proj[a] = bits[full];
      }
      std::vector<int> vars;
      for (int j : rel) vars.push_back(j + 1);
      return BooleanFunction::truth_table(std::move(vars), std::move(proj));
    }
  }
}

inline Network random_network(std::mt19937& rng, int n) {
  std::vector<BooleanFunction> fns;
  for (int i = 0; i < n; ++i) fns.push_back(random_function(rng, n));
  return Network(std::move(fns));
}

// Network of relevance-reduced random truth tables only.
inline Network random_tt_network(std::mt19937& rng, int n) {
  std::vector<BooleanFunction> fns;
  for (int i = 0; i < n; ++i) {
    std::vector<bool> bits(std::size_t{1} << n);
    for (std::size_t a = 0; a < bits.size(); ++a) bits[a] = rng() % 2 == 0;
    std::vector<int> rel;
    for (int j = 0; j < n; ++j) {
      bool relevant = false;
      for (std::size_t a = 0; a < bits.size() && !relevant; ++a)
        relevant = bits[a] != bits[a ^ (std::size_t{1} << j)];
      if (relevant) rel.push_back(j);
    }
    std::vector<bool> proj(std::size_t{1} << rel.size());
    for (std::size_t a = 0; a < proj.size(); ++a) {
      std::size_t full = 0;
      for (std::size_t r = 0; r < rel.size(); ++r)
        if ((a >> r) & 1) full |= std::size_t{1} << rel[r];
      proj[a] = bits[full];
    }
    std::vector<int> vars;
    for (int j : rel) vars.push_back(j + 1);
    fns.push_back(BooleanFunction::truth_table(std::move(vars), std::move(proj)));
  }
  return Network(std::move(fns));
}

inline ObservationScheme random_scheme(std::mt19937& rng, int n) {
  const int m = 1 + int(rng() % n);
  std::vector<int> nodes(n);
  for (int i = 0; i < n; ++i) nodes[i] = i + 1;
  std::shuffle(nodes.begin(), nodes.end(), rng);
  nodes.resize(m);
  return ObservationScheme::of(std::move(nodes));
}

}  // namespace testutil
