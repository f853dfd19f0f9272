#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bnobs/bounds.hpp"
#include "bnobs/classify.hpp"
#include "bnobs/network.hpp"
#include "bnobs/state_space.hpp"

namespace bnobs {

// Coarsest refinement of the output-projection partition that also respects
// the step map: two states land in one class exactly when their entire
// output sequences coincide.  rounds is the number of refinement iterations
// applied; after round N the partition separates exactly the states whose
// length-(N+1) output prefixes differ.
struct EquivalencePartition {
  int n = 0;
  std::vector<std::uint32_t> class_of;  // indexed by packed state
  std::uint32_t class_count = 0;
  int rounds = 0;

  bool discrete() const {
    return class_count == (std::uint64_t{1} << n);
  }
};

inline EquivalencePartition refine_partition(const Network& net,
                                             const ObservationScheme& scheme,
                                             int cap = kDefaultEnumCap) {
  const int n = net.node_count();
  detail::check_cap(n, cap);
  check_scheme(net, scheme);
  const std::uint32_t n2 = std::uint32_t{1} << n;
  std::vector<State> succ(n2);
  for (std::uint32_t s = 0; s < n2; ++s) succ[s] = net.step(s);

  EquivalencePartition part;
  part.n = n;
  part.class_of.resize(n2);
  std::uint32_t classes = 0;
  {
    std::unordered_map<std::uint32_t, std::uint32_t> ids;
    ids.reserve(256);
    for (std::uint32_t s = 0; s < n2; ++s) {
      auto [it, fresh] = ids.try_emplace(scheme.project(s), classes);
      if (fresh) ++classes;
      part.class_of[s] = it->second;
    }
  }
  // Splitting by (own class, successor class) turns the prefix-N partition
  // into the prefix-(N+1) partition; a round with no new class is a fixpoint.
  std::vector<std::uint32_t> next(n2);
  while (classes < n2) {
    std::unordered_map<std::uint64_t, std::uint32_t> ids;
    ids.reserve(classes * 2);
    std::uint32_t fresh_count = 0;
    for (std::uint32_t s = 0; s < n2; ++s) {
      std::uint64_t sig =
          (std::uint64_t{part.class_of[s]} << 32) | part.class_of[succ[s]];
      auto [it, fresh] = ids.try_emplace(sig, fresh_count);
      if (fresh) ++fresh_count;
      next[s] = it->second;
    }
    if (fresh_count == classes) break;
    classes = fresh_count;
    part.class_of.swap(next);
    ++part.rounds;
  }
  part.class_count = classes;
  return part;
}

struct ObservabilityVerdict {
  bool observable = false;
  // Minimal N such that x(0) -> (y(0), ..., y(N)) is injective; valid when
  // observable.  Full observation gives horizon 0.
  int horizon = -1;
  // Smallest indistinguishable pair in packed-state order; set when not
  // observable.
  std::optional<std::pair<State, State>> witness;
};

inline ObservabilityVerdict check(const Network& net,
                                  const ObservationScheme& scheme,
                                  int cap = kDefaultEnumCap) {
  EquivalencePartition part = refine_partition(net, scheme, cap);
  ObservabilityVerdict v;
  if (part.discrete()) {
    v.observable = true;
    v.horizon = part.rounds;
    return v;
  }
  // Pick the class with the smallest member, then its next member.
  const std::uint32_t n2 = std::uint32_t{1} << part.n;
  std::vector<std::int64_t> first(part.class_count, -1);
  std::vector<std::int64_t> second(part.class_count, -1);
  for (std::uint32_t s = 0; s < n2; ++s) {
    std::uint32_t c = part.class_of[s];
    if (first[c] < 0)
      first[c] = s;
    else if (second[c] < 0)
      second[c] = s;
  }
  std::pair<State, State> best{0, 0};
  bool have = false;
  for (std::uint32_t c = 0; c < part.class_count; ++c) {
    if (second[c] < 0) continue;
    std::pair<State, State> cand{static_cast<State>(first[c]),
                                 static_cast<State>(second[c])};
    if (!have || cand < best) {
      best = cand;
      have = true;
    }
  }
  v.witness = best;
  return v;
}

// Direct injectivity test of the length-(horizon+1) output prefix map; the
// reference oracle for check().
inline bool check_bruteforce(const Network& net,
                             const ObservationScheme& scheme, int horizon,
                             int cap = kDefaultSearchCap) {
  const int n = net.node_count();
  detail::check_cap(n, cap);
  check_scheme(net, scheme);
  detail::check_arg(horizon >= 0, "horizon must be >= 0");
  const std::uint32_t n2 = std::uint32_t{1} << n;
  std::vector<std::vector<std::uint32_t>> prefixes(n2);
  for (std::uint32_t s0 = 0; s0 < n2; ++s0) {
    auto& prefix = prefixes[s0];
    prefix.reserve(horizon + 1);
    State s = s0;
    for (int t = 0;; ++t) {
      prefix.push_back(scheme.project(s));
      if (t == horizon) break;
      s = net.step(s);
    }
  }
  std::sort(prefixes.begin(), prefixes.end());
  return std::adjacent_find(prefixes.begin(), prefixes.end()) ==
         prefixes.end();
}

// Observability of an all-XOR network over GF(2): stack the functionals
// row(v) * A^t for every observed v and t < n and test for full rank.
// Negated literals only add an affine constant shared by all trajectories,
// so they do not affect the verdict.
inline bool xor_rank_observable(const Network& net,
                                const ObservationScheme& scheme) {
  const int n = net.node_count();
  check_scheme(net, scheme);
  std::vector<std::uint32_t> a_rows(n);
  for (int i = 1; i <= n; ++i) {
    const BooleanFunction& f = net.function(i);
    detail::check_arg(f.kind() == BooleanFunction::Kind::Xor,
                      "rank oracle needs an all-XOR network");
    for (const Literal& lit : f.literals())
      a_rows[i - 1] |= std::uint32_t{1} << (lit.var - 1);
  }
  // r -> r A as a functional on states: XOR of the A-rows selected by r.
  auto advance = [&](std::uint32_t r) {
    std::uint32_t out = 0;
    while (r) {
      int i = std::countr_zero(r);
      r &= r - 1;
      out ^= a_rows[i];
    }
    return out;
  };
  std::vector<std::uint32_t> basis(n, 0);
  int rank = 0;
  std::vector<std::uint32_t> current;
  for (int v : scheme.observed)
    current.push_back(std::uint32_t{1} << (v - 1));
  for (int t = 0; t < n && rank < n; ++t) {
    for (std::uint32_t row : current) {
      for (int b = n - 1; b >= 0 && row; --b)
        if ((row >> b) & 1u) {
          if (basis[b]) {
            row ^= basis[b];
          } else {
            basis[b] = row;
            ++rank;
            break;
          }
        }
    }
    for (std::uint32_t& r : current) r = advance(r);
  }
  return rank == n;
}

namespace detail {

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// rank-th m-subset of {1..n} in lexicographic order.
inline std::vector<int> combination_from_rank(int n, int m,
                                              std::uint64_t rank) {
  std::vector<int> combo;
  combo.reserve(m);
  int next = 1;
  for (int slot = m; slot > 0; --slot) {
    for (int v = next;; ++v) {
      std::uint64_t block = binomial(n - v, slot - 1);
      if (rank < block) {
        combo.push_back(v);
        next = v + 1;
        break;
      }
      rank -= block;
    }
  }
  return combo;
}

// Advances to the next m-subset in lexicographic order.
inline bool next_combination(std::vector<int>& combo, int n) {
  int m = static_cast<int>(combo.size());
  for (int i = m - 1; i >= 0; --i) {
    if (combo[i] < n - (m - 1 - i)) {
      ++combo[i];
      for (int j = i + 1; j < m; ++j) combo[j] = combo[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace detail

struct MinObserversOptions {
  int budget = 0;  // 0 = search all sizes up to n
  int jobs = 1;
  int cap = kDefaultSearchCap;
  // Start the size scan at the count/fixed-point floor.  Both floors are
  // necessary conditions for observability, so no optimum is skipped.
  bool use_bound_floor = true;
};

struct MinObserversResult {
  bool found = false;
  // m* when found, otherwise the best known lower bound (budget + 1 or the
  // bound floor, whichever is larger).
  int min_size = 0;
  ObservationScheme scheme;
  int budget = 0;
  // Position of the returned scheme in the canonical scan order (sizes
  // ascending, schemes lexicographic within a size); deterministic even
  // under jobs > 1.
  std::uint64_t schemes_checked = 0;
};

// Smallest observation scheme, lexicographically least among the optimal
// ones.  Observability is monotone in the scheme, so scanning sizes
// ascending and returning the first hit is exact.
inline MinObserversResult min_observers(const Network& net,
                                        MinObserversOptions opts = {}) {
  const int n = net.node_count();
  detail::check_cap(n, opts.cap);
  detail::check_arg(opts.jobs >= 1, "jobs must be >= 1");
  int floor = 1;
  if (opts.use_bound_floor) {
    StateSpaceSummary summary = summarize(net, opts.cap);
    floor = std::max({1, count_bound(summary.max_count),
                      fixed_point_bound(summary.fixed_points.size())});
  }
  const int budget = opts.budget > 0 ? std::min(opts.budget, n) : n;
  MinObserversResult result;
  result.budget = budget;
  std::uint64_t scanned_sizes = 0;
  for (int m = floor; m <= budget; ++m) {
    const std::uint64_t total = detail::binomial(n, m);
    std::uint64_t found_rank = total;
    if (opts.jobs == 1) {
      std::vector<int> combo = detail::combination_from_rank(n, m, 0);
      for (std::uint64_t rank = 0; rank < total; ++rank) {
        if (check(net, ObservationScheme{combo}, opts.cap).observable) {
          found_rank = rank;
          break;
        }
        detail::next_combination(combo, n);
      }
    } else {
      std::atomic<std::uint64_t> best{total};
      std::atomic<std::uint64_t> next_chunk{0};
      const std::uint64_t chunk =
          std::max<std::uint64_t>(1, total / (std::uint64_t(opts.jobs) * 8));
      auto worker = [&]() {
        for (;;) {
          std::uint64_t begin = next_chunk.fetch_add(chunk);
          if (begin >= total || begin >= best.load()) return;
          std::uint64_t end = std::min(begin + chunk, total);
          std::vector<int> combo = detail::combination_from_rank(n, m, begin);
          for (std::uint64_t rank = begin; rank < end; ++rank) {
            if (rank >= best.load()) break;
            if (check(net, ObservationScheme{combo}, opts.cap).observable) {
              std::uint64_t seen = best.load();
              while (rank < seen && !best.compare_exchange_weak(seen, rank)) {
              }
              break;
            }
            detail::next_combination(combo, n);
          }
        }
      };
      std::vector<std::thread> pool;
      for (int j = 0; j < opts.jobs; ++j) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
      found_rank = best.load();
    }
    if (found_rank < total) {
      result.found = true;
      result.min_size = m;
      result.scheme =
          ObservationScheme{detail::combination_from_rank(n, m, found_rank)};
      result.schemes_checked = scanned_sizes + found_rank + 1;
      return result;
    }
    scanned_sizes += total;
  }
  result.min_size = std::max(budget + 1, floor);
  result.schemes_checked = scanned_sizes;
  return result;
}

}  // namespace bnobs
