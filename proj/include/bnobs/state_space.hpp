#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "bnobs/network.hpp"

namespace bnobs {

// Default ceilings for full state-space enumeration.  kDefaultEnumCap gates
// the seconds-scale sweeps (one pass over 2^n states); kDefaultSearchCap
// gates the operations that enumerate many schemes or long prefixes on top
// of that.
inline constexpr int kDefaultEnumCap = 24;
inline constexpr int kDefaultSearchCap = 16;

struct CapExceeded : std::runtime_error {
  int n, cap;

  CapExceeded(int n_, int cap_)
      : std::runtime_error("n = " + std::to_string(n_) +
                           " exceeds the enumeration cap " +
                           std::to_string(cap_)),
        n(n_),
        cap(cap_) {}
};

namespace detail {
inline void check_cap(int n, int cap) {
  if (n > cap) throw CapExceeded(n, cap);
}
}  // namespace detail

// Exhaustive one-step image statistics.  counts lists every reachable
// time-1 state with its preimage count (the COUNT value), in display order;
// the counts sum to 2^n.
struct StateSpaceSummary {
  int n = 0;
  std::vector<std::pair<State, std::uint64_t>> counts;
  std::uint64_t image_count = 0;  // r = number of distinct time-1 states
  std::uint64_t max_count = 0;
  std::vector<State> fixed_points;             // display order
  std::vector<std::uint64_t> ones_frequency;   // [i-1]: #{x(0) : x_i(1) = 1}
};

inline StateSpaceSummary summarize(const Network& net,
                                   int cap = kDefaultEnumCap) {
  const int n = net.node_count();
  detail::check_cap(n, cap);
  const std::uint64_t n2 = std::uint64_t{1} << n;
  std::vector<std::uint32_t> count(n2, 0);
  StateSpaceSummary out;
  out.n = n;
  out.ones_frequency.assign(n, 0);
  std::vector<State> fixed;
  for (std::uint64_t s = 0; s < n2; ++s) {
    State image = net.step(static_cast<State>(s));
    ++count[image];
    if (image == s) fixed.push_back(static_cast<State>(s));
    for (int i = 0; i < n; ++i) out.ones_frequency[i] += (image >> i) & 1u;
  }
  for (std::uint64_t row = 0; row < n2; ++row) {
    State s = state_from_row(static_cast<std::uint32_t>(row), n);
    if (count[s] == 0) continue;
    out.counts.push_back({s, count[s]});
    out.max_count = std::max<std::uint64_t>(out.max_count, count[s]);
  }
  out.image_count = out.counts.size();
  // Collected in packed order above; report in display order.
  out.fixed_points = std::move(fixed);
  std::sort(out.fixed_points.begin(), out.fixed_points.end(),
            [n](State a, State b) {
              return row_of_state(a, n) < row_of_state(b, n);
            });
  return out;
}

inline std::uint64_t max_count(const StateSpaceSummary& summary) {
  return summary.max_count;
}

// rows[r][t] = state after t steps from the r-th initial state in display
// order (row r holds x(0) with x1 the most significant display digit).
struct TransitionTable {
  int n = 0;
  int steps = 0;
  std::vector<std::vector<State>> rows;
};

inline TransitionTable transition_table(const Network& net, int steps,
                                        int cap = kDefaultEnumCap) {
  const int n = net.node_count();
  detail::check_cap(n, cap);
  detail::check_arg(steps >= 0, "steps must be >= 0");
  const std::uint64_t n2 = std::uint64_t{1} << n;
  TransitionTable table;
  table.n = n;
  table.steps = steps;
  table.rows.reserve(n2);
  for (std::uint64_t row = 0; row < n2; ++row) {
    std::vector<State> traj(steps + 1);
    traj[0] = state_from_row(static_cast<std::uint32_t>(row), n);
    for (int t = 0; t < steps; ++t) traj[t + 1] = net.step(traj[t]);
    table.rows.push_back(std::move(traj));
  }
  return table;
}

// Header x1(0),...,xn(0),x1(1),...,xn(T); one row per initial state.
inline void write_transition_csv(std::ostream& out,
                                 const TransitionTable& table) {
  for (int t = 0; t <= table.steps; ++t)
    for (int i = 1; i <= table.n; ++i)
      out << (t == 0 && i == 1 ? "" : ",") << 'x' << i << '(' << t << ')';
  out << '\n';
  for (const auto& traj : table.rows) {
    bool first = true;
    for (State s : traj)
      for (int i = 1; i <= table.n; ++i) {
        if (!first) out << ',';
        first = false;
        out << (state_bit(s, i) ? '1' : '0');
      }
    out << '\n';
  }
}

}  // namespace bnobs
