#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bnobs/function.hpp"

namespace bnobs {

// Hard structural limit; packed states are 32-bit.  Exhaustive operations
// apply their own, smaller caps on top of this.
inline constexpr int kMaxNodes = 30;

// A synchronous Boolean network: node i updates to functions()[i-1] applied
// to the full current state, all nodes at once.
class Network {
 public:
  explicit Network(std::vector<BooleanFunction> functions)
      : fns_(std::move(functions)) {
    detail::check_arg(!fns_.empty(), "network needs at least one node");
    detail::check_arg(fns_.size() <= kMaxNodes,
                      "more than " + std::to_string(kMaxNodes) + " nodes");
    n_ = static_cast<int>(fns_.size());
    for (int i = 1; i <= n_; ++i)
      detail::check_arg(fns_[i - 1].max_var() <= n_,
                        detail::var_name(i) + " reads variable " +
                            detail::var_name(fns_[i - 1].max_var()) +
                            " outside the network");
  }

  int node_count() const { return n_; }

  const BooleanFunction& function(int node) const { return fns_[node - 1]; }

  const std::vector<BooleanFunction>& functions() const { return fns_; }

  State step(State s) const {
    State next = 0;
    for (int i = 0; i < n_; ++i)
      next |= State{fns_[i].eval(s)} << i;
    return next;
  }

  State state_mask() const { return (State{1} << n_) - 1; }

  friend bool operator==(const Network& a, const Network& b) {
    return a.fns_ == b.fns_;
  }
  friend bool operator!=(const Network& a, const Network& b) {
    return !(a == b);
  }

 private:
  int n_ = 0;
  std::vector<BooleanFunction> fns_;
};

// The set of output nodes: y_j(t) = x_{observed[j]}(t).  Only the set
// matters for observability, so construction canonicalizes to strictly
// increasing order.
struct ObservationScheme {
  std::vector<int> observed;

  static ObservationScheme of(std::vector<int> nodes) {
    detail::check_arg(!nodes.empty(), "observation scheme is empty");
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    detail::check_arg(nodes.front() >= 1, "node index must be >= 1");
    return ObservationScheme{std::move(nodes)};
  }

  static ObservationScheme all(int n) {
    std::vector<int> nodes(n);
    for (int i = 0; i < n; ++i) nodes[i] = i + 1;
    return ObservationScheme{std::move(nodes)};
  }

  int size() const { return static_cast<int>(observed.size()); }

  bool contains(int node) const {
    return std::binary_search(observed.begin(), observed.end(), node);
  }

  // Packs the observed bits of s, first observed node least significant.
  std::uint32_t project(State s) const {
    std::uint32_t out = 0;
    for (std::size_t j = 0; j < observed.size(); ++j)
      out |= std::uint32_t{state_bit(s, observed[j])} << j;
    return out;
  }

  friend bool operator==(const ObservationScheme& a,
                         const ObservationScheme& b) {
    return a.observed == b.observed;
  }
};

inline void check_scheme(const Network& net, const ObservationScheme& scheme) {
  detail::check_arg(!scheme.observed.empty(), "observation scheme is empty");
  detail::check_arg(scheme.observed.back() <= net.node_count(),
                    "observed node " +
                        detail::var_name(scheme.observed.back()) +
                        " outside the network");
}

// Tables and listings order states by the display tuple (x1, ..., xn), x1
// first: row r holds the state whose x_i is bit (n-i) of r.  The packed
// encoding keeps x1 in the least significant bit, so the two orders are bit
// reversals of each other.
inline State state_from_row(std::uint32_t row, int n) {
  State s = 0;
  for (int i = 1; i <= n; ++i)
    s |= ((row >> (n - i)) & 1u) << (i - 1);
  return s;
}

inline std::uint32_t row_of_state(State s, int n) {
  std::uint32_t row = 0;
  for (int i = 1; i <= n; ++i)
    row |= ((s >> (i - 1)) & 1u) << (n - i);
  return row;
}

// "x1 x2 ... xn" as a plain bit string, e.g. [0,1,0] -> "010".
inline std::string format_state(State s, int n) {
  std::string out(n, '0');
  for (int i = 1; i <= n; ++i)
    if (state_bit(s, i)) out[i - 1] = '1';
  return out;
}

}  // namespace bnobs
