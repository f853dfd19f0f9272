#pragma once

#include <array>
#include <bit>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "bnobs/network.hpp"

namespace bnobs {

// Family parameters outside their documented domain.
struct ConstraintError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {
inline void constrain(bool ok, const std::string& msg) {
  if (!ok) throw ConstraintError(msg);
}
}  // namespace detail

// A generated instance together with the properties the construction is
// known for.  claimed_min_observers is the exact optimum for the worst-case
// families and the constructed scheme size for the best-case ones;
// claimed_horizon is the stated recovery horizon where the construction has
// one.
struct FamilySpec {
  std::string family;
  int n = 0;
  int k = 0;
  Network net;
  std::optional<ObservationScheme> scheme;
  std::optional<int> claimed_min_observers;
  std::optional<int> claimed_horizon;
};

namespace detail {

inline Literal pos(int var) { return {var, false}; }
inline Literal neg(int var) { return {var, true}; }

inline BooleanFunction shift_function(const BooleanFunction& f, int offset) {
  using Kind = BooleanFunction::Kind;
  auto shift_lits = [offset](const std::vector<Literal>& lits) {
    std::vector<Literal> out = lits;
    for (Literal& lit : out) lit.var += offset;
    return out;
  };
  switch (f.kind()) {
    case Kind::And:
      return BooleanFunction::and_of(shift_lits(f.literals()));
    case Kind::Or:
      return BooleanFunction::or_of(shift_lits(f.literals()));
    case Kind::Xor:
      return BooleanFunction::xor_of(shift_lits(f.literals()));
    case Kind::NestedCanalyzing: {
      std::vector<std::vector<Literal>> groups;
      for (const auto& g : f.groups()) groups.push_back(shift_lits(g));
      return BooleanFunction::nested_canalyzing(std::move(groups));
    }
    case Kind::TruthTable: {
      std::vector<int> vars = f.table_vars();
      for (int& v : vars) v += offset;
      return BooleanFunction::truth_table(std::move(vars), f.table_bits());
    }
  }
  throw std::logic_error("unhandled function kind");
}

}  // namespace detail

// c disjoint copies of a block network; copy b lives on variables shifted
// by b * n and the observation scheme is copied along.  Copies neither
// create nor break observability of the block, and the minimal horizon is
// preserved.
inline std::pair<Network, ObservationScheme> copies(
    const Network& block, const ObservationScheme& scheme, int c) {
  detail::constrain(c >= 1, "copies needs c >= 1");
  const int n = block.node_count();
  detail::constrain(std::uint64_t(n) * c <= kMaxNodes,
                    "copies exceed " + std::to_string(kMaxNodes) + " nodes");
  std::vector<BooleanFunction> fns;
  std::vector<int> observed;
  for (int b = 0; b < c; ++b) {
    for (int i = 1; i <= n; ++i)
      fns.push_back(detail::shift_function(block.function(i), b * n));
    for (int v : scheme.observed) observed.push_back(v + b * n);
  }
  return {Network(std::move(fns)), ObservationScheme::of(std::move(observed))};
}

// Worst case for 2-AND-OR: x_i = x_i AND x_n (i < n), x_n = x_n AND x_1.
// Any state with x_n = 0 maps to the origin, so all n nodes are needed.
inline FamilySpec and_or_worst2(int n) {
  detail::constrain(n >= 2 && n <= kMaxNodes, "and_or_worst2 needs n >= 2");
  std::vector<BooleanFunction> fns;
  for (int i = 1; i < n; ++i)
    fns.push_back(BooleanFunction::and_of({detail::pos(i), detail::pos(n)}));
  fns.push_back(BooleanFunction::and_of({detail::pos(1), detail::pos(n)}));
  FamilySpec spec{"and_or_worst2", n, 2, Network(std::move(fns)),
                  ObservationScheme::all(n), n, std::nullopt};
  return spec;
}

// Best case for 2-AND-OR: copies of the three-node block
//   x1 = !x2 AND x3, x2 = x2 AND x3, x3 = !x2 AND !x3
// observed at x1, recoverable from y(0..3).
inline FamilySpec and_or_best2(int n) {
  detail::constrain(n >= 3 && n % 3 == 0 && n <= kMaxNodes,
                    "and_or_best2 needs n divisible by 3");
  std::vector<BooleanFunction> block{
      BooleanFunction::and_of({detail::neg(2), detail::pos(3)}),
      BooleanFunction::and_of({detail::pos(2), detail::pos(3)}),
      BooleanFunction::and_of({detail::neg(2), detail::neg(3)}),
  };
  auto [net, scheme] =
      copies(Network(std::move(block)), ObservationScheme::of({1}), n / 3);
  return FamilySpec{"and_or_best2", n,     2, std::move(net),
                    std::move(scheme),     n / 3, 3};
}

// Worst case for K-AND-OR on K+1 nodes: node 1 is the plain conjunction of
// x1..xK, node i (2 <= i <= K) negates x_{i-1} in it, node K+1 conjoins
// x2..xK with x_{K+1}.  2^{K+1} - 2K states map to the origin and all K+1
// nodes are needed.
inline FamilySpec and_or_worstK(int k) {
  detail::constrain(k >= 3 && k + 1 <= kMaxNodes, "and_or_worstK needs K >= 3");
  const int n = k + 1;
  std::vector<BooleanFunction> fns;
  for (int i = 1; i <= k; ++i) {
    std::vector<Literal> lits;
    for (int v = 1; v <= k; ++v)
      lits.push_back(i >= 2 && v == i - 1 ? detail::neg(v) : detail::pos(v));
    fns.push_back(BooleanFunction::and_of(std::move(lits)));
  }
  std::vector<Literal> last;
  for (int v = 2; v <= k + 1; ++v) last.push_back(detail::pos(v));
  fns.push_back(BooleanFunction::and_of(std::move(last)));
  return FamilySpec{"and_or_worstK",        n, k, Network(std::move(fns)),
                    ObservationScheme::all(n), n, std::nullopt};
}

namespace detail {

// Sign patterns over a block's last K variables: every K-bit mask except
// the heaviest (K-1)-weight one, ordered by (weight, value).  Bit (K-t) of
// a mask gives the polarity of the t-th tail variable, so the omitted mask
// 2^K - 2 is the pattern positive everywhere but on the last tail variable.
inline std::vector<std::uint32_t> best_case_patterns(int k) {
  std::vector<std::uint32_t> masks;
  const std::uint32_t omitted = (std::uint32_t{1} << k) - 2;
  for (std::uint32_t m = 0; m < (std::uint32_t{1} << k); ++m)
    if (m != omitted) masks.push_back(m);
  std::stable_sort(masks.begin(), masks.end(),
                   [](std::uint32_t a, std::uint32_t b) {
                     int wa = std::popcount(a), wb = std::popcount(b);
                     return wa != wb ? wa < wb : a < b;
                   });
  return masks;
}

}  // namespace detail

// Best case for K-AND-OR: blocks of 2^K - 1 nodes.  Node j of a block is
// the conjunction of the block's last K variables signed by a distinct
// pattern; one step maps the block to a one-hot state (or the origin for
// the omitted pattern), and the 2^K - K - 1 nodes holding the patterns of
// weight <= K-2 suffice as observers, with recovery from y(0..2).
inline FamilySpec and_or_bestK(int k, int n = 0) {
  detail::constrain(k >= 3 && k <= 10, "and_or_bestK needs 3 <= K <= 10");
  const int block = (1 << k) - 1;
  if (n == 0) n = block;
  detail::constrain(n >= block && n % block == 0 && n <= kMaxNodes,
                    "and_or_bestK needs n divisible by 2^K - 1");
  const auto patterns = detail::best_case_patterns(k);
  std::vector<BooleanFunction> fns;
  std::vector<int> observed;
  for (int base = 0; base < n; base += block) {
    for (int j = 1; j <= block; ++j) {
      const std::uint32_t mask = patterns[j - 1];
      std::vector<Literal> lits;
      for (int t = 1; t <= k; ++t) {
        const int var = base + block - k + t;
        const bool positive = (mask >> (k - t)) & 1u;
        lits.push_back(positive ? detail::pos(var) : detail::neg(var));
      }
      fns.push_back(BooleanFunction::and_of(std::move(lits)));
      if (std::popcount(mask) <= k - 2) observed.push_back(base + j);
    }
  }
  const int m = static_cast<int>(observed.size());
  return FamilySpec{"and_or_bestK",
                    n,
                    k,
                    Network(std::move(fns)),
                    ObservationScheme::of(std::move(observed)),
                    m,
                    2};
}

// 2-XOR ring: x_i = x_i XOR x_{i+1}, wrapping at n.  Observing x1 alone
// recovers x(0) within n-1 steps.
inline FamilySpec xor_ring(int n) {
  detail::constrain(n >= 2 && n <= kMaxNodes, "xor_ring needs n >= 2");
  std::vector<BooleanFunction> fns;
  for (int i = 1; i < n; ++i)
    fns.push_back(BooleanFunction::xor_of({detail::pos(i), detail::pos(i + 1)}));
  fns.push_back(BooleanFunction::xor_of({detail::pos(1), detail::pos(n)}));
  return FamilySpec{"xor_ring", n, 2, Network(std::move(fns)),
                    ObservationScheme::of({1}), 1, n - 1};
}

// Paired 2-XOR: nodes 2j-1 and 2j both update to x_{2j-1} XOR x_{2j}, so
// one observer per pair is both necessary and sufficient.
inline FamilySpec xor_pairs(int n) {
  detail::constrain(n >= 2 && n % 2 == 0 && n <= kMaxNodes,
                    "xor_pairs needs even n >= 2");
  std::vector<BooleanFunction> fns;
  std::vector<int> observed;
  for (int i = 1; i <= n; ++i) {
    const int a = i % 2 ? i : i - 1;
    fns.push_back(BooleanFunction::xor_of({detail::pos(a), detail::pos(a + 1)}));
    if (i % 2) observed.push_back(i);
  }
  return FamilySpec{"xor_pairs",
                    n,
                    2,
                    Network(std::move(fns)),
                    ObservationScheme::of(std::move(observed)),
                    n / 2,
                    std::nullopt};
}

// Identical-parity network: every node updates to x1 XOR x2.  Stored with
// the claim that all n nodes must be observed, which verify_xor_worst
// refutes: nodes 3..n feed no update and need direct observation, but
// y(1) = x1 XOR x2 recovers whichever of {x1, x2} is skipped, so n - 1
// observers suffice.
inline FamilySpec xor_worst(int n) {
  detail::constrain(n >= 2 && n <= kMaxNodes, "xor_worst needs n >= 2");
  std::vector<BooleanFunction> fns;
  for (int i = 1; i <= n; ++i)
    fns.push_back(BooleanFunction::xor_of({detail::pos(1), detail::pos(2)}));
  return FamilySpec{"xor_worst",            n, 2, Network(std::move(fns)),
                    ObservationScheme::all(n), n, std::nullopt};
}

// K-XOR on K+1 nodes (K odd): x_i = XOR of all other variables.  The map
// fixes the 2^K even-weight states, so K observers are necessary; x1..xK
// recover x(0) from y(0), y(1).
inline FamilySpec xor_complement(int k) {
  detail::constrain(k >= 3 && k % 2 == 1 && k + 1 <= kMaxNodes,
                    "xor_complement needs odd K >= 3");
  const int n = k + 1;
  std::vector<BooleanFunction> fns;
  std::vector<int> observed;
  for (int i = 1; i <= n; ++i) {
    std::vector<Literal> lits;
    for (int v = 1; v <= n; ++v)
      if (v != i) lits.push_back(detail::pos(v));
    fns.push_back(BooleanFunction::xor_of(std::move(lits)));
    if (i <= k) observed.push_back(i);
  }
  return FamilySpec{"xor_complement",
                    n,
                    k,
                    Network(std::move(fns)),
                    ObservationScheme::of(std::move(observed)),
                    k,
                    1};
}

// Disjoint copies of xor_complement(K): n/(K+1) blocks needing K observers
// each, i.e. a (K/(K+1)) n observer requirement.
inline FamilySpec xor_complement_copies(int k, int n) {
  detail::constrain(k >= 3 && k % 2 == 1, "xor_complement_copies needs odd K >= 3");
  detail::constrain(n >= k + 1 && n % (k + 1) == 0 && n <= kMaxNodes,
                    "xor_complement_copies needs n divisible by K + 1");
  FamilySpec block = xor_complement(k);
  auto [net, scheme] = copies(block.net, *block.scheme, n / (k + 1));
  return FamilySpec{"xor_complement_copies",
                    n,
                    k,
                    std::move(net),
                    std::move(scheme),
                    n / (k + 1) * k,
                    std::nullopt};
}

// K-XOR on K+1 nodes observable at x1 alone: node 1 XORs everything except
// x_K, node i (2 <= i <= K) everything except x_{i-1}, node K+1 everything
// except itself.  x(0) is recovered from y(0..K).
inline FamilySpec xor_m1(int k) {
  detail::constrain(k >= 3 && k + 1 <= kMaxNodes, "xor_m1 needs K >= 3");
  const int n = k + 1;
  std::vector<BooleanFunction> fns;
  for (int i = 1; i <= n; ++i) {
    const int omitted = i == 1 ? k : (i <= k ? i - 1 : n);
    std::vector<Literal> lits;
    for (int v = 1; v <= n; ++v)
      if (v != omitted) lits.push_back(detail::pos(v));
    fns.push_back(BooleanFunction::xor_of(std::move(lits)));
  }
  return FamilySpec{"xor_m1", n, k, Network(std::move(fns)),
                    ObservationScheme::of({1}), 1, k};
}

// Best case for K-NC: blocks of K nodes
//   x_i = x_{i+1} OR (AND of the negations of the block's other variables),
// cyclic within the block; a final block of p = n mod K nodes pads its
// conjunction with x1..x_{K-p} to keep the fan-in at K.  One observer per
// block, the block's first node, suffices.
inline FamilySpec nc_family(int k, int n) {
  detail::constrain(k >= 3, "nc needs K >= 3");
  detail::constrain(n >= k && n <= kMaxNodes, "nc needs n >= K");
  std::vector<BooleanFunction> fns;
  std::vector<int> observed;
  const int full = n / k, p = n % k;
  auto block_node = [&](int base, int size, int j, int pad) {
    const int driver = base + (j % size) + 1;
    std::vector<Literal> conj;
    for (int v = 1; v <= pad; ++v) conj.push_back(detail::pos(v));
    for (int v = base + 1; v <= base + size; ++v)
      if (v != driver) conj.push_back(detail::neg(v));
    return BooleanFunction::nested_canalyzing(
        {{detail::pos(driver)}, std::move(conj)});
  };
  for (int b = 0; b < full; ++b) {
    observed.push_back(b * k + 1);
    for (int j = 1; j <= k; ++j) fns.push_back(block_node(b * k, k, j, 0));
  }
  if (p) {
    observed.push_back(full * k + 1);
    for (int j = 1; j <= p; ++j)
      fns.push_back(block_node(full * k, p, j, k - p));
  }
  const int m = static_cast<int>(observed.size());
  return FamilySpec{"nc",
                    n,
                    k,
                    Network(std::move(fns)),
                    ObservationScheme::of(std::move(observed)),
                    m,
                    std::nullopt};
}

// Three-node fixture: x1 = x1 AND x3, x2 = !x1 AND x3, x3 = x1 AND x2.
// Its time-1 images have COUNT values {3, 2, 1, 1, 1}.
inline FamilySpec example1() {
  std::vector<BooleanFunction> fns{
      BooleanFunction::and_of({detail::pos(1), detail::pos(3)}),
      BooleanFunction::and_of({detail::neg(1), detail::pos(3)}),
      BooleanFunction::and_of({detail::pos(1), detail::pos(2)}),
  };
  return FamilySpec{"example1", 3,           2,
                    Network(std::move(fns)), std::nullopt,
                    std::nullopt,            std::nullopt};
}

// Four-node fixture extending the best-case 2-AND-OR block with
// x4 = x1 AND x4; COUNT values {3, 3, 3, 3, 1, 1, 1, 1}.
inline FamilySpec example2() {
  std::vector<BooleanFunction> fns{
      BooleanFunction::and_of({detail::neg(2), detail::pos(3)}),
      BooleanFunction::and_of({detail::pos(2), detail::pos(3)}),
      BooleanFunction::and_of({detail::neg(2), detail::neg(3)}),
      BooleanFunction::and_of({detail::pos(1), detail::pos(4)}),
  };
  return FamilySpec{"example2", 4,           2,
                    Network(std::move(fns)), std::nullopt,
                    std::nullopt,            std::nullopt};
}

// The worked K = 4 best-case instance on 15 nodes, with the sign patterns
// in their original listing order (weight-1 patterns positive on x15 down
// to x12, then the weight-2 rows, then all-positive before the weight-3
// rows); observers x1..x11.
inline FamilySpec exmp() {
  static constexpr std::array<std::array<int, 4>, 15> kPositives{{
      {0, 0, 0, 0},
      {15, 0, 0, 0},
      {14, 0, 0, 0},
      {13, 0, 0, 0},
      {12, 0, 0, 0},
      {14, 15, 0, 0},
      {13, 15, 0, 0},
      {12, 15, 0, 0},
      {13, 14, 0, 0},
      {12, 14, 0, 0},
      {12, 13, 0, 0},
      {12, 13, 14, 15},
      {13, 14, 15, 0},
      {12, 14, 15, 0},
      {12, 13, 15, 0},
  }};
  std::vector<BooleanFunction> fns;
  for (const auto& positives : kPositives) {
    std::vector<Literal> lits;
    for (int v = 12; v <= 15; ++v) {
      bool is_pos = std::find(positives.begin(), positives.end(), v) !=
                    positives.end();
      lits.push_back(is_pos ? detail::pos(v) : detail::neg(v));
    }
    fns.push_back(BooleanFunction::and_of(std::move(lits)));
  }
  std::vector<int> observed(11);
  std::iota(observed.begin(), observed.end(), 1);
  return FamilySpec{"exmp",
                    15,
                    4,
                    Network(std::move(fns)),
                    ObservationScheme::of(std::move(observed)),
                    11,
                    2};
}

// Named instance of xor_complement(3).
inline FamilySpec example_xor() {
  FamilySpec spec = xor_complement(3);
  spec.family = "example_xor";
  return spec;
}

// Named instance of xor_m1(3).
inline FamilySpec exmp1() {
  FamilySpec spec = xor_m1(3);
  spec.family = "exmp1";
  return spec;
}

// Named instance of nc(K=4, n=11): blocks {1..4}, {5..8}, {9,10,11} with
// pad variable x1, observers {1, 5, 9}.
inline FamilySpec nc_example() {
  FamilySpec spec = nc_family(4, 11);
  spec.family = "nc_example";
  return spec;
}

inline const std::vector<std::string>& family_ids() {
  static const std::vector<std::string> ids{
      "and_or_worst2", "and_or_best2",  "and_or_worstK",
      "and_or_bestK",  "xor_ring",      "xor_pairs",
      "xor_worst",     "xor_complement", "xor_complement_copies",
      "xor_m1",        "nc",            "example1",
      "example2",      "exmp",          "example_xor",
      "exmp1",         "nc_example"};
  return ids;
}

// CLI-facing dispatcher; n/k requirements depend on the family.
inline FamilySpec make_family(const std::string& id, std::optional<int> n,
                              std::optional<int> k) {
  auto need_n = [&](const char* who) {
    detail::constrain(n.has_value(), std::string(who) + " needs --n");
    return *n;
  };
  auto need_k = [&](const char* who) {
    detail::constrain(k.has_value(), std::string(who) + " needs --k");
    return *k;
  };
  auto no_params = [&](const char* who) {
    detail::constrain(!n && !k, std::string(who) + " takes no parameters");
  };
  if (id == "and_or_worst2") return and_or_worst2(need_n(id.c_str()));
  if (id == "and_or_best2") return and_or_best2(need_n(id.c_str()));
  if (id == "and_or_worstK") return and_or_worstK(need_k(id.c_str()));
  if (id == "and_or_bestK")
    return and_or_bestK(need_k(id.c_str()), n.value_or(0));
  if (id == "xor_ring") return xor_ring(need_n(id.c_str()));
  if (id == "xor_pairs") return xor_pairs(need_n(id.c_str()));
  if (id == "xor_worst") return xor_worst(need_n(id.c_str()));
  if (id == "xor_complement") return xor_complement(need_k(id.c_str()));
  if (id == "xor_complement_copies")
    return xor_complement_copies(need_k(id.c_str()), need_n(id.c_str()));
  if (id == "xor_m1") return xor_m1(need_k(id.c_str()));
  if (id == "nc") return nc_family(need_k(id.c_str()), need_n(id.c_str()));
  if (id == "example1") { no_params(id.c_str()); return example1(); }
  if (id == "example2") { no_params(id.c_str()); return example2(); }
  if (id == "exmp") { no_params(id.c_str()); return exmp(); }
  if (id == "example_xor") { no_params(id.c_str()); return example_xor(); }
  if (id == "exmp1") { no_params(id.c_str()); return exmp1(); }
  if (id == "nc_example") { no_params(id.c_str()); return nc_example(); }
  throw ConstraintError("unknown family " + id);
}

}  // namespace bnobs
