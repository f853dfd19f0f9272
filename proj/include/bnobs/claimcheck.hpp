#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "bnobs/bounds.hpp"
#include "bnobs/families.hpp"
#include "bnobs/observability.hpp"
#include "bnobs/state_space.hpp"

namespace bnobs {

// Enumeration of the networks whose every node is an AND or OR of two
// distinct literals.  A function index packs (variable pair, op, polarity):
//   f = pair_index * 8 + op * 4 + neg_first * 2 + neg_second
// with pairs (a, b), a < b, in lexicographic order and op 0 = AND, 1 = OR.
// A network index is the mixed-radix number over node function indices with
// node 1 most significant.

inline int two_and_or_function_count(int n) { return 8 * n * (n - 1) / 2; }

inline std::uint64_t two_and_or_class_size(int n) {
  const std::uint64_t c = two_and_or_function_count(n);
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= c;
  return total;
}

namespace detail {

struct TwoAndOrCode {
  int a = 0, b = 0;
  bool is_or = false, neg_a = false, neg_b = false;
};

inline TwoAndOrCode two_and_or_decode(int n, int f_index) {
  TwoAndOrCode code;
  int pair = f_index / 8;
  const int rest = f_index % 8;
  code.is_or = rest & 4;
  code.neg_a = rest & 2;
  code.neg_b = rest & 1;
  code.a = 1;
  while (pair >= n - code.a) {
    pair -= n - code.a;
    ++code.a;
  }
  code.b = code.a + 1 + pair;
  return code;
}

// Truth columns for all function indices: bit s of col[f] is f at packed
// state s.  Only defined for n <= 5 (2^n state bits in a 32-bit column).
inline std::vector<std::uint32_t> two_and_or_columns(int n) {
  const std::uint32_t states = std::uint32_t{1} << n;
  const std::uint32_t full =
      states == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << states) - 1;
  std::vector<std::uint32_t> varcol(n + 1, 0);
  for (std::uint32_t s = 0; s < states; ++s)
    for (int v = 1; v <= n; ++v)
      if (state_bit(s, v)) varcol[v] |= std::uint32_t{1} << s;
  const int fc = two_and_or_function_count(n);
  std::vector<std::uint32_t> col(fc);
  for (int f = 0; f < fc; ++f) {
    const TwoAndOrCode code = two_and_or_decode(n, f);
    const std::uint32_t ca = code.neg_a ? varcol[code.a] ^ full : varcol[code.a];
    const std::uint32_t cb = code.neg_b ? varcol[code.b] ^ full : varcol[code.b];
    col[f] = code.is_or ? (ca | cb) : (ca & cb);
  }
  return col;
}

// Partition refinement specialized to one observed node on a dense
// successor table with at most 32 states.
inline bool single_observer_observable(const std::uint8_t* succ, int n,
                                       int observer) {
  const int states = 1 << n;
  std::uint8_t cls[32];
  for (int s = 0; s < states; ++s)
    cls[s] = static_cast<std::uint8_t>((s >> (observer - 1)) & 1);
  int classes = 2;
  static thread_local std::uint16_t remap[1024];
  static thread_local std::uint32_t stamp[1024];
  static thread_local std::uint32_t epoch = 0;
  std::uint8_t next[32];
  while (classes < states) {
    ++epoch;
    int fresh = 0;
    for (int s = 0; s < states; ++s) {
      const unsigned sig = cls[s] * 32u + cls[succ[s]];
      if (stamp[sig] != epoch) {
        stamp[sig] = epoch;
        remap[sig] = static_cast<std::uint16_t>(fresh++);
      }
      next[s] = static_cast<std::uint8_t>(remap[sig]);
    }
    if (fresh == classes) return false;
    std::copy(next, next + states, cls);
    classes = fresh;
  }
  return true;
}

// Mixed-radix digits of a network index, node 1 first.
inline void two_and_or_digits(int n, std::uint64_t index, int* digits) {
  const std::uint64_t c = two_and_or_function_count(n);
  for (int i = n - 1; i >= 0; --i) {
    digits[i] = static_cast<int>(index % c);
    index /= c;
  }
}

inline void build_succ(const std::vector<std::uint32_t>& col, const int* digits,
                       int n, std::uint8_t* succ) {
  const int states = 1 << n;
  for (int s = 0; s < states; ++s) {
    unsigned t = 0;
    for (int i = 0; i < n; ++i) t |= ((col[digits[i]] >> s) & 1u) << i;
    succ[s] = static_cast<std::uint8_t>(t);
  }
}

// Advance the digit odometer to the next network index.
inline void bump_digits(int n, int radix, int* digits) {
  for (int i = n - 1; i >= 0; --i) {
    if (++digits[i] < radix) return;
    digits[i] = 0;
  }
}

inline void check_enumeration_n(int n) {
  constrain(n >= 2 && n <= 5, "enumeration needs 2 <= n <= 5");
}

}  // namespace detail

inline BooleanFunction two_and_or_function(int n, int f_index) {
  detail::check_arg(f_index >= 0 && f_index < two_and_or_function_count(n),
                    "function index out of range");
  const detail::TwoAndOrCode code = detail::two_and_or_decode(n, f_index);
  const std::vector<Literal> lits{{code.a, code.neg_a}, {code.b, code.neg_b}};
  return code.is_or ? BooleanFunction::or_of(lits)
                    : BooleanFunction::and_of(lits);
}

inline Network two_and_or_network(int n, std::uint64_t index) {
  detail::check_arg(index < two_and_or_class_size(n),
                    "network index out of range");
  std::vector<int> digits(n);
  detail::two_and_or_digits(n, index, digits.data());
  std::vector<BooleanFunction> fns;
  for (int d : digits) fns.push_back(two_and_or_function(n, d));
  return Network(std::move(fns));
}

template <class Fn>
inline void for_each_two_and_or(int n, Fn&& fn) {
  detail::check_enumeration_n(n);
  const std::uint64_t total = two_and_or_class_size(n);
  for (std::uint64_t i = 0; i < total; ++i) fn(i, two_and_or_network(n, i));
}

struct CounterExample {
  std::uint64_t index = 0;
  Network net;
  int observer = 0;  // offending observation node, 0 if not applicable
};

struct ClaimResult {
  std::string claim;
  int n = 0;
  int k = 0;
  bool verified = false;
  std::uint64_t networks = 0;  // instances examined
  std::uint64_t checks = 0;    // decision-procedure runs, in canonical order
  std::optional<std::uint64_t> extremal;        // claim-specific statistic
  std::optional<std::uint64_t> extremal_index;  // smallest index attaining it
  std::optional<CounterExample> counterexample;
  std::optional<MinObserversResult> observers;
  std::optional<ObservabilityVerdict> verdict;
};

// No single observation node makes any two-literal AND-OR network on n
// nodes observable.  Scans every (network, observer) pair in canonical
// order (network index major, observer minor); a counterexample is the
// first observable pair.
inline ClaimResult verify_prop3(int n, int jobs = 1) {
  detail::check_enumeration_n(n);
  detail::check_arg(jobs >= 1, "jobs must be >= 1");
  const std::uint64_t total = two_and_or_class_size(n);
  const auto col = detail::two_and_or_columns(n);
  const int radix = two_and_or_function_count(n);
  const std::uint64_t npairs = total * n;

  std::atomic<std::uint64_t> best{npairs};
  std::atomic<std::uint64_t> next_chunk{0};
  const std::uint64_t chunk =
      std::max<std::uint64_t>(1, total / (std::uint64_t(jobs) * 8));
  auto worker = [&]() {
    int digits[8];
    std::uint8_t succ[32];
    for (;;) {
      const std::uint64_t begin = next_chunk.fetch_add(chunk);
      if (begin >= total || begin * n >= best.load()) return;
      const std::uint64_t end = std::min(begin + chunk, total);
      detail::two_and_or_digits(n, begin, digits);
      for (std::uint64_t idx = begin; idx < end; ++idx) {
        if (idx * n >= best.load()) break;
        detail::build_succ(col, digits, n, succ);
        for (int obs = 1; obs <= n; ++obs) {
          if (detail::single_observer_observable(succ, n, obs)) {
            const std::uint64_t pos = idx * n + (obs - 1);
            std::uint64_t seen = best.load();
            while (pos < seen && !best.compare_exchange_weak(seen, pos)) {
            }
            break;
          }
        }
        detail::bump_digits(n, radix, digits);
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  ClaimResult result;
  result.claim = "prop3";
  result.n = n;
  result.k = 2;
  result.networks = total;
  const std::uint64_t pos = best.load();
  if (pos == npairs) {
    result.verified = true;
    result.checks = npairs;
  } else {
    result.checks = pos + 1;
    result.counterexample =
        CounterExample{pos / n, two_and_or_network(n, pos / n),
                       static_cast<int>(pos % n) + 1};
  }
  return result;
}

// Every two-literal AND-OR network on n nodes has a state with at least
// three preimages, so the preimage-count bound never certifies a single
// observer.  Full scan; extremal is the minimum over networks of the
// largest preimage count, extremal_index the first network attaining it.
inline ClaimResult verify_claim2(int n, int jobs = 1) {
  detail::check_enumeration_n(n);
  detail::check_arg(jobs >= 1, "jobs must be >= 1");
  const std::uint64_t total = two_and_or_class_size(n);
  const auto col = detail::two_and_or_columns(n);
  const int radix = two_and_or_function_count(n);
  const int states = 1 << n;

  struct Best {
    std::uint32_t value = ~std::uint32_t{0};
    std::uint64_t index = 0;
  };
  std::vector<Best> bests(jobs);
  std::atomic<std::uint64_t> next_chunk{0};
  const std::uint64_t chunk =
      std::max<std::uint64_t>(1, total / (std::uint64_t(jobs) * 8));
  auto worker = [&](int slot) {
    Best local;
    int digits[8];
    std::uint8_t succ[32];
    std::uint8_t cnt[32];
    for (;;) {
      const std::uint64_t begin = next_chunk.fetch_add(chunk);
      if (begin >= total) break;
      const std::uint64_t end = std::min(begin + chunk, total);
      detail::two_and_or_digits(n, begin, digits);
      for (std::uint64_t idx = begin; idx < end; ++idx) {
        detail::build_succ(col, digits, n, succ);
        std::fill(cnt, cnt + states, std::uint8_t{0});
        for (int s = 0; s < states; ++s) ++cnt[succ[s]];
        std::uint32_t maxc = 0;
        for (int s = 0; s < states; ++s) maxc = std::max<std::uint32_t>(maxc, cnt[s]);
        if (maxc < local.value) {
          local.value = maxc;
          local.index = idx;
        }
        detail::bump_digits(n, radix, digits);
      }
    }
    bests[slot] = local;
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker, j);
    for (auto& t : pool) t.join();
  }
  Best best;
  for (const Best& b : bests)
    if (b.value < best.value || (b.value == best.value && b.index < best.index))
      best = b;

  ClaimResult result;
  result.claim = "claim2";
  result.n = n;
  result.k = 2;
  result.networks = total;
  result.checks = total;
  result.extremal = best.value;
  result.extremal_index = best.index;
  result.verified = best.value >= 3;
  if (!result.verified)
    result.counterexample =
        CounterExample{best.index, two_and_or_network(n, best.index), 0};
  return result;
}

namespace detail {

// Exhaustively confirms that a family instance needs exactly the claimed
// number of observers: every smaller scheme fails and the optimum is found.
inline ClaimResult verify_minimum(const char* claim, FamilySpec spec,
                                  int jobs) {
  MinObserversOptions opts;
  opts.jobs = jobs;
  opts.use_bound_floor = false;
  MinObserversResult found = min_observers(spec.net, opts);
  ClaimResult result;
  result.claim = claim;
  result.n = spec.n;
  result.k = spec.k;
  result.networks = 1;
  result.checks = found.schemes_checked;
  result.verified = found.found && found.min_size == *spec.claimed_min_observers;
  result.observers = std::move(found);
  return result;
}

}  // namespace detail

// The all-nodes worst case for two-literal AND-OR networks: the instance on
// n nodes admits no observation scheme smaller than n.
inline ClaimResult verify_prop1(int n, int jobs = 1) {
  return detail::verify_minimum("prop1", and_or_worst2(n), jobs);
}

// The all-nodes worst case for K-literal AND-OR networks on K + 1 nodes;
// also records the largest preimage count 2^{K+1} - 2K as extremal.
inline ClaimResult verify_prop5(int k, int jobs = 1) {
  FamilySpec spec = and_or_worstK(k);
  StateSpaceSummary summary = summarize(spec.net);
  ClaimResult result = detail::verify_minimum("prop5", std::move(spec), jobs);
  result.extremal = summary.max_count;
  result.verified = result.verified &&
                    summary.max_count == (std::uint64_t{1} << (k + 1)) - 2 * k;
  return result;
}

// The all-nodes worst case for two-literal XOR networks.
inline ClaimResult verify_xor_worst(int n, int jobs = 1) {
  return detail::verify_minimum("xor_worst", xor_worst(n), jobs);
}

// The single-observer XOR ring is observable within n - 1 steps.
inline ClaimResult verify_prop7(int n) {
  FamilySpec spec = xor_ring(n);
  ObservabilityVerdict v = check(spec.net, *spec.scheme);
  ClaimResult result;
  result.claim = "prop7";
  result.n = n;
  result.k = 2;
  result.networks = 1;
  result.checks = 1;
  result.verified = v.observable && v.horizon <= n - 1;
  result.verdict = v;
  return result;
}

// The complement-XOR network on K + 1 nodes: observable at x1..xK with
// horizon exactly 1, has 2^K fixed points, and no smaller scheme works
// (extremal records the fixed-point count).
inline ClaimResult verify_prop8(int k, int jobs = 1) {
  FamilySpec spec = xor_complement(k);
  ObservabilityVerdict v = check(spec.net, *spec.scheme);
  StateSpaceSummary summary = summarize(spec.net);
  MinObserversOptions opts;
  opts.jobs = jobs;
  opts.use_bound_floor = false;
  MinObserversResult found = min_observers(spec.net, opts);
  ClaimResult result;
  result.claim = "prop8";
  result.n = spec.n;
  result.k = k;
  result.networks = 1;
  result.checks = found.schemes_checked + 1;
  result.extremal = summary.fixed_points.size();
  result.verified = v.observable && v.horizon == 1 &&
                    summary.fixed_points.size() == (std::uint64_t{1} << k) &&
                    found.found && found.min_size == k;
  result.verdict = v;
  result.observers = std::move(found);
  return result;
}

// The single-observer K-XOR construction on K + 1 nodes is observable
// within K steps; the XOR rank oracle must agree.
inline ClaimResult verify_prop11(int k) {
  FamilySpec spec = xor_m1(k);
  ObservabilityVerdict v = check(spec.net, *spec.scheme);
  ClaimResult result;
  result.claim = "prop11";
  result.n = spec.n;
  result.k = k;
  result.networks = 1;
  result.checks = 2;
  result.verified = v.observable && v.horizon <= k &&
                    xor_rank_observable(spec.net, *spec.scheme);
  result.verdict = v;
  return result;
}

// The best-case K-AND-OR construction: 2^K - 1 - K observers per block
// recover the state within 2 steps.
inline ClaimResult verify_theorem_bestK(int k, int n = 0) {
  FamilySpec spec = and_or_bestK(k, n);
  ObservabilityVerdict v = check(spec.net, *spec.scheme);
  const int block = (1 << k) - 1;
  const int expect = spec.n / block * ((1 << k) - 1 - k);
  ClaimResult result;
  result.claim = "theorem-bestK";
  result.n = spec.n;
  result.k = k;
  result.networks = 1;
  result.checks = 1;
  result.verified = v.observable && v.horizon <= 2 &&
                    spec.scheme->size() == expect &&
                    *spec.claimed_min_observers == expect;
  result.verdict = v;
  return result;
}

// The nested-canalyzing construction achieves ceil(n / K) observers and no
// scheme smaller than that works.
inline ClaimResult verify_theorem5(int n, int k, int jobs = 1) {
  FamilySpec spec = nc_family(k, n);
  ObservabilityVerdict v = check(spec.net, *spec.scheme);
  ClaimResult result = detail::verify_minimum("theorem5", spec, jobs);
  result.checks += 1;
  result.verified = result.verified && v.observable &&
                    *spec.claimed_min_observers == (n + k - 1) / k;
  result.verdict = v;
  return result;
}

}  // namespace bnobs
