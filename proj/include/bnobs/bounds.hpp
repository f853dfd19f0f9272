#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <vector>

#include "bnobs/state_space.hpp"

namespace bnobs {

// Margin below which an inequality flag is not asserted.
inline constexpr double kFlagTolerance = 1e-9;

namespace detail {
inline void check_k(int k, int k_min = 1) {
  check_arg(k >= k_min && k <= 60,
            "K must be in [" + std::to_string(k_min) + ", 60]");
}
}  // namespace detail

// -p log2 p - (1-p) log2 (1-p) with the 0 * log2 0 = 0 convention, so a
// constant distribution has entropy exactly 0.
inline double binary_entropy(double p) {
  detail::check_arg(p >= 0.0 && p <= 1.0, "p must be in [0, 1]");
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

// Entropy of one AND/OR node's output over uniform inputs:
//   K - ((2^K - 1)/2^K) log2(2^K - 1),
// which equals the binary entropy of p = 2^-K.  Evaluated via log1p so the
// value stays accurate when it is 2^-K-small (large K).
inline double andor_entropy(int k) {
  detail::check_k(k);
  const double p = std::exp2(static_cast<double>(-k));
  return k * p - (1.0 - p) * (std::log1p(-p) / std::numbers::ln2);
}

// Coefficient of the entropy lower bound m >= n (1 - andor_entropy(K)).
inline double andor_lower_coeff(int k) { return 1.0 - andor_entropy(k); }

inline double andor_lower(int n, int k) {
  detail::check_arg(n >= 1, "n must be >= 1");
  return n * andor_lower_coeff(k);
}

// 1 - beta_K, where beta_K is the binary entropy of
// p = (2^(K-1) - 1)/2^K = 1/2 - 2^-K.  Direct evaluation of the entropy
// rounds to 1.0 in double for K around 27, so the complement is summed as
//   1 - h2(1/2 - u/2) = (1/ln 2) sum_{j>=1} u^(2j) / (2j (2j-1)),
// with u = 2^(1-K).  At K = 1 the series is the slowly converging ln 2 and
// the exact value 1 is returned directly.
inline double nc_lower_coeff(int k) {
  detail::check_k(k);
  if (k == 1) return 1.0;
  const double u2 = std::exp2(2.0 * (1 - k));
  double power = u2, sum = 0.0;
  for (int j = 1;; ++j) {
    const double term = power / (2.0 * j * (2.0 * j - 1.0));
    sum += term;
    if (term <= sum * 1e-18 || term == 0.0) break;
    power *= u2;
  }
  return sum / std::numbers::ln2;
}

inline double beta(int k) { return 1.0 - nc_lower_coeff(k); }

inline double nc_lower(int n, int k) {
  detail::check_arg(n >= 1, "n must be >= 1");
  return n * nc_lower_coeff(k);
}

// Observer fraction of the best known K-AND-OR construction.
inline double andor_best_coeff(int k) {
  detail::check_k(k, 2);
  const double block = std::exp2(static_cast<double>(k)) - 1.0;
  return (block - k) / block;
}

// Observer fraction of the best known K-NC construction.
inline double nc_best_coeff(int k) {
  detail::check_k(k);
  return 1.0 / k;
}

// Total output entropy of one best-case AND-OR block of 2^K - 1 nodes:
//   I_K = (2^K - 1) andor_entropy(K).
// I_K > K for K > 1 is what lets the block construction beat the per-node
// entropy bound.
inline double block_information(int k) {
  detail::check_k(k);
  return (std::exp2(static_cast<double>(k)) - 1.0) * andor_entropy(k);
}

// Smallest m with 2^m >= max COUNT; exact integer arithmetic.
inline int count_bound(std::uint64_t max_count) {
  if (max_count <= 1) return 0;
  return std::bit_width(max_count - 1);
}

// Smallest m with 2^m >= l for l fixed points (each fixed point has a
// constant output sequence, so all must differ in the observed projection).
inline int fixed_point_bound(std::uint64_t fixed_points) {
  if (fixed_points <= 1) return 0;
  return std::bit_width(fixed_points - 1);
}

// Instance bounds computed from one-step statistics; the integer fields are
// the ceilings actually usable as observer-count floors.
struct InstanceBounds {
  std::uint64_t max_count = 0;
  double count_log2 = 0.0;
  int count_observers = 0;
  std::uint64_t fixed_points = 0;
  double fixed_point_log2 = 0.0;
  int fixed_point_observers = 0;
};

inline InstanceBounds instance_bounds(const StateSpaceSummary& summary) {
  InstanceBounds b;
  b.max_count = summary.max_count;
  b.count_log2 = summary.max_count ? std::log2(double(summary.max_count)) : 0.0;
  b.count_observers = count_bound(summary.max_count);
  b.fixed_points = summary.fixed_points.size();
  b.fixed_point_log2 =
      b.fixed_points ? std::log2(double(b.fixed_points)) : 0.0;
  b.fixed_point_observers = fixed_point_bound(b.fixed_points);
  return b;
}

// One row of the coefficient comparison: lower-bound and best-construction
// observer fractions for AND-OR and NC networks, plus the block information
// I_K.  The and-or gap flag is decided on the block-scaled margin
// I_K - K = (2^K - 1)(best - lower), since the raw coefficient gap shrinks
// like 1.44 * 2^-K and would drown in the tolerance from K around 21.
struct CoefficientRow {
  int k = 0;
  double andor_lower_coeff = 0.0;
  double andor_best_coeff = 0.0;
  double nc_lower_coeff = 0.0;
  double nc_best_coeff = 0.0;
  double block_information = 0.0;
  bool andor_best_exceeds_lower = false;
  bool nc_best_exceeds_lower = false;
  bool block_exceeds_k = false;
};

inline CoefficientRow coefficient_row(int k) {
  detail::check_k(k, 2);
  CoefficientRow row;
  row.k = k;
  row.andor_lower_coeff = andor_lower_coeff(k);
  row.andor_best_coeff = andor_best_coeff(k);
  row.nc_lower_coeff = nc_lower_coeff(k);
  row.nc_best_coeff = nc_best_coeff(k);
  row.block_information = block_information(k);
  const double scaled_gap = row.block_information - k;
  row.andor_best_exceeds_lower = scaled_gap > kFlagTolerance;
  row.block_exceeds_k = scaled_gap > kFlagTolerance;
  row.nc_best_exceeds_lower =
      row.nc_best_coeff - row.nc_lower_coeff > kFlagTolerance;
  return row;
}

inline std::vector<CoefficientRow> coefficient_table(int k_min, int k_max) {
  detail::check_arg(k_min >= 2 && k_min <= k_max, "need 2 <= k_min <= k_max");
  std::vector<CoefficientRow> rows;
  for (int k = k_min; k <= k_max; ++k) rows.push_back(coefficient_row(k));
  return rows;
}

inline void write_coefficient_csv(std::ostream& out,
                                  const std::vector<CoefficientRow>& rows) {
  out << "K,andor_lower_coeff,andor_best_coeff,nc_lower_coeff,nc_best_coeff,"
         "block_information,andor_best_exceeds_lower,nc_best_exceeds_lower,"
         "block_exceeds_k\n";
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.12g", v);
    out << ',' << buf;
  };
  for (const CoefficientRow& row : rows) {
    out << row.k;
    put(row.andor_lower_coeff);
    put(row.andor_best_coeff);
    put(row.nc_lower_coeff);
    put(row.nc_best_coeff);
    put(row.block_information);
    out << ',' << (row.andor_best_exceeds_lower ? "true" : "false") << ','
        << (row.nc_best_exceeds_lower ? "true" : "false") << ','
        << (row.block_exceeds_k ? "true" : "false") << '\n';
  }
}

}  // namespace bnobs
