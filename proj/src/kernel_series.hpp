#pragma once

// Internal helpers for walking coefficient sequences and summing truncated series.

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "covnum/kernels.hpp"

namespace covnum {

/// Iterates ln a_k for k = start, start+1, ... in O(1) per step; tau_k is carried along
/// for the Gaussian families instead of being recomputed.
class CoefficientCursor {
 public:
  CoefficientCursor(const KernelSpec& spec, std::uint64_t start);

  std::uint64_t level() const noexcept { return k_; }
  double log_value() const noexcept { return log_a_; }
  double value() const noexcept { return std::exp(log_a_); }
  void advance();

 private:
  void refresh();

  const KernelSpec* spec_;
  DimensionSequence dims_;
  std::uint64_t k_ = 0;
  double log_a_ = 0.0;
};

/// a_0 .. a_m.
std::vector<double> coefficient_prefix(const KernelSpec& spec, std::uint64_t m);

/// sum_k a[k] J_k(t).
double series_eval(const KernelSpec& spec, std::span<const double> a, double t);

}  // namespace covnum
