#pragma once

#include <cstdint>
#include <vector>

#include "covnum/kernels.hpp"

namespace covnum {

/// Monte Carlo packing on S^1 and S^2.
///
/// A draw is a coefficient vector c, uniform in the unit ball of R^{dim V_m}; the function
/// g = <c, Phi_m(.)> then has RKHS norm |c| <= 1, so it lies in I_K(B_K). Two draws whose
/// values at the ambient points differ by more than 2 eps in max norm are more than 2 eps
/// apart in sup norm too, so a 2 eps-separated set of draws lower-bounds C(eps, I_K).

struct SamplePlan {
  std::uint64_t ambient_points;
  std::uint64_t ball_draws;
  std::uint64_t m;
  std::uint64_t seed;
};

/// Throws ValidationError unless N >= 16, ball_draws >= 100 and m >= 1.
void validate(const SamplePlan& plan);

struct PackingEstimate {
  double eps;
  std::uint64_t count;
  SamplePlan plan;
};

using Point = std::vector<double>;

/// d = 1: angles 2 pi j / N. d = 2: Fibonacci lattice. The seed is not used by either layout.
std::vector<Point> sample_points(int d, std::uint64_t n, std::uint64_t seed);

/// (eta_k S_{k,j}(x))_{k <= m, j <= tau_k}, eta_k = sqrt(a_k / tau_k), with real harmonics
/// orthonormal for the normalized surface measure, so that
///   <Phi_m(x), Phi_m(y)> = sum_{k <= m} a_k J_k(x . y).
std::vector<double> feature_map(const KernelSpec& spec, std::uint64_t m, const Point& x);

/// Values of the drawn functions at the ambient points, one row per draw.
struct FunctionSample {
  std::size_t points;
  std::vector<std::vector<double>> values;
  /// |c| of each draw.
  std::vector<double> coefficient_norms;
};

FunctionSample draw_function_sample(const KernelSpec& spec, const SamplePlan& plan);

/// First-fit greedy 2 eps-separated subset of the drawn functions (draw order).
PackingEstimate packing_lower_estimate(const KernelSpec& spec, double eps, const SamplePlan& plan);

/// Greedy eps-cover of the drawn functions by drawn centres. A heuristic for plots only;
/// it is not a certified bound on C(eps, I_K) in either direction.
std::uint64_t greedy_cover_heuristic(const KernelSpec& spec, double eps, const SamplePlan& plan);

}  // namespace covnum
