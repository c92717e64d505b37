#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "covnum/kernels.hpp"

namespace covnum {

struct UpperBound {
  double ln_upper;
  std::uint64_t m;
};

struct LowerBound {
  double ln_lower;
  std::uint64_t m;
};

/// Certified ln C(eps, I_K) <= dim V_m ln(1 + 4 kappa_m / eps), with m the smallest level
/// whose tail norm is at most eps/2. Returns (0, 0) once eps >= kappa.
UpperBound upper_bound_lnC(const KernelSpec& spec, double eps);

/// 10^7 for power-law models, 10^6 otherwise.
std::uint64_t default_m_max(const KernelSpec& spec);

/// max(0, max_{1<=m<=m_max} J_m) with
///   J_m = 1/2 sum_{k<=m} tau_k ln(a_k / tau_k) - dim V_m ln eps,
/// where levels with tau_k = 0 or a_k = 0 are left out of both the sum and dim V_m.
/// For the closed-form models a_k/tau_k is non-increasing in k >= 1, so J_m stops
/// growing once ln(a_k/tau_k) <= 2 ln eps and the scan ends there; explicit lists
/// are scanned to their end.
LowerBound lower_bound_lnC(const KernelSpec& spec, double eps, std::optional<std::uint64_t> m_max = std::nullopt);

/// Real critical point of m^d [m ln delta + ln a0 - (d-1) m - ln(3 G_tau) - 2 ln eps],
/// G_tau = Gamma(beta+1) / (Gamma(alpha+1) Gamma(alpha+beta+2)):
///   c = -d / ((d+1)(ln(1/delta) + d - 1)) * ln(3 G_tau eps^2 / a0).
/// Throws DomainError when c <= 0.
double critical_m_geometric(const ManifoldSpec& manifold, double a0, double delta, double eps);

/// Real critical point of m^d [ln(c2 / (3 G_tau eps^2)) - (rho+d-1) ln m]:
///   c = (c2 / (3 G_tau eps^2))^{1/(rho+d-1)} e^{-1/d}.
double critical_m_power(const ManifoldSpec& manifold, double rho, double c2, double eps);

enum class Regime { GeometricUpper, GeometricLower, PowerUpper, PowerLower };

std::string_view to_string(Regime r) noexcept;
/// geometric_upper, geometric_lower, power_upper, power_lower. Throws ValidationError.
Regime regime_from_string(std::string_view name);

/// Theorem hypotheses. Missing entries are filled from the model where a closed form exists.
struct AsymptoticParams {
  std::optional<double> theta;  // a_k <= theta a_{k-1}
  std::optional<double> delta;  // a_k >= delta a_{k-1} > 0
  std::optional<double> gamma;  // a_k <= c1 k^{-d-gamma}
  std::optional<double> c1;
  std::optional<double> rho;    // a_k >= c2 k^{-rho}
  std::optional<double> c2;
};

/// ln C(eps) compared against (1/eps)^inv_eps_exponent * [ln(1/eps)]^log_exponent.
struct AsymptoticReport {
  Regime regime;
  double constant;
  double inv_eps_exponent;
  double log_exponent;
  /// ln sqrt(a_0) in the power-law lower regime, 0 elsewhere.
  double additive_offset;
  /// The geometric lower constant assumes a_0 Gamma(alpha+1) Gamma(alpha+beta+2) / (3 Gamma(beta+1)) >= 1.
  bool requires_rescaling;
  AsymptoticParams params;
};

/// Hypothesis parameters certified from the model's closed form (or its listed
/// coefficients). Throws HypothesisNotCertified when the model does not satisfy the regime.
AsymptoticParams certified_params(const KernelSpec& spec, Regime regime);

/// Constant of the regime's theorem. Supplied params are checked against the certified
/// ones (a smaller theta, a larger delta, ... than the model admits is rejected).
AsymptoticReport asymptotic_constant(const KernelSpec& spec, Regime regime, const AsymptoticParams& params = {});

/// GeometricUpper for models with a geometric envelope, PowerUpper for power laws.
Regime default_regime(const KernelSpec& spec, bool upper);

/// (1/eps)^a [ln(1/eps)]^b for the report's exponents.
double comparison_function(const AsymptoticReport& report, double eps);

/// 4 / (d! [ln(rho / sqrt 2)]^d); DomainError unless rho^2 > 2.
double gaussian_upper_constant(double rho, int d);

struct ConstantPair {
  double lower;
  double upper;
};

/// Constants normalized against [2 ln(1/eps)]^{d+1} for a_k = delta^k tau_k on S^d.
/// d >= 2 needs delta < 1/(d+3); d = 1 accepts any delta in (0, 1) and uses the upper
/// constant 2 / ln(1/delta) obtained from its own geometric ratio.
ConstantPair gaussian_type_constants(double delta, int d);

struct BoundPoint {
  double eps;
  double ln_upper;
  std::uint64_t m_upper;
  double ln_lower;
  std::uint64_t m_lower;
};

struct BoundCurve {
  KernelSpec kernel;
  std::vector<BoundPoint> points;
};

/// count geometrically spaced values from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t count);

BoundCurve bound_curve(const KernelSpec& spec, std::span<const double> eps_grid);

struct EquivalencePoint {
  double eps;
  double upper_ratio;
  double lower_ratio;
};

/// Both bounds divided by [ln(1/eps)]^{d+1}.
std::vector<EquivalencePoint> weak_equivalence_report(const KernelSpec& spec, std::span<const double> eps_grid);

}  // namespace covnum
