#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "covnum/manifold.hpp"

namespace covnum {

// Coefficient models. a_k are the Schoenberg coefficients of
//   K(x, y) = sum_k a_k J_k^{(alpha,beta)}(cos d(x, y)).
//
// The reproducing space of such a kernel is the set of functions
//   g = sum_k eta_k sum_{j <= tau_k} c_k^j S_{k,j},   eta_k = sqrt(a_k / tau_k),
// with {c_k^j} in l^2 and <g, h>_K = sum c_k^j d_k^j. Only coefficient arithmetic is
// needed for the bounds; the empirical module realises the map on spheres.

/// a_k = a0 * ratio^k.
struct Geometric {
  double a0;
  double ratio;
};

/// a_0 = a0, a_k = c * k^{-p} for k >= 1.
struct PowerLaw {
  double c;
  double p;
  double a0;
};

/// Gaussian kernel exp(-2 (1 - x.y) / rho^2) on S^d, d >= 2: a_k = lambda_k^rho * tau_k.
struct GaussianSphere {
  double rho;
};

/// a_k = delta^k * tau_k on S^d.
struct GaussianType {
  double delta;
};

/// a_0 .. a_M as listed, zero beyond.
struct Explicit {
  std::vector<double> coefficients;
};

using CoefficientModel = std::variant<Geometric, PowerLaw, GaussianSphere, GaussianType, Explicit>;

struct KernelSpec {
  ManifoldSpec manifold;
  CoefficientModel model;
};

/// Validates parameter ranges (DomainError) and that sphere-only models sit on a
/// sphere (ModelMismatch). On real projective spaces odd coefficients are zero.
KernelSpec make_kernel(const ManifoldSpec& manifold, CoefficientModel model);

double coefficient(const KernelSpec& spec, std::uint64_t k);

/// ln a_k, or -infinity when a_k = 0. Stays finite where a_k underflows.
double log_coefficient(const KernelSpec& spec, std::uint64_t k);

/// lambda_k^rho = e^{-2/rho^2} rho^{d-1} Gamma((d+1)/2) I_{k+(d-1)/2}(2/rho^2).
double gaussian_coefficient(double rho, int d, std::uint64_t k);
double log_gaussian_coefficient(double rho, int d, std::uint64_t k);

/// Upper bound r(k) on a_{j+1}/a_j valid for every j >= k, when the model has one
/// in closed form (geometric and Gaussian families).
std::optional<double> ratio_envelope(const KernelSpec& spec, std::uint64_t k);

/// sum_{k > m} a_k = (kappa_m^s)^2. Closed forms where available, otherwise a
/// forward sum closed off by the ratio envelope, so the result never falls below
/// the true tail by more than rounding.
double tail_sum(const KernelSpec& spec, std::uint64_t m);

/// sum_{k <= m} a_k = kappa_m^2.
double partial_sum(const KernelSpec& spec, std::uint64_t m);

/// kappa = ||I_K|| = sqrt(sum_k a_k).
double embedding_norm(const KernelSpec& spec);
/// kappa_m = ||P_m||.
double partial_norm(const KernelSpec& spec, std::uint64_t m);
/// kappa_m^s = ||P_m^s||.
double tail_norm(const KernelSpec& spec, std::uint64_t m);

/// A priori bound on (kappa_m^s)^2 from the decay hypothesis alone:
///   geometric ratio theta:  theta^{m+1} a_0 / (1 - theta),
///   power law:              c m^{1-p} / (p-1)   (integral comparison, m >= 1).
/// Throws Unsupported for explicit lists and for envelopes that do not contract.
double tail_bound(const KernelSpec& spec, std::uint64_t m);

/// Smallest m with tail_sum(spec, m) <= threshold. Throws LevelOverflow past 10^7.
std::uint64_t cutoff_level(const KernelSpec& spec, double threshold);

struct RatioRange {
  double inf_ratio;
  double sup_ratio;
};

/// min / max of a_{k+1}/a_k over k < k_max, taken between consecutive nonzero levels
/// on real projective spaces. Throws ZeroCoefficient for a vanishing coefficient elsewhere.
RatioRange decay_ratio_range(const KernelSpec& spec, std::uint64_t k_max);

/// Truncated Schoenberg series at t = cos d(x, y), with |result - K| <= tol.
double kernel_eval(const KernelSpec& spec, double t, double tol);

/// Recovers a_k from the kernel profile by Gauss-Legendre quadrature of
///   P_k(1)/h_k * int f(t) P_k(t) (1-t)^alpha (1+t)^beta dt
/// after the substitution t = cos(phi), which turns the weight into a smooth factor.
/// Throws QuadratureFailure when the half-rule error estimate exceeds tol * kappa^2.
double recover_coefficient(const KernelSpec& spec, std::uint64_t k, std::size_t quadrature_nodes,
                           double tol = 1e-9);

/// Hurwitz zeta sum_{j >= 0} (q + j)^{-s}, s > 1, q > 0.
double hurwitz_zeta(double s, double q);

}  // namespace covnum
