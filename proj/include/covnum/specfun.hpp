#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace covnum {

/// Parameter pair of the Jacobi family P_k^{(alpha, beta)}; both must exceed -1.
struct JacobiParams {
  double alpha;
  double beta;
};

/// ln Gamma(x) for x > 0, evaluated as the Stirling form with the exact
/// correction mu(x). Returned in extended precision so that Gamma ratios at
/// large arguments keep their relative accuracy after differencing.
long double ln_gamma(long double x);

/// mu(x) = ln Gamma(x) - ln(sqrt(2 pi) x^{x-1/2} e^{-x}); satisfies 0 < mu(x) < 1/(12x).
double stirling_mu(double x);

/// P_k^{(alpha,beta)}(t) by the three-term recurrence.
double jacobi_eval(JacobiParams p, std::uint64_t k, double t);

/// P_k^{(alpha,beta)}(1) = Gamma(k+alpha+1) / (k! Gamma(alpha+1)).
double jacobi_at_one(JacobiParams p, std::uint64_t k);

/// J_k(t) = P_k(t) / P_k(1). Exactly 1 at t = 1.
double jacobi_normalized(JacobiParams p, std::uint64_t k, double t);

/// Fills out[k] = J_k(t) for k = 0 .. out.size()-1 in a single recurrence pass.
void jacobi_normalized_all(JacobiParams p, double t, std::span<double> out);

/// h_k = int_{-1}^{1} P_k(t)^2 (1-t)^alpha (1+t)^beta dt.
double jacobi_norm_h(JacobiParams p, std::uint64_t k);

/// Modified Bessel function of the first kind, by its power series.
double bessel_i(double nu, double z);

/// ln I_nu(z) for z > 0, safe where I_nu itself under- or overflows.
double log_bessel_i(double nu, double z);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(std::size_t n);

}  // namespace covnum
