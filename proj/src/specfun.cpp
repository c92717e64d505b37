#include "covnum/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "covnum/errors.hpp"

namespace covnum {
namespace {

void check_params(JacobiParams p) {
  if (!(p.alpha > -1.0) || !(p.beta > -1.0)) {
    fail(ErrorKind::DomainError, "Jacobi parameters must exceed -1 (alpha=" + std::to_string(p.alpha) +
                                     ", beta=" + std::to_string(p.beta) + ")");
  }
}

void check_unit_interval(double t) {
  if (!(t >= -1.0 && t <= 1.0)) fail(ErrorKind::DomainError, "argument outside [-1, 1]: " + std::to_string(t));
}

// Asymptotic Stirling series for mu(x), x >= 16. Coefficients B_{2n} / (2n (2n-1)).
long double mu_asymptotic(long double x) {
  static constexpr long double kCoef[] = {
      1.0L / 12.0L,          -1.0L / 360.0L,  1.0L / 1260.0L,   -1.0L / 1680.0L,
      1.0L / 1188.0L,        -691.0L / 360360.0L, 1.0L / 156.0L, -3617.0L / 122400.0L,
  };
  const long double inv = 1.0L / x;
  const long double inv2 = inv * inv;
  long double power = inv;
  long double sum = 0.0L;
  for (long double c : kCoef) {
    sum += c * power;
    power *= inv2;
  }
  return sum;
}

// mu(x) = sum_{n>=0} [(x+n+1/2) ln(1 + 1/(x+n)) - 1]; the first terms are summed
// directly until the asymptotic series is accurate to extended precision.
long double mu_impl(long double x) {
  long double acc = 0.0L;
  while (x < 16.0L) {
    acc += (x + 0.5L) * std::log1p(1.0L / x) - 1.0L;
    x += 1.0L;
  }
  return acc + mu_asymptotic(x);
}

}  // namespace

long double ln_gamma(long double x) {
  if (!(x > 0.0L) || !std::isfinite(x)) fail(ErrorKind::DomainError, "ln_gamma requires x > 0");
  constexpr long double half_log_2pi = 0.918938533204672741780329736405617639861L;
  return half_log_2pi + (x - 0.5L) * std::log(x) - x + mu_impl(x);
}

double stirling_mu(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) fail(ErrorKind::DomainError, "stirling_mu requires x > 0");
  return static_cast<double>(mu_impl(x));
}

double jacobi_eval(JacobiParams p, std::uint64_t k, double t) {
  check_params(p);
  check_unit_interval(t);
  const double a = p.alpha;
  const double b = p.beta;
  double prev = 1.0;
  if (k == 0) return prev;
  double cur = (a + 1.0) + (a + b + 2.0) * (t - 1.0) / 2.0;
  for (std::uint64_t n = 1; n < k; ++n) {
    const double nn = static_cast<double>(n);
    const double s = 2.0 * nn + a + b;
    const double c1 = 2.0 * (nn + 1.0) * (nn + a + b + 1.0) * s;
    const double c2 = (s + 1.0) * (a * a - b * b);
    const double c3 = s * (s + 1.0) * (s + 2.0);
    const double c4 = 2.0 * (nn + a) * (nn + b) * (s + 2.0);
    const double next = ((c2 + c3 * t) * cur - c4 * prev) / c1;
    prev = cur;
    cur = next;
  }
  return cur;
}

double jacobi_at_one(JacobiParams p, std::uint64_t k) {
  check_params(p);
  if (k == 0) return 1.0;
  const long double kk = static_cast<long double>(k);
  return static_cast<double>(
      std::exp(ln_gamma(kk + p.alpha + 1.0L) - ln_gamma(kk + 1.0L) - ln_gamma(p.alpha + 1.0L)));
}

void jacobi_normalized_all(JacobiParams p, double t, std::span<double> out) {
  check_params(p);
  check_unit_interval(t);
  if (out.empty()) return;
  out[0] = 1.0;
  if (out.size() == 1) return;
  const double a = p.alpha;
  const double b = p.beta;
  if (t == 1.0) {
    for (double& v : out) v = 1.0;
    return;
  }
  out[1] = ((a + 1.0) + (a + b + 2.0) * (t - 1.0) / 2.0) / (a + 1.0);
  // Recurrence on J_n = P_n / P_n(1); P_n(1) / P_{n+1}(1) = (n+1)/(n+1+a).
  for (std::size_t n = 1; n + 1 < out.size(); ++n) {
    const double nn = static_cast<double>(n);
    const double s = 2.0 * nn + a + b;
    const double c1 = 2.0 * (nn + 1.0) * (nn + a + b + 1.0) * s;
    const double c2 = (s + 1.0) * (a * a - b * b);
    const double c3 = s * (s + 1.0) * (s + 2.0);
    const double c4 = 2.0 * (nn + a) * (nn + b) * (s + 2.0);
    const double r1 = (nn + 1.0) / (nn + 1.0 + a);
    const double r2 = nn / (nn + a) * r1;
    out[n + 1] = ((c2 + c3 * t) * r1 * out[n] - c4 * r2 * out[n - 1]) / c1;
  }
}

double jacobi_normalized(JacobiParams p, std::uint64_t k, double t) {
  std::vector<double> values(k + 1);
  jacobi_normalized_all(p, t, values);
  return values[k];
}

double jacobi_norm_h(JacobiParams p, std::uint64_t k) {
  check_params(p);
  const long double a = p.alpha;
  const long double b = p.beta;
  const long double s = a + b + 1.0L;
  const long double log2 = std::numbers::ln2_v<long double>;
  if (k == 0) {
    // (2k+s) Gamma(k+s) -> Gamma(s+1) at k = 0, which also covers s = 0.
    return static_cast<double>(
        std::exp(s * log2 + ln_gamma(a + 1.0L) + ln_gamma(b + 1.0L) - ln_gamma(s + 1.0L)));
  }
  const long double kk = static_cast<long double>(k);
  return static_cast<double>(std::exp(s * log2 - std::log(2.0L * kk + s) + ln_gamma(kk + a + 1.0L) +
                                      ln_gamma(kk + b + 1.0L) - ln_gamma(kk + 1.0L) - ln_gamma(kk + s)));
}

namespace {

struct BesselSeries {
  long double log_lead;  // ln((z/2)^nu / Gamma(nu+1))
  long double sum;       // sum of terms relative to the leading one, times exp(-log_scale)
  long double log_scale;
};

BesselSeries bessel_series(double nu, double z) {
  const long double half = static_cast<long double>(z) / 2.0L;
  const long double q = half * half;
  BesselSeries s{nu * std::log(half) - ln_gamma(nu + 1.0L), 1.0L, 0.0L};
  long double term = 1.0L;
  for (std::uint64_t j = 0;; ++j) {
    const long double denom = (j + 1.0L) * (j + nu + 1.0L);
    term *= q / denom;
    s.sum += term;
    if (s.sum > 1e250L) {
      s.sum *= 1e-250L;
      term *= 1e-250L;
      s.log_scale += 250.0L * std::numbers::ln10_v<long double>;
    }
    if (denom > q && term < 1e-17L * s.sum) break;
  }
  return s;
}

void check_bessel_args(double nu, double z) {
  if (!(z >= 0.0) || !std::isfinite(z)) fail(ErrorKind::DomainError, "bessel_i requires z >= 0");
  if (!(nu >= -0.5)) fail(ErrorKind::DomainError, "bessel_i requires nu >= -1/2");
}

}  // namespace

double bessel_i(double nu, double z) {
  check_bessel_args(nu, z);
  if (z == 0.0) {
    if (nu == 0.0) return 1.0;
    if (nu > 0.0) return 0.0;
    fail(ErrorKind::DomainError, "I_nu(0) is unbounded for nu < 0");
  }
  const BesselSeries s = bessel_series(nu, z);
  return static_cast<double>(std::exp(s.log_lead + s.log_scale) * s.sum);
}

double log_bessel_i(double nu, double z) {
  check_bessel_args(nu, z);
  if (z == 0.0) {
    if (nu == 0.0) return 0.0;
    if (nu > 0.0) return -HUGE_VAL;
    fail(ErrorKind::DomainError, "I_nu(0) is unbounded for nu < 0");
  }
  const BesselSeries s = bessel_series(nu, z);
  return static_cast<double>(s.log_lead + s.log_scale + std::log(s.sum));
}

QuadratureRule gauss_legendre(std::size_t n) {
  if (n == 0) fail(ErrorKind::DomainError, "Gauss-Legendre rule needs at least one node");
  QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    long double x = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L));
    long double dp = 0.0L;
    for (int iter = 0; iter < 100; ++iter) {
      long double p0 = 1.0L;
      long double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0L);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-19L) break;
    }
    const long double w = 2.0L / ((1.0L - x * x) * dp * dp);
    rule.nodes[i] = static_cast<double>(-x);
    rule.nodes[n - 1 - i] = static_cast<double>(x);
    rule.weights[i] = rule.weights[n - 1 - i] = static_cast<double>(w);
  }
  return rule;
}

}  // namespace covnum
