#include "covnum/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "covnum/errors.hpp"
#include "kernel_series.hpp"

namespace covnum {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::uint64_t kMaxLevel = 10'000'000;
constexpr std::uint64_t kDirectPartialLimit = 100'000;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

bool is_sphere(const ManifoldSpec& m) { return m.space_class == SpaceClass::Sphere; }

bool needs_tau(const CoefficientModel& model) {
  return std::holds_alternative<GaussianSphere>(model) || std::holds_alternative<GaussianType>(model);
}

// ln a_k given tau_k (only consulted by the Gaussian families).
double log_coefficient_with_tau(const KernelSpec& spec, std::uint64_t k, double tau) {
  if (spec.manifold.level_vanishes(k)) return kNegInf;
  const double kk = static_cast<double>(k);
  return std::visit(
      overloaded{
          [&](const Geometric& g) { return std::log(g.a0) + kk * std::log(g.ratio); },
          [&](const PowerLaw& p) { return k == 0 ? std::log(p.a0) : std::log(p.c) - p.p * std::log(kk); },
          [&](const GaussianSphere& g) {
            return log_gaussian_coefficient(g.rho, spec.manifold.d, k) + std::log(tau);
          },
          [&](const GaussianType& g) { return kk * std::log(g.delta) + std::log(tau); },
          [&](const Explicit& e) {
            if (k >= e.coefficients.size() || e.coefficients[k] <= 0.0) return kNegInf;
            return std::log(e.coefficients[k]);
          },
      },
      spec.model);
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) fail(ErrorKind::DomainError, std::string(name) + " must be positive and finite");
}

}  // namespace

// ---------------------------------------------------------------------------
// Internal helpers shared with recover_coefficient / empirical.

CoefficientCursor::CoefficientCursor(const KernelSpec& spec, std::uint64_t start) : spec_(&spec), dims_(spec.manifold) {
  if (needs_tau(spec.model)) {
    while (dims_.level() < start) dims_.advance();
  }
  k_ = start;
  refresh();
}

void CoefficientCursor::advance() {
  ++k_;
  if (needs_tau(spec_->model)) dims_.advance();
  refresh();
}

void CoefficientCursor::refresh() {
  const double tau = needs_tau(spec_->model) ? dims_.value() : 1.0;
  log_a_ = log_coefficient_with_tau(*spec_, k_, tau);
}

std::vector<double> coefficient_prefix(const KernelSpec& spec, std::uint64_t m) {
  std::vector<double> a;
  a.reserve(m + 1);
  for (CoefficientCursor cur(spec, 0); cur.level() <= m; cur.advance()) a.push_back(cur.value());
  return a;
}

double series_eval(const KernelSpec& spec, std::span<const double> a, double t) {
  std::vector<double> j(a.size());
  jacobi_normalized_all(spec.manifold.jacobi(), t, j);
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += a[k] * j[k];
  return sum;
}

// ---------------------------------------------------------------------------

KernelSpec make_kernel(const ManifoldSpec& manifold, CoefficientModel model) {
  std::visit(overloaded{
                 [&](const Geometric& g) {
                   require_positive(g.a0, "a0");
                   require_positive(g.ratio, "ratio");
                   if (g.ratio >= 1.0) fail(ErrorKind::NotSummable, "geometric ratio must be < 1");
                 },
                 [&](const PowerLaw& p) {
                   require_positive(p.c, "c");
                   require_positive(p.a0, "a0");
                   if (!(p.p > 1.0)) fail(ErrorKind::NotSummable, "power-law exponent p must exceed 1");
                 },
                 [&](const GaussianSphere& g) {
                   if (!is_sphere(manifold)) fail(ErrorKind::ModelMismatch, "gaussian_sphere requires a sphere");
                   require_positive(g.rho, "rho");
                   if (manifold.d < 2) fail(ErrorKind::DomainError, "gaussian_sphere requires d >= 2");
                 },
                 [&](const GaussianType& g) {
                   if (!is_sphere(manifold)) fail(ErrorKind::ModelMismatch, "gaussian_type requires a sphere");
                   if (!(g.delta > 0.0 && g.delta < 1.0)) fail(ErrorKind::DomainError, "delta must lie in (0, 1)");
                 },
                 [&](const Explicit& e) {
                   for (double v : e.coefficients) {
                     if (!(v >= 0.0) || !std::isfinite(v)) {
                       fail(ErrorKind::DomainError, "explicit coefficients must be finite and non-negative");
                     }
                   }
                 },
             },
             model);
  return KernelSpec{manifold, std::move(model)};
}

double log_gaussian_coefficient(double rho, int d, std::uint64_t k) {
  require_positive(rho, "rho");
  if (d < 2) fail(ErrorKind::DomainError, "Gaussian coefficients are defined for d >= 2");
  const double z = 2.0 / (rho * rho);
  const double nu = static_cast<double>(k) + (d - 1) / 2.0;
  return static_cast<double>(-z + (d - 1) * std::log(static_cast<long double>(rho)) + ln_gamma((d + 1) / 2.0L)) +
         log_bessel_i(nu, z);
}

double gaussian_coefficient(double rho, int d, std::uint64_t k) { return std::exp(log_gaussian_coefficient(rho, d, k)); }

double log_coefficient(const KernelSpec& spec, std::uint64_t k) {
  const double tau = needs_tau(spec.model) ? eigenspace_dim_real(spec.manifold, k) : 1.0;
  return log_coefficient_with_tau(spec, k, tau);
}

double coefficient(const KernelSpec& spec, std::uint64_t k) {
  if (spec.manifold.level_vanishes(k)) return 0.0;
  if (const auto* g = std::get_if<Geometric>(&spec.model)) return g->a0 * std::pow(g->ratio, static_cast<double>(k));
  if (const auto* p = std::get_if<PowerLaw>(&spec.model)) {
    return k == 0 ? p->a0 : p->c * std::pow(static_cast<double>(k), -p->p);
  }
  if (const auto* e = std::get_if<Explicit>(&spec.model)) return k < e->coefficients.size() ? e->coefficients[k] : 0.0;
  return std::exp(log_coefficient(spec, k));
}

std::optional<double> ratio_envelope(const KernelSpec& spec, std::uint64_t k) {
  if (spec.manifold.space_class == SpaceClass::RealProjective) return std::nullopt;
  const double kk = static_cast<double>(k);
  const int d = spec.manifold.d;
  if (const auto* g = std::get_if<Geometric>(&spec.model)) return g->ratio;
  if (const auto* g = std::get_if<GaussianType>(&spec.model)) {
    // tau_{j+1}/tau_j is non-increasing in j on spheres, so its value at k bounds all j >= k.
    if (d == 1) return g->delta * (k == 0 ? 2.0 : 1.0);
    return g->delta * (2 * kk + d + 1) * (kk + d - 1) / ((2 * kk + d - 1) * (kk + 1));
  }
  if (const auto* g = std::get_if<GaussianSphere>(&spec.model)) {
    // lambda_{j+1} tau_{j+1} < (2/rho^2) (j+d-1) / ((2j+d-1)(j+1)) lambda_j tau_j, decreasing in j.
    return 2.0 / (g->rho * g->rho) * (kk + d - 1) / ((2 * kk + d - 1) * (kk + 1));
  }
  return std::nullopt;
}

double hurwitz_zeta(double s, double q) {
  if (!(s > 1.0) || !(q > 0.0)) fail(ErrorKind::DomainError, "hurwitz_zeta requires s > 1 and q > 0");
  long double sum = 0.0L;
  long double a = q;
  while (a < 20.0L) {
    sum += std::pow(a, -static_cast<long double>(s));
    a += 1.0L;
  }
  // Euler-Maclaurin tail from a.
  static constexpr long double kB2n[] = {1.0L / 6.0L,     -1.0L / 30.0L,      1.0L / 42.0L, -1.0L / 30.0L,
                                         5.0L / 66.0L,    -691.0L / 2730.0L,  7.0L / 6.0L};
  const long double ls = s;
  const long double a_pow = std::pow(a, -ls);
  sum += a * a_pow / (ls - 1.0L) + a_pow / 2.0L;
  long double rising = ls;   // s (s+1) ... (s+2i-2)
  long double factorial = 2.0L;
  long double power = a_pow / a;  // a^{-s-2i+1}
  for (int i = 1; i <= 7; ++i) {
    sum += kB2n[i - 1] / factorial * rising * power;
    rising *= (ls + 2 * i - 1) * (ls + 2 * i);
    factorial *= (2.0L * i + 1) * (2.0L * i + 2);
    power /= a * a;
  }
  return static_cast<double>(sum);
}

double tail_sum(const KernelSpec& spec, std::uint64_t m) {
  const bool rp = spec.manifold.space_class == SpaceClass::RealProjective;
  if (const auto* g = std::get_if<Geometric>(&spec.model)) {
    if (rp) {
      const std::uint64_t first_even = (m % 2 == 0) ? m + 2 : m + 1;
      return g->a0 * std::pow(g->ratio, static_cast<double>(first_even)) / (1.0 - g->ratio * g->ratio);
    }
    return g->a0 * std::pow(g->ratio, static_cast<double>(m + 1)) / (1.0 - g->ratio);
  }
  if (const auto* p = std::get_if<PowerLaw>(&spec.model)) {
    if (rp) {
      // a_{2j} = c 2^{-p} j^{-p}
      const double first_j = static_cast<double>(m / 2 + 1);
      return p->c * std::pow(2.0, -p->p) * hurwitz_zeta(p->p, first_j);
    }
    return p->c * hurwitz_zeta(p->p, static_cast<double>(m + 1));
  }
  if (const auto* e = std::get_if<Explicit>(&spec.model)) {
    double sum = 0.0;
    for (std::size_t k = e->coefficients.size(); k-- > m + 1;) {
      if (!spec.manifold.level_vanishes(k)) sum += e->coefficients[k];
    }
    return sum;
  }
  // Gaussian families: forward summation until the envelope certifies the remainder.
  double sum = 0.0;
  for (CoefficientCursor cur(spec, m + 1);; cur.advance()) {
    if (cur.level() > m + kMaxLevel) fail(ErrorKind::NotSummable, "tail did not converge");
    const double a = cur.value();
    sum += a;
    const std::optional<double> env = ratio_envelope(spec, cur.level());
    if (env && *env < 1.0) {
      const double remainder = a * *env / (1.0 - *env);
      if (remainder <= 1e-17 * sum || a == 0.0) return sum + remainder;
    }
  }
}

double partial_sum(const KernelSpec& spec, std::uint64_t m) {
  if (const auto* e = std::get_if<Explicit>(&spec.model)) {
    double sum = 0.0;
    for (std::size_t k = 0; k < e->coefficients.size() && k <= m; ++k) {
      if (!spec.manifold.level_vanishes(k)) sum += e->coefficients[k];
    }
    return sum;
  }
  if (m > kDirectPartialLimit) return coefficient(spec, 0) + tail_sum(spec, 0) - tail_sum(spec, m);
  double sum = 0.0;
  for (CoefficientCursor cur(spec, 0); cur.level() <= m; cur.advance()) sum += cur.value();
  return sum;
}

double embedding_norm(const KernelSpec& spec) { return std::sqrt(coefficient(spec, 0) + tail_sum(spec, 0)); }

double partial_norm(const KernelSpec& spec, std::uint64_t m) { return std::sqrt(partial_sum(spec, m)); }

double tail_norm(const KernelSpec& spec, std::uint64_t m) { return std::sqrt(tail_sum(spec, m)); }

double tail_bound(const KernelSpec& spec, std::uint64_t m) {
  const double mm = static_cast<double>(m);
  auto geometric_bound = [&](double theta, double a0) { return std::pow(theta, mm + 1.0) * a0 / (1.0 - theta); };
  auto envelope_bound = [&]() {
    const std::optional<double> env = ratio_envelope(spec, m + 1);
    if (!env || *env >= 1.0) fail(ErrorKind::Unsupported, "no contracting ratio envelope at this level");
    return coefficient(spec, m + 1) / (1.0 - *env);
  };
  if (const auto* g = std::get_if<Geometric>(&spec.model)) return geometric_bound(g->ratio, g->a0);
  if (const auto* p = std::get_if<PowerLaw>(&spec.model)) {
    if (m == 0) return p->c * p->p / (p->p - 1.0);
    return p->c * std::pow(mm, 1.0 - p->p) / (p->p - 1.0);
  }
  if (const auto* g = std::get_if<GaussianType>(&spec.model)) {
    const int d = spec.manifold.d;
    if (d == 1) return 2.0 * std::pow(g->delta, mm + 1.0) / (1.0 - g->delta);
    const double theta = g->delta * (d + 3);
    if (theta < 1.0) return geometric_bound(theta, 1.0);
    return envelope_bound();
  }
  if (const auto* g = std::get_if<GaussianSphere>(&spec.model)) {
    const double theta = 2.0 / (g->rho * g->rho);
    if (theta < 1.0) return geometric_bound(theta, coefficient(spec, 0));
    return envelope_bound();
  }
  fail(ErrorKind::Unsupported, "tail_bound is not defined for explicit coefficient lists; use tail_sum");
}

std::uint64_t cutoff_level(const KernelSpec& spec, double threshold) {
  if (!(threshold >= 0.0)) fail(ErrorKind::DomainError, "cutoff threshold must be non-negative");
  if (tail_sum(spec, 0) <= threshold) return 0;
  std::uint64_t lo = 0;  // tail(lo) > threshold
  std::uint64_t hi = 1;
  while (tail_sum(spec, hi) > threshold) {
    lo = hi;
    hi *= 2;
    if (lo > kMaxLevel) fail(ErrorKind::LevelOverflow, "truncation level exceeds 10^7");
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (tail_sum(spec, mid) > threshold) lo = mid;
    else hi = mid;
  }
  if (hi > kMaxLevel) fail(ErrorKind::LevelOverflow, "truncation level exceeds 10^7");
  return hi;
}

RatioRange decay_ratio_range(const KernelSpec& spec, std::uint64_t k_max) {
  RatioRange range{std::numeric_limits<double>::infinity(), 0.0};
  double prev_log = kNegInf;
  bool have_prev = false;
  bool have_ratio = false;
  for (CoefficientCursor cur(spec, 0); cur.level() <= k_max; cur.advance()) {
    if (spec.manifold.level_vanishes(cur.level())) continue;
    const double la = cur.log_value();
    if (la == kNegInf) {
      fail(ErrorKind::ZeroCoefficient, "coefficient a_" + std::to_string(cur.level()) + " vanishes");
    }
    if (have_prev) {
      const double r = std::exp(la - prev_log);
      range.inf_ratio = std::min(range.inf_ratio, r);
      range.sup_ratio = std::max(range.sup_ratio, r);
      have_ratio = true;
    }
    prev_log = la;
    have_prev = true;
  }
  if (!have_ratio) fail(ErrorKind::DomainError, "decay_ratio_range needs at least two nonzero levels");
  return range;
}

double kernel_eval(const KernelSpec& spec, double t, double tol) {
  if (!(tol > 0.0)) fail(ErrorKind::DomainError, "kernel_eval tolerance must be positive");
  const std::uint64_t m = cutoff_level(spec, tol);
  const std::vector<double> a = coefficient_prefix(spec, m);
  return series_eval(spec, a, t);
}

double recover_coefficient(const KernelSpec& spec, std::uint64_t k, std::size_t quadrature_nodes, double tol) {
  if (quadrature_nodes < 64) fail(ErrorKind::DomainError, "recover_coefficient needs at least 64 nodes");
  const double kappa2 = coefficient(spec, 0) + tail_sum(spec, 0);
  const std::uint64_t m = cutoff_level(spec, 1e-13 * kappa2);
  const std::vector<double> a = coefficient_prefix(spec, m);
  const JacobiParams jp = spec.manifold.jacobi();
  const double pk1 = jacobi_at_one(jp, k);
  const double scale = pk1 / jacobi_norm_h(jp, k);
  const double log_weight_const = (jp.alpha + jp.beta + 1.0) * std::numbers::ln2;

  auto integrate = [&](std::size_t n) {
    const QuadratureRule rule = gauss_legendre(n);
    long double acc = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      const double phi = std::numbers::pi * (rule.nodes[i] + 1.0) / 2.0;
      const double t = std::clamp(std::cos(phi), -1.0, 1.0);
      const double weight = std::exp(log_weight_const) * std::pow(std::sin(phi / 2.0), 2.0 * jp.alpha + 1.0) *
                            std::pow(std::cos(phi / 2.0), 2.0 * jp.beta + 1.0);
      acc += rule.weights[i] * series_eval(spec, a, t) * jacobi_eval(jp, k, t) * weight;
    }
    return static_cast<double>(acc) * std::numbers::pi / 2.0 * scale;
  };
  const double fine = integrate(quadrature_nodes);
  const double coarse = integrate(quadrature_nodes / 2);
  if (std::fabs(fine - coarse) > tol * kappa2) {
    fail(ErrorKind::QuadratureFailure, "quadrature error estimate " + std::to_string(std::fabs(fine - coarse)) +
                                           " exceeds tolerance");
  }
  return fine;
}

}  // namespace covnum
