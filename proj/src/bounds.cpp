#include "covnum/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "covnum/errors.hpp"
#include "kernel_series.hpp"

namespace covnum {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_eps(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) fail(ErrorKind::DomainError, "eps must be positive and finite");
}

double lg(double x) { return static_cast<double>(ln_gamma(x)); }

// Gamma(beta+1) / (Gamma(alpha+2) Gamma(alpha+beta+2)).
double growth(const ManifoldSpec& m) { return dim_growth_constant(m); }

// Gamma(beta+1) / (Gamma(alpha+1) Gamma(alpha+beta+2)); tau_m < 3 G_tau m^{d-1} eventually.
double log_tau_scale(const ManifoldSpec& m) {
  return lg(m.beta + 1.0) - lg(m.alpha + 1.0) - lg(m.alpha + m.beta + 2.0);
}

[[noreturn]] void not_certified(Regime r, const std::string& why) {
  fail(ErrorKind::HypothesisNotCertified, std::string(to_string(r)) + ": " + why);
}

bool ratios_defined(const KernelSpec& spec) { return spec.manifold.space_class != SpaceClass::RealProjective; }

}  // namespace

UpperBound upper_bound_lnC(const KernelSpec& spec, double eps) {
  require_eps(eps);
  const double kappa = embedding_norm(spec);
  if (eps >= kappa) return {0.0, 0};
  const std::uint64_t m = cutoff_level(spec, eps * eps / 4.0);
  const double dim = cumulative_dim_real(spec.manifold, m);
  const double kappa_m = partial_norm(spec, m);
  return {dim * std::log1p(4.0 * kappa_m / eps), m};
}

std::uint64_t default_m_max(const KernelSpec& spec) {
  return std::holds_alternative<PowerLaw>(spec.model) ? 10'000'000 : 1'000'000;
}

LowerBound lower_bound_lnC(const KernelSpec& spec, double eps, std::optional<std::uint64_t> m_max) {
  require_eps(eps);
  const std::uint64_t limit = m_max.value_or(default_m_max(spec));
  if (limit < 1) fail(ErrorKind::DomainError, "m_max must be at least 1");
  if (eps >= embedding_norm(spec)) return {0.0, 0};

  const auto* explicit_model = std::get_if<Explicit>(&spec.model);
  const bool monotone = explicit_model == nullptr;
  const double log_eps = std::log(eps);

  DimensionSequence dims(spec.manifold);
  CoefficientCursor cur(spec, 0);
  double half_log_det = 0.0;
  double dim = 0.0;
  bool any_level = false;
  double best = kNegInf;
  std::uint64_t best_m = 0;
  for (std::uint64_t k = 0; k <= limit; ++k, dims.advance(), cur.advance()) {
    if (explicit_model && k >= std::max<std::size_t>(explicit_model->coefficients.size(), 2)) break;
    const double tau = dims.value();
    const double la = cur.log_value();
    double log_ratio = kNegInf;
    if (tau > 0.0 && la != kNegInf) {
      log_ratio = la - std::log(tau);
      half_log_det += 0.5 * tau * log_ratio;
      dim += tau;
      any_level = true;
    }
    if (k >= 1 && any_level) {
      const double j = half_log_det - dim * log_eps;
      if (j > best) {
        best = j;
        best_m = k;
      }
      if (monotone && tau > 0.0 && log_ratio <= 2.0 * log_eps) break;
    }
  }
  if (!any_level) fail(ErrorKind::ZeroCoefficient, "no positive coefficient on a nonzero eigenspace");
  if (best == kNegInf) return {0.0, 0};  // only a_0 contributes and m_max excludes nothing else
  return {std::max(0.0, best), best_m};
}

double critical_m_geometric(const ManifoldSpec& manifold, double a0, double delta, double eps) {
  require_eps(eps);
  if (!(delta > 0.0 && delta < 1.0)) fail(ErrorKind::DomainError, "delta must lie in (0, 1)");
  if (!(a0 > 0.0)) fail(ErrorKind::DomainError, "a0 must be positive");
  const int d = manifold.d;
  const double log_arg = std::log(3.0) + log_tau_scale(manifold) + 2.0 * std::log(eps) - std::log(a0);
  const double c = -d / ((d + 1.0) * (std::log(1.0 / delta) + d - 1.0)) * log_arg;
  if (!(c > 0.0)) fail(ErrorKind::DomainError, "eps too large: critical point is not positive");
  return c;
}

double critical_m_power(const ManifoldSpec& manifold, double rho, double c2, double eps) {
  require_eps(eps);
  if (!(rho > 1.0) || !(c2 > 0.0)) fail(ErrorKind::DomainError, "critical_m_power needs rho > 1 and c2 > 0");
  const int d = manifold.d;
  const double log_arg = std::log(c2) - std::log(3.0) - log_tau_scale(manifold) - 2.0 * std::log(eps);
  return std::exp(log_arg / (rho + d - 1.0) - 1.0 / d);
}

std::string_view to_string(Regime r) noexcept {
  switch (r) {
    case Regime::GeometricUpper: return "geometric_upper";
    case Regime::GeometricLower: return "geometric_lower";
    case Regime::PowerUpper: return "power_upper";
    case Regime::PowerLower: return "power_lower";
  }
  return "unknown";
}

Regime regime_from_string(std::string_view name) {
  for (Regime r : {Regime::GeometricUpper, Regime::GeometricLower, Regime::PowerUpper, Regime::PowerLower}) {
    if (to_string(r) == name) return r;
  }
  fail(ErrorKind::ValidationError, "unknown regime '" + std::string(name) + "'");
}

AsymptoticParams certified_params(const KernelSpec& spec, Regime regime) {
  AsymptoticParams p;
  const int d = spec.manifold.d;
  switch (regime) {
    case Regime::GeometricUpper: {
      if (!ratios_defined(spec)) not_certified(regime, "odd levels vanish, so no ratio bound a_k <= theta a_{k-1}");
      double theta = 1.0;
      if (const auto* g = std::get_if<Geometric>(&spec.model)) theta = g->ratio;
      else if (const auto* g = std::get_if<GaussianSphere>(&spec.model)) theta = 2.0 / (g->rho * g->rho);
      else if (const auto* g = std::get_if<GaussianType>(&spec.model)) theta = g->delta * (d == 1 ? 2.0 : d + 3.0);
      else if (const auto* e = std::get_if<Explicit>(&spec.model)) {
        theta = 0.0;
        for (std::size_t k = 1; k < e->coefficients.size(); ++k) {
          const double prev = e->coefficients[k - 1];
          const double cur = e->coefficients[k];
          if (cur == 0.0) continue;
          if (prev == 0.0) not_certified(regime, "a positive coefficient follows a zero one");
          theta = std::max(theta, cur / prev);
        }
        if (theta == 0.0) theta = std::numeric_limits<double>::min();
      } else {
        not_certified(regime, "power-law coefficients have no geometric ratio bound");
      }
      if (!(theta < 1.0)) not_certified(regime, "ratio bound theta = " + std::to_string(theta) + " is not below 1");
      p.theta = theta;
      break;
    }
    case Regime::GeometricLower: {
      if (!ratios_defined(spec)) not_certified(regime, "odd levels vanish");
      if (const auto* g = std::get_if<Geometric>(&spec.model)) p.delta = g->ratio;
      else if (const auto* g = std::get_if<GaussianType>(&spec.model)) p.delta = g->delta;
      else not_certified(regime, "the model has no positive lower ratio a_k >= delta a_{k-1}");
      break;
    }
    case Regime::PowerUpper: {
      const auto* pl = std::get_if<PowerLaw>(&spec.model);
      if (!pl) not_certified(regime, "only power-law models carry a closed-form power envelope");
      if (!(pl->p > d)) not_certified(regime, "needs p > d so that gamma = p - d > 0");
      p.gamma = pl->p - d;
      p.c1 = pl->c;
      break;
    }
    case Regime::PowerLower: {
      const auto* pl = std::get_if<PowerLaw>(&spec.model);
      if (!pl) not_certified(regime, "only power-law models carry a closed-form power minorant");
      if (spec.manifold.space_class == SpaceClass::RealProjective) not_certified(regime, "odd levels vanish");
      p.rho = pl->p;
      p.c2 = pl->c;
      break;
    }
  }
  return p;
}

AsymptoticReport asymptotic_constant(const KernelSpec& spec, Regime regime, const AsymptoticParams& params) {
  const AsymptoticParams cert = certified_params(spec, regime);
  const ManifoldSpec& mf = spec.manifold;
  const double d = mf.d;
  const double g = growth(mf);
  AsymptoticReport report{regime, 0.0, 0.0, 0.0, 0.0, false, cert};
  auto pick = [&](const std::optional<double>& given, const std::optional<double>& certified) {
    return given.value_or(*certified);
  };
  switch (regime) {
    case Regime::GeometricUpper: {
      const double theta = pick(params.theta, cert.theta);
      if (!(theta >= *cert.theta && theta < 1.0)) not_certified(regime, "theta must lie in [certified, 1)");
      report.params = AsymptoticParams{theta, {}, {}, {}, {}, {}};
      report.constant = g * std::pow(2.0, d + 1.0) / std::pow(std::log(1.0 / theta), d);
      report.log_exponent = d + 1.0;
      break;
    }
    case Regime::GeometricLower: {
      const double delta = pick(params.delta, cert.delta);
      if (!(delta > 0.0 && delta <= *cert.delta)) not_certified(regime, "delta must lie in (0, certified]");
      report.params = AsymptoticParams{{}, delta, {}, {}, {}, {}};
      report.constant = g * std::pow(2.0, d - 1.0) * std::pow(d, d) /
                        (std::pow(std::log(1.0 / delta) + d - 1.0, d) * std::pow(d + 1.0, d + 1.0));
      report.log_exponent = d + 1.0;
      const double a0 = coefficient(spec, 0);
      report.requires_rescaling = std::log(a0) - std::log(3.0) - log_tau_scale(mf) < 0.0;
      break;
    }
    case Regime::PowerUpper: {
      const double gamma = pick(params.gamma, cert.gamma);
      const double c1 = pick(params.c1, cert.c1);
      if (!(gamma > 0.0 && gamma <= *cert.gamma && c1 >= *cert.c1)) {
        not_certified(regime, "need 0 < gamma <= p - d and c1 >= c");
      }
      report.params = AsymptoticParams{{}, {}, gamma, c1, {}, {}};
      const double e = gamma + d - 1.0;
      report.constant = g * std::pow(4.0 * c1 / e, d / e);
      report.inv_eps_exponent = 2.0 * d / e;
      report.log_exponent = 1.0;
      break;
    }
    case Regime::PowerLower: {
      const double rho = pick(params.rho, cert.rho);
      const double c2 = pick(params.c2, cert.c2);
      if (!(rho > 1.0 && rho >= *cert.rho && c2 > 0.0 && c2 <= *cert.c2)) {
        not_certified(regime, "need rho >= p and 0 < c2 <= c");
      }
      report.params = AsymptoticParams{{}, {}, {}, {}, rho, c2};
      const double e = rho + d - 1.0;
      const double base = std::exp(std::log(c2) - std::log(3.0) - log_tau_scale(mf));
      report.constant = std::exp(-1.0) * e * g / d * std::pow(base, d / e);
      report.inv_eps_exponent = d / (2.0 * e);
      report.additive_offset = 0.5 * std::log(coefficient(spec, 0));
      break;
    }
  }
  return report;
}

Regime default_regime(const KernelSpec& spec, bool upper) {
  if (std::holds_alternative<PowerLaw>(spec.model)) return upper ? Regime::PowerUpper : Regime::PowerLower;
  return upper ? Regime::GeometricUpper : Regime::GeometricLower;
}

double comparison_function(const AsymptoticReport& report, double eps) {
  require_eps(eps);
  const double inv = 1.0 / eps;
  return std::pow(inv, report.inv_eps_exponent) * std::pow(std::log(inv), report.log_exponent);
}

double gaussian_upper_constant(double rho, int d) {
  if (d < 1) fail(ErrorKind::DomainError, "d must be positive");
  // rho = sqrt(2) squares to slightly above 2 in floating point; keep it on the boundary.
  if (!(rho * rho > 2.0 * (1.0 + 1e-12)) || !std::isfinite(rho)) {
    fail(ErrorKind::DomainError, "gaussian_upper_constant needs rho^2 > 2");
  }
  return 4.0 / (std::exp(lg(d + 1.0)) * std::pow(std::log(rho / std::sqrt(2.0)), d));
}

ConstantPair gaussian_type_constants(double delta, int d) {
  if (d < 1) fail(ErrorKind::DomainError, "d must be positive");
  if (!(delta > 0.0 && delta < 1.0)) fail(ErrorKind::DomainError, "delta must lie in (0, 1)");
  if (d >= 2 && !(delta * (d + 3) < 1.0)) fail(ErrorKind::DomainError, "d >= 2 needs delta < 1/(d+3)");
  const double dd = d;
  const double lower =
      1.0 / (2.0 * std::exp(lg(dd + 2.0))) * std::pow((dd / (dd + 1.0)) / (dd - 1.0 - std::log(delta)), dd);
  const double upper = d == 1 ? 2.0 / std::log(1.0 / delta)
                              : 2.0 / (std::exp(lg(dd + 1.0)) * std::pow(std::log(1.0 / (delta * (dd + 3.0))), dd));
  return {lower, upper};
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) fail(ErrorKind::DomainError, "log_grid needs 0 < lo < hi and count >= 2");
  std::vector<double> grid(count);
  const double step = std::log(hi / lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) grid[i] = lo * std::exp(step * static_cast<double>(i));
  grid.back() = hi;
  return grid;
}

BoundCurve bound_curve(const KernelSpec& spec, std::span<const double> eps_grid) {
  BoundCurve curve{spec, {}};
  curve.points.reserve(eps_grid.size());
  for (double eps : eps_grid) {
    const UpperBound up = upper_bound_lnC(spec, eps);
    const LowerBound lo = lower_bound_lnC(spec, eps);
    curve.points.push_back({eps, up.ln_upper, up.m, lo.ln_lower, lo.m});
  }
  return curve;
}

std::vector<EquivalencePoint> weak_equivalence_report(const KernelSpec& spec, std::span<const double> eps_grid) {
  std::vector<EquivalencePoint> out;
  out.reserve(eps_grid.size());
  const double d = spec.manifold.d;
  for (double eps : eps_grid) {
    require_eps(eps);
    if (!(eps < 1.0)) fail(ErrorKind::DomainError, "weak_equivalence_report needs eps < 1");
    const double scale = std::pow(std::log(1.0 / eps), d + 1.0);
    out.push_back({eps, upper_bound_lnC(spec, eps).ln_upper / scale, lower_bound_lnC(spec, eps).ln_lower / scale});
  }
  return out;
}

}  // namespace covnum
