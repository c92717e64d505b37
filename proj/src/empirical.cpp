#include "covnum/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "covnum/errors.hpp"
#include "kernel_series.hpp"

namespace covnum {
namespace {

void require_low_sphere(const ManifoldSpec& m) {
  if (m.space_class != SpaceClass::Sphere || (m.d != 1 && m.d != 2)) {
    fail(ErrorKind::Unsupported, "empirical estimates are implemented for S^1 and S^2 only");
  }
}

// Seeded standard normals; Box-Muller on 53-bit uniforms keeps the stream identical
// across standard libraries.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

double sup_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::fabs(a[i] - b[i]));
  return worst;
}

// True when some coordinate differs by more than r (stops at the first one).
bool farther_than(const std::vector<double>& a, const std::vector<double>& b, double r) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::fabs(a[i] - b[i]) > r) return true;
  }
  return false;
}

void circle_features(std::span<const double> a, const Point& x, std::vector<double>& out) {
  const double theta = std::atan2(x[1], x[0]);
  out.push_back(std::sqrt(a[0]));
  for (std::size_t k = 1; k < a.size(); ++k) {
    // eta_k sqrt 2 = sqrt(a_k / 2) sqrt 2
    const double w = std::sqrt(a[k]);
    out.push_back(w * std::cos(k * theta));
    out.push_back(w * std::sin(k * theta));
  }
}

// Real harmonics of degree k: sqrt(2k+1) Q_k^0 and sqrt(2(2k+1)) Q_k^m {cos, sin}(m phi), with
// Q_k^m = sqrt((k-m)!/(k+m)!) P_k^m(cos theta) from the stable normalized recurrences.
void sphere_features(std::span<const double> a, const Point& x, std::vector<double>& out) {
  const std::size_t m_max = a.size() - 1;
  const double ct = std::clamp(x[2], -1.0, 1.0);
  const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
  const double phi = std::atan2(x[1], x[0]);

  // q[k][m] for k <= m_max.
  std::vector<std::vector<double>> q(m_max + 1);
  for (std::size_t k = 0; k <= m_max; ++k) q[k].assign(k + 1, 0.0);
  double diag = 1.0;
  for (std::size_t m = 0; m <= m_max; ++m) {
    if (m > 0) diag *= std::sqrt((2.0 * m - 1.0) / (2.0 * m)) * st;
    q[m][m] = diag;
    if (m + 1 <= m_max) q[m + 1][m] = std::sqrt(2.0 * m + 1.0) * ct * diag;
    for (std::size_t k = m + 2; k <= m_max; ++k) {
      const double kk = static_cast<double>(k);
      const double mm = static_cast<double>(m);
      q[k][m] = ((2.0 * kk - 1.0) * ct * q[k - 1][m] - std::sqrt((kk - 1.0) * (kk - 1.0) - mm * mm) * q[k - 2][m]) /
                std::sqrt(kk * kk - mm * mm);
    }
  }
  for (std::size_t k = 0; k <= m_max; ++k) {
    const double tau = 2.0 * k + 1.0;
    const double eta = std::sqrt(a[k] / tau);
    out.push_back(eta * std::sqrt(tau) * q[k][0]);
    for (std::size_t m = 1; m <= k; ++m) {
      const double w = eta * std::sqrt(2.0 * tau) * q[k][m];
      out.push_back(w * std::cos(m * phi));
      out.push_back(w * std::sin(m * phi));
    }
  }
}

std::vector<double> features_from(const KernelSpec& spec, std::span<const double> a, const Point& x) {
  const int d = spec.manifold.d;
  if (x.size() != static_cast<std::size_t>(d + 1)) fail(ErrorKind::DomainError, "point has the wrong dimension");
  std::vector<double> out;
  out.reserve(d == 1 ? 2 * a.size() : a.size() * a.size());
  if (d == 1) circle_features(a, x, out);
  else sphere_features(a, x, out);
  return out;
}

}  // namespace

void validate(const SamplePlan& plan) {
  if (plan.ambient_points < 16) fail(ErrorKind::ValidationError, "plan.ambient_points must be at least 16");
  if (plan.ball_draws < 100) fail(ErrorKind::ValidationError, "plan.ball_draws must be at least 100");
  if (plan.m < 1) fail(ErrorKind::ValidationError, "plan.m must be at least 1");
}

std::vector<Point> sample_points(int d, std::uint64_t n, std::uint64_t /*seed*/) {
  if (d != 1 && d != 2) fail(ErrorKind::Unsupported, "sample_points supports d = 1 and d = 2");
  std::vector<Point> pts;
  pts.reserve(n);
  const double nn = static_cast<double>(n);
  for (std::uint64_t j = 0; j < n; ++j) {
    const double jj = static_cast<double>(j);
    if (d == 1) {
      const double angle = 2.0 * std::numbers::pi * jj / nn;
      pts.push_back({std::cos(angle), std::sin(angle)});
    } else {
      const double z = 1.0 - (2.0 * jj + 1.0) / nn;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double angle = std::numbers::pi * (3.0 - std::sqrt(5.0)) * jj;
      pts.push_back({r * std::cos(angle), r * std::sin(angle), z});
    }
  }
  return pts;
}

std::vector<double> feature_map(const KernelSpec& spec, std::uint64_t m, const Point& x) {
  require_low_sphere(spec.manifold);
  const std::vector<double> a = coefficient_prefix(spec, m);
  return features_from(spec, a, x);
}

FunctionSample draw_function_sample(const KernelSpec& spec, const SamplePlan& plan) {
  validate(plan);
  require_low_sphere(spec.manifold);
  const std::vector<double> a = coefficient_prefix(spec, plan.m);
  if (std::all_of(a.begin(), a.end(), [](double v) { return v == 0.0; })) {
    fail(ErrorKind::DegenerateKernel, "all coefficients up to level " + std::to_string(plan.m) + " vanish");
  }
  const std::vector<Point> pts = sample_points(spec.manifold.d, plan.ambient_points, plan.seed);
  std::vector<std::vector<double>> phi;
  phi.reserve(pts.size());
  for (const Point& x : pts) phi.push_back(features_from(spec, a, x));
  const std::size_t dim = phi.front().size();

  FunctionSample sample{pts.size(), {}, {}};
  sample.values.reserve(plan.ball_draws);
  sample.coefficient_norms.reserve(plan.ball_draws);
  NormalStream rng(plan.seed);
  std::vector<double> c(dim);
  for (std::uint64_t draw = 0; draw < plan.ball_draws; ++draw) {
    double norm2 = 0.0;
    for (double& v : c) {
      v = rng.normal();
      norm2 += v * v;
    }
    const double radius = std::pow(rng.uniform(), 1.0 / static_cast<double>(dim));
    const double scale = radius / std::sqrt(norm2);
    double out_norm2 = 0.0;
    for (double& v : c) {
      v *= scale;
      out_norm2 += v * v;
    }
    std::vector<double> row(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < dim; ++j) s += phi[i][j] * c[j];
      row[i] = s;
    }
    sample.values.push_back(std::move(row));
    sample.coefficient_norms.push_back(std::sqrt(out_norm2));
  }
  return sample;
}

PackingEstimate packing_lower_estimate(const KernelSpec& spec, double eps, const SamplePlan& plan) {
  if (!(eps > 0.0)) fail(ErrorKind::DomainError, "eps must be positive");
  const FunctionSample sample = draw_function_sample(spec, plan);
  std::vector<const std::vector<double>*> kept;
  for (const auto& g : sample.values) {
    const bool separated =
        std::all_of(kept.begin(), kept.end(), [&](const std::vector<double>* h) { return farther_than(g, *h, 2.0 * eps); });
    if (separated) kept.push_back(&g);
  }
  return {eps, kept.size(), plan};
}

std::uint64_t greedy_cover_heuristic(const KernelSpec& spec, double eps, const SamplePlan& plan) {
  if (!(eps > 0.0)) fail(ErrorKind::DomainError, "eps must be positive");
  const FunctionSample sample = draw_function_sample(spec, plan);
  std::vector<const std::vector<double>*> centres;
  for (const auto& g : sample.values) {
    const bool covered =
        std::any_of(centres.begin(), centres.end(), [&](const std::vector<double>* h) { return sup_distance(g, *h) <= eps; });
    if (!covered) centres.push_back(&g);
  }
  return centres.size();
}

}  // namespace covnum
