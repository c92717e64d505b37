#include "covnum/cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "covnum/bounds.hpp"
#include "covnum/empirical.hpp"
#include "covnum/io.hpp"
#include "covnum/kernels.hpp"
#include "covnum/manifold.hpp"

namespace covnum::cli {
namespace {

using nlohmann::json;

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  if (path.empty()) fail(ErrorKind::ValidationError, "--config: a kernel specification file is required");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

KernelSpec load_kernel(const RunConfig& c) { return parse_kernel_spec(read_file(c.kernel_path)); }

std::vector<double> grid_of(const RunConfig& c) {
  const EpsGrid& g = c.eps_grid;
  if (!(g.min > 0.0) || !(g.min < g.max)) fail(ErrorKind::ValidationError, "eps_grid: need 0 < eps-min < eps-max");
  if (g.count < 2) fail(ErrorKind::ValidationError, "eps_grid.count: need at least 2 points");
  return log_grid(g.min, g.max, g.count);
}

std::string dim_text(const DimensionSequence& seq) {
  return seq.exact() ? to_string(seq.exact_value()) : format_number(seq.value());
}

std::string render_dims(const RunConfig& c) {
  const ManifoldSpec mf = make_manifold(space_class_from_string(c.manifold_class), c.d);
  std::ostringstream out;
  out << "k,tau_k,dim_V_k\n";
  DimensionSequence seq(mf);
  DimCount total = 0;
  bool total_exact = true;
  double total_real = 0.0;
  for (std::uint64_t k = 0; k <= c.k_max; ++k, seq.advance()) {
    total_real += seq.value();
    if (total_exact && seq.exact() && total <= kDimCountLimit) {
      total += seq.exact_value();
      total_exact = total <= kDimCountLimit;
    } else {
      total_exact = false;
    }
    out << k << ',' << dim_text(seq) << ',' << (total_exact ? to_string(total) : format_number(total_real)) << '\n';
  }
  return out.str();
}

std::string render_coeffs(const RunConfig& c) {
  const KernelSpec spec = load_kernel(c);
  std::ostringstream out;
  out << "k,a_k,ln_a_k\n";
  for (std::uint64_t k = 0; k <= c.k_max; ++k) {
    const double la = log_coefficient(spec, k);
    out << k << ',' << format_number(coefficient(spec, k)) << ',' << (std::isfinite(la) ? format_number(la) : "")
        << '\n';
  }
  return out.str();
}

std::string render_norms(const RunConfig& c) {
  const KernelSpec spec = load_kernel(c);
  const double kappa = embedding_norm(spec);
  std::ostringstream out;
  out << "m,kappa,kappa_m,kappa_m_s,tail_bound\n";
  for (std::uint64_t m = 0; m <= c.k_max; ++m) {
    std::string bound;
    try {
      bound = format_number(tail_bound(spec, m));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Unsupported) throw;
    }
    out << m << ',' << format_number(kappa) << ',' << format_number(partial_norm(spec, m)) << ','
        << format_number(tail_norm(spec, m)) << ',' << bound << '\n';
  }
  return out.str();
}

std::string render_bounds(const RunConfig& c) {
  const KernelSpec spec = load_kernel(c);
  const std::vector<double> grid = grid_of(c);
  return bound_curve_csv(bound_curve(spec, grid));
}

json report_or_error(const KernelSpec& spec, Regime r) {
  try {
    return report_json(asymptotic_constant(spec, r));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::HypothesisNotCertified) throw;
    return {{"regime", std::string(to_string(r))}, {"error", e.what()}};
  }
}

std::string render_constants(const RunConfig& c) {
  const KernelSpec spec = load_kernel(c);
  json reports = json::array();
  if (c.regime) {
    reports.push_back(report_json(asymptotic_constant(spec, regime_from_string(*c.regime))));
  } else {
    reports.push_back(report_or_error(spec, default_regime(spec, true)));
    reports.push_back(report_or_error(spec, default_regime(spec, false)));
  }
  json doc = {{"kernel", kernel_to_json(spec)}, {"reports", reports}};
  return doc.dump(2) + "\n";
}

std::string render_gaussian(const RunConfig& c) {
  const KernelSpec spec = load_kernel(c);
  const int d = spec.manifold.d;
  json doc = {{"kernel", kernel_to_json(spec)}};
  if (const auto* g = std::get_if<GaussianSphere>(&spec.model)) {
    json rows = json::array();
    for (std::uint64_t k = 0; k <= c.k_max; ++k) {
      rows.push_back({{"k", k},
                      {"lambda", std::stod(format_number(gaussian_coefficient(g->rho, d, k)))},
                      {"a", std::stod(format_number(coefficient(spec, k)))}});
    }
    doc["levels"] = rows;
    doc["upper_constant"] =
        g->rho * g->rho > 2.0 ? json(std::stod(format_number(gaussian_upper_constant(g->rho, d)))) : json(nullptr);
  } else if (const auto* g = std::get_if<GaussianType>(&spec.model)) {
    const ConstantPair p = gaussian_type_constants(g->delta, d);
    doc["lower_constant"] = std::stod(format_number(p.lower));
    doc["upper_constant"] = std::stod(format_number(p.upper));
  } else {
    fail(ErrorKind::ModelMismatch, "model.type: gaussian needs a gaussian_sphere or gaussian_type model");
  }
  return doc.dump(2) + "\n";
}

SamplePlan plan_for(const RunConfig& c, const KernelSpec& spec, double eps) {
  const std::uint64_t m = std::max<std::uint64_t>(1, upper_bound_lnC(spec, eps).m);
  SamplePlan plan{c.ambient_points, c.ball_draws, m, c.seed.value_or(42)};
  validate(plan);
  return plan;
}

std::string render_empirical(const RunConfig& c) {
  const KernelSpec spec = load_kernel(c);
  const std::vector<double> grid = grid_of(c);
  json rows = json::array();
  for (double eps : grid) {
    const PackingEstimate est = packing_lower_estimate(spec, eps, plan_for(c, spec, eps));
    rows.push_back(packing_json(est));
  }
  json doc = {{"kernel", kernel_to_json(spec)}, {"estimates", rows}};
  return doc.dump(2) + "\n";
}

std::optional<AsymptoticReport> try_report(const KernelSpec& spec, bool upper) {
  try {
    return asymptotic_constant(spec, default_regime(spec, upper));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::HypothesisNotCertified) throw;
    return std::nullopt;
  }
}

std::string render_report(const RunConfig& c) {
  const KernelSpec spec = load_kernel(c);
  const std::vector<double> grid = grid_of(c);
  const std::optional<AsymptoticReport> up = try_report(spec, true);
  const std::optional<AsymptoticReport> lo = try_report(spec, false);
  const bool empirical = spec.manifold.space_class == SpaceClass::Sphere && spec.manifold.d <= 2;
  std::ostringstream out;
  out << "eps,ln_upper,ln_lower,upper_ratio,lower_ratio,packing_ln\n";
  for (double eps : grid) {
    const UpperBound ub = upper_bound_lnC(spec, eps);
    const LowerBound lb = lower_bound_lnC(spec, eps);
    auto ratio = [&](const std::optional<AsymptoticReport>& r, double v) -> std::string {
      if (!r || !(eps < 1.0)) return "";
      return format_number(v / comparison_function(*r, eps));
    };
    std::string packing;
    if (empirical) {
      const PackingEstimate est = packing_lower_estimate(spec, eps, plan_for(c, spec, eps));
      packing = format_number(std::log(static_cast<double>(est.count)));
    }
    out << format_number(eps) << ',' << format_number(ub.ln_upper) << ',' << format_number(lb.ln_lower) << ','
        << ratio(up, ub.ln_upper) << ',' << ratio(lo, lb.ln_lower) << ',' << packing << '\n';
  }
  return out.str();
}

}  // namespace

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ValidationError:
    case ErrorKind::InvalidDimension:
    case ErrorKind::ModelMismatch:
      return kExitValidation;
    default:
      return kExitNumeric;
  }
}

std::string render(const RunConfig& c) {
  if (c.command == "dims") return render_dims(c);
  if (c.command == "coeffs") return render_coeffs(c);
  if (c.command == "norms") return render_norms(c);
  if (c.command == "bounds") return render_bounds(c);
  if (c.command == "constants") return render_constants(c);
  if (c.command == "gaussian") return render_gaussian(c);
  if (c.command == "empirical") return render_empirical(c);
  if (c.command == "report") return render_report(c);
  fail(ErrorKind::ValidationError, "command: unknown command '" + c.command + "'");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& diag) {
  std::string text;
  try {
    text = render(config);
  } catch (const IoFailure& e) {
    diag << "error: IoError: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    diag << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
  if (config.out_path) {
    std::ofstream file(*config.out_path, std::ios::binary | std::ios::trunc);
    if (!file || !(file << text) || !file.flush()) {
      diag << "error: IoError: cannot write '" << *config.out_path << "'\n";
      return kExitIo;
    }
  } else {
    out << text;
  }
  return kExitOk;
}

}  // namespace covnum::cli
