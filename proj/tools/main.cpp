#include <iostream>

#include <CLI11.hpp>

#include "covnum/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Covering-number bounds for zonal kernels on two-point homogeneous spaces"};
  app.require_subcommand(1);
  covnum::cli::RunConfig config;

  auto* dims = app.add_subcommand("dims", "eigenspace dimensions tau_k and dim V_k");
  dims->add_option("--manifold", config.manifold_class, "sphere|real_projective|complex_projective|quaternion_projective|cayley")
      ->required();
  dims->add_option("--d", config.d, "real dimension")->required();
  dims->add_option("--k-max", config.k_max, "last level")->capture_default_str();

  const char* kernel_commands[][2] = {
      {"coeffs", "coefficients a_k"},
      {"norms", "embedding norms and tail bounds"},
      {"bounds", "certified bound curve (CSV)"},
      {"constants", "asymptotic constants (JSON)"},
      {"gaussian", "Gaussian coefficients and constants (JSON)"},
      {"empirical", "Monte Carlo packing estimates (JSON)"},
      {"report", "bounds, asymptotic ratios and packing (CSV)"},
  };
  for (const auto& [name, help] : kernel_commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config.kernel_path, "kernel specification JSON")->required();
    sub->add_option("--eps-min", config.eps_grid.min)->capture_default_str();
    sub->add_option("--eps-max", config.eps_grid.max)->capture_default_str();
    sub->add_option("--eps-count", config.eps_grid.count)->capture_default_str();
    sub->add_option("--k-max", config.k_max, "last level for tables")->capture_default_str();
    sub->add_option("--seed", config.seed, "seed for Monte Carlo draws (default 42)");
    sub->add_option("--regime", config.regime, "geometric_upper|geometric_lower|power_upper|power_lower");
    sub->add_option("--points", config.ambient_points, "ambient points for empirical runs")->capture_default_str();
    sub->add_option("--draws", config.ball_draws, "ball draws for empirical runs")->capture_default_str();
    sub->add_option("--out", config.out_path, "output file (stdout if omitted)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : covnum::cli::kExitValidation;
  }
  config.command = app.get_subcommands().front()->get_name();
  return covnum::cli::run(config, std::cout, std::cerr);
}
