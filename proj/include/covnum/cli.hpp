#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "covnum/errors.hpp"

namespace covnum::cli {

struct EpsGrid {
  double min = 1e-6;
  double max = 0.5;
  std::size_t count = 40;
};

struct RunConfig {
  std::string command;  // dims, coeffs, norms, bounds, constants, gaussian, empirical, report
  std::string kernel_path;
  // dims
  std::string manifold_class;
  int d = 0;
  std::uint64_t k_max = 20;
  EpsGrid eps_grid;
  std::optional<std::string> out_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> regime;
  std::uint64_t ambient_points = 512;
  std::uint64_t ball_draws = 2000;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumeric = 3;

/// Validation-type errors (bad schema, dimension, model/manifold mismatch) map to 2,
/// everything else to 3.
int exit_code_for(ErrorKind kind) noexcept;

/// Produces the command's output text. Throws Error on invalid input or numeric failure.
std::string render(const RunConfig& config);

/// render() plus file/stdout handling and error-to-exit-code mapping. Nothing is written
/// to out_path unless the command succeeded.
int run(const RunConfig& config, std::ostream& out, std::ostream& diag);

}  // namespace covnum::cli
