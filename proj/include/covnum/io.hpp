#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "covnum/bounds.hpp"
#include "covnum/empirical.hpp"
#include "covnum/kernels.hpp"

namespace covnum {

/// 12 significant digits, shortest of %g style.
std::string format_number(double v);

/// {"manifold": {"class": ..., "d": ...}, "model": {"type": ..., ...}}
///   geometric:        a0, ratio
///   power_law:        c, p, a0
///   gaussian_sphere:  rho
///   gaussian_type:    delta
///   explicit:         coefficients
/// Structural problems throw ValidationError naming the field, e.g. "model.ratio".
KernelSpec kernel_from_json(const nlohmann::json& j);
KernelSpec parse_kernel_spec(std::string_view text);
nlohmann::json kernel_to_json(const KernelSpec& spec);

inline constexpr std::string_view kBoundCsvHeader = "eps,ln_upper,m_upper,ln_lower,m_lower";

std::string bound_curve_csv(const BoundCurve& curve);
/// Inverse of bound_curve_csv for the points; throws ValidationError on a bad header or row.
std::vector<BoundPoint> parse_bound_curve_csv(std::string_view text);
nlohmann::json bound_curve_json(const BoundCurve& curve);

nlohmann::json packing_json(const PackingEstimate& estimate);
nlohmann::json report_json(const AsymptoticReport& report);

}  // namespace covnum
