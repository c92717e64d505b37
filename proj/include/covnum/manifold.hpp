#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "covnum/specfun.hpp"

namespace covnum {

/// The five classes of compact two-point homogeneous spaces.
enum class SpaceClass { Sphere, RealProjective, ComplexProjective, QuaternionProjective, CayleyPlane };

std::string_view to_string(SpaceClass c) noexcept;
/// Parses the JSON/CLI spelling: sphere, real_projective, complex_projective,
/// quaternion_projective, cayley. Throws ValidationError otherwise.
SpaceClass space_class_from_string(std::string_view name);

/// Exact eigenspace dimensions. Cayley-plane levels exceed 64 bits long before
/// the cumulative counts we tabulate, so counts are 128-bit.
using DimCount = unsigned __int128;

/// Largest dimension reported exactly; anything above raises Overflow.
inline constexpr DimCount kDimCountLimit = DimCount{1} << 126;

std::string to_string(DimCount value);

/// Spectral data of M^d: real dimension d and the Jacobi pair of its radial Laplacian.
/// alpha = (d-2)/2; beta = alpha on spheres and real projective spaces, 0 on complex,
/// 1 on quaternionic projective spaces and 3 on the Cayley plane.
struct ManifoldSpec {
  SpaceClass space_class;
  int d;
  double alpha;
  double beta;

  JacobiParams jacobi() const noexcept { return {alpha, beta}; }
  /// Odd levels vanish on real projective spaces.
  bool level_vanishes(std::uint64_t k) const noexcept {
    return space_class == SpaceClass::RealProjective && (k % 2 == 1);
  }
};

/// Throws InvalidDimension when d is not admissible for the class: d >= 1 for
/// spheres and real projective spaces, even d >= 4 for complex, d divisible by 4 and
/// >= 8 for quaternionic projective spaces, d = 16 for the Cayley plane.
ManifoldSpec make_manifold(SpaceClass space_class, int d);

/// Walks tau_0, tau_1, ... with exact rational cancellation of the Gamma ratios.
/// Values stay exact up to kDimCountLimit; past that only the floating value is kept.
class DimensionSequence {
 public:
  explicit DimensionSequence(const ManifoldSpec& spec);

  std::uint64_t level() const noexcept { return k_; }
  /// tau_k as a real number (exact while exact() holds).
  double value() const noexcept;
  bool exact() const noexcept { return exact_; }
  /// tau_k as an exact integer; throws Overflow once the sequence left the exact range.
  DimCount exact_value() const;
  void advance();

 private:
  ManifoldSpec spec_;
  std::int64_t twice_alpha_;
  std::int64_t twice_beta_;
  std::uint64_t k_ = 0;
  DimCount base_ = 1;     // tau_k of the underlying (alpha, beta) formula, odd levels included
  double base_real_ = 1.0;
  bool exact_ = true;
};

/// tau_k^d, the dimension of the k-th eigenspace. Throws Overflow above kDimCountLimit.
DimCount eigenspace_dim(const ManifoldSpec& spec, std::uint64_t k);

/// dim V_m = sum_{k<=m} tau_k^d. Throws Overflow above kDimCountLimit.
DimCount cumulative_dim(const ManifoldSpec& spec, std::uint64_t m);

/// tau_k^d as a double; exact for small levels, log-gamma evaluation for large k.
double eigenspace_dim_real(const ManifoldSpec& spec, std::uint64_t k);

/// dim V_m as a double; closed form for all classes except real projective spaces,
/// which are summed over even levels.
double cumulative_dim_real(const ManifoldSpec& spec, std::uint64_t m);

/// (m+1)(beta+m+1) Gamma(m+alpha+2) Gamma(m+alpha+beta+2) / ((alpha+1) Gamma(m+2) Gamma(m+beta+2))
///   * Gamma(beta+1) / (Gamma(alpha+1) Gamma(alpha+beta+2)).
/// Counts every level, so it does not apply to real projective spaces.
double cumulative_dim_closed_form(const ManifoldSpec& spec, std::uint64_t m);

/// Gamma(beta+1) / (Gamma(alpha+2) Gamma(alpha+beta+2)), the constant in dim V_m ~ C m^d.
double dim_growth_constant(const ManifoldSpec& spec);

/// 2 Gamma(beta+1) / (Gamma(alpha+1) Gamma(alpha+beta+2)), the constant in tau_k ~ C k^{d-1}.
double tau_growth_constant(const ManifoldSpec& spec);

}  // namespace covnum
