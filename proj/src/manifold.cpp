#include "covnum/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "covnum/errors.hpp"

namespace covnum {
namespace {

// Levels up to this index are produced by walking the exact recurrence.
constexpr std::uint64_t kWalkLimit = 4096;

DimCount gcd128(DimCount a, DimCount b) {
  while (b != 0) {
    const DimCount r = a % b;
    a = b;
    b = r;
  }
  return a;
}

long double lgam(long double x) { return ln_gamma(x); }

}  // namespace

std::string_view to_string(SpaceClass c) noexcept {
  switch (c) {
    case SpaceClass::Sphere: return "sphere";
    case SpaceClass::RealProjective: return "real_projective";
    case SpaceClass::ComplexProjective: return "complex_projective";
    case SpaceClass::QuaternionProjective: return "quaternion_projective";
    case SpaceClass::CayleyPlane: return "cayley";
  }
  return "unknown";
}

SpaceClass space_class_from_string(std::string_view name) {
  for (SpaceClass c : {SpaceClass::Sphere, SpaceClass::RealProjective, SpaceClass::ComplexProjective,
                       SpaceClass::QuaternionProjective, SpaceClass::CayleyPlane}) {
    if (to_string(c) == name) return c;
  }
  fail(ErrorKind::ValidationError, "unknown manifold class '" + std::string(name) + "'");
}

std::string to_string(DimCount value) {
  if (value == 0) return "0";
  std::string digits;
  while (value != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

ManifoldSpec make_manifold(SpaceClass space_class, int d) {
  auto reject = [&](const char* rule) {
    fail(ErrorKind::InvalidDimension,
         std::string(to_string(space_class)) + " requires " + rule + ", got d=" + std::to_string(d));
  };
  const double alpha = (d - 2) / 2.0;
  double beta = alpha;
  switch (space_class) {
    case SpaceClass::Sphere:
    case SpaceClass::RealProjective:
      if (d < 1) reject("d >= 1");
      break;
    case SpaceClass::ComplexProjective:
      if (d < 4 || d % 2 != 0) reject("even d >= 4");
      beta = 0.0;
      break;
    case SpaceClass::QuaternionProjective:
      if (d < 8 || d % 4 != 0) reject("d divisible by 4 and d >= 8");
      beta = 1.0;
      break;
    case SpaceClass::CayleyPlane:
      if (d != 16) reject("d = 16");
      beta = 3.0;
      break;
  }
  return ManifoldSpec{space_class, d, alpha, beta};
}

DimensionSequence::DimensionSequence(const ManifoldSpec& spec)
    : spec_(spec),
      twice_alpha_(spec.d - 2),
      twice_beta_(static_cast<std::int64_t>(std::lround(2.0 * spec.beta))) {}

double DimensionSequence::value() const noexcept {
  if (spec_.level_vanishes(k_)) return 0.0;
  return exact_ ? static_cast<double>(base_) : base_real_;
}

DimCount DimensionSequence::exact_value() const {
  if (!exact_) {
    fail(ErrorKind::Overflow, "tau_" + std::to_string(k_) + " exceeds the exact dimension range");
  }
  return spec_.level_vanishes(k_) ? DimCount{0} : base_;
}

void DimensionSequence::advance() {
  // With a = 2 alpha, b = 2 beta, s = a + b + 2 (twice alpha+beta+1):
  //   tau_1 = (4+s)(a+2) / (2(b+2)),
  //   tau_{k+1} / tau_k = (4k+4+s)(a+2+2k)(s+2k) / (2 (4k+s)(k+1)(b+2+2k)),  k >= 1.
  const std::int64_t a = twice_alpha_;
  const std::int64_t b = twice_beta_;
  const std::int64_t s = a + b + 2;
  const auto k = static_cast<std::int64_t>(k_);
  std::int64_t num1, num2, num3, den1, den2, den3;
  if (k == 0) {
    num1 = 4 + s, num2 = a + 2, num3 = 1;
    den1 = 2, den2 = b + 2, den3 = 1;
  } else {
    num1 = 4 * k + 4 + s, num2 = a + 2 + 2 * k, num3 = s + 2 * k;
    den1 = 2 * (4 * k + s), den2 = k + 1, den3 = b + 2 + 2 * k;
  }
  const DimCount num = DimCount(num1) * DimCount(num2) * DimCount(num3);
  const DimCount den = DimCount(den1) * DimCount(den2) * DimCount(den3);
  base_real_ = (exact_ ? static_cast<double>(base_) : base_real_) *
               (static_cast<double>(num) / static_cast<double>(den));
  if (exact_) {
    // tau_{k+1} = (tau_k / g) * (num / (den / g)) with g = gcd(tau_k, den); the
    // second quotient is exact because tau_{k+1} is an integer.
    const DimCount g = gcd128(base_, den);
    const DimCount reduced = base_ / g;
    const DimCount den_rest = den / g;
    if (num % den_rest != 0) throw std::logic_error("eigenspace dimension recurrence lost integrality");
    const DimCount factor = num / den_rest;
    if (factor != 0 && reduced > kDimCountLimit / factor) {
      exact_ = false;
    } else {
      base_ = reduced * factor;
      base_real_ = static_cast<double>(base_);
    }
  }
  ++k_;
}

DimCount eigenspace_dim(const ManifoldSpec& spec, std::uint64_t k) {
  DimensionSequence seq(spec);
  while (seq.level() < k) seq.advance();
  return seq.exact_value();
}

DimCount cumulative_dim(const ManifoldSpec& spec, std::uint64_t m) {
  DimensionSequence seq(spec);
  DimCount total = seq.exact_value();
  while (seq.level() < m) {
    seq.advance();
    total += seq.exact_value();
    if (total > kDimCountLimit) fail(ErrorKind::Overflow, "dim V_" + std::to_string(m) + " exceeds the exact range");
  }
  return total;
}

double eigenspace_dim_real(const ManifoldSpec& spec, std::uint64_t k) {
  if (spec.level_vanishes(k)) return 0.0;
  if (k <= kWalkLimit) {
    DimensionSequence seq(spec);
    while (seq.level() < k) seq.advance();
    return seq.value();
  }
  const long double a = spec.alpha;
  const long double b = spec.beta;
  const long double s = a + b + 1.0L;
  const long double kk = static_cast<long double>(k);
  return static_cast<double>(std::exp(lgam(b + 1) + std::log(2 * kk + s) + lgam(kk + a + 1) + lgam(kk + s) -
                                      lgam(a + 1) - lgam(s + 1) - lgam(kk + 1) - lgam(kk + b + 1)));
}

double cumulative_dim_closed_form(const ManifoldSpec& spec, std::uint64_t m) {
  const long double a = spec.alpha;
  const long double b = spec.beta;
  const long double mm = static_cast<long double>(m);
  const long double log_value = std::log(mm + 1) + std::log(b + mm + 1) + lgam(mm + a + 2) + lgam(mm + a + b + 2) -
                                std::log(a + 1) - lgam(mm + 2) - lgam(mm + b + 2) + lgam(b + 1) - lgam(a + 1) -
                                lgam(a + b + 2);
  return static_cast<double>(std::exp(log_value));
}

double cumulative_dim_real(const ManifoldSpec& spec, std::uint64_t m) {
  if (m <= kWalkLimit) {
    DimensionSequence seq(spec);
    double total = seq.value();
    while (seq.level() < m) {
      seq.advance();
      total += seq.value();
    }
    return total;
  }
  if (spec.space_class == SpaceClass::RealProjective) {
    // Even spherical harmonics of degree <= 2n span the homogeneous polynomials of
    // degree 2n in d+1 variables: dim = C(2n+d, d).
    const long double top = 2.0L * static_cast<long double>(m / 2);
    const long double d = spec.d;
    return static_cast<double>(std::exp(lgam(top + d + 1) - lgam(d + 1) - lgam(top + 1)));
  }
  return cumulative_dim_closed_form(spec, m);
}

double dim_growth_constant(const ManifoldSpec& spec) {
  const long double a = spec.alpha;
  const long double b = spec.beta;
  return static_cast<double>(std::exp(lgam(b + 1) - lgam(a + 2) - lgam(a + b + 2)));
}

double tau_growth_constant(const ManifoldSpec& spec) {
  const long double a = spec.alpha;
  const long double b = spec.beta;
  return static_cast<double>(2.0L * std::exp(lgam(b + 1) - lgam(a + 1) - lgam(a + b + 2)));
}

}  // namespace covnum
