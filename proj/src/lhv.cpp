#include "waybell/lhv.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace waybell::lhv {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt3 = std::numbers::sqrt3;

void check_half_period(double theta) {
  if (!(theta >= 0.0 && theta <= kPi)) {
    throw std::domain_error("theta must lie in [0, pi]");
  }
}

bool is_triplet(quantum::StateKind kind) {
  return kind == quantum::StateKind::triplet_psi_plus ||
         kind == quantum::StateKind::triplet_phi_minus;
}

// Raw single-spin delta_L, valid away from the removable singularities.
double single_spin_deltaL_raw(double alpha) {
  return std::sin(alpha) * std::cos(alpha) / (kPi * std::cos(alpha) - kPi + 2.0 * alpha);
}

}  // namespace

const double kMinSingletDeltaL = 1.0 / kPi;

void WayParams::validate() const {
  if (!std::isfinite(delta_L)) {
    throw std::invalid_argument("WayParams: delta_L must be finite");
  }
  switch (kind) {
    case quantum::StateKind::singlet:
      if (delta_L <= kMinSingletDeltaL) {
        throw std::invalid_argument("WayParams: singlet requires delta_L > 1/pi");
      }
      return;
    case quantum::StateKind::triplet_psi_plus:
    case quantum::StateKind::triplet_phi_minus:
      if (delta_L <= 0.0) {
        throw std::invalid_argument("WayParams: triplet requires delta_L_xi > 0");
      }
      return;
    case quantum::StateKind::custom:
      break;
  }
  throw std::invalid_argument("WayParams: custom states have no response model");
}

double folded_sin(double theta) {
  return theta <= kPi / 2.0 ? std::sin(theta) : std::sin(kPi - theta);
}

double base_correlation(double theta) {
  check_half_period(theta);
  return (2.0 * theta - kPi) / kPi;
}

double extend_symmetry(const std::function<double(double)>& half_profile, double theta) {
  if (!(theta >= 0.0 && theta <= 2.0 * kPi)) {
    throw std::domain_error("extend_symmetry: theta must lie in [0, 2 pi]");
  }
  if (theta <= kPi) {
    return half_profile(theta);
  }
  return -half_profile(theta - kPi);
}

double exclusion_halfwidth(double theta, const WayParams& params) {
  params.validate();
  check_half_period(theta);
  if (params.kind == quantum::StateKind::singlet) {
    return folded_sin(theta) / (2.0 * params.delta_L);
  }
  return kSqrt3 * folded_sin(theta) / (2.0 * (params.delta_L + 1.0));
}

double band_correlation(double theta, double halfwidth) {
  check_half_period(theta);
  if (!(halfwidth >= 0.0)) {
    throw std::domain_error("band_correlation: halfwidth must be nonnegative");
  }
  if (halfwidth >= kPi / 2.0) {
    throw std::domain_error("band_correlation: halfwidth >= pi/2 leaves no measure");
  }
  return (2.0 * theta - kPi) / (kPi - 2.0 * halfwidth);
}

double way_correlation_singlet(double theta, double delta_L) {
  WayParams params{delta_L, quantum::StateKind::singlet, BandConvention::boundary_band};
  params.validate();
  check_half_period(theta);
  return delta_L * (2.0 * theta - kPi) / (kPi * delta_L - folded_sin(theta));
}

double way_correlation_triplet(double theta, double delta_L_xi, quantum::StateKind kind) {
  if (!is_triplet(kind)) {
    throw std::invalid_argument("way_correlation_triplet: kind must be a triplet state");
  }
  WayParams params{delta_L_xi, kind, BandConvention::boundary_band};
  params.validate();
  check_half_period(theta);
  const double total = delta_L_xi + 1.0;
  const double value = total * (2.0 * theta - kPi) / (kPi * total - kSqrt3 * folded_sin(theta));
  return kind == quantum::StateKind::triplet_psi_plus ? value : -value;
}

double way_bound(double theta, double delta_L) {
  if (!(delta_L > 0.0)) {
    throw std::invalid_argument("way_bound: delta_L must be positive");
  }
  const double s = std::sin(theta);
  return s * s / (4.0 * delta_L * delta_L);
}

double single_spin_required_deltaL(double alpha) {
  if (!(alpha >= 0.0 && alpha <= kPi)) {
    throw std::domain_error("single_spin_required_deltaL: alpha must lie in [0, pi]");
  }
  constexpr double kSingular[] = {0.0, kPi / 2.0, kPi};
  constexpr double kGuard = 1e-9;
  constexpr double kOffset = 1e-6;
  for (double s : kSingular) {
    if (std::abs(alpha - s) < kGuard) {
      return 0.5 * (single_spin_deltaL_raw(s - kOffset) + single_spin_deltaL_raw(s + kOffset));
    }
  }
  const double value = single_spin_deltaL_raw(alpha);
  if (!(value > 0.0)) {
    throw std::domain_error("single_spin_required_deltaL: negative delta_L (model inconsistency)");
  }
  return value;
}

std::function<double(double)> base_profile() {
  return [](double theta) { return base_correlation(theta); };
}

std::function<double(double)> way_singlet_profile(double delta_L) {
  WayParams params{delta_L, quantum::StateKind::singlet, BandConvention::boundary_band};
  params.validate();
  return [delta_L](double theta) { return way_correlation_singlet(theta, delta_L); };
}

std::function<double(double)> way_triplet_profile(double delta_L_xi, quantum::StateKind kind) {
  WayParams params{delta_L_xi, kind, BandConvention::boundary_band};
  params.validate();
  return [delta_L_xi, kind](double theta) {
    return way_correlation_triplet(theta, delta_L_xi, kind);
  };
}

ResponseCurve sample_curve(std::string model_id,
                           const std::function<double(double)>& half_profile, int n_points,
                           std::optional<WayParams> params) {
  if (n_points < 2) {
    throw std::invalid_argument("sample_curve: need at least two points");
  }
  ResponseCurve curve;
  curve.model_id = std::move(model_id);
  curve.params = params;
  curve.thetas.reserve(static_cast<std::size_t>(n_points));
  curve.values.reserve(static_cast<std::size_t>(n_points));
  const double step = 2.0 * kPi / (n_points - 1);
  const bool bounded = params.has_value() && params->physical();
  for (int i = 0; i < n_points; ++i) {
    const double theta = std::min(i * step, 2.0 * kPi);
    const double value = extend_symmetry(half_profile, theta);
    if (bounded && std::abs(value) > 1.0 + 1e-12) {
      throw std::logic_error("sample_curve: physical parameters produced |E| > 1");
    }
    curve.thetas.push_back(theta);
    curve.values.push_back(value);
  }
  return curve;
}

}  // namespace waybell::lhv
