#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "waybell/quantum.hpp"

namespace waybell::lhv {

/// Smallest delta_L for which the singlet response denominator stays
/// positive over the whole theta range (1/pi).
extern const double kMinSingletDeltaL;

/// Smallest delta_L with |response| <= 1 everywhere; below it the model
/// produces unphysical correlations.
inline constexpr double kPhysicalDeltaLFloor = 0.5;

enum class BandConvention { boundary_band };

/// Dispersion of the conserved J_y entering the exclusion band. For the
/// singlet delta_L is the total dispersion (all of it from the probe); for
/// the triplets it is the probe part delta_L_xi, the state adding one unit.
struct WayParams {
  double delta_L = 0.77;
  quantum::StateKind kind = quantum::StateKind::singlet;
  BandConvention band_convention = BandConvention::boundary_band;

  void validate() const;  // throws std::invalid_argument out of range
  bool physical() const { return delta_L >= kPhysicalDeltaLFloor; }
};

/// sin(theta) on [0, pi] evaluated by reflection about pi/2, so both
/// endpoints are exact zeros.
double folded_sin(double theta);

/// Piecewise-linear hidden-variable response (2 theta - pi) / pi on [0, pi].
double base_correlation(double theta);

/// Full-period response: E(theta) on [0, pi], -E(theta - pi) on (pi, 2 pi].
double extend_symmetry(const std::function<double(double)>& half_profile, double theta);

/// Half-width of the excluded lambda band around the outcome-flip boundary:
/// sin(theta) / (2 delta_L) for the singlet, sqrt(3) sin(theta) /
/// (2 (delta_L_xi + 1)) for the triplets.
double exclusion_halfwidth(double theta, const WayParams& params);

/// Generic exclusion-band response (2 theta - pi) / (pi - 2 b). Not clamped
/// to [-1, 1]; physicality is the caller's delta_L >= 0.5 concern.
double band_correlation(double theta, double halfwidth);

/// delta_L (2 theta - pi) / (pi delta_L - sin theta), theta in [0, pi].
double way_correlation_singlet(double theta, double delta_L);

/// +-(delta_L_xi + 1)(2 theta - pi) / (pi (delta_L_xi + 1) - sqrt(3) sin theta);
/// + branch for the psi_plus triplet, - branch for phi_minus.
double way_correlation_triplet(double theta, double delta_L_xi, quantum::StateKind kind);

/// Lower bound on the expected squared deviation, sin^2(theta) / (4 delta_L^2).
double way_bound(double theta, double delta_L);

/// The delta_L that makes the band response reproduce the single-spin
/// quantum expectation at angle alpha:
///   sin(alpha) cos(alpha) / (pi cos(alpha) - pi + 2 alpha),
/// with the removable singularities at alpha in {0, pi/2, pi} filled by
/// two-sided numeric limits at offsets +-1e-6.
double single_spin_required_deltaL(double alpha);

// Half-period profiles for composition with extend_symmetry.
std::function<double(double)> base_profile();
std::function<double(double)> way_singlet_profile(double delta_L);
std::function<double(double)> way_triplet_profile(double delta_L_xi, quantum::StateKind kind);

/// A sampled full-period response curve.
struct ResponseCurve {
  std::vector<double> thetas;
  std::vector<double> values;
  std::string model_id;
  std::optional<WayParams> params;
};

/// Sample a half-period profile over [0, 2 pi] on n_points strictly
/// increasing thetas. Physical parameter sets must stay within [-1, 1].
ResponseCurve sample_curve(std::string model_id,
                           const std::function<double(double)>& half_profile, int n_points,
                           std::optional<WayParams> params = std::nullopt);

}  // namespace waybell::lhv
