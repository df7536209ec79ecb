#pragma once

#include <utility>
#include <vector>

namespace waybell::fitting {

enum class Objective { zero_mean_signed, min_mean_abs };

struct FitResult {
  double delta_L_star = 0.0;
  double mean_signed_error = 0.0;
  double mean_abs_error = 0.0;
  double max_abs_error = 0.0;
  double argmax_theta = 0.0;
  int grid_size = 0;
};

/// Deviation of the singlet response from the quantum curve over a uniform
/// theta grid on [0, pi] (endpoints included). Errors are
/// way_correlation_singlet(theta) - (-cos theta).
FitResult deviation_stats(double delta_L, int grid_size = 1000);

/// Calibrate delta_L over [0.5, 2.0].
///   zero_mean_signed: bisection to 1e-6 on the signed mean of the weighted
///     residual e * de/d(delta_L) -- the least-squares stationarity
///     condition. The plain signed mean vanishes identically (response and
///     quantum curve are both antisymmetric about pi/2), so it carries no
///     root to find.
///   min_mean_abs: golden-section minimization of the mean absolute error.
FitResult fit_deltaL(int grid_size = 1000, Objective objective = Objective::zero_mean_signed);

/// (theta, delta_L) pairs of the exact per-angle dispersion solving
/// E(theta) = -cos(theta), over (0, pi) with the removable singularities
/// excluded by +-1e-6. Demonstrably non-constant.
std::vector<std::pair<double, double>> exact_deltaL_curve(int grid_size);

}  // namespace waybell::fitting
