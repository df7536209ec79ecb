#include "waybell/fitting.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "waybell/lhv.hpp"

namespace waybell::fitting {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBracketLo = 0.5;
constexpr double kBracketHi = 2.0;
constexpr double kFitTol = 1e-6;

void check_grid(int grid_size) {
  if (grid_size < 100) {
    throw std::invalid_argument("fitting: grid_size must be at least 100");
  }
}

double grid_theta(int i, int grid_size) { return i * kPi / (grid_size - 1); }

// Signed mean of e * de/d(delta_L): the derivative of half the mean squared
// error, so its root is the least-squares optimum.
double weighted_residual_mean(double delta_L, int grid_size) {
  double acc = 0.0;
  for (int i = 0; i < grid_size; ++i) {
    const double theta = grid_theta(i, grid_size);
    const double error = lhv::way_correlation_singlet(theta, delta_L) + std::cos(theta);
    const double denom = kPi * delta_L - lhv::folded_sin(theta);
    const double slope = -(2.0 * theta - kPi) * lhv::folded_sin(theta) / (denom * denom);
    acc += error * slope;
  }
  return acc / grid_size;
}

double mean_abs_error_at(double delta_L, int grid_size) {
  double acc = 0.0;
  for (int i = 0; i < grid_size; ++i) {
    const double theta = grid_theta(i, grid_size);
    acc += std::abs(lhv::way_correlation_singlet(theta, delta_L) + std::cos(theta));
  }
  return acc / grid_size;
}

double bisect_weighted_residual(int grid_size) {
  double lo = kBracketLo;
  double hi = kBracketHi;
  double f_lo = weighted_residual_mean(lo, grid_size);
  const double f_hi = weighted_residual_mean(hi, grid_size);
  if ((f_lo < 0.0) == (f_hi < 0.0)) {
    throw std::runtime_error("fit_deltaL: no sign change across the delta_L bracket");
  }
  while (hi - lo > kFitTol) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = weighted_residual_mean(mid, grid_size);
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double golden_min_mean_abs(int grid_size) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = kBracketLo;
  double hi = kBracketHi;
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = mean_abs_error_at(x1, grid_size);
  double f2 = mean_abs_error_at(x2, grid_size);
  while (hi - lo > kFitTol) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = mean_abs_error_at(x1, grid_size);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = mean_abs_error_at(x2, grid_size);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

FitResult deviation_stats(double delta_L, int grid_size) {
  check_grid(grid_size);
  FitResult result;
  result.delta_L_star = delta_L;
  result.grid_size = grid_size;
  double signed_sum = 0.0;
  double abs_sum = 0.0;
  for (int i = 0; i < grid_size; ++i) {
    const double theta = grid_theta(i, grid_size);
    const double error = lhv::way_correlation_singlet(theta, delta_L) + std::cos(theta);
    signed_sum += error;
    abs_sum += std::abs(error);
    if (std::abs(error) > result.max_abs_error) {
      result.max_abs_error = std::abs(error);
      result.argmax_theta = theta;
    }
  }
  result.mean_signed_error = signed_sum / grid_size;
  result.mean_abs_error = abs_sum / grid_size;
  return result;
}

FitResult fit_deltaL(int grid_size, Objective objective) {
  check_grid(grid_size);
  double delta_L_star = 0.0;
  switch (objective) {
    case Objective::zero_mean_signed:
      delta_L_star = bisect_weighted_residual(grid_size);
      break;
    case Objective::min_mean_abs:
      delta_L_star = golden_min_mean_abs(grid_size);
      break;
  }
  return deviation_stats(delta_L_star, grid_size);
}

std::vector<std::pair<double, double>> exact_deltaL_curve(int grid_size) {
  if (grid_size < 2) {
    throw std::invalid_argument("exact_deltaL_curve: need at least two points");
  }
  constexpr double kEdge = 1e-6;
  std::vector<std::pair<double, double>> curve;
  curve.reserve(static_cast<std::size_t>(grid_size));
  const double lo = kEdge;
  const double hi = kPi - kEdge;
  const double step = (hi - lo) / (grid_size - 1);
  for (int i = 0; i < grid_size; ++i) {
    const double theta = lo + i * step;
    if (std::abs(theta - kPi / 2.0) < kEdge) {
      continue;  // removable singularity, excluded from the grid
    }
    const double value =
        std::sin(theta) * std::cos(theta) / (kPi * std::cos(theta) - kPi + 2.0 * theta);
    curve.emplace_back(theta, value);
  }
  return curve;
}

}  // namespace waybell::fitting
