#pragma once

#include <array>
#include <functional>

#include "waybell/lhv.hpp"

namespace waybell::bell {

using CorrelationFn = std::function<double(double alpha, double beta)>;

inline constexpr double kClassicalBound = 2.0;
inline constexpr double kTsirelsonBound = 2.8284271247461903;  // 2 sqrt(2)
inline constexpr double kClassificationSlack = 1e-9;

struct ChshSettings {
  double a = 0.0;
  double a_prime = 0.0;
  double b = 0.0;
  double b_prime = 0.0;

  static ChshSettings standard();  // (0, pi/2, pi/4, 3 pi/4)
};

enum class Classification { classical, quantum, supra_quantum };

struct ChshResult {
  double s_value = 0.0;
  ChshSettings settings;
  // E(a,b), E(a,b'), E(a',b), E(a',b') in that order.
  std::array<double, 4> per_term{};
  Classification classification = Classification::classical;
};

/// S = |E(a,b) - E(a,b') + E(a',b) + E(a',b')| at fixed settings.
ChshResult chsh_s(const CorrelationFn& correlation, const ChshSettings& settings);

/// Best settings from a coarse grid over [0, 2 pi)^4 (seeded with the
/// standard settings) refined by coordinate descent with step halving.
/// Deterministic: grid ties resolve to the lexicographically smallest
/// settings and refinements accept strict improvements only.
ChshResult max_chsh(const CorrelationFn& correlation, int coarse_grid_steps = 32,
                    int refine_iterations = 50);

/// max_chsh over the singlet response at delta_L, minus 2 sqrt(2).
/// Positive values violate the Tsirelson bound.
double tsirelson_margin(double delta_L, int coarse_grid_steps = 32,
                        int refine_iterations = 50);

/// Correlation in the two detector angles from a half-period theta profile.
CorrelationFn from_theta_profile(std::function<double(double)> half_profile);

/// Exact singlet quantum correlation as a settings function.
CorrelationFn quantum_singlet_correlation();

}  // namespace waybell::bell
