#include "waybell/bell.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace waybell::bell {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Classification classify(double s_value) {
  if (s_value <= kClassicalBound + kClassificationSlack) {
    return Classification::classical;
  }
  if (s_value <= kTsirelsonBound + kClassificationSlack) {
    return Classification::quantum;
  }
  return Classification::supra_quantum;
}

std::array<double, 4> angles_of(const ChshSettings& s) {
  return {s.a, s.a_prime, s.b, s.b_prime};
}

ChshSettings settings_of(const std::array<double, 4>& angles) {
  return {angles[0], angles[1], angles[2], angles[3]};
}

double wrap(double angle) {
  double wrapped = std::fmod(angle, kTwoPi);
  if (wrapped < 0.0) {
    wrapped += kTwoPi;
  }
  return wrapped;
}

double s_at(const CorrelationFn& correlation, const std::array<double, 4>& x) {
  return std::abs(correlation(x[0], x[2]) - correlation(x[0], x[3]) +
                  correlation(x[1], x[2]) + correlation(x[1], x[3]));
}

}  // namespace

ChshSettings ChshSettings::standard() { return {0.0, kPi / 2.0, kPi / 4.0, 3.0 * kPi / 4.0}; }

ChshResult chsh_s(const CorrelationFn& correlation, const ChshSettings& settings) {
  ChshResult result;
  result.settings = settings;
  result.per_term = {correlation(settings.a, settings.b),
                     correlation(settings.a, settings.b_prime),
                     correlation(settings.a_prime, settings.b),
                     correlation(settings.a_prime, settings.b_prime)};
  result.s_value = std::abs(result.per_term[0] - result.per_term[1] + result.per_term[2] +
                            result.per_term[3]);
  result.classification = classify(result.s_value);
  return result;
}

ChshResult max_chsh(const CorrelationFn& correlation, int coarse_grid_steps,
                    int refine_iterations) {
  if (coarse_grid_steps < 8) {
    throw std::invalid_argument("max_chsh: need at least 8 grid steps per angle");
  }
  if (refine_iterations < 0) {
    throw std::invalid_argument("max_chsh: refine_iterations must be nonnegative");
  }

  const double cell = kTwoPi / coarse_grid_steps;
  std::array<double, 4> best{};
  double best_value = -1.0;

  // Lexicographic scan order makes the first strict maximum the
  // lexicographically smallest argmax.
  std::array<double, 4> x{};
  for (int ia = 0; ia < coarse_grid_steps; ++ia) {
    x[0] = ia * cell;
    for (int ib = 0; ib < coarse_grid_steps; ++ib) {
      x[1] = ib * cell;
      for (int ic = 0; ic < coarse_grid_steps; ++ic) {
        x[2] = ic * cell;
        for (int id = 0; id < coarse_grid_steps; ++id) {
          x[3] = id * cell;
          const double value = s_at(correlation, x);
          if (value > best_value) {
            best_value = value;
            best = x;
          }
        }
      }
    }
  }

  // The returned optimum must never fall below the standard settings, even
  // on grids that miss them.
  const std::array<double, 4> standard = angles_of(ChshSettings::standard());
  const double standard_value = s_at(correlation, standard);
  if (standard_value > best_value) {
    best_value = standard_value;
    best = standard;
  }

  double step = cell / 2.0;
  for (int iteration = 0; iteration < refine_iterations; ++iteration) {
    bool improved = false;
    for (int coord = 0; coord < 4; ++coord) {
      for (double direction : {step, -step}) {
        std::array<double, 4> candidate = best;
        candidate[coord] = wrap(candidate[coord] + direction);
        const double value = s_at(correlation, candidate);
        if (value > best_value) {
          best_value = value;
          best = candidate;
          improved = true;
        }
      }
    }
    if (!improved) {
      step /= 2.0;
    }
  }

  return chsh_s(correlation, settings_of(best));
}

double tsirelson_margin(double delta_L, int coarse_grid_steps, int refine_iterations) {
  if (!(delta_L >= lhv::kPhysicalDeltaLFloor)) {
    throw std::invalid_argument("tsirelson_margin: delta_L below the physical floor 0.5");
  }
  const ChshResult best = max_chsh(from_theta_profile(lhv::way_singlet_profile(delta_L)),
                                   coarse_grid_steps, refine_iterations);
  return best.s_value - kTsirelsonBound;
}

CorrelationFn from_theta_profile(std::function<double(double)> half_profile) {
  return [profile = std::move(half_profile)](double alpha, double beta) {
    const quantum::MeasurementAngles angles{alpha, beta};
    return lhv::extend_symmetry(profile, angles.theta());
  };
}

CorrelationFn quantum_singlet_correlation() {
  return [](double alpha, double beta) {
    return quantum::qm_correlation(quantum::StateKind::singlet, alpha, beta);
  };
}

}  // namespace waybell::bell
