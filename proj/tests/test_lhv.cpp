#include <doctest.h>

#include <cmath>
#include <numbers>

#include "waybell/lhv.hpp"

using namespace waybell::lhv;
using waybell::quantum::StateKind;

namespace {

constexpr double kPi = std::numbers::pi;

WayParams singlet_params(double delta_L) {
  return {delta_L, StateKind::singlet, BandConvention::boundary_band};
}

WayParams triplet_params(double delta_L_xi, StateKind kind = StateKind::triplet_psi_plus) {
  return {delta_L_xi, kind, BandConvention::boundary_band};
}

}  // namespace

TEST_CASE("base_correlation: piecewise-linear anchors") {
  CHECK(base_correlation(0.0) == -1.0);
  CHECK(base_correlation(kPi / 2.0) == 0.0);
  CHECK(base_correlation(3.0 * kPi / 4.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(base_correlation(kPi) == 1.0);
  CHECK_THROWS_AS(base_correlation(-0.1), std::domain_error);
  CHECK_THROWS_AS(base_correlation(kPi + 0.1), std::domain_error);
}

TEST_CASE("extend_symmetry: second half-period flips sign") {
  const auto base = base_profile();
  CHECK(extend_symmetry(base, 3.0 * kPi / 2.0) == 0.0);
  CHECK(extend_symmetry(base, 2.0 * kPi) == -1.0);
  CHECK(extend_symmetry(base, kPi) == 1.0);
  // Continuity at the seam.
  const double eps = 1e-9;
  CHECK(std::abs(extend_symmetry(base, kPi + eps) - extend_symmetry(base, kPi - eps)) <= 1e-8);
  CHECK_THROWS_AS(extend_symmetry(base, -eps), std::domain_error);
  CHECK_THROWS_AS(extend_symmetry(base, 2.0 * kPi + 0.1), std::domain_error);
}

TEST_CASE("exclusion_halfwidth: band widths") {
  CHECK(exclusion_halfwidth(0.0, singlet_params(0.77)) == 0.0);
  CHECK(exclusion_halfwidth(kPi, singlet_params(0.77)) == 0.0);
  CHECK(exclusion_halfwidth(kPi / 2.0, singlet_params(0.5)) == 1.0);
  CHECK(exclusion_halfwidth(kPi / 2.0, triplet_params(1.0)) ==
        doctest::Approx(0.4330127018922193).epsilon(1e-14));

  // Stays below pi/2 whenever the parameters are physical.
  for (double delta_L : {0.5, 0.77, 1.0, 10.0}) {
    for (int i = 0; i <= 100; ++i) {
      const double theta = i * kPi / 100;
      CHECK(exclusion_halfwidth(theta, singlet_params(delta_L)) < kPi / 2.0);
      CHECK(exclusion_halfwidth(theta, triplet_params(delta_L)) < kPi / 2.0);
    }
  }
  CHECK_THROWS_AS(exclusion_halfwidth(0.3, singlet_params(0.2)), std::invalid_argument);
  CHECK_THROWS_AS(exclusion_halfwidth(0.3, triplet_params(0.0)), std::invalid_argument);
  WayParams bad{0.5, StateKind::custom, BandConvention::boundary_band};
  CHECK_THROWS_AS(exclusion_halfwidth(0.3, bad), std::invalid_argument);
}

TEST_CASE("band_correlation: generic band response") {
  // b = 0 reduces to the base model, bit for bit.
  for (int i = 0; i <= 64; ++i) {
    const double theta = i * kPi / 64;
    CHECK(band_correlation(theta, 0.0) == base_correlation(theta));
  }
  CHECK(band_correlation(kPi / 4.0, 0.0) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(band_correlation(kPi / 2.0, 0.7) == 0.0);
  CHECK(band_correlation(0.0, 0.3) == doctest::Approx(-kPi / (kPi - 0.6)).epsilon(1e-13));
  CHECK(std::abs(band_correlation(0.0, 0.3)) > 1.0);  // unphysical values are allowed here
  CHECK_THROWS_AS(band_correlation(0.3, kPi / 2.0), std::domain_error);
  CHECK_THROWS_AS(band_correlation(0.3, -0.1), std::domain_error);
}

TEST_CASE("way_correlation_singlet: examples and exact anchors") {
  CHECK(way_correlation_singlet(kPi / 8.0, 0.77) ==
        doctest::Approx(-0.8909451093613208).epsilon(1e-12));
  for (double delta_L : {0.5, 0.77, 10.0}) {
    CHECK(way_correlation_singlet(0.0, delta_L) == -1.0);
    CHECK(way_correlation_singlet(kPi / 2.0, delta_L) == 0.0);
    CHECK(way_correlation_singlet(kPi, delta_L) == 1.0);
  }
  CHECK_THROWS_AS(way_correlation_singlet(-0.1, 0.77), std::domain_error);
  CHECK_THROWS_AS(way_correlation_singlet(0.3, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(way_correlation_singlet(0.3, 1.0 / kPi), std::invalid_argument);
}

TEST_CASE("way_correlation_triplet: examples and branch signs") {
  CHECK(way_correlation_triplet(0.0, 1.0, StateKind::triplet_psi_plus) == -1.0);
  CHECK(way_correlation_triplet(0.0, 1.0, StateKind::triplet_phi_minus) == 1.0);
  CHECK(way_correlation_triplet(kPi / 2.0, 1.0, StateKind::triplet_psi_plus) == 0.0);
  CHECK(way_correlation_triplet(kPi / 2.0, 2.7, StateKind::triplet_phi_minus) == 0.0);
  CHECK(way_correlation_triplet(kPi / 4.0, 1.0, StateKind::triplet_psi_plus) ==
        doctest::Approx(-0.6210595327688978).epsilon(1e-12));
  CHECK_THROWS_AS(way_correlation_triplet(0.3, 1.0, StateKind::singlet), std::invalid_argument);
  CHECK_THROWS_AS(way_correlation_triplet(0.3, 0.0, StateKind::triplet_psi_plus),
                  std::invalid_argument);
}

TEST_CASE("closed forms: band consistency") {
  const double thetas_step = kPi / 257;
  for (double delta_L : {0.5, 0.77, 1.0, 2.0, 10.0}) {
    for (int i = 0; i <= 257; ++i) {
      const double theta = std::min(i * thetas_step, kPi);
      const double via_band =
          band_correlation(theta, exclusion_halfwidth(theta, singlet_params(delta_L)));
      CHECK(std::abs(way_correlation_singlet(theta, delta_L) - via_band) <= 1e-12);

      const double via_triplet_band =
          band_correlation(theta, exclusion_halfwidth(theta, triplet_params(delta_L)));
      CHECK(std::abs(way_correlation_triplet(theta, delta_L, StateKind::triplet_psi_plus) -
                     via_triplet_band) <= 1e-12);
      CHECK(std::abs(way_correlation_triplet(theta, delta_L, StateKind::triplet_phi_minus) +
                     via_triplet_band) <= 1e-12);
    }
  }
}

TEST_CASE("way model: physical floor bounds the response") {
  double sup_at_half = 0.0;
  double sup_below = 0.0;
  double sup_triplet = 0.0;
  for (int i = 0; i <= 200000; ++i) {
    const double theta = std::min(i * kPi / 200000, kPi);
    sup_at_half = std::max(sup_at_half, std::abs(way_correlation_singlet(theta, 0.5)));
    sup_below = std::max(sup_below, std::abs(way_correlation_singlet(theta, 0.45)));
    sup_triplet = std::max(
        sup_triplet, std::abs(way_correlation_triplet(theta, 0.5, StateKind::triplet_psi_plus)));
  }
  CHECK(sup_at_half <= 1.0 + 1e-12);
  CHECK(sup_below > 1.0);
  CHECK(sup_below == doctest::Approx(1.0315246559983644).epsilon(1e-6));
  CHECK(sup_triplet <= 1.0 + 1e-12);
}

TEST_CASE("way model: classical limit") {
  const auto sup_gap = [](double delta_L) {
    double sup = 0.0;
    for (int i = 0; i <= 20000; ++i) {
      const double theta = std::min(i * kPi / 20000, kPi);
      sup = std::max(sup,
                     std::abs(way_correlation_singlet(theta, delta_L) - base_correlation(theta)));
    }
    return sup;
  };
  CHECK(sup_gap(2.0) <= 1.0 / 2.0);
  CHECK(sup_gap(10.0) <= 1.0 / 10.0);
  const double gap10 = sup_gap(10.0);
  const double gap100 = sup_gap(100.0);
  const double gap1000 = sup_gap(1000.0);
  CHECK(gap100 < gap10);
  CHECK(gap1000 < gap100);
}

TEST_CASE("way model: nondecreasing in theta for physical delta_L") {
  for (double delta_L : {0.5, 0.77, 1.0}) {
    double previous = way_correlation_singlet(0.0, delta_L);
    for (int i = 1; i < 10000; ++i) {
      const double theta = std::min(i * kPi / 9999, kPi);
      const double value = way_correlation_singlet(theta, delta_L);
      CHECK(value - previous >= -1e-12);
      previous = value;
    }
  }
}

TEST_CASE("way_bound: squared-deviation floor") {
  CHECK(way_bound(0.0, 0.77) == 0.0);
  CHECK(way_bound(kPi / 2.0, 0.5) == 1.0);
  CHECK(way_bound(kPi / 4.0, 1.0) == doctest::Approx(0.125).epsilon(1e-14));
  CHECK_THROWS_AS(way_bound(0.3, 0.0), std::invalid_argument);

  // Consistent with the exclusion half-width: b^2 = bound.
  for (int i = 0; i <= 100; ++i) {
    const double theta = i * kPi / 100;
    const double b = exclusion_halfwidth(theta, singlet_params(0.77));
    CHECK(std::abs(b * b - way_bound(theta, 0.77)) <= 1e-12);
  }
}

TEST_CASE("single_spin_required_deltaL: exact per-angle dispersion") {
  CHECK(single_spin_required_deltaL(kPi / 4.0) ==
        doctest::Approx(0.7684680442623437).epsilon(1e-12));

  // Limits at the removable singularities, checked against a numeric-limit
  // oracle evaluated on a shrinking two-sided stencil.
  const auto raw = [](double a) {
    return std::sin(a) * std::cos(a) / (kPi * std::cos(a) - kPi + 2.0 * a);
  };
  for (double h : {1e-4, 1e-5}) {
    CHECK(std::abs(raw(h) - 0.5) <= 1e-3);
    CHECK(std::abs(raw(kPi / 2.0 + h) - 1.0 / (kPi - 2.0)) <= 1e-3);
  }
  CHECK(single_spin_required_deltaL(0.0) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(single_spin_required_deltaL(kPi / 2.0) ==
        doctest::Approx(1.0 / (kPi - 2.0)).epsilon(1e-6));
  CHECK(single_spin_required_deltaL(kPi) == doctest::Approx(0.5).epsilon(1e-6));

  // Plugging the solved dispersion back into the band response recovers the
  // quantum single-spin expectation.
  for (int i = 1; i <= 100; ++i) {
    const double alpha = i * kPi / 101;
    const double delta_L = single_spin_required_deltaL(alpha);
    const double b = std::sin(alpha) / (2.0 * delta_L);
    CHECK(std::abs(band_correlation(alpha, b) + std::cos(alpha)) <= 1e-10);
  }
  CHECK_THROWS_AS(single_spin_required_deltaL(-0.5), std::domain_error);
}

TEST_CASE("sample_curve: full-period table invariants") {
  const ResponseCurve curve =
      sample_curve("way_singlet", way_singlet_profile(0.77), 257, singlet_params(0.77));
  REQUIRE(curve.thetas.size() == 257);
  REQUIRE(curve.values.size() == 257);
  CHECK(curve.thetas.front() == 0.0);
  CHECK(curve.thetas.back() == 2.0 * kPi);
  for (std::size_t i = 1; i < curve.thetas.size(); ++i) {
    CHECK(curve.thetas[i] > curve.thetas[i - 1]);
  }
  for (double value : curve.values) {
    CHECK(std::abs(value) <= 1.0 + 1e-12);
  }
  CHECK_THROWS_AS(sample_curve("x", base_profile(), 1), std::invalid_argument);

  // Unphysical dispersions may exceed |E| = 1 and still sample fine.
  const ResponseCurve loose =
      sample_curve("way_singlet", way_singlet_profile(0.45), 257, singlet_params(0.45));
  double sup = 0.0;
  for (double value : loose.values) {
    sup = std::max(sup, std::abs(value));
  }
  CHECK(sup > 1.0);
}

TEST_CASE("WayParams: validation and the physical flag") {
  CHECK_NOTHROW(singlet_params(0.33).validate());
  CHECK(!singlet_params(0.45).physical());
  CHECK(singlet_params(0.5).physical());
  CHECK_THROWS_AS(singlet_params(0.25).validate(), std::invalid_argument);
  CHECK_THROWS_AS(singlet_params(std::nan("")).validate(), std::invalid_argument);
}
