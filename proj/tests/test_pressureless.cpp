#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gascert/pressureless.hpp"

using namespace gascert;

namespace {
// Criterion of the vortex family along s = r^2, derived by eliminating the
// angle from the velocity gradient:
// crit(s) = 4 eps^2 b^2 s^2 - 4 b^2 (1 - s)(1 - 3 s) + 4 l b (1 - 2 s) - l^2.
double family_criterion(double b, double eps, double l, double s) {
    return 4.0 * eps * eps * b * b * s * s - 4.0 * b * b * (1.0 - s) * (1.0 - 3.0 * s) +
           4.0 * l * b * (1.0 - 2.0 * s) - l * l;
}
}  // namespace

TEST_CASE("rigid rotation gives criterion -(2 omega + l)^2") {
    for (double omega : {-1.5, -0.2, 0.0, 0.4, 2.0}) {
        for (double l : {0.0, 0.5, 1.0, 3.0}) {
            Mat2 grad = omega * rotation_L;
            const double want = -(2.0 * omega + l) * (2.0 * omega + l);
            CHECK(criterion_pointwise(grad, l) == doctest::Approx(want).epsilon(1e-14));
        }
    }
}

TEST_CASE("vortex gradients reproduce the radial criterion profile") {
    const double b = -0.05, eps = 7.0, l = 1.0;
    const VortexData v = make_pressureless_vortex(b, eps, l);
    for (double r : {0.1, 0.35, 0.6, 0.85, 0.99}) {
        const double want = family_criterion(b, eps, l, r * r);
        double first = 0.0;
        for (int k = 0; k < 8; ++k) {
            const double th = 0.25 * k + 0.1;
            const Vec2 x{r * std::cos(th), r * std::sin(th)};
            const double got = criterion_pointwise(evaluate_vortex(v, x).grad_u, l);
            CHECK(got == doctest::Approx(want).epsilon(1e-12));
            if (k == 0) first = got;
            // The criterion is a function of the radius alone.
            CHECK(got == doctest::Approx(first).epsilon(1e-12));
        }
    }
}

TEST_CASE("grid scans give the expected verdicts at the bisection bracket ends") {
    auto verdict_eps = [](double eps) {
        const VortexData v = make_pressureless_vortex(-0.05, eps, 1.0);
        return scan_criterion(InitialData{v}, 512).verdict;
    };
    auto verdict_b = [](double b) {
        const VortexData v = make_pressureless_vortex(b, 0.0, 1.0);
        return scan_criterion(InitialData{v}, 512).verdict;
    };
    CHECK(verdict_eps(8.944091796875) == CriterionVerdict::smooth);
    CHECK(verdict_eps(8.9447021484375) == CriterionVerdict::blowup);
    CHECK(verdict_b(-0.25) == CriterionVerdict::smooth);
    CHECK(verdict_b(-0.25078125) == CriterionVerdict::blowup);
    CHECK(verdict_b(0.4998046875) == CriterionVerdict::smooth);
    CHECK(verdict_b(0.500390625) == CriterionVerdict::blowup);

    const CriterionField f = scan_criterion(
        InitialData{make_pressureless_vortex(-0.05, 20.0, 1.0)}, 128);
    CHECK(f.verdict == CriterionVerdict::blowup);
    CHECK(f.n == 128);
    CHECK(f.values.size() == 128u * 128u);
    // The maximum of this profile sits at the support boundary r = 1.
    CHECK(f.max_location.norm() == doctest::Approx(1.0).epsilon(2e-2));
    CHECK(f.max_value <= family_criterion(-0.05, 20.0, 1.0, 1.0));

    CHECK_THROWS_AS(
        scan_criterion(InitialData{make_pressureless_vortex(-0.05, 0.0, 1.0)}, 1),
        std::invalid_argument);
}

TEST_CASE("bisection locates the smoothness and certificate thresholds") {
    const VortexData base = make_pressureless_vortex(-0.05, 0.0, 1.0);

    SUBCASE("epsilon threshold of the pointwise criterion") {
        const ThresholdResult r = bisect_threshold(
            SweepParameter::epsilon, base, ThresholdPredicate::criterion_smooth,
            0.0, 40.0);
        CHECK(r.value == doctest::Approx(8.94439697265625).epsilon(1e-12));
        CHECK(r.probes == 18);
        CHECK(r.bracket_lo == doctest::Approx(8.944091796875).epsilon(1e-12));
        CHECK(r.bracket_hi == doctest::Approx(8.9447021484375).epsilon(1e-12));
        // The analytic threshold for b = -0.05, l = 1 is sqrt(80).
        CHECK(r.bracket_lo < std::sqrt(80.0));
        CHECK(r.bracket_hi > std::sqrt(80.0));
    }

    SUBCASE("epsilon threshold of the integral certificate") {
        const ThresholdResult r = bisect_threshold(
            SweepParameter::epsilon, base, ThresholdPredicate::certificate_issued,
            0.0, 40.0);
        CHECK(r.value == doctest::Approx(18.31390380859375).epsilon(1e-12));
        CHECK(r.probes == 18);
        // Closed-form amplitude threshold for this family.
        const double exact = 18.31392891705036;
        CHECK(r.bracket_lo < exact);
        CHECK(r.bracket_hi > exact);
    }

    SUBCASE("b thresholds of the pointwise criterion at epsilon = 0") {
        const ThresholdResult lo = bisect_threshold(
            SweepParameter::b, base, ThresholdPredicate::criterion_smooth, -0.4, 0.0);
        CHECK(lo.value == doctest::Approx(-0.250390625).epsilon(1e-12));
        CHECK(lo.probes == 11);
        const ThresholdResult hi = bisect_threshold(
            SweepParameter::b, base, ThresholdPredicate::criterion_smooth, 0.0, 0.6);
        CHECK(hi.value == doctest::Approx(0.50009765625).epsilon(1e-12));
        CHECK(hi.probes == 12);
    }

    SUBCASE("rejects brackets without a state change") {
        CHECK_THROWS_AS(
            bisect_threshold(SweepParameter::epsilon, base,
                             ThresholdPredicate::criterion_smooth, 0.0, 1.0),
            std::invalid_argument);
    }
}

TEST_CASE("gradient flow integration agrees with the sign of the criterion") {
    SUBCASE("negative eigenvalues without rotation blow up at t = 1/2") {
        Mat2 M0;
        M0.m[0][0] = -1.0;
        M0.m[1][1] = -2.0;
        const RiccatiResult r = riccati_oracle(M0, 0.0, 10.0);
        REQUIRE(r.verdict == RiccatiVerdict::blowup);
        REQUIRE(r.blowup_time.has_value());
        CHECK(std::abs(*r.blowup_time - 0.5) <= 1e-5);
        CHECK(r.fit_residual <= 0.05);
    }

    SUBCASE("positive criterion with rotation blows up") {
        Mat2 M0;
        M0.m[1][1] = -2.0;
        CHECK(criterion_pointwise(M0, 1.0) == doctest::Approx(3.0));
        const RiccatiResult r = riccati_oracle(M0, 1.0, 60.0);
        CHECK(r.verdict == RiccatiVerdict::blowup);
    }

    SUBCASE("negative criterion with rotation stays bounded") {
        const Mat2 M0 = 0.5 * rotation_L;
        CHECK(criterion_pointwise(M0, 1.0) == doctest::Approx(-4.0));
        const RiccatiResult r = riccati_oracle(M0, 1.0, 50.0);
        CHECK(r.verdict == RiccatiVerdict::smooth);
        CHECK(r.max_norm < 1e2);
    }

    CHECK_THROWS_AS(riccati_oracle(Mat2{}, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("sampled gridded data reproduces the analytic scan") {
    const VortexData v = make_pressureless_vortex(-0.05, 20.0, 1.0);
    const CriterionField exact = scan_criterion(InitialData{v}, 512);
    REQUIRE(exact.verdict == CriterionVerdict::blowup);

    for (int n : {256, 512, 1024}) {
        INFO("n = " << n);
        const GriddedData g = grid_from_analytic(v, n, 1.0);
        const CriterionField approx = scan_criterion(InitialData{g}, 0);
        CHECK(approx.verdict == CriterionVerdict::blowup);
        if (n == 512) {
            CHECK(std::abs(approx.max_value - exact.max_value) <=
                  1e-2 * std::abs(exact.max_value));
        }
    }
}
