#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gascert/envelopes.hpp"

using namespace gascert;

namespace {
constexpr double kPi = 3.14159265358979323846;

FunctionalSet example1_functionals(double epsilon) {
    return compute_functionals(make_isentropic_vortex(-4.0, epsilon, 1.0, 0.25, 1.0));
}

// Fills only the constants the envelope formulas read.
FunctionalSet manufactured(double gamma, double l, double p_bar) {
    FunctionalSet fs;
    fs.params = make_params(gamma, l, 1.0, p_bar, std::nullopt, 1.0);
    fs.m0 = 0.2;
    fs.e0 = 1.1;
    fs.Ek0 = 0.9;
    fs.G0 = 2.0;
    fs.F10 = 0.3;
    fs.F20 = -0.4;
    fs.dG0 = fs.F10 + kPi * fs.params.rho_bar * fs.params.sigma;
    fs.A0 = 2.0 * (gamma - 1.0) * fs.e0 + l * l * fs.G0 - l * fs.F20;
    fs.Gm = 0.5 * (fs.m0 + kPi);
    fs.A1 = 0.77;
    fs.entropy = EntropyStatus::holds;
    return fs;
}

// Double time integral by nested adaptive quadrature, for cross-checking the
// closed-form polynomials.
double nested_integral(const std::function<double(double)>& f, double t) {
    QuadratureSpec tight{1e-12, 24};
    auto inner = [&](double s) { return integrate(f, 0.0, s, tight); };
    return integrate(inner, 0.0, t, tight);
}

// Long double RK4 for G'' + l^2 G = source(t), G(0) = G0, G'(0) = dG0.
double rk4_moment(const FunctionalSet& fs, double source_const, double t_end) {
    const long double l2 = (long double)fs.params.l * fs.params.l;
    long double g = fs.G0, v = fs.dG0;
    const int steps = 30000;
    const long double h = (long double)t_end / steps;
    auto acc = [&](long double t, long double gg) {
        return (long double)source_const + (long double)q_source(fs.params, (double)t) -
               l2 * gg;
    };
    long double t = 0.0;
    for (int k = 0; k < steps; ++k) {
        const long double k1g = v, k1v = acc(t, g);
        const long double k2g = v + 0.5 * h * k1v, k2v = acc(t + 0.5 * h, g + 0.5 * h * k1g);
        const long double k3g = v + 0.5 * h * k2v, k3v = acc(t + 0.5 * h, g + 0.5 * h * k2g);
        const long double k4g = v + h * k3v, k4v = acc(t + h, g + h * k3g);
        g += h / 6.0L * (k1g + 2.0L * k2g + 2.0L * k3g + k4g);
        v += h / 6.0L * (k1v + 2.0L * k2v + 2.0L * k3v + k4v);
        t += h;
    }
    return (double)g;
}
}  // namespace

TEST_CASE("closed-form double integrals match nested quadrature") {
    const FunctionalSet ex1 = example1_functionals(10.0);
    const FunctionalSet m3 = manufactured(3.0, 0.8, 0.5);
    for (const FunctionalSet* fs : {&ex1, &m3}) {
        const PhysicalParams& p = fs->params;
        for (double t : {0.5, 2.0}) {
            const double Qc = Q_double_integral(p, t);
            const double Qn =
                nested_integral([&](double tau) { return q_source(p, tau); }, t);
            CHECK(std::abs(Qc - Qn) <= 1e-9 * std::max(1.0, std::abs(Qn)));

            const double Phin =
                nested_integral([&](double tau) { return phi_plus(*fs, tau); }, t);
            const double Q1n = Qn - p.l * p.l * Phin;
            const double Q1c = Q1_double_integral(*fs, t);
            CHECK(std::abs(Q1c - Q1n) <= 1e-9 * std::max(1.0, std::abs(Q1n)));
        }
    }
}

TEST_CASE("exact moment curve solves its differential equation") {
    const FunctionalSet fs = example1_functionals(10.0);

    SUBCASE("against an independent numerical integration") {
        for (double t : {0.7, 1.6, 3.0}) {
            const double got = G_exact_gamma2(fs, t);
            const double want = rk4_moment(fs, fs.A0, t);
            CHECK(std::abs(got - want) <= 1e-8 * std::max(1.0, std::abs(want)));
        }
    }

    SUBCASE("second-difference residual of G'' + l^2 G - A0 - q") {
        const long double h = 2e-3L;
        for (double t : {0.3, 1.1, 2.4, 5.0}) {
            long double s[5];
            for (int j = -2; j <= 2; ++j)
                s[j + 2] = G_exact_gamma2(fs, t + (double)(j * h));
            const long double gpp =
                (-s[0] + 16.0L * s[1] - 30.0L * s[2] + 16.0L * s[3] - s[4]) /
                (12.0L * h * h);
            const double rhs = fs.A0 + q_source(fs.params, t);
            const double resid =
                (double)(gpp + (long double)(fs.params.l * fs.params.l) * s[2]) - rhs;
            CHECK(std::abs(resid) <= 1e-7 * std::max(1.0, std::abs(rhs)));
        }
    }
}

TEST_CASE("rotation-free exact curve solves G'' = A0 + q") {
    // Same background as the rotating example but with l = 0.
    FunctionalSet fs = example1_functionals(10.0);
    fs.params = make_params(2.0, 0.0, fs.params.rho_bar, fs.params.p_bar,
                            fs.params.isentropic_const, fs.params.R);
    fs.A0 = 2.0 * fs.e0;  // l-dependent pieces drop out
    const long double h = 2e-3L;
    for (double t : {0.4, 1.3, 2.9}) {
        long double s[5];
        for (int j = -2; j <= 2; ++j)
            s[j + 2] = G_exact_gamma2_l0(fs, t + (double)(j * h));
        const long double gpp =
            (-s[0] + 16.0L * s[1] - 30.0L * s[2] + 16.0L * s[3] - s[4]) /
            (12.0L * h * h);
        const double rhs = fs.A0 + q_source(fs.params, t);
        CHECK(std::abs((double)gpp - rhs) <= 1e-7 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("pressureless exact curve solves G'' + l^2 G = A4") {
    const FunctionalSet fs =
        compute_functionals(make_pressureless_vortex(-0.05, 7.0, 1.0));
    REQUIRE(fs.A4.has_value());
    for (double t : {0.9, 2.2, 3.0}) {
        const double got = G_exact_pressureless(fs, t);
        const double want = rk4_moment(fs, *fs.A4, t);
        CHECK(std::abs(got - want) <= 1e-8 * std::max(1.0, std::abs(want)));
    }
    CHECK(G_exact_pressureless(fs, 0.0) == doctest::Approx(fs.G0).epsilon(1e-13));
}

TEST_CASE("comparison variant differs from the exact curve by a linear term") {
    const FunctionalSet fs = example1_functionals(10.0);
    const PhysicalParams& p = fs.params;
    const double slope = (1.0 - kPi) * p.sigma * p.rho_bar * p.R * p.R * p.R;
    for (double t : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        const double d = G_exact_gamma2(fs, t, true) - G_exact_gamma2(fs, t, false);
        CHECK(d / t == doctest::Approx(slope).epsilon(1e-10));
    }
    CHECK(G_exact_gamma2(fs, 0.0, true) == G_exact_gamma2(fs, 0.0, false));
}

TEST_CASE("geometric envelopes reproduce their printed forms") {
    SUBCASE("phi_minus with a constant momentum moment") {
        FunctionalSet fs;
        fs.params = make_params(2.0, 1.0, 1.0, 0.0, std::nullopt, 1.0);
        fs.m0 = 1.0;
        fs.P0 = {1.0, 0.0};
        fs.I0 = {0.0, 0.0};
        for (double t : {0.0, 0.7, 3.0})
            CHECK(phi_minus(fs, t) == doctest::Approx(1.0 / (1.0 + kPi)).epsilon(1e-14));
    }

    SUBCASE("phi_plus starts at Gm") {
        const FunctionalSet fs = example1_functionals(10.0);
        CHECK(phi_plus(fs, 0.0) == doctest::Approx(fs.Gm).epsilon(1e-12));
    }

    SUBCASE("vacuum-background quadratic") {
        FunctionalSet fs;
        fs.params = make_params(2.0, 0.0, 0.0, 0.0, std::nullopt, 1.0);
        fs.e0 = 1.0;
        fs.dG0 = 0.0;
        fs.G0 = 1.0;
        CHECK(G_polynomial_l0(fs, 2.0) == doctest::Approx(5.0).epsilon(1e-15));
    }
}

TEST_CASE("one-sided bounds select the proven side per regime") {
    SUBCASE("gamma above 2") {
        FunctionalSet fs = manufactured(3.0, 0.8, 0.5);
        for (double t : {0.0, 0.6, 1.9}) {
            const OneSidedBounds b = one_sided_bounds(fs, t);
            REQUIRE(b.upper.has_value());
            REQUIRE(b.lower.has_value());
            const double base = fs.dG0 * t + fs.G0;
            CHECK(*b.upper == doctest::Approx(Q_double_integral(fs.params, t) +
                                              0.5 * fs.A0 * t * t + base)
                                  .epsilon(1e-14));
            CHECK(*b.lower == doctest::Approx(Q1_double_integral(fs, t) +
                                              0.5 * *fs.A1 * t * t + base)
                                  .epsilon(1e-14));
            CHECK(*b.lower <= *b.upper);
        }
        fs.A1.reset();
        const OneSidedBounds b = one_sided_bounds(fs, 1.0);
        CHECK(b.upper.has_value());
        CHECK_FALSE(b.lower.has_value());
    }

    SUBCASE("gamma below 2, derived and printed pairings are mirror images") {
        FunctionalSet fs = manufactured(1.4, 0.6, 0.8);
        for (double t : {0.0, 0.8, 2.5}) {
            const OneSidedBounds derived = one_sided_bounds(fs, t, false);
            const OneSidedBounds printed = one_sided_bounds(fs, t, true);
            REQUIRE(derived.lower.has_value());
            REQUIRE(derived.upper.has_value());
            CHECK(*printed.upper == *derived.lower);
            CHECK(*printed.lower == *derived.upper);
        }
        fs.A1.reset();
        const OneSidedBounds derived = one_sided_bounds(fs, 1.0, false);
        CHECK(derived.lower.has_value());
        CHECK_FALSE(derived.upper.has_value());
        const OneSidedBounds printed = one_sided_bounds(fs, 1.0, true);
        CHECK(printed.upper.has_value());
        CHECK_FALSE(printed.lower.has_value());
    }

    CHECK_THROWS_AS(one_sided_bounds(example1_functionals(0.0), 1.0),
                    std::invalid_argument);
}

TEST_CASE("envelope factory enforces regime preconditions") {
    const FunctionalSet ex1 = example1_functionals(10.0);
    CHECK(make_envelope(EnvelopeKind::G_exact_gamma2, ex1)(0.0) ==
          doctest::Approx(ex1.G0));
    CHECK(make_envelope(EnvelopeKind::phi_plus, ex1)(0.0) ==
          doctest::Approx(ex1.Gm));

    FunctionalSet no_rotation = ex1;
    no_rotation.params = make_params(2.0, 0.0, ex1.params.rho_bar, ex1.params.p_bar,
                                     ex1.params.isentropic_const, ex1.params.R);
    CHECK_THROWS_AS(make_envelope(EnvelopeKind::G_exact_gamma2, no_rotation),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_envelope(EnvelopeKind::f_plus, ex1), std::invalid_argument);

    FunctionalSet g3 = manufactured(3.0, 0.8, 0.5);
    CHECK_NOTHROW(make_envelope(EnvelopeKind::f_plus, g3));
    CHECK_NOTHROW(make_envelope(EnvelopeKind::f_minus, g3));
    CHECK_THROWS_AS(make_envelope(EnvelopeKind::g_plus, g3), std::invalid_argument);
    g3.A1.reset();
    CHECK_THROWS_AS(make_envelope(EnvelopeKind::f_minus, g3), std::invalid_argument);
    CHECK_NOTHROW(make_envelope(EnvelopeKind::f_plus, g3));
}

TEST_CASE("entropy condition check and pressure excess bound") {
    const VortexData v = make_isentropic_vortex(-4.0, 10.0, 1.0, 0.25, 1.0);
    CHECK(check_entropy_condition(v));
    CHECK_THROWS_AS(check_entropy_condition(make_pressureless_vortex(-0.05, 0.0, 1.0)),
                    std::invalid_argument);

    GriddedData g = grid_from_analytic(v, 64, 1.2);
    for (double& pv : g.p) pv *= 0.9;
    CHECK_FALSE(check_entropy_condition(g));

    const FunctionalSet fs = compute_functionals(v);
    CHECK(pressure_excess_lower_bound(fs) ==
          doctest::Approx(fs.params.sigma * fs.params.sigma * fs.m0).epsilon(1e-15));
}
