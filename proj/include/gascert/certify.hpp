#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gascert/envelopes.hpp"
#include "gascert/pressureless.hpp"

namespace gascert {

/// How a blowup certificate was obtained.
///   lower_crossing: G (or an upper bound for it) meets the lower envelope
///   upper_crossing: G (or a lower bound for it) meets the upper envelope
///   closed_form_amplitude: oscillation amplitude of the exact pressureless
///     G(t) reaches an envelope within one period
///   A3_growth: positive secular constant forces escape from the support
///   pointwise_criterion: exact pointwise blowup criterion is positive
enum class Mechanism {
    lower_crossing,
    upper_crossing,
    closed_form_amplitude,
    A3_growth,
    pointwise_criterion,
};

std::string to_string(Mechanism m);

enum class AmplitudeOutcome { none, lower_certified, upper_certified };

struct AcondResult {
    bool crossing_possible = false;  // necessary condition for a lower crossing
    bool acond_holds = false;        // stronger closed-form sufficient test
};

struct QuickTests {
    std::optional<AcondResult> acond;       // gamma = 2, l > 0 only
    std::optional<AmplitudeOutcome> amplitude;  // pressureless, l > 0 only
    std::optional<bool> a3_positive;        // sigma = 0 only
    std::optional<double> a3_value;
    std::optional<double> a3_sign_change_l;  // rotation rate where A3 changes sign
};

struct Certificate {
    bool certified = false;
    std::optional<Mechanism> mechanism;  // primary (earliest / strongest)
    std::vector<Mechanism> mechanisms;   // every mechanism that fired
    std::optional<double> T_star;        // certified upper bound on lifespan
    std::string regime;  // gamma_eq_2 | gamma_gt_2 | gamma_lt_2 | pressureless
    EntropyStatus entropy = EntropyStatus::not_applicable;
    FunctionalSet functionals;
    QuickTests quick_tests;
    std::optional<CriterionField> criterion;  // pressureless scans only
    std::optional<double> F1_at_T_star;       // radial moment at the crossing
    std::optional<double> kinetic_floor_at_T_star;
    std::vector<std::string> notes;
    double t_max = 0.0;  // time horizon searched
    bool paper_literal = false;
};

/// Earliest t in (0, t_max] where curve a crosses curve b, located by a scan
/// (10^4 samples) plus bisection. The returned time satisfies
/// |a(t) - b(t)| < 1e-8 and the difference changes sign across it.
std::optional<double> find_crossing(const Envelope& a, const Envelope& b,
                                    double t_max);

/// gamma = 2, l > 0 closed-form tests for a lower-envelope crossing (with
/// P = 0 data, where phi_minus = 0 and the crossing means G reaches zero):
/// crossing_possible is the necessary sign condition
///   -l^2 G0^2 + 2 F10^2 >= 0 evaluated through the minimum of the exact G;
/// acond_holds is the sufficient condition 2 G0 A0 <= F10^2 + G0^2 l^2.
AcondResult quick_test_acond(const FunctionalSet& fs);

/// Pressureless l > 0 amplitude test on the exact oscillation
/// G(t) = A4/l^2 + rho cos(l t - phase):
/// lower_certified when the minimum A4/l^2 - rho reaches 0 (A4/l^2 <= rho),
/// upper_certified when the maximum reaches Gm, else none.
AmplitudeOutcome quick_test_amplitude(const FunctionalSet& fs);

struct A3Result {
    bool positive = false;
    double value = 0.0;
    std::optional<double> sign_change_l;  // positive root where A3(l) = 0
};

/// sigma = 0 secular test: A3 > 0 forces the support to be left in finite
/// time. Also reports the rotation rate at which A3 would change sign for
/// otherwise identical data.
A3Result quick_test_A3(const FunctionalSet& fs);

/// Lower bound F1(t)^2 / (4 phi_plus(t)) on the kinetic energy, available in
/// the regimes where F1(t) has a closed form (gamma = 2 or pressureless).
std::optional<double> kinetic_energy_floor(const FunctionalSet& fs, double t);

/// Default search horizon: 1.05 rotation periods when l > 0 (one full
/// oscillation of the exact G plus slack), else 10 R / max(sigma, 1e-6)
/// (ten support-crossing times, with a floor for the static case).
double default_time_horizon(const PhysicalParams& p);

struct CertifyOptions {
    std::optional<double> t_max;  // default: default_time_horizon(params)
    int scan_n = 512;
    QuadratureSpec quad;
    bool paper_literal = false;
    double marginal_tol = 1e-8;
};

/// Decides whether the data must blow up, dispatching on the regime:
/// pressureless data gets the exact pointwise criterion plus the amplitude
/// and A3 quick tests; gamma = 2 uses the exact G(t) against both envelopes;
/// gamma != 2 uses the one-sided bounds against the opposite envelopes.
Certificate certify(const InitialData& data, const CertifyOptions& opts = {});

}  // namespace gascert
