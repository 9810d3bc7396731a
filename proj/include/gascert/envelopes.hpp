#pragma once

#include <functional>
#include <optional>
#include <string>

#include "gascert/functionals.hpp"

namespace gascert {

/// Closed-form time curves used by the certification logic.
///
/// phi_minus / phi_plus: geometric envelopes that every solution's moment of
/// inertia G(t) must stay between (phi_minus = |P|^2 / total mass,
/// phi_plus = (R + sigma t)^2 / 2 * total mass).
///
/// G_exact_gamma2: exact G(t) for gamma = 2, l > 0.
/// G_exact_pressureless: exact G(t) for sigma = 0, p = 0, l > 0.
/// G_polynomial_l0: quadratic G(t) for l = 0 vacuum-background data.
///
/// f_plus / f_minus: one-sided bounds on G for gamma > 2 (upper / lower).
/// g_plus / g_minus: one-sided bounds on G for 1 < gamma < 2 (upper / lower).
enum class EnvelopeKind {
    phi_minus,
    phi_plus,
    G_exact_gamma2,
    G_exact_pressureless,
    G_polynomial_l0,
    f_plus,
    f_minus,
    g_plus,
    g_minus,
};

std::string to_string(EnvelopeKind kind);

struct Envelope {
    EnvelopeKind kind;
    std::string description;
    std::function<double(double)> eval;

    double operator()(double t) const { return eval(t); }
};

/// Lower envelope |P(t)|^2 / (m0 + rho_bar pi (R + sigma t)^2).
double phi_minus(const FunctionalSet& fs, double t);

/// Upper envelope ((R + sigma t)^2 / 2) (m0 + rho_bar pi (R + sigma t)^2).
double phi_plus(const FunctionalSet& fs, double t);

/// Inhomogeneous source q(t) of the moment identity:
/// q = (l^2 pi rho_bar / 4) ((R + sigma t)^4 - R^4)
///   + 3 pi rho_bar sigma^2 (R + sigma t)^2.
double q_source(const PhysicalParams& p, double t);

/// Q(t) = double time integral of q from 0 to t (closed form, polynomial).
double Q_double_integral(const PhysicalParams& p, double t);

/// Q1(t) = Q(t) - l^2 * (double time integral of phi_plus).
double Q1_double_integral(const FunctionalSet& fs, double t);

/// Exact moment of inertia for gamma = 2, l > 0:
/// G(t) = (pi rho_bar / 4) ((R + sigma t)^4 - R^4) + A0 / l^2
///      + (G0 - A0 / l^2) cos(l t) + (F10 / l) sin(l t).
/// With paper_literal = true the polynomial part drops the factor pi on its
/// linear term (the variant form kept for comparison runs).
/// Rejects gamma != 2 or l = 0.
double G_exact_gamma2(const FunctionalSet& fs, double t, bool paper_literal = false);

/// Exact moment of inertia for gamma = 2, l = 0 (any sigma):
/// G(t) = G0 + dG0 t + (A0 / 2) t^2 + Q(t).
double G_exact_gamma2_l0(const FunctionalSet& fs, double t);

/// Exact moment of inertia for pressureless data, l > 0:
/// G(t) = A4 / l^2 + (G0 - A4 / l^2) cos(l t) + (F10 / l) sin(l t).
double G_exact_pressureless(const FunctionalSet& fs, double t);

/// Quadratic moment of inertia for l = 0, sigma = 0 vacuum-background data:
/// G(t) = e0 t^2 + dG0 t + G0.
double G_polynomial_l0(const FunctionalSet& fs, double t);

/// True when the data's specific entropy is everywhere at least the
/// background value (margin >= -1e-12). Requires data with pressure; throws
/// std::invalid_argument for pressureless data.
bool check_entropy_condition(const InitialData& data);

/// Lower bound sigma^2 m0 for the pressure excess integral (valid under the
/// entropy condition).
double pressure_excess_lower_bound(const FunctionalSet& fs);

struct OneSidedBounds {
    std::optional<double> lower;
    std::optional<double> upper;
};

/// One-sided bounds on G(t) for gamma != 2:
///   gamma > 2: upper = Q + (A0/2) t^2 + dG0 t + G0 (always),
///              lower = Q1 + (A1/2) t^2 + dG0 t + G0 (needs entropy, A1).
///   gamma < 2: lower = Q1 + (A0/2) t^2 + dG0 t + G0 (always),
///              upper = Q  + (A1/2) t^2 + dG0 t + G0 (needs entropy, A1).
/// paper_literal swaps the gamma < 2 pairing: lower = Q + (A1/2)t^2 + ...,
/// upper = Q1 + (A0/2)t^2 + ... (the printed variant, kept for comparison).
/// Rejects gamma = 2.
OneSidedBounds one_sided_bounds(const FunctionalSet& fs, double t,
                                bool paper_literal = false);

/// Wraps any closed-form curve as a callable Envelope. Throws if the kind's
/// preconditions are not met by fs (wrong gamma, l, sigma, or missing A1).
Envelope make_envelope(EnvelopeKind kind, const FunctionalSet& fs,
                       bool paper_literal = false);

}  // namespace gascert
