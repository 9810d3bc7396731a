#pragma once

#include <optional>

#include "gascert/fields.hpp"
#include "gascert/quadrature.hpp"

namespace gascert {

enum class EntropyStatus { holds, fails, not_applicable };

/// Integral functionals of the initial data over the support B_R, together
/// with the derived constants that drive the moment-of-inertia analysis.
///
/// G0   = 1/2 integral |x|^2 rho          (moment of inertia)
/// F10  = integral rho u . x              (radial momentum moment)
/// F20  = integral rho u . x_perp         (angular momentum, x_perp = (y, -x))
/// Ek0  = 1/2 integral rho |u|^2
/// m0   = integral (rho - rho_bar)        (conserved excess mass)
/// e0   = Ek0 + 1/(gamma-1) integral (p - p_bar)   (conserved excess energy)
/// P0   = integral rho x,  I0 = integral rho u
///
/// Derived:
/// dG0  = G'(0) = F10 + pi rho_bar sigma R^3
/// A0   = 2 (gamma - 1) e0 + l^2 G0 - l F20      (source constant of the
///        moment identity G'' + l^2 G = 2 (2 - gamma) Ek + A0 + q(t))
/// Gm   = (R^2 / 2) (m0 + rho_bar pi R^2)        (upper envelope at t = 0)
/// A4   = 2 e0 + l^2 G0 - l F20                  (sigma = 0 only)
/// A3   = 2 e0 - l^2 (Gm - G0) - l F20           (sigma = 0 only)
/// A1   = A4-form + 2 (gamma - 2) / (gamma - 1) sigma^2 m0
///        (gamma != 2 and entropy condition holds, else absent)
struct FunctionalSet {
    double m0 = 0.0;
    double e0 = 0.0;
    double Ek0 = 0.0;
    double G0 = 0.0;
    double F10 = 0.0;
    double F20 = 0.0;
    Vec2 P0, I0;
    double dG0 = 0.0;
    double A0 = 0.0;
    double Gm = 0.0;
    std::optional<double> A1, A3, A4;
    EntropyStatus entropy = EntropyStatus::not_applicable;
    std::optional<double> grid_error;  // discretization indicator, gridded data only
    PhysicalParams params;
};

/// Computes all functionals. Vortex data is reduced to radial integrals and
/// evaluated with adaptive quadrature; gridded data is summed cell by cell in
/// perturbation form (integrands vanish outside the support, so no disk
/// clipping is needed) with a fourth-order difference indicator reported as
/// grid_error.
FunctionalSet compute_functionals(const InitialData& data, QuadratureSpec spec = {});

struct MomentumState {
    Vec2 P;
    Vec2 I;
};

/// Exact linear momentum I(t) and center of mass moment P(t).
/// I rotates rigidly: I' = -l L I; P integrates I in closed form.
MomentumState momentum_evolution(const FunctionalSet& fs, double t);

}  // namespace gascert
