#pragma once

#include <string>
#include <variant>
#include <vector>

#include "gascert/params.hpp"

namespace gascert {

/// Pointwise state of the initial data at a position x.
struct FieldState {
    Vec2 u;
    double rho = 0.0;
    double p = 0.0;
    Mat2 grad_u;  // grad_u.m[i][j] = d u_i / d x_j
};

enum class VortexMode { isentropic, pressureless };

/// Rotational vortex family on the unit disk.
///
/// Velocity: u0(x) = g(r) A x with g(r) = b (1 - r^2) and
/// A = (eps 1; -1 eps); u0 vanishes on r = 1 and outside.
///
/// Isentropic mode (gamma = 2, p = C rho^2): the density solves the steady
/// radial balance rho0 (u0.grad u0 + l L u0) + grad p0 = 0, which integrates
/// to a pressure head Pi with Pi'(r) = r g (g - l) / (2 sqrt(C)) and
/// rho0 = (Pi_bar + Pi) / sqrt(C). The background is the rest state matched
/// at r = 1: rho_bar = (Pi_bar + Pi(1)) / sqrt(C), p_bar = C rho_bar^2.
/// Note the swirl part (eps = 0 component) is an exact steady state; the
/// eps-divergence part is the perturbation that may trigger blowup.
///
/// Pressureless mode: rho0 = 1 = rho_bar, p = 0, sigma = 0.
struct VortexData {
    double b = 0.0;
    double epsilon = 0.0;
    VortexMode mode = VortexMode::isentropic;
    double Pi_bar = 0.0;  // isentropic mode only
    PhysicalParams params;

    double g(double r) const { return b * (1.0 - r * r); }

    /// Pressure head relative to the center, isentropic mode.
    /// Pi(r) = [b^2 (r^2/2 - r^4/2 + r^6/6) - l b (r^2/2 - r^4/4)] / (2 sqrt(C)).
    double Pi(double r) const;
    /// dPi/dr = r g(r) (g(r) - l) / (2 sqrt(C)).
    double dPi(double r) const;

    double rho0(double r) const;
    double p0(double r) const;
};

/// Builds the gamma = 2 isentropic vortex. Throws std::invalid_argument if
/// the density would not stay strictly positive on the disk, or on bad
/// constants (C <= 0, l < 0).
VortexData make_isentropic_vortex(double b, double epsilon, double l, double C,
                                  double Pi_bar);

/// Builds the pressureless vortex (rho0 = 1, p = 0). gamma is retained only
/// for bookkeeping; it does not enter the dynamics.
VortexData make_pressureless_vortex(double b, double epsilon, double l,
                                    double gamma = 2.0);

/// Evaluates velocity, density, pressure, and the exact velocity gradient at
/// x. Outside the unit disk the state is the background (u = 0).
FieldState evaluate_vortex(const VortexData& v, Vec2 x);

struct PolarGridSpec {
    int n_r = 200;
    int n_theta = 64;
};

/// Max norm of the steady momentum residual rho (u.grad u + l L u) + grad p
/// over a polar sample grid strictly inside r < 1. Isentropic mode only;
/// meaningful for the pure swirl (epsilon = 0), where it measures how well
/// the constructed density balances the flow.
double steady_residual(const VortexData& v, PolarGridSpec grid = {});

/// Cell-centered square grid sampling of initial data on [-w, w]^2.
///
/// Row-major storage, index(i, j) = j * n + i, cell center at
/// (-w + (i + 1/2) h, -w + (j + 1/2) h) with h = 2 w / n.
/// Invariants checked by validate(): n >= 16, w >= params.R, rho > 0
/// everywhere, p >= 0 (strictly positive unless pressureless), and the state
/// equals the background to within 1e-12 outside |x| >= R.
struct GriddedData {
    int n = 0;
    double half_width = 0.0;
    std::vector<double> u1, u2, rho, p;
    PhysicalParams params;

    double cell_size() const { return 2.0 * half_width / n; }
    int index(int i, int j) const { return j * n + i; }
    Vec2 center(int i, int j) const {
        const double h = cell_size();
        return {-half_width + (i + 0.5) * h, -half_width + (j + 0.5) * h};
    }
    void validate() const;
};

/// Samples a vortex onto an n x n grid of half-width w (w >= R required).
GriddedData grid_from_analytic(const VortexData& v, int n, double half_width);

using InitialData = std::variant<VortexData, GriddedData>;

const PhysicalParams& params_of(const InitialData& data);

/// Minimum over the data of S(x) - S_bar where S = log(p) - gamma log(rho).
/// Zero for the isentropic vortex by construction. Returns NaN when there is
/// no pressure background to compare against (pressureless data).
double entropy_margin(const InitialData& data);

}  // namespace gascert
