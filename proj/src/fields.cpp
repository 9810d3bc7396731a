#include "gascert/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gascert {

namespace {

Mat2 swirl_matrix(double epsilon) {
    // A = (eps 1; -1 eps); u0 = g(r) A x
    return Mat2{{{epsilon, 1.0}, {-1.0, epsilon}}};
}

}  // namespace

double VortexData::Pi(double r) const {
    const double C = *params.isentropic_const;
    const double r2 = r * r;
    const double r4 = r2 * r2;
    const double r6 = r4 * r2;
    return (b * b * (r2 / 2.0 - r4 / 2.0 + r6 / 6.0) -
            params.l * b * (r2 / 2.0 - r4 / 4.0)) /
           (2.0 * std::sqrt(C));
}

double VortexData::dPi(double r) const {
    const double C = *params.isentropic_const;
    const double gr = g(r);
    return r * gr * (gr - params.l) / (2.0 * std::sqrt(C));
}

double VortexData::rho0(double r) const {
    if (mode == VortexMode::pressureless) return 1.0;
    if (r >= 1.0) return params.rho_bar;
    return (Pi_bar + Pi(r)) / std::sqrt(*params.isentropic_const);
}

double VortexData::p0(double r) const {
    if (mode == VortexMode::pressureless) return 0.0;
    if (r >= 1.0) return params.p_bar;
    const double head = Pi_bar + Pi(r);
    return head * head;  // gamma = 2: p = C rho^2 = (Pi_bar + Pi)^2
}

VortexData make_isentropic_vortex(double b, double epsilon, double l, double C,
                                  double Pi_bar) {
    if (!(C > 0.0)) throw std::invalid_argument("vortex: isentropic constant C must be > 0");
    if (!(l >= 0.0)) throw std::invalid_argument("vortex: l must be >= 0");
    if (!std::isfinite(b) || !std::isfinite(epsilon) || !std::isfinite(Pi_bar))
        throw std::invalid_argument("vortex: parameters must be finite");

    VortexData v;
    v.b = b;
    v.epsilon = epsilon;
    v.mode = VortexMode::isentropic;
    v.Pi_bar = Pi_bar;
    v.params.gamma = 2.0;
    v.params.l = l;
    v.params.isentropic_const = C;
    v.params.R = 1.0;

    // Background is the rest state matched across r = 1.
    const double head_edge = Pi_bar + v.Pi(1.0);
    v.params.rho_bar = head_edge / std::sqrt(C);
    v.params.p_bar = head_edge * head_edge;

    // Density must stay strictly positive on the disk.
    double min_head = head_edge;
    const int samples = 10000;
    for (int i = 0; i <= samples; ++i) {
        const double r = static_cast<double>(i) / samples;
        min_head = std::min(min_head, Pi_bar + v.Pi(r));
    }
    if (!(min_head > 0.0))
        throw std::invalid_argument("vortex: density not strictly positive on the disk");

    v.params.sigma = std::sqrt(v.params.gamma * v.params.p_bar / v.params.rho_bar);
    v.params.validate();
    return v;
}

VortexData make_pressureless_vortex(double b, double epsilon, double l, double gamma) {
    if (!(l >= 0.0)) throw std::invalid_argument("vortex: l must be >= 0");
    if (!(gamma > 1.0)) throw std::invalid_argument("vortex: gamma must be > 1");
    if (!std::isfinite(b) || !std::isfinite(epsilon))
        throw std::invalid_argument("vortex: parameters must be finite");

    VortexData v;
    v.b = b;
    v.epsilon = epsilon;
    v.mode = VortexMode::pressureless;
    v.params.gamma = gamma;
    v.params.l = l;
    v.params.rho_bar = 1.0;
    v.params.p_bar = 0.0;
    v.params.isentropic_const = 0.0;
    v.params.R = 1.0;
    v.params.sigma = 0.0;
    v.params.validate();
    return v;
}

FieldState evaluate_vortex(const VortexData& v, Vec2 x) {
    FieldState s;
    const double r2 = x.norm2();
    if (r2 > 1.0) {
        s.rho = v.params.rho_bar;
        s.p = v.params.p_bar;
        return s;
    }
    const double r = std::sqrt(r2);
    const double gr = v.g(r);
    const Mat2 A = swirl_matrix(v.epsilon);
    const Vec2 Ax = A * x;
    s.u = gr * Ax;
    // grad u = (g'(r)/r) (A x) x^T + g(r) A, and g'(r)/r = -2 b exactly for
    // g = b (1 - r^2). At r = 1 this is the inside-limit value (the family is
    // Lipschitz but not C^1 across the support boundary).
    for (int i = 0; i < 2; ++i) {
        const double Axi = (i == 0) ? Ax.x : Ax.y;
        s.grad_u.m[i][0] = -2.0 * v.b * Axi * x.x + gr * A.m[i][0];
        s.grad_u.m[i][1] = -2.0 * v.b * Axi * x.y + gr * A.m[i][1];
    }
    s.rho = v.rho0(r);
    s.p = v.p0(r);
    return s;
}

double steady_residual(const VortexData& v, PolarGridSpec grid) {
    if (v.mode != VortexMode::isentropic)
        throw std::invalid_argument("steady_residual: isentropic mode required");
    if (grid.n_r < 1 || grid.n_theta < 1)
        throw std::invalid_argument("steady_residual: grid must be nonempty");

    const double l = v.params.l;
    double worst = 0.0;
    for (int i = 0; i < grid.n_r; ++i) {
        const double r = (i + 0.5) / grid.n_r;
        // grad p = gamma (Pi_bar + Pi)^(gamma-1) Pi'(r) e_r, gamma = 2 here
        const double gp = 2.0 * (v.Pi_bar + v.Pi(r)) * v.dPi(r);
        for (int j = 0; j < grid.n_theta; ++j) {
            const double th = 2.0 * M_PI * j / grid.n_theta;
            const Vec2 x{r * std::cos(th), r * std::sin(th)};
            const FieldState s = evaluate_vortex(v, x);
            const Vec2 conv = s.grad_u * s.u;       // (u . grad) u
            const Vec2 cor = l * (rotation_L * s.u);
            const Vec2 gradp = (gp / r) * x;
            const Vec2 res = s.rho * (conv + cor) + gradp;
            worst = std::max(worst, res.norm());
        }
    }
    return worst;
}

void GriddedData::validate() const {
    if (n < 16) throw std::invalid_argument("grid: n must be >= 16");
    if (!(half_width >= params.R))
        throw std::invalid_argument("grid: half_width must cover the support radius R");
    const size_t cells = static_cast<size_t>(n) * n;
    if (u1.size() != cells || u2.size() != cells || rho.size() != cells || p.size() != cells)
        throw std::invalid_argument("grid: field arrays must have n*n entries");
    params.validate();

    const bool pressureless = is_pressureless(params);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const int k = index(i, j);
            if (!std::isfinite(u1[k]) || !std::isfinite(u2[k]) ||
                !std::isfinite(rho[k]) || !std::isfinite(p[k]))
                throw std::invalid_argument("grid: non-finite field value");
            if (!(rho[k] > 0.0)) throw std::invalid_argument("grid: rho must be > 0");
            if (pressureless ? (p[k] != 0.0) : !(p[k] > 0.0))
                throw std::invalid_argument(pressureless
                                                ? "grid: pressureless data requires p = 0"
                                                : "grid: p must be > 0");
            const Vec2 x = center(i, j);
            if (x.norm() >= params.R) {
                if (std::abs(rho[k] - params.rho_bar) > 1e-12 ||
                    std::abs(p[k] - params.p_bar) > 1e-12 ||
                    std::abs(u1[k]) > 1e-12 || std::abs(u2[k]) > 1e-12)
                    throw std::invalid_argument(
                        "grid: state must equal the background outside |x| >= R");
            }
        }
    }
}

GriddedData grid_from_analytic(const VortexData& v, int n, double half_width) {
    if (n < 16) throw std::invalid_argument("grid_from_analytic: n must be >= 16");
    if (!(half_width >= v.params.R))
        throw std::invalid_argument("grid_from_analytic: half_width must be >= R");

    GriddedData g;
    g.n = n;
    g.half_width = half_width;
    g.params = v.params;
    const size_t cells = static_cast<size_t>(n) * n;
    g.u1.resize(cells);
    g.u2.resize(cells);
    g.rho.resize(cells);
    g.p.resize(cells);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const FieldState s = evaluate_vortex(v, g.center(i, j));
            const int k = g.index(i, j);
            g.u1[k] = s.u.x;
            g.u2[k] = s.u.y;
            g.rho[k] = s.rho;
            g.p[k] = s.p;
        }
    }
    g.validate();
    return g;
}

const PhysicalParams& params_of(const InitialData& data) {
    return std::visit([](const auto& d) -> const PhysicalParams& { return d.params; },
                      data);
}

double entropy_margin(const InitialData& data) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (const auto* v = std::get_if<VortexData>(&data))
        return v->mode == VortexMode::isentropic ? 0.0 : nan;

    const auto& g = std::get<GriddedData>(data);
    if (!(g.params.p_bar > 0.0) || !(g.params.rho_bar > 0.0)) return nan;
    const double S_bar =
        std::log(g.params.p_bar) - g.params.gamma * std::log(g.params.rho_bar);
    double margin = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < g.rho.size(); ++k) {
        if (!(g.p[k] > 0.0)) return -std::numeric_limits<double>::infinity();
        const double S = std::log(g.p[k]) - g.params.gamma * std::log(g.rho[k]);
        margin = std::min(margin, S - S_bar);
    }
    return margin;
}

}  // namespace gascert
