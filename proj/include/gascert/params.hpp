#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

namespace gascert {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    double norm() const { return std::hypot(x, y); }
    double norm2() const { return x * x + y * y; }
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

/// 2x2 matrix; when holding a velocity gradient, m[i][j] = d u_i / d x_j.
struct Mat2 {
    double m[2][2] = {{0.0, 0.0}, {0.0, 0.0}};

    double trace() const { return m[0][0] + m[1][1]; }
    double det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
    double frobenius() const {
        return std::sqrt(m[0][0] * m[0][0] + m[0][1] * m[0][1] +
                         m[1][0] * m[1][0] + m[1][1] * m[1][1]);
    }
};

inline Vec2 operator*(const Mat2& a, Vec2 v) {
    return {a.m[0][0] * v.x + a.m[0][1] * v.y, a.m[1][0] * v.x + a.m[1][1] * v.y};
}

inline Mat2 operator*(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j];
    return r;
}

inline Mat2 operator+(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r.m[i][j] = a.m[i][j] + b.m[i][j];
    return r;
}

inline Mat2 operator*(double s, const Mat2& a) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r.m[i][j] = s * a.m[i][j];
    return r;
}

/// Fixed 90-degree rotation matrix appearing in the Coriolis term rho*l*L*u.
inline constexpr Mat2 rotation_L{{{0.0, -1.0}, {1.0, 0.0}}};

/// Background state and global constants of the flow.
///
/// Invariants: gamma > 1, l >= 0, R > 0, rho_bar >= 0 (strictly positive for
/// any data-backed configuration; zero is allowed only for the synthetic
/// vacuum-background regime used by the l = 0 polynomial analysis).
/// sigma^2 = gamma * p_bar / rho_bar, the squared sound speed at the
/// background state; the perturbation support is B_R(t) = {|x| < R + sigma t}.
/// The pressureless case is marked by isentropic_const = 0, which forces
/// p_bar = 0 and sigma = 0.
struct PhysicalParams {
    double gamma = 2.0;
    double l = 0.0;
    double rho_bar = 1.0;
    double p_bar = 0.0;
    std::optional<double> isentropic_const;
    double R = 1.0;
    double sigma = 0.0;

    void validate() const {
        if (!(gamma > 1.0)) throw std::invalid_argument("params: gamma must be > 1");
        if (!(l >= 0.0)) throw std::invalid_argument("params: l must be >= 0");
        if (!(rho_bar >= 0.0)) throw std::invalid_argument("params: rho_bar must be >= 0");
        if (!(p_bar >= 0.0)) throw std::invalid_argument("params: p_bar must be >= 0");
        if (!(R > 0.0)) throw std::invalid_argument("params: R must be > 0");
        if (!std::isfinite(gamma) || !std::isfinite(l) || !std::isfinite(rho_bar) ||
            !std::isfinite(p_bar) || !std::isfinite(R) || !std::isfinite(sigma))
            throw std::invalid_argument("params: all fields must be finite");
        if (rho_bar > 0.0) {
            const double s2 = gamma * p_bar / rho_bar;
            if (std::abs(sigma * sigma - s2) > 1e-10 * std::max(1.0, s2))
                throw std::invalid_argument("params: sigma inconsistent with gamma*p_bar/rho_bar");
        } else if (p_bar != 0.0 || sigma != 0.0) {
            throw std::invalid_argument("params: vacuum background requires p_bar = sigma = 0");
        }
        if (isentropic_const) {
            const double C = *isentropic_const;
            if (C < 0.0) throw std::invalid_argument("params: isentropic constant must be >= 0");
            if (C == 0.0) {
                if (p_bar != 0.0 || sigma != 0.0)
                    throw std::invalid_argument("params: pressureless case requires p_bar = sigma = 0");
            } else if (rho_bar > 0.0) {
                const double pc = C * std::pow(rho_bar, gamma);
                if (std::abs(p_bar - pc) > 1e-12 * std::max(1.0, std::abs(pc)))
                    throw std::invalid_argument("params: p_bar != C*rho_bar^gamma");
            }
        }
    }
};

/// Derives sigma from the background state and validates the result.
inline PhysicalParams make_params(double gamma, double l, double rho_bar, double p_bar,
                                  std::optional<double> isentropic_const, double R) {
    PhysicalParams p;
    p.gamma = gamma;
    p.l = l;
    p.rho_bar = rho_bar;
    p.p_bar = p_bar;
    p.isentropic_const = isentropic_const;
    p.R = R;
    p.sigma = (rho_bar > 0.0) ? std::sqrt(gamma * p_bar / rho_bar) : 0.0;
    p.validate();
    return p;
}

inline bool is_pressureless(const PhysicalParams& p) {
    return p.sigma == 0.0 && p.p_bar == 0.0 &&
           (!p.isentropic_const || *p.isentropic_const == 0.0);
}

}  // namespace gascert
