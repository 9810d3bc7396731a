#include "gascert/quadrature.hpp"

#include <array>
#include <cmath>
#include <string>

namespace gascert {

namespace {

constexpr int kPanelPoints = 32;

struct GaussTable {
    std::array<double, kPanelPoints> node;
    std::array<double, kPanelPoints> weight;
};

/// Nodes and weights of kPanelPoints-point Gauss-Legendre quadrature on
/// [-1, 1], computed once by Newton iteration on the Legendre polynomial.
GaussTable build_gauss_table() {
    GaussTable tab{};
    const int n = kPanelPoints;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (int k = 0; k < n; ++k) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * k + 1.0) * x * p2 - k * p3) / (k + 1.0);
            }
            dp = n * (x * p1 - p2) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        tab.node[i] = -x;
        tab.node[n - 1 - i] = x;
        tab.weight[i] = w;
        tab.weight[n - 1 - i] = w;
    }
    return tab;
}

const GaussTable& gauss_table() {
    static const GaussTable tab = build_gauss_table();
    return tab;
}

double panel(const std::function<double(double)>& f, double a, double b) {
    const GaussTable& tab = gauss_table();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < kPanelPoints; ++i)
        sum += tab.weight[i] * f(mid + half * tab.node[i]);
    return half * sum;
}

double adapt(const std::function<double(double)>& f, double a, double b, double whole,
             const QuadratureSpec& spec, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = panel(f, a, mid);
    const double right = panel(f, mid, b);
    const double combined = left + right;
    const double err = std::abs(combined - whole);
    if (err <= spec.rel_tol * std::abs(combined) + 1e-300) return combined;
    if (depth >= spec.max_depth)
        throw QuadratureError("quadrature did not converge: panel error " +
                              std::to_string(err) + " at depth " + std::to_string(depth));
    return adapt(f, a, mid, left, spec, depth + 1) +
           adapt(f, mid, b, right, spec, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 QuadratureSpec spec) {
    if (!(spec.rel_tol >= 1e-14 && spec.rel_tol <= 1e-4))
        throw std::invalid_argument("quadrature tolerance must lie in [1e-14, 1e-4]");
    if (a == b) return 0.0;
    return adapt(f, a, b, panel(f, a, b), spec, 0);
}

}  // namespace gascert
