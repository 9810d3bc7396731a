#pragma once

#include <functional>
#include <stdexcept>

namespace gascert {

struct QuadratureSpec {
    double rel_tol = 1e-10;
    int max_depth = 20;
};

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Adaptive Gauss-Legendre integration of f over [a, b].
///
/// 32-point panels refined by bisection until the panel estimate is stable to
/// spec.rel_tol (with a tiny absolute floor so identically zero integrands
/// terminate). Throws QuadratureError if max_depth is reached before the
/// tolerance is met.
double integrate(const std::function<double(double)>& f, double a, double b,
                 QuadratureSpec spec = {});

}  // namespace gascert
