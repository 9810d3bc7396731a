#pragma once

#include <optional>
#include <vector>

#include "gascert/fields.hpp"

namespace gascert {

/// Pointwise blowup criterion for pressureless flow with rotation:
///   crit(M) = (tr M)^2 - 4 det M - 2 l rot - l^2,
/// where M = grad u0 and rot = M[1][0] - M[0][1] (= d_x u2 - d_y u1).
/// The solution launched from u0 stays classical for all time if and only if
/// crit < 0 everywhere; crit > 0 anywhere forces finite-time gradient blowup.
double criterion_pointwise(const Mat2& grad_u, double l);

enum class CriterionVerdict { smooth, blowup, marginal };

/// Pointwise criterion evaluated over a cell-centered grid.
struct CriterionField {
    int n = 0;
    double half_width = 0.0;
    std::vector<double> values;  // row-major, index j * n + i
    double max_value = 0.0;
    Vec2 max_location;
    CriterionVerdict verdict = CriterionVerdict::marginal;
    double tol = 0.0;
};

/// Scans the criterion over [-R, R]^2 on an n x n cell-centered grid.
/// Verdict: blowup if max > tol, smooth if max < -tol, marginal otherwise.
/// Vortex data uses exact gradients; gridded data is scanned on its own grid
/// (n is ignored) with central-difference gradients.
CriterionField scan_criterion(const InitialData& data, int n, double tol = 1e-8);

enum class RiccatiVerdict { smooth, blowup, inconclusive };

struct RiccatiResult {
    RiccatiVerdict verdict = RiccatiVerdict::inconclusive;
    std::optional<double> blowup_time;  // fitted singularity time, blowup only
    double fit_residual = 0.0;          // relative residual of the 1/(T - t) fit
    double max_norm = 0.0;              // largest Frobenius norm reached
    int steps = 0;
};

/// Integrates the gradient flow M' = -M^2 - l L M along a particle path with
/// an adaptive embedded Runge-Kutta pair. Declares blowup when the Frobenius
/// norm exceeds blowup_threshold, then keeps integrating into the spike and
/// fits the singularity time from the tail (1/norm is asymptotically linear
/// in t near the blowup). Declares smooth if t_max is reached; inconclusive
/// if the step size underflows below the threshold.
RiccatiResult riccati_oracle(const Mat2& M0, double l, double t_max,
                             double blowup_threshold = 1e8);

enum class SweepParameter { epsilon, b };

enum class ThresholdPredicate {
    criterion_smooth,    // grid scan verdict == smooth
    certificate_issued,  // an integral quick test fires (amplitude or A3)
};

struct ThresholdResult {
    double value = 0.0;
    int probes = 0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
};

/// Bisects the swept parameter of the vortex family to locate where the
/// predicate changes state, to absolute tolerance tol on the parameter.
/// The predicate must differ at the two bracket ends (throws otherwise).
/// scan_n sets the grid for criterion_smooth probes.
ThresholdResult bisect_threshold(SweepParameter sweep, const VortexData& fixed,
                                 ThresholdPredicate predicate, double lo, double hi,
                                 double tol = 1e-3, int scan_n = 512);

}  // namespace gascert
