#include "gascert/pressureless.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace gascert {

double criterion_pointwise(const Mat2& grad_u, double l) {
    const double tr = grad_u.trace();
    const double det = grad_u.det();
    const double rot = grad_u.m[1][0] - grad_u.m[0][1];
    return tr * tr - 4.0 * det - 2.0 * l * rot - l * l;
}

namespace {

CriterionField scan_vortex(const VortexData& v, int n, double tol) {
    CriterionField field;
    field.n = n;
    field.half_width = v.params.R;
    field.tol = tol;
    field.values.resize(static_cast<size_t>(n) * n);
    const double h = 2.0 * field.half_width / n;
    double best = -std::numeric_limits<double>::infinity();
    Vec2 best_x;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const Vec2 x{-field.half_width + (i + 0.5) * h,
                         -field.half_width + (j + 0.5) * h};
            const FieldState s = evaluate_vortex(v, x);
            const double c = criterion_pointwise(s.grad_u, v.params.l);
            field.values[static_cast<size_t>(j) * n + i] = c;
            if (c > best) {
                best = c;
                best_x = x;
            }
        }
    }
    field.max_value = best;
    field.max_location = best_x;
    return field;
}

CriterionField scan_grid(const GriddedData& g, double tol) {
    CriterionField field;
    field.n = g.n;
    field.half_width = g.half_width;
    field.tol = tol;
    field.values.resize(static_cast<size_t>(g.n) * g.n);
    const double h = g.cell_size();
    double best = -std::numeric_limits<double>::infinity();
    Vec2 best_x;
    // Central differences inside, one-sided at the edges.
    auto deriv = [&](const std::vector<double>& f, int i, int j, bool along_x) {
        const int lo_i = along_x ? std::max(i - 1, 0) : i;
        const int hi_i = along_x ? std::min(i + 1, g.n - 1) : i;
        const int lo_j = along_x ? j : std::max(j - 1, 0);
        const int hi_j = along_x ? j : std::min(j + 1, g.n - 1);
        const int span = along_x ? hi_i - lo_i : hi_j - lo_j;
        return (f[g.index(hi_i, hi_j)] - f[g.index(lo_i, lo_j)]) / (span * h);
    };
    for (int j = 0; j < g.n; ++j) {
        for (int i = 0; i < g.n; ++i) {
            Mat2 M;
            M.m[0][0] = deriv(g.u1, i, j, true);
            M.m[0][1] = deriv(g.u1, i, j, false);
            M.m[1][0] = deriv(g.u2, i, j, true);
            M.m[1][1] = deriv(g.u2, i, j, false);
            const double c = criterion_pointwise(M, g.params.l);
            field.values[static_cast<size_t>(g.index(i, j))] = c;
            if (c > best) {
                best = c;
                best_x = g.center(i, j);
            }
        }
    }
    field.max_value = best;
    field.max_location = best_x;
    return field;
}

}  // namespace

CriterionField scan_criterion(const InitialData& data, int n, double tol) {
    if (!(tol >= 0.0)) throw std::invalid_argument("scan_criterion: tol must be >= 0");
    CriterionField field;
    if (const auto* v = std::get_if<VortexData>(&data)) {
        if (n < 2) throw std::invalid_argument("scan_criterion: n must be >= 2");
        field = scan_vortex(*v, n, tol);
    } else {
        field = scan_grid(std::get<GriddedData>(data), tol);
    }
    field.verdict = field.max_value > tol    ? CriterionVerdict::blowup
                    : field.max_value < -tol ? CriterionVerdict::smooth
                                             : CriterionVerdict::marginal;
    return field;
}

namespace {

Mat2 riccati_rhs(const Mat2& M, double l) {
    // M' = -M^2 - l L M along a particle path
    return -1.0 * (M * M) + -l * (rotation_L * M);
}

struct FitOutcome {
    bool ok = false;
    double T = 0.0;
    double residual = 0.0;
};

/// Least-squares fit of y = a + b t through transformed norm samples
/// y = norm^(-1/p); a clean fit with b < 0 extrapolates to the singularity
/// time T = -a/b. p = 1 captures norm ~ 1/(T - t); p = 2 is kept as a
/// fallback for the slower double-root mode.
FitOutcome fit_blowup_time(const std::vector<std::pair<double, double>>& samples,
                           int p) {
    const size_t m = samples.size();
    if (m < 5) return {};
    // Centered least squares: the tail times cluster within a sliver of the
    // singularity time, so the raw normal equations would cancel to noise.
    double t_bar = 0, y_bar = 0;
    for (const auto& [t, norm] : samples) {
        t_bar += t;
        y_bar += (p == 1) ? 1.0 / norm : 1.0 / std::sqrt(norm);
    }
    t_bar /= m;
    y_bar /= m;
    double stt = 0, sty = 0;
    for (const auto& [t, norm] : samples) {
        const double y = (p == 1) ? 1.0 / norm : 1.0 / std::sqrt(norm);
        stt += (t - t_bar) * (t - t_bar);
        sty += (t - t_bar) * (y - y_bar);
    }
    if (stt == 0.0) return {};
    const double b = sty / stt;
    const double a = y_bar - b * t_bar;
    if (!(b < 0.0)) return {};
    double ss_res = 0, ss_tot = 0;
    for (const auto& [t, norm] : samples) {
        const double y = (p == 1) ? 1.0 / norm : 1.0 / std::sqrt(norm);
        ss_res += (y - (a + b * t)) * (y - (a + b * t));
        ss_tot += y * y;
    }
    FitOutcome out;
    out.ok = true;
    out.T = -a / b;
    out.residual = std::sqrt(ss_res / std::max(ss_tot, 1e-300));
    return out;
}

}  // namespace

RiccatiResult riccati_oracle(const Mat2& M0, double l, double t_max,
                             double blowup_threshold) {
    if (!(t_max > 0.0)) throw std::invalid_argument("riccati_oracle: t_max must be > 0");
    if (!(blowup_threshold >= 1e6))
        throw std::invalid_argument("riccati_oracle: threshold must be >= 1e6");

    // Dormand-Prince 5(4) pair (the flow is autonomous, so no stage abscissae
    // are needed).
    static const double a[7][6] = {
        {},
        {1.0 / 5},
        {3.0 / 40, 9.0 / 40},
        {44.0 / 45, -56.0 / 15, 32.0 / 9},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
        {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
    static const double b5[7] = {35.0 / 384,      0.0,         500.0 / 1113,
                                 125.0 / 192,     -2187.0 / 6784, 11.0 / 84, 0.0};
    static const double b4[7] = {5179.0 / 57600,  0.0,           7571.0 / 16695,
                                 393.0 / 640,     -92097.0 / 339200,
                                 187.0 / 2100,    1.0 / 40};

    RiccatiResult res;
    Mat2 M = M0;
    double t = 0.0;
    double h = 1e-4;
    const double hard_cap = 1e4 * blowup_threshold;
    bool crossed = false;
    std::vector<std::pair<double, double>> tail;
    res.max_norm = M.frobenius();

    while (true) {
        if (!crossed && t >= t_max) break;
        if (!crossed) h = std::min(h, t_max - t);

        Mat2 k[7];
        k[0] = riccati_rhs(M, l);
        for (int s = 1; s < 7; ++s) {
            Mat2 y = M;
            for (int q = 0; q < s; ++q)
                if (a[s][q] != 0.0) y = y + (h * a[s][q]) * k[q];
            k[s] = riccati_rhs(y, l);
        }
        Mat2 y5 = M, y4 = M;
        for (int s = 0; s < 7; ++s) {
            if (b5[s] != 0.0) y5 = y5 + (h * b5[s]) * k[s];
            if (b4[s] != 0.0) y4 = y4 + (h * b4[s]) * k[s];
        }
        const double err = (y5 + -1.0 * y4).frobenius();
        const double tol = 1e-12 + 1e-10 * std::max(M.frobenius(), y5.frobenius());

        if (std::isfinite(err) && err <= tol) {
            t += h;
            M = y5;
            ++res.steps;
            const double norm = M.frobenius();
            res.max_norm = std::max(res.max_norm, norm);
            if (norm >= blowup_threshold) {
                crossed = true;
                tail.emplace_back(t, norm);
                if (norm >= hard_cap) break;
            }
        }

        const double scale =
            std::isfinite(err) && err > 0.0
                ? std::clamp(0.9 * std::pow(tol / err, 0.2), 0.2, 5.0)
                : (std::isfinite(err) ? 5.0 : 0.2);
        h *= scale;
        if (h < 1e-14 * std::max(1.0, t)) {
            if (crossed) break;
            res.verdict = RiccatiVerdict::inconclusive;
            return res;
        }
        if (res.steps > 20000000) {
            res.verdict = RiccatiVerdict::inconclusive;
            return res;
        }
    }

    if (!crossed) {
        res.verdict = RiccatiVerdict::smooth;
        return res;
    }

    // Prefer samples well past the threshold where the asymptote dominates.
    std::vector<std::pair<double, double>> late;
    for (const auto& s : tail)
        if (s.second >= 10.0 * blowup_threshold) late.push_back(s);
    const auto& use = late.size() >= 5 ? late : tail;
    FitOutcome best{};
    for (int p : {1, 2}) {
        const FitOutcome f = fit_blowup_time(use, p);
        if (f.ok && (!best.ok || f.residual < best.residual)) best = f;
    }
    if (best.ok && best.residual <= 0.05) {
        res.verdict = RiccatiVerdict::blowup;
        res.blowup_time = best.T;
        res.fit_residual = best.residual;
    } else {
        res.verdict = RiccatiVerdict::inconclusive;
        res.fit_residual = best.ok ? best.residual : 1.0;
    }
    return res;
}

}  // namespace gascert
