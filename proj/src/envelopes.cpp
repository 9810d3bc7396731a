#include "gascert/envelopes.hpp"

#include <cmath>

namespace gascert {

namespace {

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Double time integral of (R + sigma lambda)^n from 0 to t, expanded
/// binomially so sigma = 0 needs no special case:
/// W_n(t) = sum_k C(n,k) R^(n-k) sigma^k t^(k+2) / ((k+1)(k+2)).
double W_poly(int n, double R, double sigma, double t) {
    double sum = 0.0;
    for (int k = 0; k <= n; ++k)
        sum += binom(n, k) * std::pow(R, n - k) * std::pow(sigma, k) *
               std::pow(t, k + 2) / ((k + 1.0) * (k + 2.0));
    return sum;
}

void require_time(double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("envelope: t must be >= 0");
}

bool gamma_is_2(const PhysicalParams& p) { return std::abs(p.gamma - 2.0) <= 1e-12; }

}  // namespace

std::string to_string(EnvelopeKind kind) {
    switch (kind) {
        case EnvelopeKind::phi_minus: return "phi_minus";
        case EnvelopeKind::phi_plus: return "phi_plus";
        case EnvelopeKind::G_exact_gamma2: return "G_exact_gamma2";
        case EnvelopeKind::G_exact_pressureless: return "G_exact_pressureless";
        case EnvelopeKind::G_polynomial_l0: return "G_polynomial_l0";
        case EnvelopeKind::f_plus: return "f_plus";
        case EnvelopeKind::f_minus: return "f_minus";
        case EnvelopeKind::g_plus: return "g_plus";
        case EnvelopeKind::g_minus: return "g_minus";
    }
    return "unknown";
}

double phi_minus(const FunctionalSet& fs, double t) {
    require_time(t);
    const PhysicalParams& p = fs.params;
    const double edge = p.R + p.sigma * t;
    const double mass = fs.m0 + p.rho_bar * M_PI * edge * edge;
    const Vec2 P = momentum_evolution(fs, t).P;
    return P.norm2() / mass;
}

double phi_plus(const FunctionalSet& fs, double t) {
    require_time(t);
    const PhysicalParams& p = fs.params;
    const double edge = p.R + p.sigma * t;
    return 0.5 * edge * edge * (fs.m0 + p.rho_bar * M_PI * edge * edge);
}

double q_source(const PhysicalParams& p, double t) {
    require_time(t);
    const double edge = p.R + p.sigma * t;
    const double e2 = edge * edge;
    const double R4 = p.R * p.R * p.R * p.R;
    return p.l * p.l * M_PI * p.rho_bar / 4.0 * (e2 * e2 - R4) +
           3.0 * M_PI * p.rho_bar * p.sigma * p.sigma * e2;
}

double Q_double_integral(const PhysicalParams& p, double t) {
    require_time(t);
    const double R4 = p.R * p.R * p.R * p.R;
    return p.l * p.l * M_PI * p.rho_bar / 4.0 *
               (W_poly(4, p.R, p.sigma, t) - R4 * t * t / 2.0) +
           3.0 * M_PI * p.rho_bar * p.sigma * p.sigma * W_poly(2, p.R, p.sigma, t);
}

double Q1_double_integral(const FunctionalSet& fs, double t) {
    require_time(t);
    const PhysicalParams& p = fs.params;
    // Double integral of phi_plus, by the same binomial expansion.
    const double Phi = 0.5 * fs.m0 * W_poly(2, p.R, p.sigma, t) +
                       0.5 * M_PI * p.rho_bar * W_poly(4, p.R, p.sigma, t);
    return Q_double_integral(p, t) - p.l * p.l * Phi;
}

double G_exact_gamma2(const FunctionalSet& fs, double t, bool paper_literal) {
    require_time(t);
    const PhysicalParams& p = fs.params;
    if (!gamma_is_2(p)) throw std::invalid_argument("G_exact_gamma2: gamma must be 2");
    if (!(p.l > 0.0)) throw std::invalid_argument("G_exact_gamma2: l must be > 0");
    const double l = p.l;
    const double edge = p.R + p.sigma * t;
    double poly;
    if (paper_literal) {
        // Printed variant: identical except the linear term lacks pi.
        poly = M_PI * p.rho_bar *
                   (0.25 * std::pow(p.sigma * t, 4) +
                    p.R * std::pow(p.sigma, 3) * t * t * t +
                    1.5 * p.R * p.R * p.sigma * p.sigma * t * t) +
               p.sigma * p.rho_bar * p.R * p.R * p.R * t;
    } else {
        poly = M_PI * p.rho_bar / 4.0 *
               (edge * edge * edge * edge - std::pow(p.R, 4));
    }
    const double c = fs.A0 / (l * l);
    return poly + c + (fs.G0 - c) * std::cos(l * t) + fs.F10 / l * std::sin(l * t);
}

double G_exact_gamma2_l0(const FunctionalSet& fs, double t) {
    require_time(t);
    const PhysicalParams& p = fs.params;
    if (!gamma_is_2(p)) throw std::invalid_argument("G_exact_gamma2_l0: gamma must be 2");
    if (p.l != 0.0) throw std::invalid_argument("G_exact_gamma2_l0: l must be 0");
    return fs.G0 + fs.dG0 * t + 0.5 * fs.A0 * t * t + Q_double_integral(p, t);
}

double G_exact_pressureless(const FunctionalSet& fs, double t) {
    require_time(t);
    const PhysicalParams& p = fs.params;
    if (!is_pressureless(p))
        throw std::invalid_argument("G_exact_pressureless: pressureless data required");
    if (!(p.l > 0.0)) throw std::invalid_argument("G_exact_pressureless: l must be > 0");
    const double l = p.l;
    const double c = fs.A4.value() / (l * l);
    return c + (fs.G0 - c) * std::cos(l * t) + fs.F10 / l * std::sin(l * t);
}

double G_polynomial_l0(const FunctionalSet& fs, double t) {
    require_time(t);
    const PhysicalParams& p = fs.params;
    if (p.l != 0.0 || p.sigma != 0.0 || p.p_bar != 0.0)
        throw std::invalid_argument("G_polynomial_l0: requires l = 0, sigma = 0, p_bar = 0");
    return fs.e0 * t * t + fs.dG0 * t + fs.G0;
}

bool check_entropy_condition(const InitialData& data) {
    if (is_pressureless(params_of(data)))
        throw std::invalid_argument("check_entropy_condition: data with pressure required");
    const double margin = entropy_margin(data);
    if (std::isnan(margin))
        throw std::invalid_argument("check_entropy_condition: no background entropy");
    return margin >= -1e-12;
}

double pressure_excess_lower_bound(const FunctionalSet& fs) {
    return fs.params.sigma * fs.params.sigma * fs.m0;
}

OneSidedBounds one_sided_bounds(const FunctionalSet& fs, double t, bool paper_literal) {
    require_time(t);
    const PhysicalParams& p = fs.params;
    if (gamma_is_2(p))
        throw std::invalid_argument("one_sided_bounds: gamma must differ from 2");
    const double base = fs.dG0 * t + fs.G0;
    const double Q = Q_double_integral(p, t);
    const double Q1 = Q1_double_integral(fs, t);
    OneSidedBounds b;
    if (p.gamma > 2.0) {
        b.upper = Q + 0.5 * fs.A0 * t * t + base;
        if (fs.A1) b.lower = Q1 + 0.5 * *fs.A1 * t * t + base;
    } else if (!paper_literal) {
        b.lower = Q1 + 0.5 * fs.A0 * t * t + base;
        if (fs.A1) b.upper = Q + 0.5 * *fs.A1 * t * t + base;
    } else {
        // Printed pairing: Q-kind and A-constant both swapped.
        b.upper = Q1 + 0.5 * fs.A0 * t * t + base;
        if (fs.A1) b.lower = Q + 0.5 * *fs.A1 * t * t + base;
    }
    return b;
}

Envelope make_envelope(EnvelopeKind kind, const FunctionalSet& fs, bool paper_literal) {
    Envelope env;
    env.kind = kind;
    env.description = to_string(kind);
    switch (kind) {
        case EnvelopeKind::phi_minus:
            env.eval = [fs](double t) { return phi_minus(fs, t); };
            return env;
        case EnvelopeKind::phi_plus:
            env.eval = [fs](double t) { return phi_plus(fs, t); };
            return env;
        case EnvelopeKind::G_exact_gamma2:
            G_exact_gamma2(fs, 0.0, paper_literal);  // precondition check
            env.eval = [fs, paper_literal](double t) {
                return G_exact_gamma2(fs, t, paper_literal);
            };
            return env;
        case EnvelopeKind::G_exact_pressureless:
            G_exact_pressureless(fs, 0.0);
            env.eval = [fs](double t) { return G_exact_pressureless(fs, t); };
            return env;
        case EnvelopeKind::G_polynomial_l0:
            G_polynomial_l0(fs, 0.0);  // precondition check
            env.eval = [fs](double t) { return G_polynomial_l0(fs, t); };
            return env;
        case EnvelopeKind::f_plus:
        case EnvelopeKind::f_minus:
        case EnvelopeKind::g_plus:
        case EnvelopeKind::g_minus: {
            if (kind == EnvelopeKind::f_plus || kind == EnvelopeKind::f_minus) {
                if (!(fs.params.gamma > 2.0))
                    throw std::invalid_argument("make_envelope: f bounds need gamma > 2");
            } else if (!(fs.params.gamma < 2.0)) {
                throw std::invalid_argument("make_envelope: g bounds need gamma < 2");
            }
            const bool is_upper =
                kind == EnvelopeKind::f_plus || kind == EnvelopeKind::g_plus;
            const OneSidedBounds probe = one_sided_bounds(fs, 0.0, paper_literal);
            if ((is_upper && !probe.upper) || (!is_upper && !probe.lower))
                throw std::invalid_argument(
                    "make_envelope: bound unavailable (entropy condition not verified)");
            env.eval = [fs, paper_literal, is_upper](double t) {
                const OneSidedBounds b = one_sided_bounds(fs, t, paper_literal);
                return is_upper ? *b.upper : *b.lower;
            };
            return env;
        }
    }
    throw std::invalid_argument("make_envelope: unknown kind");
}

}  // namespace gascert
