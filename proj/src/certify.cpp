#include "gascert/certify.hpp"

#include <algorithm>
#include <cmath>

namespace gascert {

std::string to_string(Mechanism m) {
    switch (m) {
        case Mechanism::lower_crossing: return "lower_crossing";
        case Mechanism::upper_crossing: return "upper_crossing";
        case Mechanism::closed_form_amplitude: return "closed_form_amplitude";
        case Mechanism::A3_growth: return "A3_growth";
        case Mechanism::pointwise_criterion: return "pointwise_criterion";
    }
    return "unknown";
}

std::optional<double> find_crossing(const Envelope& a, const Envelope& b,
                                    double t_max) {
    if (!(t_max > 0.0)) throw std::invalid_argument("find_crossing: t_max must be > 0");
    const int samples = 10000;
    double prev_t = 1e-9;
    double prev_d = a(prev_t) - b(prev_t);
    for (int i = 1; i <= samples; ++i) {
        const double t = t_max * i / samples;
        if (t <= prev_t) continue;
        const double d = a(t) - b(t);
        if (d == 0.0) return t;
        if (prev_d == 0.0) {
            // Curves coincide at the start; wait until they separate.
            prev_t = t;
            prev_d = d;
            continue;
        }
        if ((prev_d < 0.0) != (d < 0.0)) {
            double lo = prev_t, hi = t;
            double flo = prev_d;
            for (int iter = 0; iter < 100; ++iter) {
                const double mid = 0.5 * (lo + hi);
                const double fm = a(mid) - b(mid);
                if (fm == 0.0) return mid;
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            return 0.5 * (lo + hi);
        }
        prev_t = t;
        prev_d = d;
    }
    return std::nullopt;
}

AcondResult quick_test_acond(const FunctionalSet& fs) {
    const PhysicalParams& p = fs.params;
    if (std::abs(p.gamma - 2.0) > 1e-12 || !(p.l > 0.0))
        throw std::invalid_argument("quick_test_acond: gamma = 2 and l > 0 required");
    AcondResult r;
    r.crossing_possible = (-p.l * p.l * fs.G0 * fs.G0 + 2.0 * fs.F10 * fs.F10) >= 0.0;
    const double c = fs.A0 / (p.l * p.l);
    r.acond_holds =
        c * c - (fs.F10 * fs.F10 / (p.l * p.l) + (fs.G0 - c) * (fs.G0 - c)) <= 0.0;
    return r;
}

AmplitudeOutcome quick_test_amplitude(const FunctionalSet& fs) {
    const PhysicalParams& p = fs.params;
    if (!is_pressureless(p) || !(p.l > 0.0))
        throw std::invalid_argument(
            "quick_test_amplitude: pressureless data with l > 0 required");
    const double c = fs.A4.value() / (p.l * p.l);
    const double rho = std::hypot(fs.F10 / p.l, fs.G0 - c);
    if (c - rho <= 0.0) return AmplitudeOutcome::lower_certified;
    if (c + rho >= fs.Gm) return AmplitudeOutcome::upper_certified;
    return AmplitudeOutcome::none;
}

A3Result quick_test_A3(const FunctionalSet& fs) {
    const PhysicalParams& p = fs.params;
    if (p.sigma != 0.0)
        throw std::invalid_argument("quick_test_A3: sigma = 0 data required");
    A3Result r;
    r.value = fs.A3.value();
    r.positive = r.value > 0.0;
    // A3 as a function of the rotation rate: -(Gm - G0) w^2 - F20 w + 2 e0.
    const double qa = fs.Gm - fs.G0;
    if (qa > 0.0) {
        const double disc = fs.F20 * fs.F20 + 8.0 * fs.e0 * qa;
        if (disc >= 0.0) {
            const double root = (-fs.F20 + std::sqrt(disc)) / (2.0 * qa);
            if (root > 0.0) r.sign_change_l = root;
        }
    } else if (fs.F20 < 0.0 && fs.e0 > 0.0) {
        const double root = 2.0 * fs.e0 / -fs.F20;
        if (root > 0.0) r.sign_change_l = root;
    }
    return r;
}

namespace {

/// Closed-form radial momentum moment F1(t), available for gamma = 2 or
/// pressureless data. Derived from the exact G(t): F1 = G' minus the moving
/// boundary term pi rho_bar sigma (R + sigma t)^3.
std::optional<double> F1_closed_form(const FunctionalSet& fs, double t) {
    const PhysicalParams& p = fs.params;
    if (is_pressureless(p)) {
        if (p.l > 0.0)
            return fs.F10 * std::cos(p.l * t) +
                   (fs.A4.value() / p.l - p.l * fs.G0) * std::sin(p.l * t);
        return fs.F10 + 2.0 * fs.e0 * t;
    }
    if (std::abs(p.gamma - 2.0) <= 1e-12) {
        if (p.l > 0.0)
            return fs.F10 * std::cos(p.l * t) +
                   (fs.A0 / p.l - p.l * fs.G0) * std::sin(p.l * t);
        return fs.F10 + fs.A0 * t;
    }
    return std::nullopt;
}

struct CrossingRecord {
    Mechanism mechanism;
    double T;
};

}  // namespace

std::optional<double> kinetic_energy_floor(const FunctionalSet& fs, double t) {
    if (!(t >= 0.0))
        throw std::invalid_argument("kinetic_energy_floor: t must be >= 0");
    const std::optional<double> F1 = F1_closed_form(fs, t);
    if (!F1) return std::nullopt;
    return *F1 * *F1 / (4.0 * phi_plus(fs, t));
}

double default_time_horizon(const PhysicalParams& p) {
    if (p.l > 0.0) return 1.05 * 2.0 * M_PI / p.l;
    return 10.0 * p.R / std::max({p.sigma, p.R * p.l, 1e-6});
}

Certificate certify(const InitialData& data, const CertifyOptions& opts) {
    const FunctionalSet fs = compute_functionals(data, opts.quad);
    const PhysicalParams& p = fs.params;

    Certificate cert;
    cert.functionals = fs;
    cert.entropy = fs.entropy;
    cert.paper_literal = opts.paper_literal;
    cert.t_max = opts.t_max ? *opts.t_max : default_time_horizon(p);
    if (!(cert.t_max > 0.0))
        throw std::invalid_argument("certify: t_max must be > 0");

    std::vector<CrossingRecord> crossings;
    const bool pressureless = is_pressureless(p);

    if (pressureless) {
        cert.regime = "pressureless";
        cert.criterion = scan_criterion(data, opts.scan_n, opts.marginal_tol);
        if (cert.criterion->verdict == CriterionVerdict::blowup)
            cert.mechanisms.push_back(Mechanism::pointwise_criterion);
        else if (cert.criterion->verdict == CriterionVerdict::marginal)
            cert.notes.push_back(
                "criterion maximum lies inside the marginal band; no exact verdict");
        if (p.l > 0.0) {
            const AmplitudeOutcome amp = quick_test_amplitude(fs);
            cert.quick_tests.amplitude = amp;
            if (amp != AmplitudeOutcome::none)
                cert.mechanisms.push_back(Mechanism::closed_form_amplitude);
        }
        const A3Result a3 = quick_test_A3(fs);
        cert.quick_tests.a3_positive = a3.positive;
        cert.quick_tests.a3_value = a3.value;
        cert.quick_tests.a3_sign_change_l = a3.sign_change_l;
        if (a3.positive) cert.mechanisms.push_back(Mechanism::A3_growth);
    } else if (std::abs(p.gamma - 2.0) <= 1e-12) {
        cert.regime = "gamma_eq_2";
        Envelope central;
        if (p.l > 0.0) {
            central = make_envelope(EnvelopeKind::G_exact_gamma2, fs, opts.paper_literal);
        } else {
            central.kind = EnvelopeKind::G_polynomial_l0;
            central.description = "exact quartic (gamma = 2, l = 0)";
            central.eval = [fs](double t) { return G_exact_gamma2_l0(fs, t); };
        }
        const Envelope lo_env = make_envelope(EnvelopeKind::phi_minus, fs);
        const Envelope hi_env = make_envelope(EnvelopeKind::phi_plus, fs);
        if (const auto T = find_crossing(central, lo_env, cert.t_max))
            crossings.push_back({Mechanism::lower_crossing, *T});
        if (const auto T = find_crossing(central, hi_env, cert.t_max))
            crossings.push_back({Mechanism::upper_crossing, *T});
        if (p.l > 0.0) cert.quick_tests.acond = quick_test_acond(fs);
    } else {
        const bool hot = p.gamma > 2.0;
        cert.regime = hot ? "gamma_gt_2" : "gamma_lt_2";
        const Envelope lo_env = make_envelope(EnvelopeKind::phi_minus, fs);
        const Envelope hi_env = make_envelope(EnvelopeKind::phi_plus, fs);
        const OneSidedBounds probe = one_sided_bounds(fs, 0.0, opts.paper_literal);
        const EnvelopeKind upper_kind = hot ? EnvelopeKind::f_plus : EnvelopeKind::g_plus;
        const EnvelopeKind lower_kind = hot ? EnvelopeKind::f_minus : EnvelopeKind::g_minus;
        if (probe.upper) {
            const Envelope ub = make_envelope(upper_kind, fs, opts.paper_literal);
            if (const auto T = find_crossing(ub, lo_env, cert.t_max))
                crossings.push_back({Mechanism::lower_crossing, *T});
        } else {
            cert.notes.push_back("upper bound " + to_string(upper_kind) +
                                 " unavailable: entropy condition not verified");
        }
        if (probe.lower) {
            const Envelope lb = make_envelope(lower_kind, fs, opts.paper_literal);
            if (const auto T = find_crossing(lb, hi_env, cert.t_max))
                crossings.push_back({Mechanism::upper_crossing, *T});
        } else {
            cert.notes.push_back("lower bound " + to_string(lower_kind) +
                                 " unavailable: entropy condition not verified");
        }
    }

    for (const CrossingRecord& c : crossings) cert.mechanisms.push_back(c.mechanism);
    if (!crossings.empty()) {
        const auto best = std::min_element(
            crossings.begin(), crossings.end(),
            [](const CrossingRecord& x, const CrossingRecord& y) { return x.T < y.T; });
        cert.T_star = best->T;
        cert.mechanism = best->mechanism;
    } else if (!cert.mechanisms.empty()) {
        cert.mechanism = cert.mechanisms.front();
    }
    cert.certified = !cert.mechanisms.empty();

    if (cert.T_star) {
        if (const auto F1 = F1_closed_form(fs, *cert.T_star)) {
            cert.F1_at_T_star = *F1;
            if (cert.mechanism == Mechanism::lower_crossing && std::abs(*F1) > 1e-12)
                cert.notes.push_back(
                    "density and/or velocity tend to infinity at the crossing time");
        }
        cert.kinetic_floor_at_T_star = kinetic_energy_floor(fs, *cert.T_star);
        if (p.l > 0.0 && std::abs(p.gamma - 2.0) <= 1e-12 &&
            !(*cert.T_star < 2.0 * M_PI / p.l))
            cert.notes.push_back("crossing found beyond one rotation period");
    }
    return cert;
}

}  // namespace gascert
