#include <cmath>

#include "gascert/certify.hpp"
#include "gascert/pressureless.hpp"

namespace gascert {

namespace {

VortexData rebuild(const VortexData& base, SweepParameter sweep, double value) {
    const double b = (sweep == SweepParameter::b) ? value : base.b;
    const double eps = (sweep == SweepParameter::epsilon) ? value : base.epsilon;
    if (base.mode == VortexMode::pressureless)
        return make_pressureless_vortex(b, eps, base.params.l, base.params.gamma);
    return make_isentropic_vortex(b, eps, base.params.l,
                                  *base.params.isentropic_const, base.Pi_bar);
}

bool probe(const VortexData& v, ThresholdPredicate predicate, int scan_n) {
    if (predicate == ThresholdPredicate::criterion_smooth) {
        const CriterionField f = scan_criterion(InitialData{v}, scan_n);
        return f.verdict == CriterionVerdict::smooth;
    }
    // certificate_issued: the integral quick tests only (amplitude or A3),
    // deliberately excluding the pointwise criterion so the gap between the
    // exact criterion and the integral certificates stays measurable.
    if (v.params.sigma != 0.0)
        throw std::invalid_argument(
            "bisect_threshold: certificate_issued requires sigma = 0 data");
    const FunctionalSet fs = compute_functionals(InitialData{v});
    if (v.params.l > 0.0 && is_pressureless(v.params) &&
        quick_test_amplitude(fs) != AmplitudeOutcome::none)
        return true;
    return quick_test_A3(fs).positive;
}

}  // namespace

ThresholdResult bisect_threshold(SweepParameter sweep, const VortexData& fixed,
                                 ThresholdPredicate predicate, double lo, double hi,
                                 double tol, int scan_n) {
    if (!(lo < hi)) throw std::invalid_argument("bisect_threshold: need lo < hi");
    if (!(tol > 0.0)) throw std::invalid_argument("bisect_threshold: tol must be > 0");

    ThresholdResult res;
    bool state_lo = probe(rebuild(fixed, sweep, lo), predicate, scan_n);
    const bool state_hi = probe(rebuild(fixed, sweep, hi), predicate, scan_n);
    res.probes = 2;
    if (state_lo == state_hi)
        throw std::invalid_argument(
            "bisect_threshold: predicate does not change across the bracket");

    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const bool state_mid = probe(rebuild(fixed, sweep, mid), predicate, scan_n);
        ++res.probes;
        if (state_mid == state_lo) {
            lo = mid;
            state_lo = state_mid;
        } else {
            hi = mid;
        }
    }
    res.bracket_lo = lo;
    res.bracket_hi = hi;
    res.value = 0.5 * (lo + hi);
    return res;
}

}  // namespace gascert
