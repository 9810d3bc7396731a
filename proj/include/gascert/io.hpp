#pragma once

#include <optional>
#include <string>

#include "gascert/certify.hpp"

namespace gascert {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Everything a CLI run needs beyond the subcommand itself. Loaded from a
/// JSON file with strict key checking (unknown keys are an error).
///
/// Layout:
/// {
///   "data": {"type":"vortex","mode":"isentropic"|"pressureless",
///            "b":..,"epsilon":..,"gamma":..,"l":..,"C":..,"Pi_bar":..}
///         | {"type":"grid","path":"cells.csv"},
///   "params": {"gamma":..,"l":..,"rho_bar":..,"p_bar":..,"R":..,"C":..},
///   "t_max":.., "grid_n":.., "quad_tol":.., "seed":.., "out":"dir",
///   "paper_literal":.., "samples":..,
///   "threshold": {"parameter":"epsilon"|"b",
///                 "predicate":"criterion_smooth"|"certificate_issued",
///                 "bracket":[lo,hi], "tol":..}
/// }
/// "params" applies to grid data only (vortex data carries its own).
struct RunConfig {
    std::optional<InitialData> data;
    std::optional<double> t_max;
    int grid_n = 512;
    double quad_tol = 1e-10;
    std::optional<long long> seed;
    std::string out_dir = ".";
    bool paper_literal = false;
    int samples = 200;

    struct Threshold {
        SweepParameter sweep = SweepParameter::epsilon;
        ThresholdPredicate predicate = ThresholdPredicate::criterion_smooth;
        double lo = 0.0;
        double hi = 0.0;
        double tol = 1e-3;
    };
    std::optional<Threshold> threshold;
};

/// Parses and validates a config file. Throws ConfigError with a
/// line-and-key diagnostic on malformed input.
RunConfig load_config(const std::string& path);

/// Reads a cell grid from CSV with header x1,x2,u1,u2,rho,p in row-major
/// cell-center order; geometry (n, half_width) is inferred from the
/// coordinates. params supplies the background state.
GriddedData load_grid_csv(const std::string& path, const PhysicalParams& params);

/// Writes a grid in the same CSV format.
void save_grid_csv(const GriddedData& grid, const std::string& path);

/// All serializers print numbers at 15 significant digits and emit keys in a
/// fixed order, so identical inputs give byte-identical artifacts.
std::string to_json(const FunctionalSet& fs);
std::string to_json(const Certificate& cert);
/// Verdict summary for a criterion scan (the full field goes to CSV).
std::string to_json(const CriterionField& field);
std::string threshold_json(const ThresholdResult& r, SweepParameter sweep,
                           ThresholdPredicate predicate);

/// CSV of envelope curves: t, phi_minus, phi_plus, central_lower,
/// central_upper. The central pair is the exact G twice when a closed form
/// exists, or the one-sided bounds for gamma != 2 (nan when a side is
/// unavailable).
std::string envelope_curves_csv(const FunctionalSet& fs, double t_max, int samples,
                                bool paper_literal = false);

/// CSV of certification margin curves: t, central, phi_minus, phi_plus,
/// margin_lower, margin_upper. margin_lower = (curve checked against
/// phi_minus) - phi_minus; margin_upper = phi_plus - (curve checked against
/// phi_plus); nan where a side has no usable curve.
std::string margin_curves_csv(const FunctionalSet& fs, double t_max, int samples,
                              bool paper_literal = false);

/// CSV of a criterion field: x1, x2, value (row-major).
std::string criterion_csv(const CriterionField& field);

/// Writes content to path atomically (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& content);

/// Formats a double at 15 significant digits (shortest %.15g form).
std::string format_double(double v);

}  // namespace gascert
