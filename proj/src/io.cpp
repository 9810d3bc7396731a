#include "gascert/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace gascert {

namespace {

using nlohmann::json;

std::string esc(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

std::string jnum(double v) {
    if (!std::isfinite(v)) return "null";
    return format_double(v);
}

std::string jopt(const std::optional<double>& v) {
    return v ? jnum(*v) : std::string("null");
}

std::string jbool(bool b) { return b ? "true" : "false"; }

std::string entropy_str(EntropyStatus e) {
    switch (e) {
        case EntropyStatus::holds: return "holds";
        case EntropyStatus::fails: return "fails";
        case EntropyStatus::not_applicable: return "not_applicable";
    }
    return "not_applicable";
}

std::string verdict_str(CriterionVerdict v) {
    switch (v) {
        case CriterionVerdict::smooth: return "smooth";
        case CriterionVerdict::blowup: return "blowup";
        case CriterionVerdict::marginal: return "marginal";
    }
    return "marginal";
}

std::string amplitude_str(AmplitudeOutcome a) {
    switch (a) {
        case AmplitudeOutcome::none: return "none";
        case AmplitudeOutcome::lower_certified: return "lower_certified";
        case AmplitudeOutcome::upper_certified: return "upper_certified";
    }
    return "none";
}

std::string params_json(const PhysicalParams& p, const std::string& pad) {
    std::ostringstream o;
    o << "{\n";
    o << pad << "  \"gamma\": " << jnum(p.gamma) << ",\n";
    o << pad << "  \"l\": " << jnum(p.l) << ",\n";
    o << pad << "  \"rho_bar\": " << jnum(p.rho_bar) << ",\n";
    o << pad << "  \"p_bar\": " << jnum(p.p_bar) << ",\n";
    o << pad << "  \"sigma\": " << jnum(p.sigma) << ",\n";
    o << pad << "  \"R\": " << jnum(p.R) << ",\n";
    o << pad << "  \"C\": " << jopt(p.isentropic_const) << "\n";
    o << pad << "}";
    return o.str();
}

std::string functionals_json(const FunctionalSet& fs, const std::string& pad) {
    std::ostringstream o;
    o << "{\n";
    o << pad << "  \"m0\": " << jnum(fs.m0) << ",\n";
    o << pad << "  \"e0\": " << jnum(fs.e0) << ",\n";
    o << pad << "  \"Ek0\": " << jnum(fs.Ek0) << ",\n";
    o << pad << "  \"G0\": " << jnum(fs.G0) << ",\n";
    o << pad << "  \"F10\": " << jnum(fs.F10) << ",\n";
    o << pad << "  \"F20\": " << jnum(fs.F20) << ",\n";
    o << pad << "  \"P0\": [" << jnum(fs.P0.x) << ", " << jnum(fs.P0.y) << "],\n";
    o << pad << "  \"I0\": [" << jnum(fs.I0.x) << ", " << jnum(fs.I0.y) << "],\n";
    o << pad << "  \"dG0\": " << jnum(fs.dG0) << ",\n";
    o << pad << "  \"A0\": " << jnum(fs.A0) << ",\n";
    o << pad << "  \"Gm\": " << jnum(fs.Gm) << ",\n";
    o << pad << "  \"A1\": " << jopt(fs.A1) << ",\n";
    o << pad << "  \"A3\": " << jopt(fs.A3) << ",\n";
    o << pad << "  \"A4\": " << jopt(fs.A4) << ",\n";
    o << pad << "  \"entropy_condition\": " << esc(entropy_str(fs.entropy)) << ",\n";
    o << pad << "  \"grid_error\": " << jopt(fs.grid_error) << ",\n";
    o << pad << "  \"params\": " << params_json(fs.params, pad + "  ") << "\n";
    o << pad << "}";
    return o.str();
}

std::string criterion_summary_json(const CriterionField& f, const std::string& pad) {
    std::ostringstream o;
    o << "{\n";
    o << pad << "  \"n\": " << f.n << ",\n";
    o << pad << "  \"half_width\": " << jnum(f.half_width) << ",\n";
    o << pad << "  \"max_value\": " << jnum(f.max_value) << ",\n";
    o << pad << "  \"max_location\": [" << jnum(f.max_location.x) << ", "
      << jnum(f.max_location.y) << "],\n";
    o << pad << "  \"verdict\": " << esc(verdict_str(f.verdict)) << ",\n";
    o << pad << "  \"tol\": " << jnum(f.tol) << "\n";
    o << pad << "}";
    return o.str();
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

std::string to_json(const FunctionalSet& fs) { return functionals_json(fs, "") + "\n"; }

std::string to_json(const CriterionField& field) {
    return criterion_summary_json(field, "") + "\n";
}

std::string to_json(const Certificate& cert) {
    std::ostringstream o;
    o << "{\n";
    o << "  \"certified\": " << jbool(cert.certified) << ",\n";
    o << "  \"T_star\": " << jopt(cert.T_star) << ",\n";
    o << "  \"mechanism\": "
      << (cert.mechanism ? esc(to_string(*cert.mechanism)) : std::string("null"))
      << ",\n";
    o << "  \"mechanisms\": [";
    for (size_t i = 0; i < cert.mechanisms.size(); ++i)
        o << (i ? ", " : "") << esc(to_string(cert.mechanisms[i]));
    o << "],\n";
    o << "  \"regime\": " << esc(cert.regime) << ",\n";
    o << "  \"entropy_condition\": " << esc(entropy_str(cert.entropy)) << ",\n";
    o << "  \"t_max\": " << jnum(cert.t_max) << ",\n";
    o << "  \"paper_literal\": " << jbool(cert.paper_literal) << ",\n";

    o << "  \"quick_tests\": {\n";
    o << "    \"acond\": ";
    if (cert.quick_tests.acond) {
        o << "{\"crossing_possible\": " << jbool(cert.quick_tests.acond->crossing_possible)
          << ", \"acond_holds\": " << jbool(cert.quick_tests.acond->acond_holds) << "}";
    } else {
        o << "null";
    }
    o << ",\n";
    o << "    \"amplitude\": "
      << (cert.quick_tests.amplitude ? esc(amplitude_str(*cert.quick_tests.amplitude))
                                     : std::string("null"))
      << ",\n";
    o << "    \"A3\": ";
    if (cert.quick_tests.a3_positive) {
        o << "{\"positive\": " << jbool(*cert.quick_tests.a3_positive)
          << ", \"value\": " << jopt(cert.quick_tests.a3_value)
          << ", \"sign_change_l\": " << jopt(cert.quick_tests.a3_sign_change_l) << "}";
    } else {
        o << "null";
    }
    o << "\n  },\n";

    o << "  \"criterion\": ";
    if (cert.criterion)
        o << criterion_summary_json(*cert.criterion, "  ");
    else
        o << "null";
    o << ",\n";
    o << "  \"F1_at_T_star\": " << jopt(cert.F1_at_T_star) << ",\n";
    o << "  \"kinetic_floor_at_T_star\": " << jopt(cert.kinetic_floor_at_T_star)
      << ",\n";
    o << "  \"functionals\": " << functionals_json(cert.functionals, "  ") << ",\n";
    o << "  \"notes\": [";
    for (size_t i = 0; i < cert.notes.size(); ++i)
        o << (i ? ", " : "") << esc(cert.notes[i]);
    o << "]\n";
    o << "}\n";
    return o.str();
}

std::string threshold_json(const ThresholdResult& r, SweepParameter sweep,
                           ThresholdPredicate predicate) {
    std::ostringstream o;
    o << "{\n";
    o << "  \"parameter\": "
      << esc(sweep == SweepParameter::epsilon ? "epsilon" : "b") << ",\n";
    o << "  \"predicate\": "
      << esc(predicate == ThresholdPredicate::criterion_smooth ? "criterion_smooth"
                                                               : "certificate_issued")
      << ",\n";
    o << "  \"bracket\": [" << jnum(r.bracket_lo) << ", " << jnum(r.bracket_hi)
      << "],\n";
    o << "  \"value\": " << jnum(r.value) << ",\n";
    o << "  \"probes\": " << r.probes << "\n";
    o << "}\n";
    return o.str();
}

namespace {

/// Central curve pair for CSV output: the exact G twice when a closed form
/// exists, otherwise the applicable one-sided bounds (nan when withheld).
std::pair<double, double> central_pair(const FunctionalSet& fs, double t,
                                       bool paper_literal) {
    const PhysicalParams& p = fs.params;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (is_pressureless(p)) {
        const double g = p.l > 0.0 ? G_exact_pressureless(fs, t) : G_polynomial_l0(fs, t);
        return {g, g};
    }
    if (std::abs(p.gamma - 2.0) <= 1e-12) {
        const double g = p.l > 0.0 ? G_exact_gamma2(fs, t, paper_literal)
                                   : G_exact_gamma2_l0(fs, t);
        return {g, g};
    }
    const OneSidedBounds b = one_sided_bounds(fs, t, paper_literal);
    return {b.lower ? *b.lower : nan, b.upper ? *b.upper : nan};
}

}  // namespace

std::string envelope_curves_csv(const FunctionalSet& fs, double t_max, int samples,
                                bool paper_literal) {
    if (!(t_max > 0.0) || samples < 1)
        throw std::invalid_argument("envelope_curves_csv: need t_max > 0, samples >= 1");
    std::ostringstream o;
    o << "t,phi_minus,phi_plus,central_lower,central_upper\n";
    for (int i = 0; i <= samples; ++i) {
        const double t = t_max * i / samples;
        const auto [clo, chi] = central_pair(fs, t, paper_literal);
        o << format_double(t) << ',' << format_double(phi_minus(fs, t)) << ','
          << format_double(phi_plus(fs, t)) << ',' << format_double(clo) << ','
          << format_double(chi) << '\n';
    }
    return o.str();
}

std::string margin_curves_csv(const FunctionalSet& fs, double t_max, int samples,
                              bool paper_literal) {
    if (!(t_max > 0.0) || samples < 1)
        throw std::invalid_argument("margin_curves_csv: need t_max > 0, samples >= 1");
    const PhysicalParams& p = fs.params;
    const bool exact = is_pressureless(p) || std::abs(p.gamma - 2.0) <= 1e-12;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::ostringstream o;
    o << "t,central,phi_minus,phi_plus,margin_lower,margin_upper\n";
    for (int i = 0; i <= samples; ++i) {
        const double t = t_max * i / samples;
        const double lo = phi_minus(fs, t);
        const double hi = phi_plus(fs, t);
        const auto [clo, chi] = central_pair(fs, t, paper_literal);
        // margin_lower tracks the curve racing toward phi_minus (exact G or
        // the upper bound); margin_upper the curve racing toward phi_plus.
        const double central = exact ? clo : nan;
        const double margin_lower = std::isnan(chi) ? nan : chi - lo;
        const double margin_upper = std::isnan(clo) ? nan : hi - clo;
        o << format_double(t) << ',' << format_double(central) << ','
          << format_double(lo) << ',' << format_double(hi) << ','
          << format_double(margin_lower) << ',' << format_double(margin_upper) << '\n';
    }
    return o.str();
}

std::string criterion_csv(const CriterionField& field) {
    std::ostringstream o;
    o << "x1,x2,value\n";
    const double h = 2.0 * field.half_width / field.n;
    for (int j = 0; j < field.n; ++j)
        for (int i = 0; i < field.n; ++i) {
            const double x = -field.half_width + (i + 0.5) * h;
            const double y = -field.half_width + (j + 0.5) * h;
            o << format_double(x) << ',' << format_double(y) << ','
              << format_double(field.values[static_cast<size_t>(j) * field.n + i])
              << '\n';
        }
    return o.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

namespace {

int line_of_byte(const std::string& text, size_t byte) {
    int line = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* k : allowed)
            if (key == k) ok = true;
        if (!ok) throw ConfigError("config: unknown key '" + key + "' in " + where);
    }
}

double get_number(const json& obj, const std::string& where, const std::string& key) {
    if (!obj.contains(key))
        throw ConfigError("config: missing key '" + key + "' in " + where);
    if (!obj[key].is_number())
        throw ConfigError("config: key '" + key + "' in " + where + " must be a number");
    return obj[key].get<double>();
}

std::optional<double> get_optional_number(const json& obj, const std::string& where,
                                          const std::string& key) {
    if (!obj.contains(key)) return std::nullopt;
    if (!obj[key].is_number())
        throw ConfigError("config: key '" + key + "' in " + where + " must be a number");
    return obj[key].get<double>();
}

std::string get_string(const json& obj, const std::string& where,
                       const std::string& key) {
    if (!obj.contains(key))
        throw ConfigError("config: missing key '" + key + "' in " + where);
    if (!obj[key].is_string())
        throw ConfigError("config: key '" + key + "' in " + where + " must be a string");
    return obj[key].get<std::string>();
}

InitialData load_data_descriptor(const json& root, const std::filesystem::path& base) {
    const json& d = root["data"];
    if (!d.is_object()) throw ConfigError("config: 'data' must be an object");
    const std::string type = get_string(d, "data", "type");
    if (type == "vortex") {
        check_keys(d, "data", {"type", "mode", "b", "epsilon", "gamma", "l", "C", "Pi_bar"});
        const std::string mode = get_string(d, "data", "mode");
        const double b = get_number(d, "data", "b");
        const double eps = get_number(d, "data", "epsilon");
        const double l = get_number(d, "data", "l");
        if (mode == "isentropic") {
            if (const auto g = get_optional_number(d, "data", "gamma");
                g && std::abs(*g - 2.0) > 1e-12)
                throw ConfigError("config: the isentropic vortex family is built for gamma = 2");
            const double C = get_number(d, "data", "C");
            const double Pi_bar = get_number(d, "data", "Pi_bar");
            return make_isentropic_vortex(b, eps, l, C, Pi_bar);
        }
        if (mode == "pressureless") {
            if (const auto C = get_optional_number(d, "data", "C"); C && *C != 0.0)
                throw ConfigError("config: pressureless vortex requires C = 0");
            if (d.contains("Pi_bar"))
                throw ConfigError("config: Pi_bar does not apply to the pressureless vortex");
            const double gamma = get_optional_number(d, "data", "gamma").value_or(2.0);
            return make_pressureless_vortex(b, eps, l, gamma);
        }
        throw ConfigError("config: data.mode must be 'isentropic' or 'pressureless'");
    }
    if (type == "grid") {
        check_keys(d, "data", {"type", "path"});
        if (!root.contains("params"))
            throw ConfigError("config: grid data requires a top-level 'params' object");
        const json& pj = root["params"];
        if (!pj.is_object()) throw ConfigError("config: 'params' must be an object");
        check_keys(pj, "params", {"gamma", "l", "rho_bar", "p_bar", "R", "C"});
        const PhysicalParams params = make_params(
            get_number(pj, "params", "gamma"), get_number(pj, "params", "l"),
            get_number(pj, "params", "rho_bar"), get_number(pj, "params", "p_bar"),
            get_optional_number(pj, "params", "C"), get_number(pj, "params", "R"));
        std::filesystem::path path = get_string(d, "data", "path");
        if (path.is_relative()) path = base / path;
        return load_grid_csv(path.string(), params);
    }
    throw ConfigError("config: data.type must be 'vortex' or 'grid'");
}

}  // namespace

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("config: " + path + ":" +
                          std::to_string(line_of_byte(text, e.byte)) + ": " + e.what());
    }
    if (!root.is_object()) throw ConfigError("config: top level must be an object");
    check_keys(root, "top level",
               {"data", "params", "t_max", "grid_n", "quad_tol", "seed", "out",
                "paper_literal", "samples", "threshold"});
    if (root.contains("params") &&
        !(root.contains("data") && root["data"].is_object() &&
          root["data"].value("type", "") == "grid"))
        throw ConfigError("config: 'params' applies only to grid data");

    RunConfig cfg;
    const std::filesystem::path base = std::filesystem::path(path).parent_path();
    if (root.contains("data")) cfg.data = load_data_descriptor(root, base);

    if (const auto v = get_optional_number(root, "top level", "t_max")) {
        if (!(*v > 0.0)) throw ConfigError("config: t_max must be > 0");
        cfg.t_max = *v;
    }
    if (const auto v = get_optional_number(root, "top level", "grid_n")) {
        if (*v < 2 || *v != std::floor(*v))
            throw ConfigError("config: grid_n must be an integer >= 2");
        cfg.grid_n = static_cast<int>(*v);
    }
    if (const auto v = get_optional_number(root, "top level", "quad_tol")) {
        if (!(*v >= 1e-14 && *v <= 1e-4))
            throw ConfigError("config: quad_tol must lie in [1e-14, 1e-4]");
        cfg.quad_tol = *v;
    }
    if (const auto v = get_optional_number(root, "top level", "seed")) {
        if (*v != std::floor(*v)) throw ConfigError("config: seed must be an integer");
        cfg.seed = static_cast<long long>(*v);
    }
    if (root.contains("out")) cfg.out_dir = get_string(root, "top level", "out");
    if (root.contains("paper_literal")) {
        if (!root["paper_literal"].is_boolean())
            throw ConfigError("config: paper_literal must be a boolean");
        cfg.paper_literal = root["paper_literal"].get<bool>();
    }
    if (const auto v = get_optional_number(root, "top level", "samples")) {
        if (*v < 1 || *v != std::floor(*v))
            throw ConfigError("config: samples must be an integer >= 1");
        cfg.samples = static_cast<int>(*v);
    }
    if (root.contains("threshold")) {
        const json& t = root["threshold"];
        if (!t.is_object()) throw ConfigError("config: 'threshold' must be an object");
        check_keys(t, "threshold", {"parameter", "predicate", "bracket", "tol"});
        RunConfig::Threshold th;
        const std::string par = get_string(t, "threshold", "parameter");
        if (par == "epsilon") th.sweep = SweepParameter::epsilon;
        else if (par == "b") th.sweep = SweepParameter::b;
        else throw ConfigError("config: threshold.parameter must be 'epsilon' or 'b'");
        const std::string pred = get_string(t, "threshold", "predicate");
        if (pred == "criterion_smooth")
            th.predicate = ThresholdPredicate::criterion_smooth;
        else if (pred == "certificate_issued")
            th.predicate = ThresholdPredicate::certificate_issued;
        else
            throw ConfigError(
                "config: threshold.predicate must be 'criterion_smooth' or 'certificate_issued'");
        if (!t.contains("bracket") || !t["bracket"].is_array() || t["bracket"].size() != 2 ||
            !t["bracket"][0].is_number() || !t["bracket"][1].is_number())
            throw ConfigError("config: threshold.bracket must be [lo, hi]");
        th.lo = t["bracket"][0].get<double>();
        th.hi = t["bracket"][1].get<double>();
        if (!(th.lo < th.hi)) throw ConfigError("config: threshold.bracket needs lo < hi");
        if (const auto v = get_optional_number(t, "threshold", "tol")) {
            if (!(*v > 0.0)) throw ConfigError("config: threshold.tol must be > 0");
            th.tol = *v;
        }
        cfg.threshold = th;
    }
    return cfg;
}

GriddedData load_grid_csv(const std::string& path, const PhysicalParams& params) {
    std::ifstream in(path);
    if (!in) throw ConfigError("grid: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("grid: empty file " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "x1,x2,u1,u2,rho,p")
        throw ConfigError("grid: " + path + ": header must be x1,x2,u1,u2,rho,p");

    std::vector<double> x1, x2, u1, u2, rho, p;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream row(line);
        double vals[6];
        std::string cell;
        for (int c = 0; c < 6; ++c) {
            if (!std::getline(row, cell, ','))
                throw ConfigError("grid: " + path + ":" + std::to_string(lineno) +
                                  ": expected 6 comma-separated values");
            try {
                size_t used = 0;
                vals[c] = std::stod(cell, &used);
                while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used])))
                    ++used;
                if (used != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw ConfigError("grid: " + path + ":" + std::to_string(lineno) +
                                  ": bad number '" + cell + "'");
            }
        }
        x1.push_back(vals[0]);
        x2.push_back(vals[1]);
        u1.push_back(vals[2]);
        u2.push_back(vals[3]);
        rho.push_back(vals[4]);
        p.push_back(vals[5]);
    }

    const size_t cells = x1.size();
    const int n = static_cast<int>(std::llround(std::sqrt(static_cast<double>(cells))));
    if (static_cast<size_t>(n) * n != cells)
        throw ConfigError("grid: " + path + ": row count " + std::to_string(cells) +
                          " is not a perfect square");
    if (n < 16) throw ConfigError("grid: " + path + ": n must be >= 16");
    if (!(x1[1] > x1[0]))
        throw ConfigError("grid: " + path + ": cells must be row-major with x1 fastest");
    const double h = x1[1] - x1[0];
    const double half_width = n * h / 2.0;

    GriddedData g;
    g.n = n;
    g.half_width = half_width;
    g.params = params;
    g.u1 = std::move(u1);
    g.u2 = std::move(u2);
    g.rho = std::move(rho);
    g.p = std::move(p);

    const double coord_tol = 1e-9 * std::max(1.0, half_width);
    for (size_t k = 0; k < cells; ++k) {
        const Vec2 want = g.center(static_cast<int>(k) % n, static_cast<int>(k) / n);
        if (std::abs(x1[k] - want.x) > coord_tol || std::abs(x2[k] - want.y) > coord_tol)
            throw ConfigError("grid: " + path + ": cell coordinates at row " +
                              std::to_string(k + 2) +
                              " do not match row-major cell centers");
    }
    g.validate();
    return g;
}

void save_grid_csv(const GriddedData& grid, const std::string& path) {
    std::ostringstream o;
    o << "x1,x2,u1,u2,rho,p\n";
    char buf[192];
    for (int j = 0; j < grid.n; ++j)
        for (int i = 0; i < grid.n; ++i) {
            const int k = grid.index(i, j);
            const Vec2 x = grid.center(i, j);
            // 17 significant digits: exact double round-trip for data files.
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                          x.x, x.y, grid.u1[k], grid.u2[k], grid.rho[k], grid.p[k]);
            o << buf;
        }
    write_file_atomic(path, o.str());
}

}  // namespace gascert
