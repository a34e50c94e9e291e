#include "zgkn/report.hpp"
#include "zgkn/errors.hpp"
#include "zgkn/version.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace zgkn::io {

namespace {

const std::array<const char*, 28> known_keys = {
    "a",          "gamma",          "Z",
    "kappa_list", "e_lo",           "e_hi",
    "max_branches", "max_eigenvalues", "scan_step",
    "root_tol",   "dedup_tol",      "r_infinity",
    "rel_tol",    "abs_tol",        "theta0",
    "threads",    "override_conditions", "allow_integer_kappa",
    "r_nodes_per_sheet", "theta_nodes", "field_r_max",
    "field_nr",   "field_ntheta",   "field_guard",
    "current",    "n_max",          "timestamp",
    "out",
};

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    // allow simple fractions like 1/2 for kappa-style values
    std::size_t slash = v.find('/');
    try {
        if (slash != std::string::npos) {
            double num = std::stod(v.substr(0, slash));
            double den = std::stod(v.substr(slash + 1));
            if (den == 0) throw std::invalid_argument("zero denominator");
            return num / den;
        }
        std::size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': bad number '" + v + "'");
    }
}

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out;
}

std::string header_fields(const Config& cfg) {
    std::string s;
    s += "\"schema_version\": \"" + std::string(schema_version) + "\",\n";
    s += "  \"tool_version\": \"" + std::string(tool_version) + "\",\n";
    s += "  \"units\": \"" + std::string(units_note) + "\",\n";
    s += "  \"timestamp\": \"" + json_escape(timestamp(cfg)) + "\",\n";
    // raw key=value entries so a report can reproduce its run bit-identically
    s += "  \"config\": {";
    bool first = true;
    for (const auto& [k, v] : cfg.entries()) {
        if (k == "timestamp" || k == "out") continue;
        if (!first) s += ", ";
        first = false;
        s += "\"" + json_escape(k) + "\": \"" + json_escape(v) + "\"";
    }
    s += "},\n";
    return s;
}

std::string params_json(const geom::ModelParams& p) {
    return "{\"a\": " + fmt_double(p.a) + ", \"gamma\": " + fmt_double(p.gamma) + "}";
}

std::string conditions_body(const spectrum::SufficientConditions& c) {
    std::string s = "{";
    s += "\"ring_radius_ok\": " + std::string(c.ring_radius_ok ? "true" : "false");
    s += ", \"coupling_ok\": " + std::string(c.coupling_ok ? "true" : "false");
    s += ", \"threshold\": " + fmt_double(c.threshold);
    s += ", \"ok\": " + std::string(c.ok() ? "true" : "false");
    s += "}";
    return s;
}

} // namespace

bool Config::is_known_key(const std::string& key) {
    return std::find_if(known_keys.begin(), known_keys.end(), [&](const char* k) {
               return key == k;
           }) != known_keys.end();
}

void Config::set(const std::string& key, const std::string& value) {
    if (!is_known_key(key))
        throw std::invalid_argument("unknown config key '" + key + "'");
    for (auto& [k, v] : kv_) {
        if (k == key) {
            v = value;
            return;
        }
    }
    kv_.emplace_back(key, value);
}

void Config::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        set(trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
    }
}

std::optional<std::string> Config::get(const std::string& key) const {
    for (const auto& [k, v] : kv_)
        if (k == key) return v;
    return std::nullopt;
}

double Config::get_double(const std::string& key, double fallback) const {
    auto v = get(key);
    return v ? parse_double(key, *v) : fallback;
}

int Config::get_int(const std::string& key, int fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    double x = parse_double(key, *v);
    int i = static_cast<int>(x);
    if (static_cast<double>(i) != x)
        throw std::invalid_argument("config key '" + key + "' must be an integer");
    return i;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    std::string s = *v;
    std::transform(s.begin(), s.end(), s.begin(), ::tolower);
    if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
    if (s == "0" || s == "false" || s == "no" || s == "off") return false;
    throw std::invalid_argument("config key '" + key + "': bad boolean '" + *v + "'");
}

std::vector<double> Config::get_list(const std::string& key,
                                     std::vector<double> fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    std::vector<double> out;
    std::stringstream ss(*v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::string t = trim(item);
        if (!t.empty()) out.push_back(parse_double(key, t));
    }
    if (out.empty())
        throw std::invalid_argument("config key '" + key + "': empty list");
    return out;
}

double Config::coupling_gamma() const {
    auto g = get("gamma");
    auto z = get("Z");
    if (g && z)
        throw std::invalid_argument("give either gamma or Z, not both");
    if (z) return parse_double("Z", *z) * fine_structure;
    if (g) return parse_double("gamma", *g);
    return 0.0;
}

geom::ModelParams Config::model_params() const {
    geom::ModelParams p;
    p.a = get_double("a", 0.0);
    p.gamma = coupling_gamma();
    return p;
}

double Config::charge_Q() const {
    return coupling_gamma() / std::sqrt(fine_structure);
}

num::OdeOptions Config::ode_options() const {
    num::OdeOptions o;
    o.rel_tol = get_double("rel_tol", 1e-10);
    o.abs_tol = get_double("abs_tol", 1e-12);
    return o;
}

spectrum::SpectrumRequest Config::spectrum_request() const {
    spectrum::SpectrumRequest req;
    req.params = model_params();
    req.kappas = get_list("kappa_list", {0.5, -0.5});
    req.e_lo = get_double("e_lo", -1 + 1e-6);
    req.e_hi = get_double("e_hi", 1 - 1e-6);
    req.max_branches = get_int("max_branches", 2);
    req.max_eigenvalues = get_int("max_eigenvalues", 64);
    req.scan_step = get_double("scan_step", 1e-3);
    req.root_tol = get_double("root_tol", 1e-11);
    req.dedup_tol = get_double("dedup_tol", 1e-9);
    req.r_infinity = get_double("r_infinity", 0.0);
    req.theta0 = get_double("theta0", 1e-6);
    req.ode = ode_options();
    req.override_conditions = get_bool("override_conditions", false);
    req.allow_integer_kappa = get_bool("allow_integer_kappa", false);
    req.threads = get_int("threads", 1);
    return req;
}

fields::FieldGridSpec Config::field_grid_spec() const {
    fields::FieldGridSpec spec;
    geom::ModelParams p = model_params();
    spec.r_max = get_double("field_r_max", 5 * std::max(std::abs(p.a), 1.0));
    spec.n_r = get_int("field_nr", 101);
    spec.n_theta = get_int("field_ntheta", 33);
    spec.guard = get_double("field_guard", 1e-6);
    spec.Qe = charge_Q();
    auto cur = get("current");
    spec.Qm = cur ? parse_double("current", *cur) * 3.14159265358979323846 * p.a
                  : spec.Qe;
    return spec;
}

int Config::profile_r_nodes() const { return get_int("r_nodes_per_sheet", 2001); }
int Config::profile_theta_nodes() const { return get_int("theta_nodes", 512); }

std::string timestamp(const Config& cfg) {
    if (auto t = cfg.get("timestamp")) return *t;
    std::time_t now;
    if (const char* sde = std::getenv("SOURCE_DATE_EPOCH"))
        now = static_cast<std::time_t>(std::strtoll(sde, nullptr, 10));
    else
        now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

std::string spectrum_report_json(const spectrum::SpectrumReport& rep,
                                 const Config& cfg) {
    std::string s = "{\n  ";
    s += header_fields(cfg);
    s += "  \"params\": " + params_json(rep.params) + ",\n";
    s += "  \"channels\": [";
    for (std::size_t i = 0; i < rep.channels.size(); ++i) {
        if (i) s += ", ";
        s += fmt_double(rep.channels[i]);
    }
    s += "],\n";
    s += "  \"eigenvalues\": [";
    for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i) {
        const auto& p = rep.eigenvalues[i];
        s += (i ? ",\n    " : "\n    ");
        s += "{\"E\": " + fmt_double(p.E);
        s += ", \"lambda\": " + fmt_double(p.lambda);
        s += ", \"kappa\": " + fmt_double(p.kappa);
        s += ", \"n_theta\": " + std::to_string(p.n_theta);
        s += ", \"winding\": " + std::to_string(p.winding);
        s += ", \"residual_angular\": " + fmt_double(p.residual_angular);
        s += ", \"residual_radial\": " + fmt_double(p.residual_radial);
        s += "}";
    }
    s += rep.eigenvalues.empty() ? "],\n" : "\n  ],\n";
    s += "  \"symmetry_defect\": " + fmt_double(rep.symmetry_defect) + ",\n";
    s += "  \"gap_ok\": " + std::string(rep.gap_ok ? "true" : "false") + ",\n";
    s += "  \"conditions\": " + conditions_body(rep.conditions) + ",\n";
    const auto& m = rep.scan;
    s += "  \"scan_metadata\": {";
    s += "\"e_lo\": " + fmt_double(m.e_lo);
    s += ", \"e_hi\": " + fmt_double(m.e_hi);
    s += ", \"scan_step\": " + fmt_double(m.scan_step);
    s += ", \"root_tol_requested\": " + fmt_double(m.root_tol_requested);
    s += ", \"root_tol_used\": " + fmt_double(m.root_tol_used);
    s += ", \"dedup_tol\": " + fmt_double(m.dedup_tol);
    s += ", \"cells\": " + std::to_string(m.cells);
    s += ", \"threads\": " + std::to_string(m.threads);
    s += ", \"grid_evaluations\": " + std::to_string(m.grid_evaluations);
    s += ", \"refine_evaluations\": " + std::to_string(m.refine_evaluations);
    s += ", \"eigenvalue_cap_hit\": " +
         std::string(m.eigenvalue_cap_hit ? "true" : "false");
    s += "}\n}\n";
    return s;
}

std::string spectrum_report_csv(const spectrum::SpectrumReport& rep) {
    std::string s = "# units: " + std::string(units_note) + "\n";
    s += "E,lambda,kappa,n_theta,winding,residual_angular,residual_radial\n";
    for (const auto& p : rep.eigenvalues) {
        s += fmt_double(p.E) + "," + fmt_double(p.lambda) + "," +
             fmt_double(p.kappa) + "," + std::to_string(p.n_theta) + "," +
             std::to_string(p.winding) + "," + fmt_double(p.residual_angular) +
             "," + fmt_double(p.residual_radial) + "\n";
    }
    return s;
}

std::string boundstate_json(const wavefn::BoundState& st, const Config& cfg) {
    std::string s = "{\n  ";
    s += header_fields(cfg);
    s += "  \"params\": " + params_json(st.params) + ",\n";
    const auto& p = st.pair;
    s += "  \"state\": {\"E\": " + fmt_double(p.E);
    s += ", \"lambda\": " + fmt_double(p.lambda);
    s += ", \"kappa\": " + fmt_double(p.kappa);
    s += ", \"n_theta\": " + std::to_string(p.n_theta);
    s += ", \"winding\": " + std::to_string(p.winding);
    s += ", \"residual_angular\": " + fmt_double(p.residual_angular);
    s += ", \"residual_radial\": " + fmt_double(p.residual_radial);
    s += "},\n";
    s += "  \"w_plus\": " + fmt_double(st.w_plus) + ",\n";
    s += "  \"w_minus\": " + fmt_double(st.w_minus) + ",\n";
    s += "  \"norm_scale\": " + fmt_double(st.norm_scale) + ",\n";
    s += "  \"underflow_clamped\": " +
         std::string(st.underflow_clamped ? "true" : "false") + ",\n";
    s += "  \"r_infinity\": " + fmt_double(st.r_infinity_used) + ",\n";
    s += "  \"grid\": {\"n_r_per_sheet\": " + std::to_string(st.grids.n_r_per_sheet);
    s += ", \"r_min\": " + fmt_double(st.grids.r_min);
    s += ", \"n_theta\": " + std::to_string(static_cast<int>(st.grids.theta_nodes.size()));
    s += "}\n}\n";
    return s;
}

std::string boundstate_csv(const wavefn::BoundState& st) {
    std::string s = "# units: " + std::string(units_note) + "\n";
    s += "r,density,lnR,Omega\n";
    for (std::size_t i = 0; i < st.grids.r_nodes.size(); ++i) {
        s += fmt_double(st.grids.r_nodes[i]) + "," + fmt_double(st.density[i]) +
             "," + fmt_double(st.lnR[i]) + "," + fmt_double(st.Omega[i]) + "\n";
    }
    return s;
}

std::string fieldgrid_csv(const fields::FieldGrid& grid) {
    std::string s = "# units: " + std::string(units_note) + "\n";
    s += "r,theta,sheet,phi_el,E_r,E_z,B_r,B_z\n";
    for (const auto& f : grid.samples) {
        s += fmt_double(f.r) + "," + fmt_double(f.theta) + "," +
             std::to_string(f.sheet) + "," + fmt_double(f.phi_el) + "," +
             fmt_double(f.E_R) + "," + fmt_double(f.E_z) + "," +
             fmt_double(f.B_R) + "," + fmt_double(f.B_z) + "\n";
    }
    return s;
}

std::string sommerfeld_table_json(double alpha, int n_max, const Config& cfg) {
    std::string s = "{\n  ";
    s += header_fields(cfg);
    s += "  \"alpha\": " + fmt_double(alpha) + ",\n";
    s += "  \"levels\": [";
    bool first = true;
    for (int n = 1; n <= n_max; ++n) {
        for (int ks = 1; ks <= n; ++ks) {
            if (alpha >= ks) continue;
            double e = spectrum::sommerfeld_energy(n, ks, alpha);
            s += first ? "\n    " : ",\n    ";
            first = false;
            s += "{\"n\": " + std::to_string(n) + ", \"kappa_s\": " +
                 std::to_string(ks) + ", \"E\": " + fmt_double(e) +
                 ", \"binding\": " + fmt_double(e - 1) +
                 ", \"bohr_binding\": " + fmt_double(spectrum::bohr_energy(n, alpha)) +
                 "}";
        }
    }
    s += first ? "]\n}\n" : "\n  ]\n}\n";
    return s;
}

std::string sommerfeld_table_csv(double alpha, int n_max) {
    std::string s = "# units: " + std::string(units_note) + "\n";
    s += "n,kappa_s,E,binding,bohr_binding\n";
    for (int n = 1; n <= n_max; ++n) {
        for (int ks = 1; ks <= n; ++ks) {
            if (alpha >= ks) continue;
            double e = spectrum::sommerfeld_energy(n, ks, alpha);
            s += std::to_string(n) + "," + std::to_string(ks) + "," +
                 fmt_double(e) + "," + fmt_double(e - 1) + "," +
                 fmt_double(spectrum::bohr_energy(n, alpha)) + "\n";
        }
    }
    return s;
}

std::string conditions_json(const geom::ModelParams& params, const Config& cfg) {
    auto c = spectrum::check_sufficient_conditions(params);
    std::string s = "{\n  ";
    s += header_fields(cfg);
    s += "  \"params\": " + params_json(params) + ",\n";
    s += "  \"conditions\": " + conditions_body(c) + "\n}\n";
    return s;
}

} // namespace zgkn::io
