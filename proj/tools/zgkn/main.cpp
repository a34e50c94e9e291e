// Command-line front end for the zGKN Dirac bound-state solver. Talks to the
// core exclusively through the C API in zgkn.h.
//
// Exit codes: 0 success; 1 error; 2 sufficient conditions fail or the scan
// comes back empty without --override; 3 `check` found a violated condition.

#include "zgkn.h"

#include "CLI11.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace {

struct ConfigHandle {
    zgkn_config* ptr = zgkn_config_new();
    ConfigHandle() = default;
    ConfigHandle(const ConfigHandle&) = delete;
    ConfigHandle& operator=(const ConfigHandle&) = delete;
    ~ConfigHandle() { zgkn_config_free(ptr); }
};

struct OwnedString {
    char* ptr = nullptr;
    OwnedString() = default;
    OwnedString(const OwnedString&) = delete;
    OwnedString& operator=(const OwnedString&) = delete;
    ~OwnedString() { zgkn_string_free(ptr); }
};

int fail(zgkn_status status) {
    std::cerr << "error (" << zgkn_status_name(status)
              << "): " << zgkn_last_error_message() << "\n";
    return 1;
}

// path empty or "-" means stdout
int write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return 0;
    }
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) {
        std::cerr << "error: cannot write output file '" << path << "'\n";
        return 1;
    }
    return 0;
}

// Flag values collected as strings and applied to the config in a fixed
// order: file first, then flags (so flags override the file).
struct PendingConfig {
    std::string file;
    std::vector<std::pair<std::string, std::string>> entries;

    void option(CLI::App* cmd, const std::string& flag, const std::string& key,
                const std::string& desc) {
        cmd->add_option_function<std::string>(
            flag,
            [this, key](const std::string& v) { entries.emplace_back(key, v); },
            desc);
    }

    zgkn_status apply(zgkn_config* cfg) const {
        if (!file.empty())
            if (auto st = zgkn_config_load_file(cfg, file.c_str()); st != ZGKN_OK)
                return st;
        for (const auto& [key, value] : entries)
            if (auto st = zgkn_config_set(cfg, key.c_str(), value.c_str());
                st != ZGKN_OK)
                return st;
        return ZGKN_OK;
    }
};

void register_model(CLI::App* cmd, PendingConfig& p) {
    cmd->add_option("--config", p.file, "flat key = value config file");
    p.option(cmd, "--a", "a", "ring radius a (units of hbar/(m c))");
    p.option(cmd, "--gamma", "gamma", "coupling gamma = e Q (excludes --Z)");
    p.option(cmd, "--Z", "Z", "nuclear charge number; gamma = Z/137.036");
    p.option(cmd, "--timestamp", "timestamp", "fixed report timestamp string");
}

void register_solver(CLI::App* cmd, PendingConfig& p, bool& override_flag) {
    p.option(cmd, "--kappa", "kappa_list",
             "comma-separated kappa channels (default 0.5,-0.5)");
    p.option(cmd, "--e-lo", "e_lo", "scan window lower edge (default -1+1e-6)");
    p.option(cmd, "--e-hi", "e_hi", "scan window upper edge (default 1-1e-6)");
    p.option(cmd, "--branches", "max_branches",
             "angular branches per channel (default 2)");
    p.option(cmd, "--max-eigenvalues", "max_eigenvalues",
             "cap on reported eigenvalues per cell (default 64)");
    p.option(cmd, "--scan-step", "scan_step", "energy grid step (default 1e-3)");
    p.option(cmd, "--root-tol", "root_tol",
             "eigenvalue root tolerance (default 1e-11)");
    p.option(cmd, "--dedup-tol", "dedup_tol",
             "merge eigenvalues closer than this (default 1e-9)");
    p.option(cmd, "--r-infinity", "r_infinity",
             "radial truncation radius (default max(50, 30/sqrt(1-E^2)))");
    p.option(cmd, "--rel-tol", "rel_tol", "ODE relative tolerance (default 1e-10)");
    p.option(cmd, "--abs-tol", "abs_tol", "ODE absolute tolerance (default 1e-12)");
    p.option(cmd, "--theta0", "theta0",
             "angular start offset from the poles (default 1e-6)");
    p.option(cmd, "--threads", "threads",
             "worker threads (default: available cores)");
    cmd->add_flag("--override", override_flag,
                  "run even when the sufficient conditions fail");
    cmd->add_flag_function(
        "--allow-integer-kappa",
        [&p](std::int64_t) { p.entries.emplace_back("allow_integer_kappa", "1"); },
        "permit integer kappa (default: half-odd-integer only)");
}

zgkn_status apply_with_defaults(const PendingConfig& p, bool override_flag,
                                zgkn_config* cfg) {
    if (auto st = p.apply(cfg); st != ZGKN_OK) return st;
    if (override_flag)
        if (auto st = zgkn_config_set(cfg, "override_conditions", "1");
            st != ZGKN_OK)
            return st;
    OwnedString threads;
    if (auto st = zgkn_config_get(cfg, "threads", &threads.ptr); st != ZGKN_OK)
        return st;
    if (!threads.ptr) {
        unsigned n = std::thread::hardware_concurrency();
        if (n == 0) n = 1;
        if (auto st = zgkn_config_set(cfg, "threads", std::to_string(n).c_str());
            st != ZGKN_OK)
            return st;
    }
    return ZGKN_OK;
}

// Shared gate for the solver commands: reports to stderr and yields exit
// code 2 when the sufficient conditions fail and --override is absent.
int gate_conditions(zgkn_config* cfg, bool override_flag, bool* failed) {
    int ring_ok = 0, coupling_ok = 0;
    double threshold = 0;
    if (auto st = zgkn_check_conditions(cfg, &ring_ok, &coupling_ok, &threshold);
        st != ZGKN_OK)
        return fail(st);
    if (failed) *failed = !(ring_ok && coupling_ok);
    if (ring_ok && coupling_ok) return 0;
    if (override_flag) return 0;
    std::cerr << "sufficient conditions for a nonempty spectrum in the gap "
                 "fail:\n"
              << "  ring_radius_ok (2|a| < 1): " << (ring_ok ? "true" : "false")
              << "\n  coupling_ok (gamma < sqrt(2|a|(1-2|a|)) = " << threshold
              << "): " << (coupling_ok ? "true" : "false")
              << "\nuse --override to scan anyway\n";
    return 2;
}

int cmd_spectrum(const PendingConfig& p, bool override_flag,
                 const std::string& out_json, const std::string& out_csv) {
    ConfigHandle cfg;
    if (auto st = apply_with_defaults(p, override_flag, cfg.ptr); st != ZGKN_OK)
        return fail(st);
    if (int rc = gate_conditions(cfg.ptr, override_flag, nullptr); rc != 0)
        return rc;
    zgkn_spectrum* spec = nullptr;
    if (auto st = zgkn_spectrum_run(cfg.ptr, &spec); st != ZGKN_OK)
        return fail(st);
    OwnedString json, csv;
    auto st_json = zgkn_spectrum_to_json(spec, &json.ptr);
    auto st_csv =
        out_csv.empty() ? ZGKN_OK : zgkn_spectrum_to_csv(spec, &csv.ptr);
    int count = zgkn_spectrum_count(spec);
    zgkn_spectrum_free(spec);
    if (st_json != ZGKN_OK) return fail(st_json);
    if (st_csv != ZGKN_OK) return fail(st_csv);
    if (int rc = write_output(out_json, json.ptr); rc != 0) return rc;
    if (!out_csv.empty())
        if (int rc = write_output(out_csv, csv.ptr); rc != 0) return rc;
    if (count == 0 && !override_flag) {
        std::cerr << "no eigenvalue found in the scan window; "
                     "use --override to accept an empty spectrum\n";
        return 2;
    }
    return 0;
}

int cmd_groundstate(const PendingConfig& p, bool override_flag,
                    const std::string& out_csv, const std::string& summary) {
    ConfigHandle cfg;
    if (auto st = apply_with_defaults(p, override_flag, cfg.ptr); st != ZGKN_OK)
        return fail(st);
    if (int rc = gate_conditions(cfg.ptr, override_flag, nullptr); rc != 0)
        return rc;
    zgkn_boundstate* st_handle = nullptr;
    if (auto st = zgkn_groundstate_run(cfg.ptr, &st_handle); st != ZGKN_OK) {
        if (st == ZGKN_ERR_NO_BRANCH_FOUND && !override_flag) {
            std::cerr << zgkn_last_error_message() << "\n";
            return 2;
        }
        return fail(st);
    }
    OwnedString csv, json;
    auto st1 = zgkn_boundstate_to_csv(st_handle, &csv.ptr);
    auto st2 = zgkn_boundstate_to_json(st_handle, &json.ptr);
    zgkn_boundstate_free(st_handle);
    if (st1 != ZGKN_OK) return fail(st1);
    if (st2 != ZGKN_OK) return fail(st2);
    bool csv_to_file = !out_csv.empty() && out_csv != "-";
    if (int rc = write_output(out_csv, csv.ptr); rc != 0) return rc;
    if (!summary.empty())
        return write_output(summary, json.ptr);
    if (csv_to_file)
        return write_output("", json.ptr);
    return 0;
}

int cmd_fields(const PendingConfig& p, const std::string& out) {
    ConfigHandle cfg;
    if (auto st = p.apply(cfg.ptr); st != ZGKN_OK) return fail(st);
    zgkn_fieldgrid* grid = nullptr;
    if (auto st = zgkn_fields_run(cfg.ptr, &grid); st != ZGKN_OK)
        return fail(st);
    OwnedString csv;
    auto st = zgkn_fieldgrid_to_csv(grid, &csv.ptr);
    zgkn_fieldgrid_free(grid);
    if (st != ZGKN_OK) return fail(st);
    return write_output(out, csv.ptr);
}

int cmd_sommerfeld(const PendingConfig& p, int n, int kappa_s, double alpha,
                   bool table, bool json, int n_max, const std::string& out) {
    ConfigHandle cfg;
    if (auto st = p.apply(cfg.ptr); st != ZGKN_OK) return fail(st);
    OwnedString gamma_value;
    if (auto st = zgkn_config_get(cfg.ptr, "gamma", &gamma_value.ptr);
        st == ZGKN_OK && gamma_value.ptr)
        alpha = std::strtod(gamma_value.ptr, nullptr);
    OwnedString z_value;
    if (auto st = zgkn_config_get(cfg.ptr, "Z", &z_value.ptr);
        st == ZGKN_OK && z_value.ptr)
        alpha = std::strtod(z_value.ptr, nullptr) / 137.036;
    if (table) {
        OwnedString s;
        auto st = json ? zgkn_sommerfeld_table_json(cfg.ptr, alpha, n_max, &s.ptr)
                       : zgkn_sommerfeld_table_csv(alpha, n_max, &s.ptr);
        if (st != ZGKN_OK) return fail(st);
        return write_output(out, s.ptr);
    }
    zgkn_status st = ZGKN_OK;
    double e = zgkn_sommerfeld_energy(n, kappa_s, alpha, &st);
    if (st != ZGKN_OK) return fail(st);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g\n", e);
    return write_output(out, buf);
}

int cmd_check(const PendingConfig& p, const std::string& out) {
    ConfigHandle cfg;
    if (auto st = p.apply(cfg.ptr); st != ZGKN_OK) return fail(st);
    int ring_ok = 0, coupling_ok = 0;
    if (auto st = zgkn_check_conditions(cfg.ptr, &ring_ok, &coupling_ok, nullptr);
        st != ZGKN_OK)
        return fail(st);
    OwnedString json;
    if (auto st = zgkn_conditions_json(cfg.ptr, &json.ptr); st != ZGKN_OK)
        return fail(st);
    if (int rc = write_output(out, json.ptr); rc != 0) return rc;
    return (ring_ok && coupling_ok) ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dirac bound states on the zero-gravity Kerr-Newman "
                 "double-sheeted spacetime"};
    app.set_version_flag("--version", std::string(zgkn_version()));
    app.require_subcommand(1);

    PendingConfig p_spectrum, p_ground, p_fields, p_sommerfeld, p_check;
    bool ov_spectrum = false, ov_ground = false;
    std::string spectrum_out, spectrum_csv;
    std::string ground_out, ground_summary;
    std::string fields_out, sommerfeld_out, check_out;
    int som_n = 1, som_kappa = 1, som_n_max = 3;
    double som_alpha = 1.0 / 137.036;
    bool som_table = false, som_json = false;

    auto* spectrum = app.add_subcommand(
        "spectrum", "scan the gap for the discrete spectrum, emit a JSON report");
    register_model(spectrum, p_spectrum);
    register_solver(spectrum, p_spectrum, ov_spectrum);
    spectrum->add_option("--out", spectrum_out, "JSON report path (default stdout)");
    spectrum->add_option("--csv", spectrum_csv, "also write the eigenvalue table CSV here");

    auto* ground = app.add_subcommand(
        "groundstate", "profile of the lowest positive-energy bound state");
    register_model(ground, p_ground);
    register_solver(ground, p_ground, ov_ground);
    p_ground.option(ground, "--r-nodes", "r_nodes_per_sheet",
                    "radial profile nodes per sheet (default 2001)");
    p_ground.option(ground, "--theta-nodes", "theta_nodes",
                    "interior colatitude profile nodes (default 512)");
    ground->add_option("--out", ground_out, "profile CSV path (default stdout)");
    ground->add_option("--summary", ground_summary,
                       "summary JSON path ('-' = stdout)");

    auto* fields = app.add_subcommand(
        "fields", "electromagnetic field samples on an (r, theta) grid, CSV");
    register_model(fields, p_fields);
    p_fields.option(fields, "--current", "current",
                    "ring current I; magnetic charge becomes I pi a");
    p_fields.option(fields, "--r-max", "field_r_max", "grid half-width in r");
    p_fields.option(fields, "--nr", "field_nr", "grid nodes in r (default 101)");
    p_fields.option(fields, "--ntheta", "field_ntheta",
                    "grid nodes in theta (default 33)");
    p_fields.option(fields, "--guard", "field_guard",
                    "ring exclusion distance (default 1e-6)");
    fields->add_option("--out", fields_out, "CSV path (default stdout)");

    auto* sommerfeld = app.add_subcommand(
        "sommerfeld", "closed-form fine-structure levels of the a -> 0 limit");
    register_model(sommerfeld, p_sommerfeld);
    sommerfeld->add_option("--n", som_n, "principal quantum number");
    sommerfeld->add_option("--kappa-s", som_kappa, "angular quantum number >= 1");
    sommerfeld->add_option("--alpha", som_alpha,
                           "coupling (default 1/137.036; --gamma/--Z override)");
    sommerfeld->add_flag("--table", som_table, "emit the whole ladder up to --n-max");
    sommerfeld->add_flag("--json", som_json, "table as JSON instead of CSV");
    sommerfeld->add_option("--n-max", som_n_max, "table ladder depth (default 3)");
    sommerfeld->add_option("--out", sommerfeld_out, "output path (default stdout)");

    auto* check = app.add_subcommand(
        "check", "sufficient conditions for a nonempty spectrum in the gap");
    register_model(check, p_check);
    check->add_option("--out", check_out, "JSON path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    if (spectrum->parsed())
        return cmd_spectrum(p_spectrum, ov_spectrum, spectrum_out, spectrum_csv);
    if (ground->parsed())
        return cmd_groundstate(p_ground, ov_ground, ground_out, ground_summary);
    if (fields->parsed()) return cmd_fields(p_fields, fields_out);
    if (sommerfeld->parsed())
        return cmd_sommerfeld(p_sommerfeld, som_n, som_kappa, som_alpha,
                              som_table, som_json, som_n_max, sommerfeld_out);
    if (check->parsed()) return cmd_check(p_check, check_out);
    return 1;
}
