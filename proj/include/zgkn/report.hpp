#pragma once

#include "zgkn/fields.hpp"
#include "zgkn/spectrum.hpp"
#include "zgkn/wavefunction.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace zgkn::io {

// Flat key=value configuration shared by the config-file format, the C API
// and the CLI flags. Keys are validated against the known set; values stay
// strings until a typed getter resolves them.
class Config {
public:
    static bool is_known_key(const std::string& key);

    // throws std::invalid_argument on unknown keys or malformed values
    void set(const std::string& key, const std::string& value);
    void load_file(const std::string& path);
    std::optional<std::string> get(const std::string& key) const;

    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_list(const std::string& key,
                                 std::vector<double> fallback) const;

    // gamma XOR Z; Z implies gamma = Z * fine_structure
    geom::ModelParams model_params() const;
    double coupling_gamma() const;
    // ring charge in Gaussian natural units, Q = gamma/sqrt(alpha)
    double charge_Q() const;

    spectrum::SpectrumRequest spectrum_request() const;
    fields::FieldGridSpec field_grid_spec() const;
    num::OdeOptions ode_options() const;
    int profile_r_nodes() const;   // per sheet
    int profile_theta_nodes() const;

    const std::vector<std::pair<std::string, std::string>>& entries() const {
        return kv_;
    }

private:
    std::vector<std::pair<std::string, std::string>> kv_;
};

// ISO-8601 UTC stamp; honors the config key "timestamp" and then
// SOURCE_DATE_EPOCH before falling back to the wall clock.
std::string timestamp(const Config& cfg);

// All numbers are printed with %.17g so outputs round-trip bit-exactly and
// byte-compare across runs and thread counts.
std::string spectrum_report_json(const spectrum::SpectrumReport& rep,
                                 const Config& cfg);
std::string spectrum_report_csv(const spectrum::SpectrumReport& rep);
std::string boundstate_json(const wavefn::BoundState& st, const Config& cfg);
std::string boundstate_csv(const wavefn::BoundState& st);
std::string fieldgrid_csv(const fields::FieldGrid& grid);
std::string sommerfeld_table_json(double alpha, int n_max, const Config& cfg);
std::string sommerfeld_table_csv(double alpha, int n_max);
std::string conditions_json(const geom::ModelParams& params, const Config& cfg);

} // namespace zgkn::io
