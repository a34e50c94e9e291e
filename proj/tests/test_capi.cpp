#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "zgkn.h"

#include <cmath>
#include <cstring>
#include <string>

namespace {

struct ConfigGuard {
    zgkn_config* cfg = zgkn_config_new();
    ~ConfigGuard() { zgkn_config_free(cfg); }
};

std::string take(char* s) {
    std::string out = s ? s : "";
    zgkn_string_free(s);
    return out;
}

} // namespace

TEST_CASE("identification strings") {
    CHECK(std::strlen(zgkn_version()) > 0);
    CHECK(std::string(zgkn_schema_version()) == "1");
    CHECK(std::string(zgkn_units_note()).find("mc^2") != std::string::npos);
    CHECK(std::string(zgkn_status_name(ZGKN_OK)) == "ok");
    CHECK(std::string(zgkn_status_name(ZGKN_ERR_OUT_OF_GAP)) == "out_of_gap");
    CHECK(std::string(zgkn_status_name(static_cast<zgkn_status>(99))) == "unknown");
}

TEST_CASE("config lifecycle and error reporting") {
    ConfigGuard g;
    REQUIRE(g.cfg != nullptr);
    CHECK(zgkn_config_set(g.cfg, "a", "1e-3") == ZGKN_OK);

    char* value = nullptr;
    CHECK(zgkn_config_get(g.cfg, "a", &value) == ZGKN_OK);
    CHECK(take(value) == "1e-3");

    value = reinterpret_cast<char*>(0x1);
    CHECK(zgkn_config_get(g.cfg, "gamma", &value) == ZGKN_OK);
    CHECK(value == nullptr); // unset key

    CHECK(zgkn_config_set(g.cfg, "not_a_key", "1") == ZGKN_ERR_INVALID_ARGUMENT);
    CHECK(std::strlen(zgkn_last_error_message()) > 0);

    CHECK(zgkn_config_set(nullptr, "a", "1") == ZGKN_ERR_INVALID_ARGUMENT);
    CHECK(zgkn_config_load_file(g.cfg, "/nonexistent/x.cfg") ==
          ZGKN_ERR_INVALID_ARGUMENT);
}

TEST_CASE("closed forms") {
    zgkn_status st = ZGKN_OK;
    double e = zgkn_sommerfeld_energy(1, 1, 1.0 / 137.036, &st);
    CHECK(st == ZGKN_OK);
    CHECK(e == doctest::Approx(0.99997337396862296).epsilon(1e-15));

    e = zgkn_sommerfeld_energy(1, 2, 1.0 / 137.036, &st);
    CHECK(std::isnan(e));
    CHECK(st == ZGKN_ERR_INVALID_QUANTUM_NUMBERS);
    CHECK(std::isnan(zgkn_sommerfeld_energy(1, 2, 1.0 / 137.036, nullptr)));

    CHECK(zgkn_bohr_energy(1, 1.0 / 137.036) ==
          doctest::Approx(-2.6625676904264428e-05).epsilon(1e-15));
    CHECK(std::isnan(zgkn_bohr_energy(0, 1.0 / 137.036)));
}

TEST_CASE("sufficient-condition checks") {
    ConfigGuard g;
    zgkn_config_set(g.cfg, "a", "5e-4");
    zgkn_config_set(g.cfg, "Z", "1");
    int ring = 0, coupling = 0;
    double threshold = 0;
    CHECK(zgkn_check_conditions(g.cfg, &ring, &coupling, &threshold) == ZGKN_OK);
    CHECK(ring == 1);
    CHECK(coupling == 1);
    CHECK(threshold == doctest::Approx(0.031606961258558219).epsilon(1e-15));

    ConfigGuard bad;
    zgkn_config_set(bad.cfg, "a", "0.6");
    zgkn_config_set(bad.cfg, "Z", "1");
    CHECK(zgkn_check_conditions(bad.cfg, &ring, &coupling, &threshold) == ZGKN_OK);
    CHECK(ring == 0);

    char* js = nullptr;
    REQUIRE(zgkn_conditions_json(bad.cfg, &js) == ZGKN_OK);
    std::string body = take(js);
    CHECK(body.find("\"ring_radius_ok\": false") != std::string::npos);
}

TEST_CASE("spectrum handle round trip") {
    ConfigGuard g;
    zgkn_config_set(g.cfg, "a", "1e-3");
    zgkn_config_set(g.cfg, "Z", "1");
    zgkn_config_set(g.cfg, "kappa_list", "1/2");
    zgkn_config_set(g.cfg, "e_lo", "0.99995");
    zgkn_config_set(g.cfg, "e_hi", "0.99998");
    zgkn_config_set(g.cfg, "max_branches", "1");
    zgkn_config_set(g.cfg, "timestamp", "T");

    zgkn_spectrum* spec = nullptr;
    REQUIRE(zgkn_spectrum_run(g.cfg, &spec) == ZGKN_OK);
    REQUIRE(spec != nullptr);
    CHECK(zgkn_spectrum_count(spec) == 1);
    CHECK(zgkn_spectrum_gap_ok(spec) == 1);

    double E = 0, lambda = 0, kappa = 0;
    int n_theta = -1, winding = -1;
    REQUIRE(zgkn_spectrum_eigenvalue(spec, 0, &E, &lambda, &kappa, &n_theta,
                                     &winding) == ZGKN_OK);
    CHECK(E == doctest::Approx(0.999973373971917).epsilon(5e-12));
    CHECK(lambda == doctest::Approx(-0.999000017751).epsilon(1e-9));
    CHECK(kappa == 0.5);
    CHECK(n_theta == 0);
    CHECK(winding == 0);
    CHECK(zgkn_spectrum_eigenvalue(spec, 7, &E, &lambda, &kappa, &n_theta,
                                   &winding) == ZGKN_ERR_INVALID_ARGUMENT);

    std::string js = take([&] { char* s = nullptr; zgkn_spectrum_to_json(spec, &s); return s; }());
    CHECK(js.find("\"config\": {\"a\": \"1e-3\", \"Z\": \"1\"") != std::string::npos);
    std::string csv = take([&] { char* s = nullptr; zgkn_spectrum_to_csv(spec, &s); return s; }());
    CHECK(csv.find("E,lambda,kappa") != std::string::npos);
    std::string match = take([&] {
        char* s = nullptr;
        zgkn_spectrum_sommerfeld_match_csv(spec, 1.0 / 137.036, 3, &s);
        return s;
    }());
    CHECK(match.find("computed_E,n,kappa_s,sommerfeld_E,deviation") !=
          std::string::npos);
    CHECK(match.find(",1,1,") != std::string::npos);

    zgkn_spectrum_free(spec);
}

TEST_CASE("spectrum run surfaces solver failures") {
    ConfigGuard g;
    zgkn_config_set(g.cfg, "a", "0.6"); // ring too large without an override
    zgkn_config_set(g.cfg, "Z", "1");
    zgkn_spectrum* spec = nullptr;
    CHECK(zgkn_spectrum_run(g.cfg, &spec) == ZGKN_ERR_OUT_OF_GAP);
    CHECK(spec == nullptr);
    CHECK(std::strlen(zgkn_last_error_message()) > 0);
    CHECK(zgkn_spectrum_run(nullptr, &spec) == ZGKN_ERR_INVALID_ARGUMENT);
}

TEST_CASE("ground-state handle exposes the reconstructed profile") {
    ConfigGuard g;
    zgkn_config_set(g.cfg, "a", "1e-3");
    zgkn_config_set(g.cfg, "Z", "1");
    zgkn_config_set(g.cfg, "e_lo", "0.99995");
    zgkn_config_set(g.cfg, "e_hi", "0.99998");
    zgkn_config_set(g.cfg, "r_nodes_per_sheet", "301");
    zgkn_config_set(g.cfg, "theta_nodes", "96");
    zgkn_config_set(g.cfg, "timestamp", "T");

    zgkn_boundstate* st = nullptr;
    REQUIRE(zgkn_groundstate_run(g.cfg, &st) == ZGKN_OK);
    REQUIRE(st != nullptr);
    // both ground channels sit in the window; the lower one wins
    CHECK(zgkn_boundstate_energy(st) ==
          doctest::Approx(0.999973373965345).epsilon(5e-12));
    CHECK(zgkn_boundstate_radial_count(st) == 603);

    double wp = 0, wm = 0;
    REQUIRE(zgkn_boundstate_weights(st, &wp, &wm) == ZGKN_OK);
    CHECK(wp + wm == doctest::Approx(1.0).epsilon(1e-10));

    double r = 0, density = 0, lnR = 0, omega = 0;
    REQUIRE(zgkn_boundstate_radial_row(st, 0, &r, &density, &lnR, &omega) == ZGKN_OK);
    CHECK(r < 0); // first node is the far lower-sheet end
    CHECK(std::isfinite(density));
    CHECK(zgkn_boundstate_radial_row(st, 603, &r, &density, &lnR, &omega) ==
          ZGKN_ERR_INVALID_ARGUMENT);

    std::string js = take([&] { char* s = nullptr; zgkn_boundstate_to_json(st, &s); return s; }());
    CHECK(js.find("\"w_minus\": ") != std::string::npos);
    std::string csv = take([&] { char* s = nullptr; zgkn_boundstate_to_csv(st, &s); return s; }());
    CHECK(csv.find("r,density,lnR,Omega") != std::string::npos);
    zgkn_boundstate_free(st);

    // no positive level inside a negative-only window
    ConfigGuard neg;
    zgkn_config_set(neg.cfg, "a", "1e-3");
    zgkn_config_set(neg.cfg, "Z", "1");
    zgkn_config_set(neg.cfg, "e_lo", "-0.99998");
    zgkn_config_set(neg.cfg, "e_hi", "-0.99995");
    zgkn_boundstate* none = nullptr;
    CHECK(zgkn_groundstate_run(neg.cfg, &none) == ZGKN_ERR_NO_BRANCH_FOUND);
    CHECK(none == nullptr);
}

TEST_CASE("bound state from a known eigenvalue pair") {
    ConfigGuard g;
    zgkn_config_set(g.cfg, "a", "1e-3");
    zgkn_config_set(g.cfg, "Z", "1");
    zgkn_config_set(g.cfg, "r_nodes_per_sheet", "201");
    zgkn_config_set(g.cfg, "theta_nodes", "64");
    zgkn_boundstate* st = nullptr;
    REQUIRE(zgkn_boundstate_from_pair(g.cfg, 0.99997337397191743,
                                      -0.9990000177506323, 0.5, 0, &st) == ZGKN_OK);
    CHECK(zgkn_boundstate_energy(st) == 0.99997337397191743);
    double wp = 0, wm = 0;
    zgkn_boundstate_weights(st, &wp, &wm);
    CHECK(wm < 1e-10);
    zgkn_boundstate_free(st);
}

TEST_CASE("field grid handle") {
    ConfigGuard g;
    zgkn_config_set(g.cfg, "a", "0.5");
    zgkn_config_set(g.cfg, "gamma", "0.02");
    zgkn_config_set(g.cfg, "field_r_max", "2");
    zgkn_config_set(g.cfg, "field_nr", "11");
    zgkn_config_set(g.cfg, "field_ntheta", "9");
    zgkn_config_set(g.cfg, "field_guard", "1e-9");

    zgkn_fieldgrid* grid = nullptr;
    REQUIRE(zgkn_fields_run(g.cfg, &grid) == ZGKN_OK);
    CHECK(zgkn_fieldgrid_count(grid) == 98);
    CHECK(zgkn_fieldgrid_skipped(grid) == 1);

    double r, theta, phi, er, ez, br, bz;
    int sheet;
    REQUIRE(zgkn_fieldgrid_row(grid, 0, &r, &theta, &sheet, &phi, &er, &ez, &br,
                               &bz) == ZGKN_OK);
    CHECK(std::isfinite(phi));
    CHECK(zgkn_fieldgrid_row(grid, 98, &r, &theta, &sheet, &phi, &er, &ez, &br,
                             &bz) == ZGKN_ERR_INVALID_ARGUMENT);

    std::string csv = take([&] { char* s = nullptr; zgkn_fieldgrid_to_csv(grid, &s); return s; }());
    CHECK(csv.find("r,theta,sheet") != std::string::npos);
    zgkn_fieldgrid_free(grid);
}

TEST_CASE("sommerfeld tables through the C surface") {
    std::string csv = take([&] {
        char* s = nullptr;
        zgkn_sommerfeld_table_csv(1.0 / 137.036, 2, &s);
        return s;
    }());
    CHECK(csv.find("n,kappa_s,E") != std::string::npos);

    ConfigGuard g;
    zgkn_config_set(g.cfg, "timestamp", "T");
    std::string js = take([&] {
        char* s = nullptr;
        zgkn_sommerfeld_table_json(g.cfg, 1.0 / 137.036, 2, &s);
        return s;
    }());
    CHECK(js.find("\"levels\": [") != std::string::npos);
}
