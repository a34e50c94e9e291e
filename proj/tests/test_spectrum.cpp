#include "doctest.h"

#include "zgkn/errors.hpp"
#include "zgkn/spectrum.hpp"

#include <cmath>
#include <vector>

using namespace zgkn;
using spectrum::SpectrumRequest;

namespace {
constexpr double alpha = 1.0 / 137.036;

SpectrumRequest hydrogen_ground_window() {
    SpectrumRequest req;
    req.params = {1e-3, alpha};
    req.kappas = {0.5, -0.5};
    req.e_lo = 0.99995;
    req.e_hi = 0.99998;
    req.max_branches = 2;
    req.threads = 2;
    return req;
}
} // namespace

TEST_CASE("Sommerfeld levels against independently computed references") {
    struct Row {
        int n, ks;
        double E;
    };
    // reference decimals evaluated from the closed form with an independent
    // implementation
    const Row rows[] = {
        {1, 1, 0.99997337396862296}, {2, 1, 0.99999334347000113},
        {2, 2, 0.99999334355861991}, {3, 1, 0.99999704155206937},
        {3, 2, 0.9999970415783267},  {3, 3, 0.99999704158707903},
        {4, 1, 0.999998335877193},   {5, 1, 0.99999893496328218},
    };
    for (const auto& row : rows)
        CHECK(spectrum::sommerfeld_energy(row.n, row.ks, alpha) ==
              doctest::Approx(row.E).epsilon(2e-16));

    // circular orbits collapse to sqrt(1 - alpha^2/n^2)
    for (int n : {1, 2, 3})
        CHECK(std::fabs(spectrum::sommerfeld_energy(n, n, alpha) -
                        std::sqrt(1 - alpha * alpha / (n * n))) < 1e-14);

    // leading binding is the Bohr one, with O(alpha^4) remainder
    for (int n : {1, 2, 3})
        for (int ks = 1; ks <= n; ++ks)
            CHECK(std::fabs(spectrum::sommerfeld_energy(n, ks, alpha) -
                            (1 - alpha * alpha / (2.0 * n * n))) <
                  std::pow(alpha, 4));
}

TEST_CASE("Sommerfeld argument validation") {
    CHECK_THROWS_AS(spectrum::sommerfeld_energy(1, 2, alpha), InvalidQuantumNumbers);
    CHECK_THROWS_AS(spectrum::sommerfeld_energy(0, 1, alpha), InvalidQuantumNumbers);
    CHECK_THROWS_AS(spectrum::sommerfeld_energy(1, 0, alpha), InvalidQuantumNumbers);
    CHECK_THROWS_AS(spectrum::sommerfeld_energy(1, 1, 1.2), OutOfGap);
}

TEST_CASE("Bohr binding energies") {
    CHECK(spectrum::bohr_energy(1, alpha) ==
          doctest::Approx(-2.6625676904264428e-05).epsilon(1e-15));
    CHECK(spectrum::bohr_energy(2, alpha) ==
          doctest::Approx(-6.6564192260661071e-06).epsilon(1e-15));
    CHECK(spectrum::bohr_energy(3, alpha) ==
          doctest::Approx(-2.9584085449182697e-06).epsilon(1e-15));
    // reduced-mass scaling is linear
    CHECK(spectrum::bohr_energy(1, alpha, 2.0) ==
          doctest::Approx(2 * spectrum::bohr_energy(1, alpha)).epsilon(1e-15));
    CHECK_THROWS_AS(spectrum::bohr_energy(0, alpha), InvalidQuantumNumbers);
}

TEST_CASE("sufficient conditions threshold sqrt(2|a|(1-2|a|))") {
    {
        auto c = spectrum::check_sufficient_conditions({5e-4, alpha});
        CHECK(c.ring_radius_ok);
        CHECK(c.coupling_ok);
        CHECK(c.ok());
        CHECK(c.threshold == doctest::Approx(0.031606961258558219).epsilon(1e-15));
    }
    {
        auto c = spectrum::check_sufficient_conditions({1e-3, alpha});
        CHECK(c.threshold == doctest::Approx(0.044676615807377355).epsilon(1e-15));
        CHECK(c.ok());
    }
    {
        // Z = 5 overshoots the a = 5e-4 threshold (Z_max = 4)
        auto c = spectrum::check_sufficient_conditions({5e-4, 5 * alpha});
        CHECK(c.ring_radius_ok);
        CHECK(!c.coupling_ok);
        CHECK(!c.ok());
        auto c4 = spectrum::check_sufficient_conditions({5e-4, 4 * alpha});
        CHECK(c4.ok());
    }
    {
        // the threshold peaks at a = 1/4 with value exactly 1/2
        auto c = spectrum::check_sufficient_conditions({0.25, 0.499});
        CHECK(c.threshold == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(c.ok());
        auto cneg = spectrum::check_sufficient_conditions({-0.25, 0.499});
        CHECK(cneg.threshold == c.threshold); // depends on |a| only
    }
    {
        // 2|a| >= 1 leaves no admissible coupling at all
        auto c = spectrum::check_sufficient_conditions({0.6, alpha});
        CHECK(!c.ring_radius_ok);
        CHECK(!c.ok());
        CHECK(c.threshold == 0.0);
    }
}

TEST_CASE("hydrogen ground pair in an isolating window") {
    auto rep = spectrum::point_spectrum(hydrogen_ground_window());
    REQUIRE(rep.eigenvalues.size() == 2);
    const auto& up = rep.eigenvalues[0].kappa > 0 ? rep.eigenvalues[0] : rep.eigenvalues[1];
    const auto& dn = rep.eigenvalues[0].kappa > 0 ? rep.eigenvalues[1] : rep.eigenvalues[0];
    // the eigencondition wall is ~5e-12 wide at a = 1e-3; any point inside is
    // a valid root, so pin to that scale
    CHECK(up.E == doctest::Approx(0.999973373971917).epsilon(5e-12));
    CHECK(dn.E == doctest::Approx(0.999973373965345).epsilon(5e-12));
    CHECK(up.kappa == 0.5);
    CHECK(dn.kappa == -0.5);
    CHECK(up.n_theta == 0);
    CHECK(dn.n_theta == 1);
    CHECK(up.lambda == doctest::Approx(-0.99900001775).epsilon(1e-9));
    CHECK(dn.lambda == doctest::Approx(-1.00099998225).epsilon(1e-9));
    CHECK(up.winding == 0);
    CHECK(dn.winding == 0);
    // the pair brackets the a = 0 Sommerfeld level symmetrically
    double som = spectrum::sommerfeld_energy(1, 1, alpha);
    CHECK(std::fabs(0.5 * (up.E + dn.E) - som) < 1e-12);
    for (const auto& ev : rep.eigenvalues) {
        CHECK(ev.residual_angular <= 1e-9);
        CHECK(ev.residual_radial <= 1e-9);
        CHECK(std::fabs(ev.E) < 1.0);
    }
    CHECK(rep.gap_ok);
    CHECK(rep.scan.cells == 4);
    CHECK(rep.scan.root_tol_used == 1e-15);
    CHECK(rep.scan.grid_evaluations > 0);
    CHECK(rep.scan.refine_evaluations > 0);
    CHECK(!rep.scan.eigenvalue_cap_hit);

    // pairing with the Sommerfeld ladder
    auto rowsv = spectrum::sommerfeld_comparison(rep, alpha, 3);
    REQUIRE(rowsv.size() == 2);
    for (const auto& row : rowsv) {
        CHECK(row.n == 1);
        CHECK(row.kappa_s == 1);
        CHECK(std::fabs(row.deviation) < 4e-12);
        CHECK(std::fabs(row.computed_E - row.sommerfeld_E) ==
              doctest::Approx(row.deviation).epsilon(1e-12));
    }
}

TEST_CASE("spectrum output is identical for any thread count") {
    auto req = hydrogen_ground_window();
    req.threads = 1;
    auto rep1 = spectrum::point_spectrum(req);
    req.threads = 4;
    auto rep4 = spectrum::point_spectrum(req);
    REQUIRE(rep1.eigenvalues.size() == rep4.eigenvalues.size());
    for (std::size_t i = 0; i < rep1.eigenvalues.size(); ++i) {
        // bitwise equality, not approximate
        CHECK(rep1.eigenvalues[i].E == rep4.eigenvalues[i].E);
        CHECK(rep1.eigenvalues[i].lambda == rep4.eigenvalues[i].lambda);
        CHECK(rep1.eigenvalues[i].kappa == rep4.eigenvalues[i].kappa);
        CHECK(rep1.eigenvalues[i].n_theta == rep4.eigenvalues[i].n_theta);
        CHECK(rep1.eigenvalues[i].winding == rep4.eigenvalues[i].winding);
        CHECK(rep1.eigenvalues[i].residual_radial == rep4.eigenvalues[i].residual_radial);
    }
}

TEST_CASE("per-cell eigenvalue cap is reported") {
    SpectrumRequest req;
    req.params = {1e-3, alpha};
    req.kappas = {0.5};
    req.e_lo = 0.99995;
    // window holds three levels: n = 1 and n = 2 on branch 0, the n = 2
    // opposite-parity partner on branch 1
    req.e_hi = 0.999995;
    req.max_branches = 2;
    req.max_eigenvalues = 1;
    auto rep = spectrum::point_spectrum(req);
    CHECK(rep.scan.eigenvalue_cap_hit);
    CHECK(rep.eigenvalues.size() == 2); // each branch cell capped at one

    req.max_eigenvalues = 64;
    auto full = spectrum::point_spectrum(req);
    CHECK(!full.scan.eigenvalue_cap_hit);
    CHECK(full.eigenvalues.size() == 3);
}

TEST_CASE("spectrum request validation") {
    SpectrumRequest req;
    req.params = {1e-3, alpha};

    req.kappas = {};
    CHECK_THROWS_AS(spectrum::point_spectrum(req), InvalidQuantumNumbers);

    req.kappas = {0.0};
    CHECK_THROWS_AS(spectrum::point_spectrum(req), InvalidQuantumNumbers);

    req.kappas = {1.0}; // integer kappa needs the explicit opt-in
    CHECK_THROWS_AS(spectrum::point_spectrum(req), InvalidQuantumNumbers);

    req.kappas = {0.5};
    req.e_hi = 1.0; // window must stay strictly inside the gap
    CHECK_THROWS_AS(spectrum::point_spectrum(req), OutOfGap);

    req.e_hi = 0.1;
    req.e_lo = 0.2; // empty window is part of the gap check
    CHECK_THROWS_AS(spectrum::point_spectrum(req), OutOfGap);

    req.e_lo = 0.099;
    req.max_branches = 0;
    CHECK_THROWS_AS(spectrum::point_spectrum(req), NoBranchFound);

    req.max_branches = 1;
    req.params.a = 1e-7; // the scan backs the same radial floor
    CHECK_THROWS_AS(spectrum::point_spectrum(req), InvalidQuantumNumbers);
}

TEST_CASE("integer kappa runs when explicitly allowed") {
    SpectrumRequest req;
    req.params = {1e-3, alpha};
    req.kappas = {1.0};
    req.allow_integer_kappa = true;
    req.e_lo = 0.10;
    req.e_hi = 0.1005;
    req.max_branches = 1;
    auto rep = spectrum::point_spectrum(req);
    CHECK(rep.channels == std::vector<double>{1.0});
}

TEST_CASE("failed sufficient conditions gate the scan unless overridden") {
    SpectrumRequest req;
    req.params = {0.3, 0.6}; // gamma above sqrt(2a(1-2a)) ~ 0.49
    req.kappas = {0.5};
    req.e_lo = 0.10;
    req.e_hi = 0.1005;
    req.max_branches = 1;
    CHECK_THROWS_AS(spectrum::point_spectrum(req), OutOfGap);
    req.override_conditions = true;
    CHECK_NOTHROW(spectrum::point_spectrum(req));
}
