#include "doctest.h"

#include "zgkn/angular.hpp"
#include "zgkn/errors.hpp"
#include "zgkn/radial.hpp"
#include "zgkn/spectrum.hpp"

#include <cmath>

using namespace zgkn;

TEST_CASE("asymptotic phases are the arccos limits") {
    double E = 0.6;
    CHECK(radial::asymptotic_omega(E, -1) ==
          doctest::Approx(-M_PI + std::acos(E)).epsilon(1e-15));
    CHECK(radial::asymptotic_omega(E, +1) ==
          doctest::Approx(-std::acos(E)).epsilon(1e-15));
}

TEST_CASE("finite-radius start values approach the limits at rate 1/R") {
    geom::ModelParams mp{1e-3, 0.02};
    double E = 0.3, lambda = -1.1;
    for (int side : {-1, +1}) {
        double limit = radial::asymptotic_omega(E, side);
        double d1 = radial::asymptotic_omega_start(E, lambda, 200.0, side, mp) - limit;
        double d2 = radial::asymptotic_omega_start(E, lambda, 400.0, side, mp) - limit;
        CHECK(d1 != 0.0);
        CHECK(d1 / d2 == doctest::Approx(2.0).epsilon(1e-12)); // exactly linear in 1/R
    }
}

TEST_CASE("default truncation radius tracks the decay scale") {
    CHECK(radial::default_r_infinity(0.0) == 50.0);
    double E = 0.99997337396862296;
    // product form (1-E)(1+E): 1 - E*E loses ~4 digits to cancellation here
    CHECK(radial::default_r_infinity(E) ==
          doctest::Approx(30.0 / std::sqrt((1 - E) * (1 + E))).epsilon(1e-15));
}

TEST_CASE("raw defect slips by 2 pi across the Dirac-Coulomb ground level") {
    // at a = 1e-6 the spectrum is the Sommerfeld one to well below 1e-11, so
    // the eigencondition wall sits inside [E* - 1e-11, E* + 1e-11]
    geom::ModelParams mp{1e-6, 1.0 / 137.036};
    double Estar = spectrum::sommerfeld_energy(1, 1, mp.gamma);

    angular::AngularSolveRequest arq;
    arq.E = Estar;
    arq.kappa = 0.5;
    arq.params = mp;
    arq.branch_index = 0;
    auto ang = angular::angular_eigenvalue(arq);
    CHECK(std::fabs(ang.lambda + 1.0) < 2e-6); // lambda -> -1 in the flat limit

    radial::RadialSolveRequest rq;
    rq.params = mp;
    rq.kappa = 0.5;
    rq.lambda = ang.lambda;
    rq.E = Estar - 1e-11;
    double d_lo = radial::shoot_radial(rq).defect_raw;
    rq.E = Estar + 1e-11;
    double d_hi = radial::shoot_radial(rq).defect_raw;
    CHECK(d_lo - d_hi == doctest::Approx(2 * M_PI).epsilon(1e-4));
}

TEST_CASE("defect decomposition into reduced part and winding is consistent") {
    geom::ModelParams mp{1e-3, 1.0 / 137.036};
    radial::RadialSolveRequest rq;
    rq.params = mp;
    rq.kappa = 0.5;
    rq.lambda = -1.05;
    for (double E : {-0.62, 0.11, 0.85}) {
        rq.E = E;
        auto m = radial::shoot_radial(rq);
        CHECK(m.defect > -M_PI);
        CHECK(m.defect <= M_PI);
        CHECK(m.defect_raw ==
              doctest::Approx(m.defect + 2 * M_PI * m.winding).epsilon(1e-12));
        CHECK(m.omega_left0 - m.omega_right0 ==
              doctest::Approx(m.defect_raw).epsilon(1e-12));
        CHECK(m.r_infinity_used == radial::default_r_infinity(E));
    }
}

TEST_CASE("conjugation mirror flips the defect and swaps the amplitudes") {
    geom::ModelParams mp{1e-3, 1.0 / 137.036};
    radial::RadialSolveRequest rq;
    rq.params = mp;
    rq.E = 0.4321;
    rq.lambda = -1.05;
    rq.kappa = 0.5;
    auto m1 = radial::shoot_radial(rq);
    rq.E = -0.4321;
    rq.lambda = 1.05;
    rq.kappa = -0.5;
    auto m2 = radial::shoot_radial(rq);
    CHECK(std::fabs(m1.defect_raw + m2.defect_raw) < 1e-9);
    CHECK(m2.winding == -m1.winding);
    CHECK(m1.ln_amp_left0 == doctest::Approx(m2.ln_amp_right0).epsilon(1e-9));
    CHECK(m1.ln_amp_right0 == doctest::Approx(m2.ln_amp_left0).epsilon(1e-9));
}

TEST_CASE("truncation check rejects an undersized domain") {
    geom::ModelParams mp{1e-3, 1.0 / 137.036};
    radial::RadialSolveRequest rq;
    rq.params = mp;
    rq.E = 0.99999; // decay length 1/q ~ 224: R = 30 is far too small
    rq.lambda = -1.0;
    rq.kappa = 0.5;
    rq.r_infinity = 30;
    CHECK_NOTHROW(radial::shoot_radial(rq));
    rq.check_truncation = true;
    CHECK_THROWS_AS(radial::shoot_radial(rq), TruncationTooSmall);
}

TEST_CASE("radial argument validation") {
    radial::RadialSolveRequest rq;
    rq.params = {1e-3, 1.0 / 137.036};
    rq.lambda = -1.0;
    rq.kappa = 0.5;

    rq.E = 1.5;
    CHECK_THROWS_AS(radial::shoot_radial(rq), OutOfGap);
    rq.E = -1.0;
    CHECK_THROWS_AS(radial::shoot_radial(rq), OutOfGap);

    rq.E = 0.5;
    rq.params.a = 1e-7; // below the supported ring radius
    CHECK_THROWS_AS(radial::shoot_radial(rq), InvalidQuantumNumbers);
}
