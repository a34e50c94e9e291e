#include "doctest.h"

#include "angular_matrix_oracle.hpp"
#include "zgkn/angular.hpp"
#include "zgkn/errors.hpp"

#include <cmath>
#include <vector>

using namespace zgkn;

namespace {
geom::ModelParams flat{0.0, 0.0};
}

TEST_CASE("flat-space branches recover the integer spectrum") {
    // at a = 0 the angular problem is the spherical spinor one: eigenvalues
    // are the nonzero integers, ordered by |lambda| with the positive member
    // first
    auto branches = angular::scan_branches(0.3, 0.5, flat, 4);
    REQUIRE(branches.size() == 4);
    CHECK(std::fabs(branches[0].lambda - 1.0) < 1e-12);
    CHECK(std::fabs(branches[1].lambda + 1.0) < 1e-12);
    CHECK(std::fabs(branches[2].lambda - 2.0) < 1e-9);
    CHECK(std::fabs(branches[3].lambda + 2.0) < 1e-9);
    for (const auto& b : branches) CHECK(b.residual < 1e-10);

    // kappa = 3/2 starts one rung higher
    auto k32 = angular::scan_branches(0.3, 1.5, flat, 2);
    REQUIRE(k32.size() == 2);
    CHECK(std::fabs(k32[0].lambda - 2.0) < 1e-9);
    CHECK(std::fabs(k32[1].lambda + 2.0) < 1e-9);
}

TEST_CASE("flat-space eigenvalues do not depend on E") {
    angular::AngularSolveRequest rq;
    rq.kappa = 0.5;
    rq.params = flat;
    rq.branch_index = 0;
    rq.E = 0.3;
    double l1 = angular::angular_eigenvalue(rq).lambda;
    rq.E = -0.7;
    double l2 = angular::angular_eigenvalue(rq).lambda;
    CHECK(std::fabs(l1 - l2) < 1e-12);
}

TEST_CASE("flat-space lambda = -1 profile is Theta = -theta, S = sqrt(sin)") {
    angular::AngularSolveRequest rq;
    rq.E = 0.3;
    rq.kappa = 0.5;
    rq.params = flat;
    rq.branch_index = 1;
    auto sol = angular::angular_eigenvalue(rq);
    CHECK(std::fabs(sol.lambda + 1.0) < 1e-12);
    std::vector<double> nodes;
    for (int i = 1; i <= 8; ++i) nodes.push_back(M_PI * i / 9.0);
    auto prof = angular::angular_profile(sol, rq, nodes);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        CHECK(std::fabs(prof.Theta[i] + nodes[i]) < 1e-12);
        // lnS matches (1/2) log sin(theta) up to the grid-max normalization
        double want = 0.5 * (std::log(std::sin(nodes[i])) - std::log(std::sin(nodes[0])));
        CHECK(std::fabs((prof.lnS[i] - prof.lnS[0]) - want) < 1e-8);
    }
}

TEST_CASE("negative kappa is the exact mirror channel") {
    geom::ModelParams mp{0.4, 0.0};
    for (double lambda : {-1.3, 0.8}) {
        double direct = angular::shoot_angular(lambda, 0.6, -0.5, mp);
        double mirrored = -angular::shoot_angular(-lambda, -0.6, 0.5, mp);
        CHECK(direct == mirrored);
    }
}

TEST_CASE("shooting eigenvalues match the banded matrix discretization") {
    geom::ModelParams mp{0.4, 0.0};
    auto branches = angular::scan_branches(0.6, 0.5, mp, 4);
    REQUIRE(branches.size() == 4);
    for (const auto& b : branches) {
        double oracle = angular_matrix_richardson(2000, 0.4, 0.6, 0.5, b.lambda);
        CHECK(std::fabs(oracle - b.lambda) < 1e-6);
    }
    // mirror channel against the same oracle, no Richardson needed at 4000
    auto mbr = angular::scan_branches(0.6, -0.5, mp, 2);
    REQUIRE(mbr.size() == 2);
    for (const auto& b : mbr) {
        auto w = angular_matrix_eigenvalues(4000, 0.4, 0.6, -0.5, b.lambda - 0.3,
                                            b.lambda + 0.3);
        REQUIRE(!w.empty());
        double nearest = w.front();
        for (double x : w)
            if (std::fabs(x - b.lambda) < std::fabs(nearest - b.lambda)) nearest = x;
        CHECK(std::fabs(nearest - b.lambda) < 2e-6);
    }
}

TEST_CASE("continuation hint reproduces the scanned eigenvalue") {
    geom::ModelParams mp{0.4, 0.0};
    angular::AngularSolveRequest rq;
    rq.E = 0.6;
    rq.kappa = 0.5;
    rq.params = mp;
    rq.branch_index = 1;
    auto scanned = angular::angular_eigenvalue(rq);
    rq.lambda_hint = scanned.lambda + 1e-6;
    rq.mismatch_target = scanned.mismatch_raw;
    auto tracked = angular::angular_eigenvalue(rq);
    CHECK(std::fabs(tracked.lambda - scanned.lambda) < 1e-9);
}

TEST_CASE("angular argument validation") {
    angular::AngularSolveRequest rq;
    rq.E = 0.3;
    rq.params = flat;

    rq.kappa = 0.0;
    CHECK_THROWS_AS(angular::angular_eigenvalue(rq), InvalidQuantumNumbers);

    rq.kappa = 0.5;
    rq.branch_index = 9;
    rq.max_branches = 8;
    CHECK_THROWS_AS(angular::angular_eigenvalue(rq), NoBranchFound);

    rq.branch_index = 0;
    rq.theta0 = 0.0;
    CHECK_THROWS_AS(angular::angular_eigenvalue(rq), AxisSingularity);

    CHECK_THROWS_AS(angular::shoot_angular(1.0, 0.3, 0.5, flat, 2.0),
                    AxisSingularity); // theta0 must stay below pi/4
}
