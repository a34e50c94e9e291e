#pragma once

#include "zgkn/geometry.hpp"

#include <vector>

namespace zgkn::fields {

// Electromagnetic potential of the ring source carrying charge Q and (for
// the generalized case) loop current I. Coordinate components A_t, A_phi and
// orthonormal-frame components along omega^0 and omega^2.
struct PotentialValue {
    double A_t = 0;
    double A_phi = 0;
    double frame_A0 = 0;
    double frame_A2 = 0;
};

// Sourceless-everywhere-off-the-ring Appell potential: A_t = -Q r/|rho|^2,
// A_phi = Q a r sin^2(theta)/|rho|^2 (the current that a charge Q moving
// with the ring would produce, I = Q c/(pi a)).
PotentialValue potential(const geom::OblatePoint& p, double a, double Q);

// Independent charge Q and loop current I: the magnetic part carries the
// effective charge Qm = I pi a / c (c = 1), so A_phi = Qm a r sin^2/|rho|^2
// while A_t keeps charge Q.
PotentialValue generalized_potential(const geom::OblatePoint& p, double a,
                                     double Q, double I_loop);

// Field strengths decomposed in the meridional cylindrical basis
// (R = varpi sin(theta), z = r cos(theta)): E_R, E_z and B_R, B_z, plus the
// electrostatic potential phi_el = Q r/|rho|^2 and the sheet label
// sign(r). Everything descends from E + iB = (Q/conj(rho)^2)(dr + i a sin
// dtheta).
struct FieldSample {
    double r = 0;
    double theta = 0;
    int sheet = 0;
    double phi_el = 0;
    double E_R = 0, E_z = 0;
    double B_R = 0, B_z = 0;
};

FieldSample appell_field(const geom::OblatePoint& p, double a, double Q);

// Electric pattern with charge Qe, magnetic pattern with charge Qm
// (= I pi a for a loop current I).
FieldSample appell_field_general(const geom::OblatePoint& p, double a,
                                 double Qe, double Qm);

// Exact-parity core: takes cos/sin of theta directly so callers can probe
// the r -> -r, cos -> -cos mirror at the bit level.
FieldSample appell_field_cs(double r, double cos_theta, double sin_theta,
                            double theta_label, double a, double Qe, double Qm);

// Electrostatic potential as a function of cylindrical (R, z) on the sheet
// where sign(r) = sheet, via the inverse oblate map u = r^2 =
// ((R^2+z^2-a^2) + sqrt((R^2+z^2-a^2)^2 + 4 a^2 z^2))/2. Smooth off the ring
// and away from the open disc r=0; continuation through the disc swaps
// sheets (the caller is responsible for staying off it). Used by the
// harmonicity check.
double phi_el_cylindrical(double R, double z, int sheet, double a, double Q);

struct FieldGridSpec {
    double r_max = 5;
    int n_r = 101;      // r nodes from -r_max to +r_max
    int n_theta = 33;   // theta nodes from 0 to pi
    double guard = 1e-6; // skip samples closer than this to the ring
    double Qe = 1;
    double Qm = 1;
};

struct FieldGrid {
    std::vector<FieldSample> samples;
    int skipped = 0;
};

FieldGrid field_grid(const FieldGridSpec& spec, double a);

} // namespace zgkn::fields
