#pragma once

#include <array>
#include <complex>
#include <vector>

#include "assoc/rational.hpp"

namespace assoc {

// Point of C^3 with exact rational real/imaginary parts.
using RatC = std::pair<Rat, Rat>;
using RatC3 = std::array<RatC, 3>;

enum class HlFamily { Cone = 0, L1 = 1, L2 = 2, L3 = 3 };

struct HlResidual {
    std::array<Rat, 2> moduli;  // the two defining |.|^2 equations
    Rat imPart;                 // Im(z1 z2 z3)
    int reSign;                 // sign of Re(z1 z2 z3)
    bool member;                // residuals all zero and Re >= 0
};

// Exact membership residuals for the T^2-cone and its three smoothings.
// family == Cone requires s == 0.
HlResidual hl_membership(const RatC3& z, HlFamily family, const Rat& s);

struct HlResidualD {
    std::array<double, 2> moduli;
    double imPart;
    double reSign;
};

HlResidualD hl_membership_d(const std::array<std::complex<double>, 3>& z, HlFamily family,
                            double s);

// Point of the family-a smoothing with torus phases (t1, t2) and radius
// parameter t = |z|^2 on the small legs.
std::array<std::complex<double>, 3> hl_point(HlFamily family, double s, double t, double theta1,
                                             double theta2);

// Normal-graph sections zeta_1, zeta_2 (and zeta_3 = -zeta_1 - zeta_2) of the
// cone, evaluated at a cone point.
std::array<std::complex<double>, 3> hl_zeta(int a, const std::array<std::complex<double>, 3>& z);

struct HlGraphSample {
    double s;
    double residual;  // max |(p - p0) - s*zeta_a(p0)| over the torus sample
};

// Compares smoothing points at parameter s against the cone plus s * zeta_a
// at matched radius; residual should scale like s^2 at fixed radius.
HlGraphSample hl_graph_check(int family, double s, double radiusSq, int samples, uint64_t seed);

}  // namespace assoc
