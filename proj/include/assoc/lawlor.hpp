#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace assoc {

struct LawlorParams {
    double a1 = 1, a2 = 1, a3 = 1;
    double operator[](int k) const { return k == 0 ? a1 : (k == 1 ? a2 : a3); }
};

struct LawlorAngles {
    double phi1 = 0, phi2 = 0, phi3 = 0;
    double s = 0;
    double operator[](int k) const { return k == 0 ? phi1 : (k == 1 ? phi2 : phi3); }
};

// Adaptive Gauss-Kronrod quadrature, absolute tolerance. Throws
// std::runtime_error when the refinement limit is hit.
double integrate(const std::function<double(double)>& f, double lo, double hi, double tol);

// phi_k = a_k * integral dx / ((1 + a_k x^2) sqrt(P(x))) over the real line,
// s = (1/3) (a1 a2 a3)^{-1/2}.
LawlorAngles lawlor_angles(const LawlorParams& p, double tol = 1e-10);

// Partial angle integral up to y, and the curve point z_k(y).
double lawlor_psi(const LawlorParams& p, int k, double y, double tol = 1e-10);
std::complex<double> lawlor_z(const LawlorParams& p, int k, double y, double tol = 1e-10);

// Recovers (a1, a2, a3) from (phi1, phi2, s); phi3 is fixed by the sum
// identity. Damped Newton in log coordinates with the product constraint
// eliminated, so s is matched exactly. Throws on non-convergence.
LawlorParams lawlor_invert(double phi1, double phi2, double s, double tol = 1e-8);

struct AsymptoteSample {
    double radius = 0;
    double residual = 0;  // max deviation from the graph model over the sphere sample
};

// Samples the neck family at y = -r against the graph model
// (1 + i s rho^-3) x and reports the deviation per radius.
std::vector<AsymptoteSample> lawlor_asymptote_check(const LawlorParams& p,
                                                    const std::vector<double>& radii,
                                                    int sphereSamples = 64, uint64_t seed = 1,
                                                    double tol = 1e-12);

}  // namespace assoc
