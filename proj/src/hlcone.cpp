#include "assoc/hlcone.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace assoc {

namespace {

Rat norm2(const RatC& z) { return z.first * z.first + z.second * z.second; }

RatC mulc(const RatC& a, const RatC& b) {
    return {a.first * b.first - a.second * b.second, a.first * b.second + a.second * b.first};
}

// offsets of |z_k|^2 for each family: |z_k|^2 - off_k equalized
std::array<int, 3> family_offsets(HlFamily f) {
    switch (f) {
        case HlFamily::Cone: return {0, 0, 0};
        case HlFamily::L1: return {1, 0, 0};
        case HlFamily::L2: return {0, 1, 0};
        case HlFamily::L3: return {0, 0, 1};
    }
    throw std::logic_error("bad family");
}

}  // namespace

HlResidual hl_membership(const RatC3& z, HlFamily family, const Rat& s) {
    if (family == HlFamily::Cone && s != 0)
        throw std::invalid_argument("the cone has no smoothing parameter");
    if (s < 0) throw std::invalid_argument("s must be >= 0");
    auto off = family_offsets(family);
    Rat m[3];
    for (int k = 0; k < 3; ++k) m[k] = norm2(z[k]) - Rat(off[k]) * s;
    RatC prod = mulc(mulc(z[0], z[1]), z[2]);
    HlResidual r;
    r.moduli = {m[0] - m[1], m[1] - m[2]};
    r.imPart = prod.second;
    r.reSign = prod.first > 0 ? 1 : (prod.first < 0 ? -1 : 0);
    r.member = r.moduli[0] == 0 && r.moduli[1] == 0 && r.imPart == 0 && r.reSign >= 0;
    return r;
}

HlResidualD hl_membership_d(const std::array<std::complex<double>, 3>& z, HlFamily family,
                            double s) {
    auto off = family_offsets(family);
    double m[3];
    for (int k = 0; k < 3; ++k) m[k] = std::norm(z[k]) - off[k] * s;
    std::complex<double> prod = z[0] * z[1] * z[2];
    return {{m[0] - m[1], m[1] - m[2]}, prod.imag(), prod.real()};
}

std::array<std::complex<double>, 3> hl_point(HlFamily family, double s, double t, double theta1,
                                             double theta2) {
    if (family == HlFamily::Cone && s != 0)
        throw std::invalid_argument("the cone has no smoothing parameter");
    auto off = family_offsets(family);
    double theta3 = -theta1 - theta2;  // phase sum 0 keeps Re >= 0, Im = 0
    double th[3] = {theta1, theta2, theta3};
    std::array<std::complex<double>, 3> z;
    for (int k = 0; k < 3; ++k) z[k] = std::polar(std::sqrt(t + off[k] * s), th[k]);
    return z;
}

std::array<std::complex<double>, 3> hl_zeta(int a, const std::array<std::complex<double>, 3>& z) {
    auto zeta1 = [&] {
        return std::array<std::complex<double>, 3>{(1.0 / 3.0) / std::conj(z[0]),
                                                   (-1.0 / 6.0) / std::conj(z[1]),
                                                   (-1.0 / 6.0) / std::conj(z[2])};
    };
    auto zeta2 = [&] {
        return std::array<std::complex<double>, 3>{(-1.0 / 6.0) / std::conj(z[0]),
                                                   (1.0 / 3.0) / std::conj(z[1]),
                                                   (-1.0 / 6.0) / std::conj(z[2])};
    };
    if (a == 1) return zeta1();
    if (a == 2) return zeta2();
    if (a == 3) {
        auto u = zeta1(), v = zeta2();
        return {-u[0] - v[0], -u[1] - v[1], -u[2] - v[2]};
    }
    throw std::invalid_argument("family must be 1, 2 or 3");
}

HlGraphSample hl_graph_check(int family, double s, double radiusSq, int samples, uint64_t seed) {
    if (family < 1 || family > 3) throw std::invalid_argument("family must be 1, 2 or 3");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    double worst = 0;
    for (int i = 0; i < samples; ++i) {
        double t1 = angle(rng), t2 = angle(rng);
        auto p = hl_point(static_cast<HlFamily>(family), s, radiusSq, t1, t2);
        // matched cone point: equal moduli sqrt(t + s/3) with the same phases
        double u = radiusSq + s / 3.0;
        double th[3] = {t1, t2, -t1 - t2};
        std::array<std::complex<double>, 3> p0;
        for (int k = 0; k < 3; ++k) p0[k] = std::polar(std::sqrt(u), th[k]);
        auto zeta = hl_zeta(family, p0);
        double dev2 = 0;
        for (int k = 0; k < 3; ++k) dev2 += std::norm(p[k] - p0[k] - s * zeta[k]);
        worst = std::max(worst, std::sqrt(dev2));
    }
    return {s, worst};
}

}  // namespace assoc
