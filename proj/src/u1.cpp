#include "assoc/u1.hpp"

#include <cmath>
#include <stdexcept>

namespace assoc {

std::array<Rat, 3> u1_invariants(const std::array<Rat, 7>& x) {
    const Rat &x4 = x[3], &x5 = x[4], &x6 = x[5], &x7 = x[6];
    return {x4 * x4 + x5 * x5 - x6 * x6 - x7 * x7, Rat(2) * (x4 * x7 + x5 * x6),
            Rat(2) * (x4 * x6 - x5 * x7)};
}

std::array<Rat, 6> u1_reduce(const std::array<Rat, 7>& x) {
    auto y = u1_invariants(x);
    return {x[0], x[1], x[2], y[0], y[1], y[2]};
}

std::array<double, 6> u1_reduce_d(const std::array<double, 7>& x) {
    double x4 = x[3], x5 = x[4], x6 = x[5], x7 = x[6];
    return {x[0],
            x[1],
            x[2],
            x4 * x4 + x5 * x5 - x6 * x6 - x7 * x7,
            2 * (x4 * x7 + x5 * x6),
            2 * (x4 * x6 - x5 * x7)};
}

bool u1_y_identity(const std::array<Rat, 7>& x) {
    auto y = u1_invariants(x);
    Rat lhs = y[0] * y[0] + y[1] * y[1] + y[2] * y[2];
    Rat q = x[3] * x[3] + x[4] * x[4] + x[5] * x[5] + x[6] * x[6];
    return lhs == q * q;
}

std::array<Rat, 7> u1_act_rational(const std::array<Rat, 7>& x, const Rat& t) {
    Rat den = 1 + t * t;
    Rat c = (1 - t * t) / den, s = Rat(2) * t / den;  // c^2 + s^2 = 1 exactly
    return {x[0],
            x[1],
            x[2],
            c * x[3] - s * x[4],
            s * x[3] + c * x[4],
            c * x[5] + s * x[6],
            -s * x[5] + c * x[6]};
}

std::array<std::array<double, 6>, 6> j_matrix(const std::array<double, 6>& p) {
    double u = std::sqrt(p[3] * p[3] + p[4] * p[4] + p[5] * p[5]);
    if (u <= 0) throw std::domain_error("J is singular on the locus u = 0");
    double su = std::sqrt(u);
    std::array<std::array<double, 6>, 6> j{};
    for (int i = 0; i < 3; ++i) {
        j[i][3 + i] = -0.5 / su;
        j[3 + i][i] = 2.0 * su;
    }
    return j;
}

double jholo_residual(const std::array<double, 6>& p, const std::array<double, 6>& t1,
                      const std::array<double, 6>& t2) {
    auto j = j_matrix(p);
    auto apply = [&](const std::array<double, 6>& v) {
        std::array<double, 6> w{};
        for (int i = 0; i < 6; ++i)
            for (int k = 0; k < 6; ++k) w[i] += j[i][k] * v[k];
        return w;
    };
    auto dot = [](const std::array<double, 6>& a, const std::array<double, 6>& b) {
        double s = 0;
        for (int i = 0; i < 6; ++i) s += a[i] * b[i];
        return s;
    };
    // orthonormalize the tangent pair
    std::array<double, 6> e1 = t1, e2 = t2;
    double n1 = std::sqrt(dot(e1, e1));
    if (n1 < 1e-300) throw std::invalid_argument("degenerate tangent");
    for (auto& c : e1) c /= n1;
    double d = dot(e2, e1);
    for (int i = 0; i < 6; ++i) e2[i] -= d * e1[i];
    double n2 = std::sqrt(dot(e2, e2));
    if (n2 < 1e-300) throw std::invalid_argument("degenerate tangent pair");
    for (auto& c : e2) c /= n2;

    double worst = 0;
    for (const auto& v : {e1, e2}) {
        auto jv = apply(v);
        double a = dot(jv, e1), b = dot(jv, e2);
        double off2 = dot(jv, jv) - a * a - b * b;
        double rel = std::sqrt(std::max(off2, 0.0)) / std::sqrt(dot(jv, jv));
        worst = std::max(worst, rel);
    }
    return worst;
}

}  // namespace assoc
