#include "assoc/lawlor.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

namespace assoc {

namespace {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1].
constexpr double kKronrodX[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                                 0.741531185599394, 0.586087235467691, 0.405845151377397,
                                 0.207784955007898, 0.0};
constexpr double kKronrodW[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                                 0.140653259715525, 0.169004726639267, 0.190350578064785,
                                 0.204432940075298, 0.209482141084728};
constexpr double kGaussW[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                               0.417959183673469};

struct GkResult {
    double value, error;
};

GkResult gk15(const std::function<double(double)>& f, double lo, double hi) {
    double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    double fc = f(c);
    double resk = fc * kKronrodW[7];
    double resg = fc * kGaussW[3];
    for (int i = 0; i < 7; ++i) {
        double x = h * kKronrodX[i];
        double fsum = f(c - x) + f(c + x);
        resk += fsum * kKronrodW[i];
        if (i % 2 == 1) resg += fsum * kGaussW[i / 2];
    }
    return {resk * h, std::fabs((resk - resg) * h)};
}

double adaptive(const std::function<double(double)>& f, double lo, double hi, double tol,
                int depth) {
    auto r = gk15(f, lo, hi);
    if (r.error <= tol || hi - lo < 1e-14) return r.value;
    if (depth > 48) throw std::runtime_error("quadrature did not converge");
    double mid = 0.5 * (lo + hi);
    return adaptive(f, lo, mid, tol / 2, depth + 1) + adaptive(f, mid, hi, tol / 2, depth + 1);
}

// P(x) = e1 + e2 x^2 + e3 x^4 with e_i the elementary symmetric polynomials.
struct Poly {
    double e1, e2, e3;
    double operator()(double x) const {
        double x2 = x * x;
        return e1 + x2 * (e2 + x2 * e3);
    }
};

Poly sym(const LawlorParams& p) {
    return {p.a1 + p.a2 + p.a3, p.a1 * p.a2 + p.a1 * p.a3 + p.a2 * p.a3, p.a1 * p.a2 * p.a3};
}

// Integrand of the angle integrals after x = tan t, with the sec^2 factor.
std::function<double(double)> angle_integrand(const LawlorParams& p, int k) {
    Poly P = sym(p);
    double ak = p[k];
    return [P, ak](double t) {
        double ct = std::cos(t);
        if (std::fabs(ct) < 1e-12) return 0.0;  // integrand decays like cos^2
        double x = std::tan(t);
        double sec2 = 1.0 / (ct * ct);
        return ak * sec2 / ((1.0 + ak * x * x) * std::sqrt(P(x)));
    };
}

constexpr double kHalfPi = 1.5707963267948966;

}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi, double tol) {
    return adaptive(f, lo, hi, tol, 0);
}

LawlorAngles lawlor_angles(const LawlorParams& p, double tol) {
    if (!(p.a1 > 0 && p.a2 > 0 && p.a3 > 0)) throw std::invalid_argument("a_k must be positive");
    LawlorAngles r;
    double phi[3];
    for (int k = 0; k < 3; ++k)
        phi[k] = integrate(angle_integrand(p, k), -kHalfPi, kHalfPi, tol);
    r.phi1 = phi[0];
    r.phi2 = phi[1];
    r.phi3 = phi[2];
    r.s = (1.0 / 3.0) / std::sqrt(p.a1 * p.a2 * p.a3);
    return r;
}

double lawlor_psi(const LawlorParams& p, int k, double y, double tol) {
    return integrate(angle_integrand(p, k), -kHalfPi, std::atan(y), tol);
}

std::complex<double> lawlor_z(const LawlorParams& p, int k, double y, double tol) {
    double raw = std::sqrt(1.0 / p[k] + y * y);
    return std::polar(raw, lawlor_psi(p, k, y, tol));
}

LawlorParams lawlor_invert(double phi1, double phi2, double s, double tol) {
    if (!(phi1 > 0 && phi2 > 0 && phi1 + phi2 < M_PI))
        throw std::invalid_argument("need phi1, phi2 in (0,pi) with phi1+phi2 < pi");
    if (!(s > 0)) throw std::invalid_argument("need s > 0");

    // a = scale * (b1, b2, 1/(b1 b2)) keeps a1 a2 a3 = scale^3, so s is
    // matched exactly; solve the two angle equations in u = (log b1, log b2).
    double scale = std::cbrt(1.0 / (9.0 * s * s));
    auto params_of = [&](double u1, double u2) {
        double b1 = std::exp(u1), b2 = std::exp(u2);
        return LawlorParams{scale * b1, scale * b2, scale / (b1 * b2)};
    };
    auto residual = [&](double u1, double u2, double out[2]) {
        LawlorAngles ang = lawlor_angles(params_of(u1, u2), tol * 1e-2);
        out[0] = ang.phi1 - phi1;
        out[1] = ang.phi2 - phi2;
    };

    double u[2] = {0.0, 0.0};
    double r[2];
    residual(u[0], u[1], r);
    double fnorm = std::hypot(r[0], r[1]);
    for (int iter = 0; iter < 100; ++iter) {
        if (fnorm < tol) {
            LawlorParams p = params_of(u[0], u[1]);
            return p;
        }
        const double h = 1e-6;
        double j[2][2], rp[2];
        for (int c = 0; c < 2; ++c) {
            double up[2] = {u[0], u[1]};
            up[c] += h;
            residual(up[0], up[1], rp);
            j[0][c] = (rp[0] - r[0]) / h;
            j[1][c] = (rp[1] - r[1]) / h;
        }
        double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if (std::fabs(det) < 1e-300) throw std::runtime_error("singular Jacobian in inversion");
        double d0 = (-r[0] * j[1][1] + r[1] * j[0][1]) / det;
        double d1 = (-r[1] * j[0][0] + r[0] * j[1][0]) / det;
        // backtracking line search on the residual norm
        double step = 1.0;
        for (int bt = 0; bt < 30; ++bt, step *= 0.5) {
            double un[2] = {u[0] + step * d0, u[1] + step * d1};
            double rn[2];
            residual(un[0], un[1], rn);
            double fn = std::hypot(rn[0], rn[1]);
            if (fn < fnorm) {
                u[0] = un[0];
                u[1] = un[1];
                r[0] = rn[0];
                r[1] = rn[1];
                fnorm = fn;
                break;
            }
            if (bt == 29) throw std::runtime_error("line search failed in inversion");
        }
    }
    throw std::runtime_error("inversion did not converge in 100 iterations");
}

std::vector<AsymptoteSample> lawlor_asymptote_check(const LawlorParams& p,
                                                    const std::vector<double>& radii,
                                                    int sphereSamples, uint64_t seed, double tol) {
    std::vector<AsymptoteSample> out;
    double s = (1.0 / 3.0) / std::sqrt(p.a1 * p.a2 * p.a3);
    for (double r : radii) {
        double y = -r;
        std::complex<double> z[3];
        double mod[3];
        for (int k = 0; k < 3; ++k) {
            z[k] = lawlor_z(p, k, y, tol);
            mod[k] = std::abs(z[k]);
        }
        std::mt19937_64 rng(seed ^ (uint64_t)(r * 1e6));
        std::normal_distribution<double> gauss(0.0, 1.0);
        double worst = 0;
        for (int i = 0; i < sphereSamples; ++i) {
            double x[3] = {gauss(rng), gauss(rng), gauss(rng)};
            double n = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
            if (n < 1e-12) continue;
            for (double& c : x) c /= n;
            // actual point vs graph model (1 + i s rho^-3) on the real slice
            double rho2 = 0;
            for (int k = 0; k < 3; ++k) rho2 += mod[k] * mod[k] * x[k] * x[k];
            double rho = std::sqrt(rho2);
            std::complex<double> factor(1.0, s / (rho * rho * rho));
            double dev2 = 0;
            for (int k = 0; k < 3; ++k) {
                std::complex<double> actual = z[k] * x[k];
                std::complex<double> model = factor * (mod[k] * x[k]);
                dev2 += std::norm(actual - model);
            }
            worst = std::max(worst, std::sqrt(dev2));
        }
        out.push_back({r, worst});
    }
    return out;
}

}  // namespace assoc
