#include "assoc/g2forms.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace assoc {

namespace {

// sign of the permutation sorting idx, 0 if a repeat occurs
int sort_sign(std::vector<int>& idx) {
    int sign = 1;
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = i + 1; j < idx.size(); ++j) {
            if (idx[i] == idx[j]) return 0;
            if (idx[i] > idx[j]) {
                std::swap(idx[i], idx[j]);
                sign = -sign;
            }
        }
    return sign;
}

template <class Scalar, class VecT>
Scalar det_minor(const std::vector<int>& rows, const std::vector<VecT>& cols) {
    size_t k = rows.size();
    std::vector<std::vector<Scalar>> m(k, std::vector<Scalar>(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) m[i][j] = cols[j][rows[i]];
    // expansion by permutations is fine for k <= 4
    std::vector<size_t> perm(k);
    for (size_t i = 0; i < k; ++i) perm[i] = i;
    Scalar det(0);
    do {
        int sg = 1;
        for (size_t i = 0; i < k; ++i)
            for (size_t j = i + 1; j < k; ++j)
                if (perm[i] > perm[j]) sg = -sg;
        Scalar p = m[0][perm[0]];
        for (size_t i = 1; i < k; ++i) p = p * m[i][perm[i]];
        det += (sg > 0) ? p : -p;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

AltForm make_form(int degree, std::initializer_list<std::pair<std::vector<int>, int>> terms) {
    AltForm f(degree);
    for (const auto& [idx, c] : terms) {
        std::vector<int> zero_based;
        for (int i : idx) zero_based.push_back(i - 1);
        f.add_term(std::move(zero_based), Rat(c));
    }
    return f;
}

}  // namespace

void AltForm::add_term(std::vector<int> idx, Rat c) {
    if ((int)idx.size() != degree_) throw std::invalid_argument("term degree mismatch");
    for (int i : idx)
        if (i < 0 || i > 6) throw std::invalid_argument("index out of range");
    int sg = sort_sign(idx);
    if (sg == 0 || c == 0) return;
    Rat& slot = terms_[idx];
    slot += (sg > 0) ? c : Rat(-c);
    if (slot == 0) terms_.erase(idx);
}

Rat AltForm::coeff(const std::vector<int>& sorted_idx) const {
    auto it = terms_.find(sorted_idx);
    return it == terms_.end() ? Rat(0) : it->second;
}

AltForm AltForm::operator-() const {
    AltForm r(degree_);
    for (const auto& [i, c] : terms_) r.terms_[i] = -c;
    return r;
}

AltForm operator+(const AltForm& a, const AltForm& b) {
    if (a.degree_ != b.degree_) throw std::invalid_argument("degree mismatch");
    AltForm r = a;
    for (const auto& [i, c] : b.terms_) {
        Rat& slot = r.terms_[i];
        slot += c;
        if (slot == 0) r.terms_.erase(i);
    }
    return r;
}

AltForm operator-(const AltForm& a, const AltForm& b) { return a + (-b); }

AltForm AltForm::scaled(const Rat& c) const {
    AltForm r(degree_);
    if (c == 0) return r;
    for (const auto& [i, x] : terms_) r.terms_[i] = x * c;
    return r;
}

bool operator==(const AltForm& a, const AltForm& b) {
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
}

AltForm wedge(const AltForm& a, const AltForm& b) {
    AltForm r(a.degree_ + b.degree_);
    if (r.degree() > 7) return r;
    for (const auto& [ia, ca] : a.terms_)
        for (const auto& [ib, cb] : b.terms_) {
            std::vector<int> idx = ia;
            idx.insert(idx.end(), ib.begin(), ib.end());
            r.add_term(std::move(idx), ca * cb);
        }
    return r;
}

Rat AltForm::eval(const std::vector<RatVec>& vectors) const {
    if ((int)vectors.size() != degree_) throw std::invalid_argument("vector count != degree");
    Rat total(0);
    for (const auto& [idx, c] : terms_) total += c * det_minor<Rat, RatVec>(idx, vectors);
    return total;
}

double AltForm::eval_d(const std::vector<Vec7>& vectors) const {
    if ((int)vectors.size() != degree_) throw std::invalid_argument("vector count != degree");
    double total = 0;
    for (const auto& [idx, c] : terms_)
        total += c.get_d() * det_minor<double, Vec7>(idx, vectors);
    return total;
}

const AltForm& phi0() {
    static const AltForm f = make_form(3, {{{1, 2, 3}, 1},
                                           {{1, 4, 5}, 1},
                                           {{1, 6, 7}, 1},
                                           {{2, 4, 6}, 1},
                                           {{2, 5, 7}, -1},
                                           {{3, 4, 7}, -1},
                                           {{3, 5, 6}, -1}});
    return f;
}

const AltForm& star_phi0() {
    static const AltForm f = make_form(4, {{{4, 5, 6, 7}, 1},
                                           {{2, 3, 6, 7}, 1},
                                           {{2, 3, 4, 5}, 1},
                                           {{1, 3, 5, 7}, 1},
                                           {{1, 3, 4, 6}, -1},
                                           {{1, 2, 5, 6}, -1},
                                           {{1, 2, 4, 7}, -1}});
    return f;
}

namespace {

// dz_a = dx_{2a} + i dx_{2a+1} (1-based: z1 = x2+ix3, z2 = x4+ix5, z3 = x6+ix7)
std::pair<AltForm, AltForm> dz(int a) {
    AltForm re(1), im(1);
    re.add_term({2 * a - 1}, Rat(1));  // 0-based index of x_{2a}
    im.add_term({2 * a}, Rat(1));
    return {re, im};
}

std::pair<AltForm, AltForm> wedge_c(const std::pair<AltForm, AltForm>& u,
                                    const std::pair<AltForm, AltForm>& v) {
    return {wedge(u.first, v.first) - wedge(u.second, v.second),
            wedge(u.first, v.second) + wedge(u.second, v.first)};
}

}  // namespace

AltForm omega0() {
    // (i/2) sum dz_a ^ conj(dz_a) = dx23 + dx45 + dx67
    AltForm w(2);
    w.add_term({1, 2}, Rat(1));
    w.add_term({3, 4}, Rat(1));
    w.add_term({5, 6}, Rat(1));
    return w;
}

AltForm re_omega0() { return wedge_c(wedge_c(dz(1), dz(2)), dz(3)).first; }
AltForm im_omega0() { return wedge_c(wedge_c(dz(1), dz(2)), dz(3)).second; }

RatVec cross(const AltForm& f, const RatVec& u, const RatVec& v) {
    if (f.degree() != 3) throw std::invalid_argument("cross needs a 3-form");
    RatVec w(7, Rat(0));
    for (const auto& [idx, c] : f.terms()) {
        // contributions f(e_a, e_b, e_m) u_a v_b to component m, for {a,b,m} = idx
        for (int pos = 0; pos < 3; ++pos) {
            int m = idx[pos];
            int a = idx[(pos + 1) % 3], b = idx[(pos + 2) % 3];
            // permutation (a, b, m) of sorted idx: cyclic shifts are even
            w[m] += c * (u[a] * v[b] - u[b] * v[a]);
        }
    }
    return w;
}

Vec7 cross_d(const AltForm& f, const Vec7& u, const Vec7& v) {
    RatVec uq(7), vq(7);
    Vec7 w{};
    if (f.degree() != 3) throw std::invalid_argument("cross needs a 3-form");
    for (const auto& [idx, c] : f.terms()) {
        double cd = c.get_d();
        for (int pos = 0; pos < 3; ++pos) {
            int m = idx[pos];
            int a = idx[(pos + 1) % 3], b = idx[(pos + 2) % 3];
            w[m] += cd * (u[a] * v[b] - u[b] * v[a]);
        }
    }
    return w;
}

bool is_orthonormal(const OrientedPlaneQ& p) {
    for (size_t i = 0; i < p.basis.size(); ++i)
        for (size_t j = i; j < p.basis.size(); ++j) {
            Rat dot(0);
            for (int k = 0; k < 7; ++k) dot += p.basis[i][k] * p.basis[j][k];
            if (dot != (i == j ? Rat(1) : Rat(0))) return false;
        }
    return true;
}

bool is_orthonormal(const OrientedPlaneD& p, double tol) {
    for (size_t i = 0; i < p.basis.size(); ++i)
        for (size_t j = i; j < p.basis.size(); ++j) {
            double dot = 0;
            for (int k = 0; k < 7; ++k) dot += p.basis[i][k] * p.basis[j][k];
            if (std::fabs(dot - (i == j ? 1.0 : 0.0)) > tol) return false;
        }
    return true;
}

Rat calibration_value(const AltForm& f, const OrientedPlaneQ& p) {
    if ((int)p.basis.size() != f.degree())
        throw std::invalid_argument("plane dimension != form degree");
    if (!is_orthonormal(p)) throw std::invalid_argument("plane basis not orthonormal");
    return f.eval(p.basis);
}

double calibration_value(const AltForm& f, const OrientedPlaneD& p, double tol) {
    if ((int)p.basis.size() != f.degree())
        throw std::invalid_argument("plane dimension != form degree");
    if (!is_orthonormal(p, tol)) throw std::invalid_argument("plane basis not orthonormal");
    return f.eval_d(p.basis);
}

bool cy_decomposition_check() {
    AltForm dx1(1);
    dx1.add_term({0}, Rat(1));
    AltForm w = omega0();
    bool three_ok = phi0() == wedge(dx1, w) + re_omega0();
    AltForm half_w2 = wedge(w, w).scaled(Rat(1, 2));
    bool four_ok = star_phi0() == half_w2 - wedge(dx1, im_omega0());
    return three_ok && four_ok;
}

int stabilizer_dimension() {
    // rows: 3-index tuples i<j<k; cols: entries B_{ab} of a linear map.
    std::vector<std::vector<int>> triples;
    for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j)
            for (int k = j + 1; k < 7; ++k) triples.push_back({i, j, k});
    const AltForm& f = phi0();
    RatMat m(triples.size(), RatVec(49, Rat(0)));
    for (size_t r = 0; r < triples.size(); ++r) {
        const auto& t = triples[r];
        for (int a = 0; a < 7; ++a)
            for (int slot = 0; slot < 3; ++slot) {
                // coefficient of B_{a, t[slot]}: f with slot replaced by e_a
                std::vector<int> idx = t;
                idx[slot] = a;
                int col = a * 7 + t[slot];
                std::vector<int> sorted = idx;
                int sg = sort_sign(sorted);
                if (sg == 0) continue;
                Rat c = f.coeff(sorted);
                if (c == 0) continue;
                m[r][col] += (sg > 0) ? c : Rat(-c);
            }
    }
    return 49 - (int)mat_rank(std::move(m));
}

namespace {

double dot7(const Vec7& a, const Vec7& b) {
    double s = 0;
    for (int i = 0; i < 7; ++i) s += a[i] * b[i];
    return s;
}

double det7(std::array<Vec7, 7> cols) {
    // Gaussian elimination on columns-as-matrix
    double det = 1;
    for (int p = 0; p < 7; ++p) {
        int best = p;
        for (int i = p + 1; i < 7; ++i)
            if (std::fabs(cols[best][p]) < std::fabs(cols[i][p])) best = i;
        if (best != p) {
            std::swap(cols[best], cols[p]);
            det = -det;
        }
        if (cols[p][p] == 0) return 0;
        det *= cols[p][p];
        for (int i = p + 1; i < 7; ++i) {
            double f = cols[i][p] / cols[p][p];
            for (int k = p; k < 7; ++k) cols[i][k] -= f * cols[p][k];
        }
    }
    return det;
}

}  // namespace

std::vector<Vec7> oriented_complement(const std::vector<Vec7>& v3) {
    std::vector<Vec7> frame = v3;
    for (int cand = 0; cand < 7 && frame.size() < 7; ++cand) {
        Vec7 w{};
        w[cand] = 1;
        for (const auto& f : frame) {
            double d = dot7(w, f);
            for (int i = 0; i < 7; ++i) w[i] -= d * f[i];
        }
        double n = std::sqrt(dot7(w, w));
        if (n < 1e-8) continue;
        for (int i = 0; i < 7; ++i) w[i] /= n;
        frame.push_back(w);
    }
    if (frame.size() != 7) throw std::runtime_error("failed to complete frame");
    std::array<Vec7, 7> cols{};
    for (int j = 0; j < 7; ++j)
        for (int i = 0; i < 7; ++i) cols[j][i] = frame[j][i];
    // rows of det argument are vector components: transpose irrelevant for sign
    if (det7(cols) < 0) std::swap(frame[5], frame[6]);
    return {frame.begin() + 3, frame.end()};
}

std::vector<RatVec> coassociative_extension_space(const AltForm& f,
                                                  const std::vector<RatVec>& v3) {
    if (f.degree() != 3 || v3.size() != 3) throw std::invalid_argument("need 3-form and 3 vectors");
    RatMat m;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            RatVec row(7, Rat(0));
            for (int z = 0; z < 7; ++z) {
                RatVec ez(7, Rat(0));
                ez[z] = 1;
                row[z] = f.eval({v3[i], v3[j], ez});
            }
            m.push_back(std::move(row));
        }
    return kernel_basis(std::move(m));
}

namespace {

// dense degree-4 coefficient table used by the frame search
struct Dense4 {
    std::array<double, 35> c{};
    static int rank_of(int i, int j, int k, int l) {
        // position of 4-subset among C(7,4) in lexicographic order
        static const auto table = [] {
            std::map<std::array<int, 4>, int> t;
            int idx = 0;
            for (int a = 0; a < 7; ++a)
                for (int b = a + 1; b < 7; ++b)
                    for (int cc = b + 1; cc < 7; ++cc)
                        for (int d = cc + 1; d < 7; ++d) t[{a, b, cc, d}] = idx++;
            return t;
        }();
        return table.at({i, j, k, l});
    }
};

Dense4 to_dense4(const AltForm& f) {
    Dense4 d;
    for (const auto& [idx, c] : f.terms())
        d.c[Dense4::rank_of(idx[0], idx[1], idx[2], idx[3])] = c.get_d();
    return d;
}

// pullback of a dense 4-form under A (columns = images of basis vectors)
Dense4 pullback4(const Dense4& f, const Mat7& a) {
    Dense4 r;
    int out = 0;
    for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j)
            for (int k = j + 1; k < 7; ++k)
                for (int l = k + 1; l < 7; ++l) {
                    // f(A e_i, A e_j, A e_k, A e_l)
                    double v = 0;
                    int in = 0;
                    for (int p = 0; p < 7; ++p)
                        for (int q = p + 1; q < 7; ++q)
                            for (int s = q + 1; s < 7; ++s)
                                for (int t = s + 1; t < 7; ++t) {
                                    double cf = f.c[in++];
                                    if (cf == 0) continue;
                                    // 4x4 determinant of rows (p,q,s,t), cols (i,j,k,l)
                                    const double* ci = a[i].data();
                                    const double* cj = a[j].data();
                                    const double* ck = a[k].data();
                                    const double* cl = a[l].data();
                                    double m[4][4] = {{ci[p], cj[p], ck[p], cl[p]},
                                                      {ci[q], cj[q], ck[q], cl[q]},
                                                      {ci[s], cj[s], ck[s], cl[s]},
                                                      {ci[t], cj[t], ck[t], cl[t]}};
                                    double det =
                                        m[0][0] * (m[1][1] * (m[2][2] * m[3][3] - m[2][3] * m[3][2]) -
                                                   m[1][2] * (m[2][1] * m[3][3] - m[2][3] * m[3][1]) +
                                                   m[1][3] * (m[2][1] * m[3][2] - m[2][2] * m[3][1])) -
                                        m[0][1] * (m[1][0] * (m[2][2] * m[3][3] - m[2][3] * m[3][2]) -
                                                   m[1][2] * (m[2][0] * m[3][3] - m[2][3] * m[3][0]) +
                                                   m[1][3] * (m[2][0] * m[3][2] - m[2][2] * m[3][0])) +
                                        m[0][2] * (m[1][0] * (m[2][1] * m[3][3] - m[2][3] * m[3][1]) -
                                                   m[1][1] * (m[2][0] * m[3][3] - m[2][3] * m[3][0]) +
                                                   m[1][3] * (m[2][0] * m[3][1] - m[2][1] * m[3][0])) -
                                        m[0][3] * (m[1][0] * (m[2][1] * m[3][2] - m[2][2] * m[3][1]) -
                                                   m[1][1] * (m[2][0] * m[3][2] - m[2][2] * m[3][0]) +
                                                   m[1][2] * (m[2][0] * m[3][1] - m[2][1] * m[3][0]));
                                    v += cf * det;
                                }
                    r.c[out++] = v;
                }
    return r;
}

std::array<double, 35> residual_of(const Dense4& psi, const Mat7& a, const Dense4& target) {
    Dense4 pb = pullback4(psi, a);
    std::array<double, 35> r{};
    for (int i = 0; i < 35; ++i) r[i] = pb.c[i] - target.c[i];
    return r;
}

double norm2(const std::array<double, 35>& r) {
    double s = 0;
    for (double x : r) s += x * x;
    return s;
}

}  // namespace

std::optional<Mat7> find_normal_frame(const AltForm& psi, double tol) {
    if (psi.degree() != 4) throw std::invalid_argument("psi must be a 4-form");
    Dense4 p = to_dense4(psi);
    Dense4 target = to_dense4(star_phi0());
    Mat7 a{};
    for (int i = 0; i < 7; ++i) a[i][i] = 1.0;

    auto res = residual_of(p, a, target);
    double f = norm2(res);
    double lambda = 1e-3;
    for (int iter = 0; iter < 200 && f > tol * tol; ++iter) {
        // finite-difference Jacobian, 35 x 49
        constexpr double h = 1e-6;
        std::vector<std::array<double, 35>> jac(49);
        for (int col = 0; col < 49; ++col) {
            Mat7 ah = a;
            ah[col / 7][col % 7] += h;
            auto rh = residual_of(p, ah, target);
            for (int i = 0; i < 35; ++i) jac[col][i] = (rh[i] - res[i]) / h;
        }
        // solve (J^T J + lambda I) d = -J^T r
        std::vector<std::vector<double>> n(49, std::vector<double>(50, 0.0));
        for (int i = 0; i < 49; ++i) {
            for (int j = 0; j < 49; ++j) {
                double s = 0;
                for (int k = 0; k < 35; ++k) s += jac[i][k] * jac[j][k];
                n[i][j] = s;
            }
            n[i][i] += lambda;
            double s = 0;
            for (int k = 0; k < 35; ++k) s += jac[i][k] * res[k];
            n[i][49] = -s;
        }
        for (int pcol = 0; pcol < 49; ++pcol) {  // plain elimination
            int best = pcol;
            for (int i = pcol + 1; i < 49; ++i)
                if (std::fabs(n[i][pcol]) > std::fabs(n[best][pcol])) best = i;
            std::swap(n[pcol], n[best]);
            if (std::fabs(n[pcol][pcol]) < 1e-300) return std::nullopt;
            for (int i = 0; i < 49; ++i) {
                if (i == pcol) continue;
                double fmul = n[i][pcol] / n[pcol][pcol];
                if (fmul == 0) continue;
                for (int k = pcol; k <= 49; ++k) n[i][k] -= fmul * n[pcol][k];
            }
        }
        Mat7 anew = a;
        for (int col = 0; col < 49; ++col)
            anew[col / 7][col % 7] += n[col][49] / n[col][col];
        auto rnew = residual_of(p, anew, target);
        double fnew = norm2(rnew);
        if (fnew < f) {
            a = anew;
            res = rnew;
            f = fnew;
            lambda = std::max(lambda * 0.3, 1e-12);
        } else {
            lambda *= 10;
            if (lambda > 1e12) break;
        }
    }
    if (f > tol * tol) return std::nullopt;
    // -A induces the same 4-form pullback; normalize to the oriented frame
    {
        std::array<Vec7, 7> cols{};
        for (int j = 0; j < 7; ++j)
            for (int i = 0; i < 7; ++i) cols[j][i] = a[j][i];
        if (det7(cols) < 0)
            for (auto& col : a)
                for (auto& x : col) x = -x;
    }
    return a;
}

TamenessReport tameness_check(const AltForm& phi, const AltForm& psi, int samples, uint64_t seed) {
    if (phi.degree() != 3) throw std::invalid_argument("phi must be a 3-form");
    auto frame = find_normal_frame(psi);
    if (!frame) throw std::domain_error("psi not positive (no normal frame found)");
    const Mat7& a = *frame;

    Dense4 check = to_dense4(psi);
    auto frame_res = residual_of(check, a, to_dense4(star_phi0()));

    TamenessReport rep;
    rep.samples = samples;
    rep.frameResidual = std::sqrt(norm2(frame_res));

    double global_min = 0;
    std::vector<Vec7> global_plane(3);
    bool init = false;

#pragma omp parallel
    {
        double local_min = 0;
        std::vector<Vec7> local_plane(3);
        bool local_init = false;
#pragma omp for schedule(static)
        for (int s = 0; s < samples; ++s) {
            std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * (uint64_t)(s + 1)));
            std::normal_distribution<double> gauss(0.0, 1.0);
            Vec7 u{}, v{};
            for (int i = 0; i < 7; ++i) u[i] = gauss(rng);
            double nu = std::sqrt(dot7(u, u));
            for (int i = 0; i < 7; ++i) u[i] /= nu;
            for (int i = 0; i < 7; ++i) v[i] = gauss(rng);
            double duv = dot7(u, v);
            for (int i = 0; i < 7; ++i) v[i] -= duv * u[i];
            double nv = std::sqrt(dot7(v, v));
            if (nv < 1e-9) continue;
            for (int i = 0; i < 7; ++i) v[i] /= nv;
            Vec7 w = cross_d(phi0(), u, v);
            // push the standard associative plane through the frame map
            auto apply = [&](const Vec7& x) {
                Vec7 y{};
                for (int j = 0; j < 7; ++j)
                    for (int i = 0; i < 7; ++i) y[i] += a[j][i] * x[j];
                return y;
            };
            std::vector<Vec7> plane = {apply(u), apply(v), apply(w)};
            double val = phi.eval_d(plane);
            if (!local_init || val < local_min) {
                local_min = val;
                local_plane = plane;
                local_init = true;
            }
        }
#pragma omp critical
        {
            if (local_init && (!init || local_min < global_min)) {
                global_min = local_min;
                global_plane = local_plane;
                init = true;
            }
        }
    }
    rep.minValue = global_min;
    rep.worstPlane = global_plane;
    rep.pass = init && global_min > 0;
    return rep;
}

}  // namespace assoc
