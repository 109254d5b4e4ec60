#include "assoc/threeman.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace assoc {

namespace {

size_t rows_of(const IntMat& m) { return m.size(); }
size_t cols_of(const IntMat& m) { return m.empty() ? 0 : m[0].size(); }

void check_rect(const IntMat& m) {
    for (const auto& r : m)
        if (r.size() != cols_of(m)) throw std::invalid_argument("ragged matrix");
}

// Reduction to Smith form by row/column gcd elimination. V accumulates the
// column operations when requested (D = U m V for unimodular U, V; only V is
// needed, for kernels).
struct SmithWork {
    IntMat a;
    IntMat v;  // cols x cols, or empty when not tracked
    bool track_v = false;

    void swap_rows(size_t i, size_t j) { std::swap(a[i], a[j]); }
    void swap_cols(size_t i, size_t j) {
        for (auto& r : a) std::swap(r[i], r[j]);
        if (track_v)
            for (auto& r : v) std::swap(r[i], r[j]);
    }
    void add_row(size_t dst, size_t src, const Int& f) {  // row dst += f * row src
        for (size_t k = 0; k < a[dst].size(); ++k) a[dst][k] += f * a[src][k];
    }
    void add_col(size_t dst, size_t src, const Int& f) {
        for (auto& r : a) r[dst] += f * r[src];
        if (track_v)
            for (auto& r : v) r[dst] += f * r[src];
    }
    void negate_row(size_t i) {
        for (auto& x : a[i]) x = -x;
    }

    void reduce() {
        size_t m = rows_of(a), n = cols_of(a);
        size_t t = 0;
        while (t < m && t < n) {
            // find a nonzero pivot in the remaining block
            size_t pi = t, pj = t;
            bool found = false;
            for (size_t i = t; i < m && !found; ++i)
                for (size_t j = t; j < n && !found; ++j)
                    if (a[i][j] != 0) { pi = i; pj = j; found = true; }
            if (!found) break;
            swap_rows(t, pi);
            swap_cols(t, pj);
            // clear row and column t by gcd steps; entries may refill, loop
            for (;;) {
                bool dirty = false;
                for (size_t i = t + 1; i < m; ++i) {
                    while (a[i][t] != 0) {
                        Int q = a[i][t] / a[t][t];
                        add_row(i, t, -q);
                        if (a[i][t] != 0) { swap_rows(t, i); dirty = true; }
                    }
                }
                for (size_t j = t + 1; j < n; ++j) {
                    while (a[t][j] != 0) {
                        Int q = a[t][j] / a[t][t];
                        add_col(j, t, -q);
                        if (a[t][j] != 0) { swap_cols(t, j); dirty = true; }
                    }
                }
                if (!dirty) break;
            }
            ++t;
        }
        // enforce divisibility d_i | d_{i+1}
        for (size_t i = 0; t > 0 && i + 1 < t; ++i) {
            for (size_t j = i + 1; j < t; ++j) {
                if (a[j][j] % a[i][i] == 0) continue;
                // fold a[j][j] into position i via one more elimination round
                add_col(i, j, 1);
                for (;;) {
                    Int q = a[j][i] / a[i][i];
                    add_row(j, i, -q);
                    if (a[j][i] == 0) break;
                    swap_rows(i, j);
                }
                // clear the fill-in at (i, j)
                {
                    Int q = a[i][j] / a[i][i];
                    add_col(j, i, -q);
                }
                if (a[i][j] != 0 || a[j][i] != 0)
                    throw std::logic_error("smith: divisibility pass failed");
            }
        }
        for (size_t i = 0; i < std::min(m, n); ++i)
            if (a[i][i] < 0) negate_row(i);
    }
};

}  // namespace

SmithResult smith_normal_form(IntMat m) {
    check_rect(m);
    size_t n = cols_of(m);
    SmithWork w{std::move(m), {}, false};
    w.reduce();
    SmithResult r;
    r.divisors.assign(n, Int(0));
    for (size_t i = 0; i < std::min(rows_of(w.a), n); ++i) {
        r.divisors[i] = w.a[i][i];
        if (w.a[i][i] != 0) ++r.rank;
    }
    return r;
}

std::vector<std::vector<Int>> integer_kernel(IntMat m) {
    check_rect(m);
    size_t rows = rows_of(m), n = cols_of(m);
    SmithWork w;
    w.a = std::move(m);
    w.track_v = true;
    w.v.assign(n, std::vector<Int>(n, 0));
    for (size_t i = 0; i < n; ++i) w.v[i][i] = 1;
    w.reduce();
    std::vector<std::vector<Int>> basis;
    for (size_t j = 0; j < n; ++j) {
        bool zero_col = j >= rows || w.a[j][j] == 0;
        if (!zero_col) continue;
        std::vector<Int> k(n);
        for (size_t i = 0; i < n; ++i) k[i] = w.v[i][j];
        basis.push_back(std::move(k));
    }
    return basis;
}

std::optional<Int> cokernel_order(const IntMat& m) {
    SmithResult s = smith_normal_form(m);
    Int order = 1;
    for (const auto& d : s.divisors) {
        if (d == 0) return std::nullopt;
        order *= d;
    }
    return order;
}

AbelianGroupPresentation direct_sum(const AbelianGroupPresentation& a,
                                    const AbelianGroupPresentation& b) {
    AbelianGroupPresentation r;
    r.generators = a.generators + b.generators;
    for (const auto& row : a.relations) {
        std::vector<Int> x(row);
        x.resize(r.generators, Int(0));
        r.relations.push_back(std::move(x));
    }
    for (const auto& row : b.relations) {
        std::vector<Int> x(a.generators, Int(0));
        x.insert(x.end(), row.begin(), row.end());
        r.relations.push_back(std::move(x));
    }
    return r;
}

Int i_invariant(const AbelianGroupPresentation& p) {
    if (p.generators == 0) return 1;
    IntMat m = p.relations;
    if (m.empty()) m.push_back(std::vector<Int>(p.generators, 0));
    for (const auto& row : m)
        if ((int)row.size() != p.generators)
            throw std::invalid_argument("relation length != generator count");
    auto order = cokernel_order(m);
    return order ? *order : Int(0);
}

namespace {

// Generator of a rank-1 subgroup of Z^2 given by spanning vectors, via a
// two-row Hermite reduction. Throws if the subgroup has rank 0 or 2.
std::array<Int, 2> rank1_generator(std::vector<std::array<Int, 2>> gens) {
    std::array<Int, 2> h = {0, 0};  // row with nonzero first coordinate
    Int d = 0;                      // gcd of second coordinates of (0, *) rows
    auto fold_gcd = [](Int& acc, const Int& x) {
        mpz_gcd(acc.get_mpz_t(), acc.get_mpz_t(), x.get_mpz_t());
    };
    for (auto v : gens) {
        while (v[0] != 0) {
            if (h[0] == 0) { std::swap(h, v); continue; }
            Int q = v[0] / h[0];
            v[0] -= q * h[0];
            v[1] -= q * h[1];
            if (v[0] != 0) std::swap(h, v);
        }
        fold_gcd(d, v[1]);
    }
    if (h[0] == 0) { fold_gcd(d, h[1]); h = {0, 0}; }
    int rank = (h[0] != 0 ? 1 : 0) + (d != 0 ? 1 : 0);
    if (rank != 1)
        throw std::invalid_argument("Ker(rho) has rank " + std::to_string(rank) + ", expected 1");
    std::array<Int, 2> b = (h[0] != 0) ? h : std::array<Int, 2>{0, d};
    if (b[0] < 0 || (b[0] == 0 && b[1] < 0)) { b[0] = -b[0]; b[1] = -b[1]; }
    return b;
}

int sign_of(const Int& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

}  // namespace

ConeSmoothingReport cone_smoothings(const ConeSmoothingInput& input) {
    const auto& p = input.presentationOfP;
    int g = p.generators;
    if ((int)input.rho.size() != 2)
        throw std::invalid_argument("rho must have two rows (images of (1,0) and (0,1))");
    for (const auto& row : input.rho)
        if ((int)row.size() != g) throw std::invalid_argument("rho row length != generators");

    // Ker(rho : Z^2 -> H1(P)) as projection of the integer kernel of
    // [c1 c2 | relation rows^T] : Z^(2+r) -> Z^g.
    size_t r = p.relations.size();
    IntMat m(g, std::vector<Int>(2 + r, 0));
    for (int i = 0; i < g; ++i) {
        m[i][0] = input.rho[0][i];
        m[i][1] = input.rho[1][i];
        for (size_t j = 0; j < r; ++j) m[i][2 + j] = p.relations[j][i];
    }
    std::vector<std::array<Int, 2>> projections;
    for (const auto& k : integer_kernel(m)) projections.push_back({k[0], k[1]});
    ConeSmoothingReport rep;
    rep.kernelSlope = rank1_generator(std::move(projections));

    auto with_extra = [&](std::vector<std::vector<Int>> extra) {
        AbelianGroupPresentation q = p;
        for (auto& row : extra) q.relations.push_back(std::move(row));
        return i_invariant(q);
    };
    std::vector<Int> c1(input.rho[0]), c2(input.rho[1]);
    rep.iN0 = with_extra({c1, c2});
    for (int a = 0; a < 3; ++a) {
        std::vector<Int> rel(g);
        for (int i = 0; i < g; ++i)
            rel[i] = Int(kFillingSlopes[a][0]) * c1[i] + Int(kFillingSlopes[a][1]) * c2[i];
        rep.iTilde[a] = with_extra({rel});
        rep.pairing[a] = Int(kFillingSlopes[a][0]) * rep.kernelSlope[1] -
                         Int(kFillingSlopes[a][1]) * rep.kernelSlope[0];
    }
    rep.signedSum = 0;
    for (int a = 0; a < 3; ++a) rep.signedSum += sign_of(rep.pairing[a]) * rep.iTilde[a];
    rep.signedSumZero = rep.signedSum == 0;
    return rep;
}

std::string report_str(const ConeSmoothingReport& r) {
    std::ostringstream os;
    os << "kernel slope b = (" << r.kernelSlope[0].get_str() << ", " << r.kernelSlope[1].get_str()
       << ")\n";
    os << "pairings c_a = <lambda_a, b> = (" << r.pairing[0].get_str() << ", "
       << r.pairing[1].get_str() << ", " << r.pairing[2].get_str() << ")\n";
    os << "I(N0) = " << r.iN0.get_str() << "\n";
    for (int a = 0; a < 3; ++a)
        os << "I(N~" << (a + 1) << ") = " << r.iTilde[a].get_str() << "\n";
    os << "signed sum = " << r.signedSum.get_str() << (r.signedSumZero ? "  [OK]" : "  [NONZERO]")
       << "\n";
    return os.str();
}

}  // namespace assoc
