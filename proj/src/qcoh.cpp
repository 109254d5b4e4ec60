#include "assoc/qcoh.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace assoc {

namespace {

std::string idx_str(int k, int i) {
    std::ostringstream os;
    os << "H^" << k << "[" << i << "]";
    return os.str();
}

Series series_zero(const Rat& cutoff) { return Series::zero(Cutoff::at(cutoff)); }

// quotient a / b for v(a) >= v(b), b != 0, valid modulo q^{A - v(b)}
Series series_div(const Series& a, const Series& b) {
    if (b.is_zero()) throw std::domain_error("series division by zero");
    if (a.is_zero()) return a;
    Rat vb = b.valuation().v;
    if (a.valuation() < b.valuation()) throw std::domain_error("division would leave the ring");
    const Cutoff& cut = min(a.cutoff(), b.cutoff());
    if (!cut.finite) throw std::domain_error("series division needs a finite cutoff");
    Cutoff qcut = Cutoff::at(cut.value - vb);
    Series quot = Series::zero(qcut);
    Series rem = a;
    while (!rem.is_zero()) {
        Rat e = rem.valuation().v - vb;
        if (!qcut.allows(e)) break;
        Rat c = rem.terms().front().second / b.terms().front().second;
        Series t = Series::monomial(c, e, qcut);
        quot = quot + t;
        rem = rem - Series::monomial(c, e, cut) * b;
    }
    return quot;
}

}  // namespace

const std::vector<std::vector<RatVec>>& CohRingData::cup_block(int k, int l) const {
    auto it = cup.find({k, l});
    if (it == cup.end()) {
        static const std::vector<std::vector<RatVec>> empty;
        return empty;
    }
    return it->second;
}

RatVec CohRingData::cup_apply(int k, int l, const RatVec& x, const RatVec& y) const {
    int out = k + l;
    RatVec r(out <= 7 ? (size_t)betti[out] : 0, Rat(0));
    if (out > 7) return r;
    const auto& block = cup_block(k, l);
    if (block.empty()) return r;  // all products zero
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (size_t j = 0; j < y.size(); ++j) {
            if (y[j] == 0) continue;
            const RatVec& c = block[i][j];
            for (size_t m = 0; m < r.size(); ++m)
                if (c[m] != 0) r[m] += x[i] * y[j] * c[m];
        }
    }
    return r;
}

std::vector<RingIssue> validate_ring(const CohRingData& ring) {
    std::vector<RingIssue> issues;
    auto fail = [&](std::string w) { issues.push_back({std::move(w)}); };
    if (ring.betti[0] != 1 || ring.betti[7] != 1) fail("b0 and b7 must be 1");
    for (int k = 0; k <= 7; ++k)
        if (ring.betti[k] != ring.betti[7 - k]) fail("Poincare duality of Betti numbers fails");

    // block shapes
    for (const auto& [kl, block] : ring.cup) {
        auto [k, l] = kl;
        if (k < 0 || l < 0 || k + l > 7) { fail("cup block out of range"); continue; }
        if ((int)block.size() != ring.betti[k]) fail("cup block row count mismatch");
        for (const auto& row : block) {
            if ((int)row.size() != ring.betti[l]) fail("cup block column count mismatch");
            for (const auto& c : row)
                if ((int)c.size() != ring.betti[k + l]) fail("cup target length mismatch");
        }
    }
    auto basis = [&](int k, int i) {
        RatVec e((size_t)ring.betti[k], Rat(0));
        e[(size_t)i] = 1;
        return e;
    };

    // unit action
    for (int l = 0; l <= 7; ++l)
        for (int j = 0; j < ring.betti[l]; ++j) {
            RatVec p = ring.cup_apply(0, l, basis(0, 0), basis(l, j));
            if (p != basis(l, j)) fail("unit does not act as identity on " + idx_str(l, j));
        }

    // graded commutativity
    for (int k = 0; k <= 7; ++k)
        for (int l = 0; k + l <= 7; ++l)
            for (int i = 0; i < ring.betti[k]; ++i)
                for (int j = 0; j < ring.betti[l]; ++j) {
                    RatVec a = ring.cup_apply(k, l, basis(k, i), basis(l, j));
                    RatVec b = ring.cup_apply(l, k, basis(l, j), basis(k, i));
                    int sign = (k * l) % 2 == 0 ? 1 : -1;
                    for (size_t m = 0; m < a.size(); ++m)
                        if (a[m] != Rat(sign) * b[m]) {
                            fail("graded commutativity fails at " + idx_str(k, i) + " cup " +
                                 idx_str(l, j));
                            goto next_pair;
                        }
                next_pair:;
                }

    // associativity on basis triples
    for (int k = 0; k <= 7; ++k)
        for (int l = 0; k + l <= 7; ++l)
            for (int m = 0; k + l + m <= 7; ++m)
                for (int i = 0; i < ring.betti[k]; ++i)
                    for (int j = 0; j < ring.betti[l]; ++j)
                        for (int h = 0; h < ring.betti[m]; ++h) {
                            RatVec left = ring.cup_apply(
                                k + l, m, ring.cup_apply(k, l, basis(k, i), basis(l, j)),
                                basis(m, h));
                            RatVec right = ring.cup_apply(
                                k, l + m, basis(k, i),
                                ring.cup_apply(l, m, basis(l, j), basis(m, h)));
                            if (left != right)
                                fail("associativity fails at " + idx_str(k, i) + ", " +
                                     idx_str(l, j) + ", " + idx_str(m, h));
                        }

    int b3 = ring.betti[3], b4 = ring.betti[4];
    if ((int)ring.pd.size() != b4) fail("Pd must have b4 rows");
    for (const auto& row : ring.pd)
        if ((int)row.size() != b3) fail("Pd must have b3 columns");
    if ((int)ring.pairing.size() != b3) fail("pairing must have b3 rows");
    for (const auto& row : ring.pairing)
        if ((int)row.size() != b3) fail("pairing must have b3 columns");
    if (issues.empty()) {
        if (!mat_inverse(ring.pd)) fail("Pd matrix is not invertible");
        if (mat_rank(ring.pairing) != (size_t)b3) fail("pairing is degenerate");
        // compatibility: beta cup Pd(alpha) = beta(alpha) * vol for H^7 = <vol>
        for (int i = 0; i < b3; ++i)
            for (int j = 0; j < b3; ++j) {
                RatVec pdj((size_t)b4);
                for (int r = 0; r < b4; ++r) pdj[(size_t)r] = ring.pd[r][j];
                RatVec e((size_t)b3, Rat(0));
                e[(size_t)i] = 1;
                RatVec top = ring.cup_apply(3, 4, e, pdj);
                if (top.size() != 1 || top[0] != ring.pairing[i][j])
                    fail("cup/Pd/pairing compatibility fails at " + idx_str(3, i) +
                         ", Pd(e_" + std::to_string(j) + ")");
            }
    }
    return issues;
}

std::vector<RingIssue> validate_qhs_constraints(const CohRingData& ring, const GwTable& gw) {
    std::vector<RingIssue> issues;
    int b1 = ring.betti[1], b2 = ring.betti[2], b3 = ring.betti[3], b4 = ring.betti[4];
    auto basis = [&](int k, int i) {
        RatVec e((size_t)ring.betti[k], Rat(0));
        e[(size_t)i] = 1;
        return e;
    };
    for (const auto& [alpha, coeff] : gw.gw) {
        (void)coeff;
        RatVec alphaQ(alpha.size());
        for (size_t i = 0; i < alpha.size(); ++i) alphaQ[i] = Rat((long)alpha[i]);
        // (delta cup eps)(alpha) = 0 for delta in H^1, eps in H^2
        for (int i = 0; i < b1; ++i)
            for (int j = 0; j < b2; ++j) {
                RatVec de = ring.cup_apply(1, 2, basis(1, i), basis(2, j));
                Rat val(0);
                for (int a = 0; a < b3; ++a)
                    for (int b = 0; b < b3; ++b) val += de[(size_t)a] * ring.pairing[a][b] * alphaQ[(size_t)b];
                if (val != 0) {
                    std::ostringstream os;
                    os << "(H^1[" << i << "] cup H^2[" << j << "]) . alpha != 0 for GW class (";
                    for (size_t q = 0; q < alpha.size(); ++q) os << (q ? "," : "") << alpha[q];
                    os << ")";
                    issues.push_back({os.str()});
                }
            }
        // delta cup Pd(alpha) = 0 for delta in H^1 and H^2
        RatVec pdAlpha((size_t)b4, Rat(0));
        for (int r = 0; r < b4; ++r)
            for (int j = 0; j < b3; ++j) pdAlpha[(size_t)r] += ring.pd[r][j] * alphaQ[(size_t)j];
        for (int deg = 1; deg <= 2; ++deg)
            for (int i = 0; i < ring.betti[deg]; ++i) {
                RatVec top = ring.cup_apply(deg, 4, basis(deg, i), pdAlpha);
                for (const auto& x : top)
                    if (x != 0) {
                        std::ostringstream os;
                        os << "H^" << deg << "[" << i << "] cup Pd(alpha) != 0 for GW class (";
                        for (size_t q = 0; q < alpha.size(); ++q) os << (q ? "," : "") << alpha[q];
                        os << ")";
                        issues.push_back({os.str()});
                        break;
                    }
            }
    }
    return issues;
}

DeformedDifferential build_d(const CohRingData& ring, const GwTable& gw, const ThetaPoint& theta,
                             const Rat& cutoff) {
    int b3 = ring.betti[3], b4 = ring.betti[4];
    if (gw.n != b3) throw std::invalid_argument("GW table rank != b3");
    DeformedDifferential out;
    out.d.assign((size_t)b4, std::vector<Series>((size_t)b3, series_zero(cutoff)));

    // criticality warning
    for (const auto& g : grad_phi(gw, theta))
        if (!g.is_zero()) out.thetaCritical = false;

    Cutoff cut = Cutoff::at(cutoff);
    std::vector<Series> lam;
    for (const auto& l : theta.lambdas) lam.push_back(l.truncated(cut));
    for (const auto& [alpha, coeff] : gw.gw) {
        Series factor = Series::monomial(coeff, gw.area(alpha), cut) * theta_value(lam, alpha);
        RatVec alphaQ(alpha.size());
        for (size_t i = 0; i < alpha.size(); ++i) alphaQ[i] = Rat((long)alpha[i]);
        // beta_j(alpha) through the pairing, Pd(alpha) through the matrix
        RatVec pdAlpha((size_t)b4, Rat(0));
        for (int r = 0; r < b4; ++r)
            for (int j = 0; j < b3; ++j) pdAlpha[(size_t)r] += ring.pd[r][j] * alphaQ[(size_t)j];
        for (int j = 0; j < b3; ++j) {
            Rat bj(0);
            for (int b = 0; b < b3; ++b) bj += ring.pairing[j][b] * alphaQ[(size_t)b];
            if (bj == 0) continue;
            for (int r = 0; r < b4; ++r)
                if (pdAlpha[(size_t)r] != 0)
                    out.d[(size_t)r][(size_t)j] =
                        out.d[(size_t)r][(size_t)j] + factor.scaled(bj * pdAlpha[(size_t)r]);
        }
    }
    for (const auto& row : out.d)
        for (const auto& e : row)
            if (!e.valuation().positive())
                throw std::logic_error("deformed differential has a valuation-0 entry");
    return out;
}

QcohResult qh_groups(const SeriesMat& d, const Rat& cutoff, const std::array<int, 8>& betti) {
    QcohResult res;
    res.cutoff = cutoff;
    res.betti = betti;
    res.dmat = d;
    size_t rows = d.size(), cols = rows ? d[0].size() : 0;

    SeriesMat a = d;
    auto ident = [&](size_t n) {
        SeriesMat m(n, std::vector<Series>(n, series_zero(cutoff)));
        for (size_t i = 0; i < n; ++i) m[i][i] = Series::one(Cutoff::at(cutoff));
        return m;
    };
    res.u = ident(rows);
    res.uinv = ident(rows);
    res.v = ident(cols);

    auto val_of = [](const Series& s) { return s.valuation(); };

    size_t t = 0;
    while (t < rows && t < cols) {
        // pivot: least valuation in the remaining block
        Valuation best = Valuation::infinity();
        size_t pi = t, pj = t;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j)
                if (val_of(a[i][j]) < best) {
                    best = val_of(a[i][j]);
                    pi = i;
                    pj = j;
                }
        if (best.infinite) break;
        std::swap(a[pi], a[t]);
        std::swap(res.u[pi], res.u[t]);
        for (auto& r : res.uinv) std::swap(r[pi], r[t]);  // inverse gets the column swap
        for (auto& r : a) std::swap(r[pj], r[t]);
        for (auto& r : res.v) std::swap(r[pj], r[t]);

        for (size_t i = t + 1; i < rows; ++i) {
            if (a[i][t].is_zero()) continue;
            Series f = series_div(a[i][t], a[t][t]);
            for (size_t k = 0; k < cols; ++k) a[i][k] = a[i][k] - f * a[t][k];
            for (size_t k = 0; k < rows; ++k) {
                res.u[i][k] = res.u[i][k] - f * res.u[t][k];
                res.uinv[k][t] = res.uinv[k][t] + f * res.uinv[k][i];
            }
        }
        for (size_t j = t + 1; j < cols; ++j) {
            if (a[t][j].is_zero()) continue;
            Series f = series_div(a[t][j], a[t][t]);
            for (size_t k = 0; k < rows; ++k) a[k][j] = a[k][j] - f * a[k][t];
            for (size_t k = 0; k < cols; ++k) res.v[k][j] = res.v[k][j] - f * res.v[k][t];
        }
        res.pivots.emplace_back(t, a[t][t].valuation().v);
        ++t;
    }
    res.reduced = a;

    for (size_t j = t; j < cols; ++j) {
        std::vector<Series> k(cols, series_zero(cutoff));
        for (size_t i = 0; i < cols; ++i) k[i] = res.v[i][j];
        res.qh3Kernel.push_back(std::move(k));
    }
    res.qh4FreeRank = (int)rows - (int)t;
    for (const auto& [row, v] : res.pivots) {
        (void)row;
        res.torsionExponents.push_back(v);
    }
    return res;
}

namespace {

Series reduce_mod(const Series& s, const Rat& v) {
    std::vector<Series::Term> keep;
    for (const auto& [e, c] : s.terms())
        if (e < v) keep.emplace_back(e, c);
    return Series(std::move(keep), s.cutoff());
}

}  // namespace

std::vector<Series> coker_reduce(const QcohResult& r, const std::vector<Series>& y) {
    size_t rows = r.u.size();
    if (y.size() != rows) throw std::invalid_argument("coker_reduce dimension mismatch");
    std::vector<Series> z(rows, series_zero(r.cutoff));
    for (size_t i = 0; i < rows; ++i)
        for (size_t k = 0; k < rows; ++k) z[i] = z[i] + r.u[i][k] * y[k];
    for (const auto& [row, v] : r.pivots) z[row] = reduce_mod(z[row], v);
    std::vector<Series> out(rows, series_zero(r.cutoff));
    for (size_t i = 0; i < rows; ++i)
        for (size_t k = 0; k < rows; ++k) out[i] = out[i] + r.uinv[i][k] * z[k];
    return out;
}

QcohElement qh_product(const CohRingData& ring, const QcohResult& r, const QcohElement& x,
                       const QcohElement& y) {
    int k = x.degree, l = y.degree;
    QcohElement out;
    out.degree = k + l;
    if (k + l > 7) return out;  // zero automatically

    auto require_kernel = [&](const QcohElement& e) {
        size_t rows = r.dmat.size();
        std::vector<Series> dy(rows, series_zero(r.cutoff));
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < e.coords.size(); ++j) dy[i] = dy[i] + r.dmat[i][j] * e.coords[j];
        for (const auto& s : dy)
            if (!s.is_zero())
                throw std::invalid_argument("degree-3 element is not in Ker(d)");
    };
    if (k == 3) require_kernel(x);
    if (l == 3) require_kernel(y);

    // cup product on series coordinates via the rational structure constants
    size_t outDim = (size_t)ring.betti[k + l];
    out.coords.assign(outDim, series_zero(r.cutoff));
    const auto& block = ring.cup_block(k, l);
    if (!block.empty()) {
        for (size_t i = 0; i < x.coords.size(); ++i) {
            if (x.coords[i].is_zero()) continue;
            for (size_t j = 0; j < y.coords.size(); ++j) {
                if (y.coords[j].is_zero()) continue;
                Series prod = x.coords[i] * y.coords[j];
                const RatVec& c = block[i][j];
                for (size_t m = 0; m < outDim; ++m)
                    if (c[m] != 0) out.coords[m] = out.coords[m] + prod.scaled(c[m]);
            }
        }
    }
    if (k + l == 4) out.coords = coker_reduce(r, out.coords);
    if (k + l == 3) {
        // lands in Ker(d) by the validated constraints; check defensively
        QcohElement check{3, out.coords};
        require_kernel(check);
    }
    return out;
}

}  // namespace assoc
