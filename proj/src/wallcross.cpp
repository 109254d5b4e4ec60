#include "assoc/wallcross.hpp"

#include <random>
#include <stdexcept>

namespace assoc {

namespace {

Rat dot_class(const HomologyClass& cls, const std::vector<Rat>& delta) {
    if (cls.size() != delta.size()) throw std::invalid_argument("pairing length mismatch");
    Rat d(0);
    for (size_t i = 0; i < cls.size(); ++i) d += Rat((long)cls[i]) * delta[i];
    return d;
}

void require_fresh(const Catalog& c, const std::string& id) {
    if (c.find(id)) throw std::invalid_argument("record id '" + id + "' already present");
}

Catalog apply_a(Catalog c, const TransitionA& t) {
    require_fresh(c, t.idPlus);
    require_fresh(c, t.idMinus);
    if (t.idPlus == t.idMinus) throw std::invalid_argument("pair needs two distinct ids");
    AssocRecord plus{t.idPlus, t.cls, 1, t.iInv, t.isoOrder, t.flagOffset};
    AssocRecord minus{t.idMinus, t.cls, -1, t.iInv, t.isoOrder, t.flagOffset};
    std::vector<std::pair<size_t, Rat>> row;
    for (const auto& [id, v] : t.row) row.emplace_back(c.index_of(id), v);
    c.records.push_back(plus);
    size_t ip = c.records.size() - 1;
    c.records.push_back(minus);
    size_t im = c.records.size() - 1;
    for (const auto& [j, v] : row) {
        c.set_linking(ip, j, v);
        c.set_linking(im, j, v);
    }
    c.set_linking(ip, ip, t.selfLink);
    c.set_linking(im, im, t.selfLink);
    c.set_linking(ip, im, t.selfLink);
    return c;
}

Catalog apply_b(Catalog c, const TransitionB& t) {
    size_t ip = c.index_of(t.plus), im = c.index_of(t.minus);
    if (ip == im) throw std::invalid_argument("crossing needs two distinct records");
    require_fresh(c, t.newId);
    if (t.eps != 1 && t.eps != -1) throw std::invalid_argument("eps must be +-1");
    // the crossing itself shifts the pair's linking entry
    c.set_linking(ip, im, c.linking(ip, im) - Rat(t.eps));

    const AssocRecord& p = c.records[ip];
    const AssocRecord& q = c.records[im];
    AssocRecord sum;
    sum.id = t.newId;
    sum.cls = class_add(p.cls, q.cls);
    sum.orientation = p.orientation * q.orientation * t.eps;
    sum.iInv = p.iInv * q.iInv;
    sum.isoOrder = p.isoOrder * q.isoOrder;
    sum.flagOffset = p.flagOffset + q.flagOffset + (t.deltaSign > 0 ? 1 : 0);
    c.records.push_back(sum);
    size_t is = c.records.size() - 1;
    for (size_t x = 0; x < is; ++x)
        c.set_linking(is, x, c.linking(ip, x) + c.linking(im, x));
    c.set_linking(is, is,
                  c.linking(ip, ip) + Rat(2) * c.linking(ip, im) + c.linking(im, im));
    return c;
}

Catalog apply_c(Catalog c, const TransitionC& t) {
    size_t ir = c.index_of(t.record);
    require_fresh(c, t.newId);
    const AssocRecord& r = c.records[ir];
    AssocRecord sum;
    sum.id = t.newId;
    sum.cls = r.cls;
    sum.orientation = (t.deltaSign > 0 ? -1 : 1) * r.orientation;
    sum.iInv = 0;  // the S^1 x S^2 factor kills the invariant
    sum.isoOrder = r.isoOrder;
    sum.flagOffset = r.flagOffset + (t.deltaSign > 0 ? 1 : 0);
    c.records.push_back(sum);
    size_t is = c.records.size() - 1;
    for (size_t x = 0; x < is; ++x) c.set_linking(is, x, c.linking(ir, x));
    c.set_linking(is, is, c.linking(ir, ir));
    return c;
}

Catalog apply_d(Catalog c, const TransitionD& t) {
    size_t ir = c.index_of(t.record);
    require_fresh(c, t.newId);
    if (t.eps != 1 && t.eps != -1) throw std::invalid_argument("eps must be +-1");
    c.set_linking(ir, ir, c.linking(ir, ir) - Rat(2 * t.eps));
    const AssocRecord& r = c.records[ir];
    AssocRecord sum;
    sum.id = t.newId;
    sum.cls = class_scale(2, r.cls);
    sum.orientation = t.eps;
    sum.iInv = r.iInv * r.iInv;
    sum.isoOrder = r.isoOrder * r.isoOrder;
    sum.flagOffset = 2 * r.flagOffset + (t.deltaSign > 0 ? 1 : 0);
    c.records.push_back(sum);
    size_t is = c.records.size() - 1;
    for (size_t x = 0; x < is; ++x) c.set_linking(is, x, Rat(2) * c.linking(ir, x));
    c.set_linking(is, is, Rat(4) * c.linking(ir, ir));
    return c;
}

Catalog apply_e(const Catalog& c, const TransitionE& t) {
    size_t ir = c.index_of(t.remove);
    require_fresh(c, t.id2);
    require_fresh(c, t.id3);
    if (t.id2 == t.id3) throw std::invalid_argument("smoothings need distinct ids");
    const AssocRecord& r = c.records[ir];
    if (t.iso2 < 1 || t.iso3 < 1) throw std::invalid_argument("isotropy orders must be >= 1");
    Rat w1 = Rat(r.orientation) * Rat(r.iInv) / Rat(r.isoOrder);
    Rat w2 = Rat(t.or2) * Rat(t.i2) / Rat(t.iso2);
    Rat w3 = Rat(t.or3) * Rat(t.i3) / Rat(t.iso3);
    if (w1 != w2 + w3)
        throw std::invalid_argument("weighted counts do not satisfy the signed-sum identity");

    Catalog out;
    out.n = c.n;
    out.gamma = c.gamma;
    std::vector<size_t> keep;
    for (size_t i = 0; i < c.records.size(); ++i)
        if (i != ir) {
            keep.push_back(i);
            out.records.push_back(c.records[i]);
        }
    AssocRecord s2{t.id2, r.cls, t.or2, t.i2, t.iso2, t.flag2};
    AssocRecord s3{t.id3, r.cls, t.or3, t.i3, t.iso3, t.flag3};
    out.records.push_back(s2);
    out.records.push_back(s3);
    size_t i2 = out.records.size() - 2, i3 = out.records.size() - 1;
    for (size_t a = 0; a < keep.size(); ++a)
        for (size_t b = a; b < keep.size(); ++b) out.set_linking(a, b, c.linking(keep[a], keep[b]));
    for (size_t a = 0; a < keep.size(); ++a) {
        out.set_linking(i2, a, c.linking(ir, keep[a]));
        out.set_linking(i3, a, c.linking(ir, keep[a]));
    }
    Rat self = c.linking(ir, ir);
    out.set_linking(i2, i2, self);
    out.set_linking(i3, i3, self);
    out.set_linking(i2, i3, self);
    return out;
}

}  // namespace

Catalog apply_transition(const Catalog& c, const Transition& t) {
    return std::visit(
        [&](const auto& tt) -> Catalog {
            using T = std::decay_t<decltype(tt)>;
            if constexpr (std::is_same_v<T, TransitionA>) return apply_a(c, tt);
            else if constexpr (std::is_same_v<T, TransitionB>) return apply_b(c, tt);
            else if constexpr (std::is_same_v<T, TransitionC>) return apply_c(c, tt);
            else if constexpr (std::is_same_v<T, TransitionD>) return apply_d(c, tt);
            else if constexpr (std::is_same_v<T, TransitionE>) return apply_e(c, tt);
            else return cycle_cross(c, tt.record, tt.delta, tt.eps).first;
        },
        t);
}

QuasiIdentity qi_identity(int n) { return {n, {}}; }

QuasiIdentity qi_compose(const QuasiIdentity& first, const QuasiIdentity& second) {
    if (first.n != second.n) throw std::invalid_argument("composition dimension mismatch");
    QuasiIdentity r = first;
    r.gens.insert(r.gens.end(), second.gens.begin(), second.gens.end());
    return r;
}

ThetaPoint qi_apply(const QuasiIdentity& u, const ThetaPoint& theta, const Rat& cutoff) {
    check_theta(theta, u.n);
    std::vector<std::vector<Rat>> deltaCoeffs;
    for (const auto& g : u.gens) {
        if ((int)g.delta.size() != u.n) throw std::invalid_argument("generator delta length");
        if (!(g.area0 > 0))
            throw std::domain_error("quasi-identity generator with non-positive area");
        deltaCoeffs.push_back(g.delta);
    }
    ThetaPoint out;
    out.lambdas = qi_apply_lambdas(theta.lambdas, u.gens, deltaCoeffs, cutoff);
    return out;
}

ThetaPoint random_theta(int n, const Rat& cutoff, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_int_distribution<int> den(1, 3);
    std::uniform_int_distribution<int> expnum(1, 4);
    ThetaPoint t;
    for (int i = 0; i < n; ++i) {
        std::vector<Series::Term> terms;
        for (int j = 0; j < 3; ++j) {
            Rat e = rat(expnum(rng), 2);  // exponents on the half-integer grid
            Rat ccoef = rat(num(rng), den(rng));
            if (ccoef == 0) continue;
            terms.emplace_back(e, ccoef);
        }
        t.lambdas.push_back(Series(std::move(terms), Cutoff::at(cutoff)));
    }
    return t;
}

VerifyReport verify_invariance(const Catalog& before, const Catalog& after, const Rat& cutoff,
                               int thetaSamples, uint64_t seed) {
    if (before.n != after.n || before.gamma != after.gamma)
        throw std::invalid_argument("catalogs live on different homology data");
    VerifyReport rep;
    rep.pass = true;
    for (int s = 0; s <= thetaSamples; ++s) {
        ThetaPoint theta = (s == 0) ? theta_one(before.n, cutoff)
                                    : random_theta(before.n, cutoff, seed + (uint64_t)s);
        Series a = eval_phi(before, theta, cutoff);
        Series b = eval_phi(after, theta, cutoff);
        ++rep.samples;
        if (!same_terms(a, b)) {
            rep.pass = false;
            rep.firstDifference = (a - b).valuation();
            return rep;
        }
    }
    return rep;
}

std::pair<Catalog, QuasiIdentity> cycle_cross(const Catalog& c, const std::string& recordId,
                                              std::vector<Rat> delta, int eps) {
    if (eps != 1 && eps != -1) throw std::invalid_argument("eps must be +-1");
    if ((int)delta.size() != c.n) throw std::invalid_argument("delta length != n");
    size_t ir = c.index_of(recordId);
    for (auto& d : delta) d *= Rat(eps);

    Catalog out = c;
    for (size_t x = 0; x < out.records.size(); ++x) {
        if (x == ir) continue;
        out.set_linking(ir, x, out.linking(ir, x) + dot_class(out.records[x].cls, delta));
    }
    out.set_linking(ir, ir,
                    out.linking(ir, ir) + Rat(2) * dot_class(out.records[ir].cls, delta));

    QuasiIdentity u;
    u.n = c.n;
    QiGenerator g;
    g.c = c.weight(ir);
    g.alpha0 = c.records[ir].cls;
    g.area0 = c.area(ir);
    g.delta = delta;
    u.gens.push_back(g);
    return {out, u};
}

QiCheckReport qi_check(const QuasiIdentity& u, int samples, uint64_t seed, const Rat& cutoff) {
    QiCheckReport rep;
    Rat e0;
    bool first = true;
    for (const auto& g : u.gens) {
        if (!(g.area0 > 0)) {
            rep.pass = false;
            rep.reason = "generator with non-positive area " + rat_str(g.area0);
            return rep;
        }
        if (first || g.area0 < e0) { e0 = g.area0; first = false; }
    }
    if (first) {
        rep.pass = true;  // identity map, increments vanish
        return rep;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> halves(1, 4);
    for (int s = 0; s < samples; ++s) {
        Rat d = rat(halves(rng), 2);  // perturbation level
        ThetaPoint base = random_theta(u.n, cutoff, seed * 977 + (uint64_t)s);
        ThetaPoint pert = base;
        ThetaPoint mu = random_theta(u.n, cutoff, seed * 1013 + (uint64_t)s);
        for (int i = 0; i < u.n; ++i) {
            // mu has positive valuation, so q^d * (1 + mu) covers v >= d
            Series bump = Series::monomial(Rat(1), d, Cutoff::at(cutoff)) +
                          mu.lambdas[i].shifted(d);
            pert.lambdas[i] = pert.lambdas[i] + bump;
        }
        ThetaPoint ub = qi_apply(u, base, cutoff), up = qi_apply(u, pert, cutoff);
        for (int i = 0; i < u.n; ++i) {
            Series incr = (up.lambdas[i] - pert.lambdas[i]) - (ub.lambdas[i] - base.lambdas[i]);
            Valuation need = Valuation::at(d + e0);
            if (incr.valuation() < need) {
                rep.pass = false;
                rep.reason = "increment valuation " + incr.valuation().str() + " below " +
                             need.str();
                return rep;
            }
        }
    }
    rep.pass = true;
    return rep;
}

namespace {

WeightedView<DualRat> dual_view_after(const Catalog& before, size_t ir,
                                      const std::vector<Rat>& delta) {
    WeightedView<Rat> base = make_view(before);
    WeightedView<DualRat> v;
    v.areas = base.areas;
    v.classes = base.classes;
    for (const auto& w : base.weights) v.weights.emplace_back(w);
    size_t m = base.areas.size();
    v.linking.assign(m, std::vector<DualRat>(m, DualRat()));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) v.linking[i][j] = DualRat(base.linking[i][j]);
    for (size_t x = 0; x < m; ++x) {
        if (x == ir) continue;
        DualRat inc = DualRat::infinitesimal(dot_class(v.classes[x], delta));
        v.linking[ir][x] += inc;
        v.linking[x][ir] += inc;
    }
    v.linking[ir][ir] += DualRat::infinitesimal(Rat(2) * dot_class(v.classes[ir], delta));
    return v;
}

std::vector<DualSeries> lift_dual(const std::vector<Series>& lambdas) {
    std::vector<DualSeries> out;
    for (const auto& l : lambdas) {
        std::vector<DualSeries::Term> terms;
        for (const auto& [e, c] : l.terms()) terms.emplace_back(e, DualRat(c));
        out.emplace_back(std::move(terms), l.cutoff());
    }
    return out;
}

}  // namespace

FirstOrderReport cycle_cross_first_order_check(const Catalog& before, const std::string& recordId,
                                               const std::vector<Rat>& delta, int eps,
                                               const Rat& cutoff, int thetaSamples,
                                               uint64_t seed) {
    size_t ir = before.index_of(recordId);
    std::vector<Rat> d = delta;
    for (auto& x : d) x *= Rat(eps);

    WeightedView<DualRat> after = dual_view_after(before, ir, d);
    WeightedView<Rat> baseq = make_view(before);
    WeightedView<DualRat> beforeDual;
    beforeDual.areas = baseq.areas;
    beforeDual.classes = baseq.classes;
    for (const auto& w : baseq.weights) beforeDual.weights.emplace_back(w);
    size_t m = baseq.areas.size();
    beforeDual.linking.assign(m, std::vector<DualRat>(m, DualRat()));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) beforeDual.linking[i][j] = DualRat(baseq.linking[i][j]);

    // Upsilon0 with the pairing carried as an infinitesimal
    QiGenerator gen;
    gen.c = before.weight(ir);
    gen.alpha0 = before.records[ir].cls;
    gen.area0 = before.area(ir);
    std::vector<std::vector<DualRat>> deltaCoeffs(1);
    for (const auto& x : d) deltaCoeffs[0].push_back(DualRat::infinitesimal(x));

    FirstOrderReport rep;
    rep.order0 = rep.order1 = true;
    for (int s = 0; s <= thetaSamples; ++s) {
        ThetaPoint theta = (s == 0) ? theta_one(before.n, cutoff)
                                    : random_theta(before.n, cutoff, seed + (uint64_t)s);
        auto lam = lift_dual(theta.lambdas);
        DualSeries phiAfter = eval_phi_view(after, lam, cutoff);
        auto moved = qi_apply_lambdas(lam, {gen}, deltaCoeffs, cutoff);
        DualSeries phiBefore = eval_phi_view(beforeDual, moved, cutoff);
        DualSeries diff = phiAfter - phiBefore;
        ++rep.samples;
        for (const auto& [e, c] : diff.terms()) {
            if (c.re != 0) rep.order0 = false;
            if (c.eps != 0) rep.order1 = false;
        }
        if (!rep.order0 || !rep.order1) return rep;
    }
    return rep;
}

ExactCrossReport cycle_cross_exact_check(const Catalog& before, const std::string& recordId,
                                         const std::vector<Rat>& delta, int eps, const Rat& cutoff,
                                         int thetaSamples, uint64_t seed) {
    auto [after, u] = cycle_cross(before, recordId, delta, eps);
    ExactCrossReport rep;
    rep.pass = true;
    for (int s = 0; s <= thetaSamples; ++s) {
        ThetaPoint theta = (s == 0) ? theta_one(before.n, cutoff)
                                    : random_theta(before.n, cutoff, seed + (uint64_t)s);
        Series lhs = eval_phi(after, theta, cutoff);
        Series rhs = eval_phi(before, qi_apply(u, theta, cutoff), cutoff);
        ++rep.samples;
        if (!same_terms(lhs, rhs)) {
            rep.pass = false;
            return rep;
        }
    }
    return rep;
}

}  // namespace assoc
