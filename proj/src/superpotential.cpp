#include "assoc/superpotential.hpp"

#include <stdexcept>

#include "assoc/rat_linalg.hpp"

namespace assoc {

ThetaPoint theta_one(int n, const Rat& cutoff) {
    ThetaPoint t;
    t.lambdas.assign((size_t)n, Series::zero(Cutoff::at(cutoff)));
    return t;
}

void check_theta(const ThetaPoint& t, int n) {
    if ((int)t.lambdas.size() != n)
        throw std::invalid_argument("theta has wrong number of components");
    for (const auto& l : t.lambdas)
        if (!l.valuation().positive())
            throw std::invalid_argument("theta components must have positive valuation");
}

WeightedView<Rat> make_view(const Catalog& c) {
    WeightedView<Rat> v;
    size_t m = c.records.size();
    v.areas.reserve(m);
    v.weights.reserve(m);
    v.classes.reserve(m);
    for (size_t i = 0; i < m; ++i) {
        v.areas.push_back(c.area(i));
        v.weights.push_back(c.weight(i));
        v.classes.push_back(c.records[i].cls);
    }
    v.linking.assign(m, std::vector<Rat>(m, Rat(0)));
    for (const auto& [k, val] : c.linking_entries()) {
        v.linking[k.first][k.second] = val;
        v.linking[k.second][k.first] = val;
    }
    return v;
}

Series eval_phi(const Catalog& c, const ThetaPoint& theta, const Rat& cutoff, bool parallel) {
    check_theta(theta, c.n);
    return eval_phi_view(make_view(c), theta.lambdas, cutoff, parallel);
}

Series eval_phi_main(const Catalog& c, const ThetaPoint& theta, const Rat& cutoff) {
    check_theta(theta, c.n);
    WeightedView<Rat> view = make_view(c);
    Cutoff cut = Cutoff::at(cutoff);
    std::vector<Series> lam;
    for (const auto& l : theta.lambdas) lam.push_back(l.truncated(cut));
    Series phi = Series::zero(cut);
    for (size_t i = 0; i < view.areas.size(); ++i)
        phi = phi + Series::monomial(view.weights[i], view.areas[i], cut) *
                        theta_value(lam, view.classes[i]);
    return phi;
}

Series eval_phi_reference(const Catalog& c, const ThetaPoint& theta, const Rat& cutoff) {
    check_theta(theta, c.n);
    WeightedView<Rat> view = make_view(c);
    Cutoff cut = Cutoff::at(cutoff);
    int m = (int)view.areas.size();
    Series phi = Series::zero(cut);
    if (m == 0) return phi;

    std::vector<Series> lam;
    for (const auto& l : theta.lambdas) lam.push_back(l.truncated(cut));
    std::vector<Series> w(m);
    Rat minArea = view.areas[0];
    for (int i = 0; i < m; ++i) {
        minArea = std::min(minArea, view.areas[i]);
        w[i] = Series::monomial(view.weights[i], view.areas[i], cut) *
               theta_value(lam, view.classes[i]);
    }

    // ordered assignments, each tree counted via Prufer, divided by k!
    std::vector<int> tuple;
    auto rec = [&](auto&& self, Rat areaSum, const Series& prod) -> void {
        if (!tuple.empty()) {
            Rat edgeSum = detail::tree_edge_sum(tuple, view.linking, false);
            if (edgeSum != 0)
                phi = phi + prod.scaled(edgeSum / Rat(detail::factorial((int)tuple.size())));
        }
        for (int i = 0; i < m; ++i) {
            Rat next = areaSum + view.areas[i];
            if (!(next < cutoff)) continue;
            tuple.push_back(i);
            self(self, next, prod * w[i]);
            tuple.pop_back();
        }
    };
    rec(rec, Rat(0), Series::one(cut));
    return phi;
}

Rat GwTable::area(const HomologyClass& cls) const {
    Rat a(0);
    for (int i = 0; i < n; ++i) a += gamma[i] * Rat((long)cls[i]);
    return a;
}

GwTable extract_gw(const Catalog& c, const Rat& cutoff) {
    GwTable t;
    t.n = c.n;
    t.gamma = c.gamma;
    t.cutoff = cutoff;
    WeightedView<Rat> view = make_view(c);
    int maxK = 0;
    if (!view.areas.empty()) {
        Rat minArea = view.areas[0];
        for (const auto& a : view.areas) minArea = std::min(minArea, a);
        while (Rat(maxK + 1) * minArea < cutoff) ++maxK;
    }
    detail::for_each_multiset(view.areas, cutoff, maxK,
                              [&](const std::vector<int>& labels, long multFact) {
                                  Rat edgeSum = detail::tree_edge_sum(labels, view.linking, true);
                                  if (edgeSum == 0) return;
                                  Rat coeff(1);
                                  HomologyClass total(c.n, 0);
                                  for (int i : labels) {
                                      coeff *= view.weights[i];
                                      total = class_add(total, view.classes[i]);
                                  }
                                  Rat val = coeff * edgeSum / Rat(multFact);
                                  Rat& slot = t.gw[total];
                                  slot += val;
                                  if (slot == 0) t.gw.erase(total);
                              });
    return t;
}

Series eval_from_gw(const GwTable& t, const ThetaPoint& theta) {
    check_theta(theta, t.n);
    Cutoff cut = Cutoff::at(t.cutoff);
    std::vector<Series> lam;
    for (const auto& l : theta.lambdas) lam.push_back(l.truncated(cut));
    Series phi = Series::zero(cut);
    for (const auto& [cls, gw] : t.gw)
        phi = phi + Series::monomial(gw, t.area(cls), cut) * theta_value(lam, cls);
    return phi;
}

std::vector<Series> grad_phi(const GwTable& t, const ThetaPoint& theta) {
    check_theta(theta, t.n);
    Cutoff cut = Cutoff::at(t.cutoff);
    std::vector<Series> lam;
    for (const auto& l : theta.lambdas) lam.push_back(l.truncated(cut));
    std::vector<Series> g((size_t)t.n, Series::zero(cut));
    for (const auto& [cls, gw] : t.gw) {
        Series base = Series::monomial(gw, t.area(cls), cut) * theta_value(lam, cls);
        for (int i = 0; i < t.n; ++i)
            if (cls[i] != 0) g[i] = g[i] + base.scaled(Rat((long)cls[i]));
    }
    return g;
}

CriticalResult solve_critical(const GwTable& t, const Rat& cutoff) {
    CriticalResult res;
    res.theta = theta_one(t.n, cutoff);
    if (t.gw.empty()) return res;

    // leading level and the Hessian of its classes
    Rat a0;
    bool first = true;
    for (const auto& [cls, gw] : t.gw) {
        Rat a = t.area(cls);
        if (first || a < a0) { a0 = a; first = false; }
    }
    RatVec r0((size_t)t.n, Rat(0));
    RatMat hess((size_t)t.n, RatVec((size_t)t.n, Rat(0)));
    for (const auto& [cls, gw] : t.gw) {
        if (t.area(cls) != a0) continue;
        for (int i = 0; i < t.n; ++i) {
            r0[i] += gw * Rat((long)cls[i]);
            for (int j = 0; j < t.n; ++j)
                hess[i][j] += gw * Rat((long)cls[i]) * Rat((long)cls[j]);
        }
    }
    for (const auto& x : r0)
        if (x != 0) {
            res.obstructed = true;
            res.obstructedLevel = a0;
            return res;
        }

    // the exponent grid is discrete, so this terminates
    for (int guard = 0; guard < 100000; ++guard) {
        std::vector<Series> g = grad_phi(t, res.theta);
        Valuation lead = Valuation::infinity();
        for (const auto& gi : g) lead = min(lead, gi.valuation());
        if (lead.infinite) return res;
        Rat e = lead.v;
        RatVec rhs((size_t)t.n);
        for (int i = 0; i < t.n; ++i) rhs[i] = -g[i].coeff_at(e);
        auto delta = solve_pinned(hess, rhs);
        if (!delta) {
            res.obstructed = true;
            res.obstructedLevel = e;
            return res;
        }
        if (!(e > a0)) throw std::logic_error("correction level not above leading area");
        for (int i = 0; i < t.n; ++i)
            if ((*delta)[i] != 0)
                res.theta.lambdas[i] =
                    res.theta.lambdas[i] + Series::monomial((*delta)[i], e - a0, Cutoff::at(cutoff));
    }
    throw std::runtime_error("critical-point solve exceeded iteration guard");
}

}  // namespace assoc
