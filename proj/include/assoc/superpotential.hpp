#pragma once

#include <omp.h>

#include <map>
#include <vector>

#include "assoc/catalog.hpp"
#include "assoc/novikov.hpp"

namespace assoc {

// Point of Hom(H_3, 1 + positive ideal), stored through theta(e_i) = 1 + lambda_i.
struct ThetaPoint {
    std::vector<Series> lambdas;
};

ThetaPoint theta_one(int n, const Rat& cutoff);
void check_theta(const ThetaPoint& t, int n);  // throws unless every v(lambda) > 0

// theta(cls) = prod_i (1 + lambda_i)^{cls_i}, truncated.
template <class C>
BasicSeries<C> theta_value(const std::vector<BasicSeries<C>>& lambdas, const HomologyClass& cls) {
    Cutoff cut = Cutoff::infinity();
    for (const auto& l : lambdas) cut = min(cut, l.cutoff());
    BasicSeries<C> r = BasicSeries<C>::one(cut);
    for (size_t i = 0; i < cls.size(); ++i) {
        if (cls[i] == 0) continue;
        BasicSeries<C> u = BasicSeries<C>::one(cut) + lambdas[i];
        r = r * unit_pow(u, (long)cls[i]);
    }
    return r;
}

// Catalog data projected to the coefficient ring C: per-record area, scalar
// weight Or*I/iso, homology class, and the dense symmetric linking matrix.
template <class C>
struct WeightedView {
    std::vector<Rat> areas;
    std::vector<C> weights;
    std::vector<HomologyClass> classes;
    std::vector<std::vector<C>> linking;
};

WeightedView<Rat> make_view(const Catalog& c);

namespace detail {

// Sum over labelled trees on k numbered vertices (Prufer sequences) of the
// product of linking factors along edges. Parallel over sequence blocks.
template <class C>
C tree_edge_sum(const std::vector<int>& labels, const std::vector<std::vector<C>>& linking,
                bool parallel) {
    int k = (int)labels.size();
    if (k == 1) return C(1);
    if (k == 2) return linking[labels[0]][labels[1]];

    unsigned long long total = 1;
    for (int i = 0; i < k - 2; ++i) total *= (unsigned long long)k;

    auto decode_product = [&](unsigned long long t) {
        int seq[12] = {};
        for (int i = 0; i < k - 2; ++i) {
            seq[i] = (int)(t % (unsigned long long)k);
            t /= (unsigned long long)k;
        }
        int deg[12] = {};
        for (int i = 0; i < k; ++i) deg[i] = 1;
        for (int i = 0; i < k - 2; ++i) ++deg[seq[i]];
        C prod(1);
        for (int i = 0; i < k - 2; ++i) {
            int leaf = -1;
            for (int v = 0; v < k; ++v)
                if (deg[v] == 1) { leaf = v; break; }
            prod *= linking[labels[leaf]][labels[seq[i]]];
            deg[leaf] = 0;
            --deg[seq[i]];
        }
        int u = -1, v = -1;
        for (int i = 0; i < k; ++i)
            if (deg[i] == 1) (u < 0 ? u : v) = i;
        prod *= linking[labels[u]][labels[v]];
        return prod;
    };

    if (!parallel || total < 2048) {
        C sum(0);
        for (unsigned long long t = 0; t < total; ++t) sum += decode_product(t);
        return sum;
    }

    int maxThreads = omp_get_max_threads();
    std::vector<C> partial((size_t)maxThreads, C(0));
#pragma omp parallel
    {
        int tid = omp_get_thread_num();
        C local(0);
#pragma omp for schedule(static)
        for (long long t = 0; t < (long long)total; ++t) local += decode_product((unsigned long long)t);
        partial[(size_t)tid] = local;
    }
    C sum(0);
    for (const auto& p : partial) sum += p;  // fixed merge order; exact anyway
    return sum;
}

inline long factorial(int k) {
    long f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

// Enumerates non-decreasing index multisets with total area < cutoff and
// feeds each to sink(labels, multiplicity_factorial_product).
template <class Sink>
void for_each_multiset(const std::vector<Rat>& areas, const Rat& cutoff, int maxK, Sink&& sink) {
    int m = (int)areas.size();
    if (m == 0) return;
    Rat minArea = areas[0];
    for (const auto& a : areas) minArea = std::min(minArea, a);
    std::vector<int> labels;
    auto rec = [&](auto&& self, int start, Rat areaSum) -> void {
        if (!labels.empty()) {
            long multFact = 1, run = 1;
            for (size_t i = 1; i < labels.size(); ++i) {
                run = labels[i] == labels[i - 1] ? run + 1 : 1;
                multFact *= run;
            }
            sink(labels, multFact);
        }
        if ((int)labels.size() >= maxK) return;
        for (int i = start; i < m; ++i) {
            Rat next = areaSum + areas[i];
            if (!(next < cutoff)) continue;
            labels.push_back(i);
            self(self, i, next);
            labels.pop_back();
        }
    };
    if (minArea < cutoff) rec(rec, 0, Rat(0));
}

}  // namespace detail

// Labelled-tree superpotential at theta, truncated at the cutoff: multisets of
// records grouped, Prufer tree sum per multiset, divided by the multiplicity
// factorials. OpenMP-parallel over the Prufer blocks.
template <class C>
BasicSeries<C> eval_phi_view(const WeightedView<C>& view,
                             const std::vector<BasicSeries<C>>& lambdas, const Rat& cutoff,
                             bool parallel = true) {
    Cutoff cut = Cutoff::at(cutoff);
    int m = (int)view.areas.size();
    BasicSeries<C> phi = BasicSeries<C>::zero(cut);
    if (m == 0) return phi;

    std::vector<BasicSeries<C>> truncated;
    truncated.reserve(lambdas.size());
    for (const auto& l : lambdas) truncated.push_back(l.truncated(cut));

    std::vector<BasicSeries<C>> w(m);
    Rat minArea = view.areas[0];
    for (int i = 0; i < m; ++i) {
        minArea = std::min(minArea, view.areas[i]);
        w[i] = BasicSeries<C>::monomial(view.weights[i], view.areas[i], cut) *
               theta_value(truncated, view.classes[i]);
    }
    int maxK = 0;
    while (Rat(maxK + 1) * minArea < cutoff) ++maxK;

    struct Task {
        std::vector<int> labels;
        long multFact;
    };
    std::vector<Task> tasks;
    detail::for_each_multiset(view.areas, cutoff, maxK,
                              [&](const std::vector<int>& labels, long multFact) {
                                  tasks.push_back({labels, multFact});
                              });

    auto term_of = [&](const Task& t) {
        C edgeSum = detail::tree_edge_sum(t.labels, view.linking, parallel);
        if (coeff_ops<C>::is_zero(edgeSum)) return BasicSeries<C>::zero(cut);
        BasicSeries<C> prod = BasicSeries<C>::one(cut);
        for (int i : t.labels) prod = prod * w[i];
        return prod.scaled(coeff_ops<C>::div_int(edgeSum, t.multFact));
    };

    if (!parallel || tasks.size() < 16) {
        for (const auto& t : tasks) phi = phi + term_of(t);
        return phi;
    }
    std::vector<BasicSeries<C>> partial((size_t)omp_get_max_threads(),
                                        BasicSeries<C>::zero(cut));
#pragma omp parallel
    {
        int tid = omp_get_thread_num();
        BasicSeries<C> local = BasicSeries<C>::zero(cut);
#pragma omp for schedule(dynamic)
        for (long long i = 0; i < (long long)tasks.size(); ++i)
            local = local + term_of(tasks[(size_t)i]);
        partial[(size_t)tid] = local;
    }
    for (const auto& p : partial) phi = phi + p;  // exact sum, order immaterial
    return phi;
}

Series eval_phi(const Catalog& c, const ThetaPoint& theta, const Rat& cutoff,
                bool parallel = true);

// Single-vertex part of the sum: the plain weighted record count
// sum_records Or*I/iso * q^{area} theta(cls).
Series eval_phi_main(const Catalog& c, const ThetaPoint& theta, const Rat& cutoff);

// Serial reference: plain sum over ordered assignments divided by k!,
// no multiset grouping. Kept as the comparison implementation.
Series eval_phi_reference(const Catalog& c, const ThetaPoint& theta, const Rat& cutoff);

struct GwTable {
    int n = 0;
    std::vector<Rat> gamma;
    Rat cutoff;
    std::map<HomologyClass, Rat> gw;

    Rat area(const HomologyClass& cls) const;
};

GwTable extract_gw(const Catalog& c, const Rat& cutoff);

// Phi(theta) = sum GW_alpha q^{gamma.alpha} theta(alpha).
Series eval_from_gw(const GwTable& t, const ThetaPoint& theta);

// Component i = sum_alpha GW_alpha q^{gamma.alpha} theta(alpha) alpha_i (the
// unit chain-rule factor is dropped; the zero locus is unchanged).
std::vector<Series> grad_phi(const GwTable& t, const ThetaPoint& theta);

struct CriticalResult {
    bool obstructed = false;
    Rat obstructedLevel;  // least level that cannot be cancelled
    ThetaPoint theta;     // valid when not obstructed
};

// Order-by-order solve of grad Phi = 0 mod q^cutoff; free parameters of the
// leading Hessian system are pinned to 0.
CriticalResult solve_critical(const GwTable& t, const Rat& cutoff);

}  // namespace assoc
