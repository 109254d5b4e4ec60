// Timing comparison of the OpenMP tree-sum kernel against the serial
// reference on synthetic catalogs of growing depth.

#include <omp.h>

#include <cstdio>
#include <random>

#include "assoc/superpotential.hpp"

using namespace assoc;

namespace {

Catalog synthetic_catalog(int m, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-3, 3), den(1, 2);
    Catalog c;
    c.n = 2;
    c.gamma = {Rat(1), Rat(1)};
    for (int i = 0; i < m; ++i) {
        AssocRecord r;
        r.id = "r" + std::to_string(i);
        r.cls = {1, (long long)(i % 2)};
        r.orientation = i % 2 ? -1 : 1;
        r.iInv = 1 + (long)(rng() % 3);
        r.isoOrder = 1;
        c.records.push_back(r);
    }
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) c.set_linking(i, j, rat(num(rng), den(rng)));
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    int m = argc > 1 ? std::atoi(argv[1]) : 6;
    int maxVertices = argc > 2 ? std::atoi(argv[2]) : 6;
    Catalog c = synthetic_catalog(m, 42);
    std::printf("records %d, threads %d\n", m, omp_get_max_threads());
    std::printf("%-10s %-14s %-14s %-14s %-9s\n", "vertices", "parallel [s]", "serial [s]",
                "reference [s]", "speedup");
    for (int k = 2; k <= maxVertices; ++k) {
        Rat cutoff = Rat(k) + rat(1, 2);
        ThetaPoint theta = theta_one(2, cutoff);
        double t0 = omp_get_wtime();
        Series par = eval_phi(c, theta, cutoff, true);
        double t1 = omp_get_wtime();
        Series ser = eval_phi(c, theta, cutoff, false);
        double t2 = omp_get_wtime();
        Series ref = eval_phi_reference(c, theta, cutoff);
        double t3 = omp_get_wtime();
        if (!(par == ser) || !(par == ref)) {
            std::printf("MISMATCH at %d vertices\n", k);
            return 1;
        }
        std::printf("%-10d %-14.4f %-14.4f %-14.4f %-9.2f\n", k, t1 - t0, t2 - t1, t3 - t2,
                    (t2 - t1) / (t1 - t0));
    }
    return 0;
}
