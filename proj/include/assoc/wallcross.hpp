#pragma once

#include <string>
#include <variant>
#include <vector>

#include "assoc/superpotential.hpp"

namespace assoc {

// Pair creation / annihilation of two identical records with opposite
// orientations and identical extended linking rows.
struct TransitionA {
    std::string idPlus, idMinus;
    HomologyClass cls;
    Int iInv = 1;
    Int isoOrder = 1;
    long flagOffset = 0;
    std::vector<std::pair<std::string, Rat>> row;  // linking against existing records
    Rat selfLink;  // shared value of the ++, --, +- entries
};

// Crossing of two distinct records creating their connect sum.
struct TransitionB {
    std::string plus, minus, newId;
    int eps = 1;        // intersection sign of the crossing
    int deltaSign = 1;  // sign of the gluing obstruction, drives the flag shift
};

// Self-crossing creating a connect sum with S^1 x S^2 (weight-zero record).
struct TransitionC {
    std::string record, newId;
    int deltaSign = 1;
};

// Self-crossing creating the double connect sum, class 2[N].
struct TransitionD {
    std::string record, newId;
    int eps = 1;
    int deltaSign = 1;
};

// T^2-cone transition: one record is replaced by two whose weighted counts
// add up to its own (the signed-sum identity).
struct TransitionE {
    std::string remove;
    std::string id2, id3;
    int or2 = 1, or3 = 1;
    Int i2 = 1, i3 = 1;
    Int iso2 = 1, iso3 = 1;
    long flag2 = 0, flag3 = 0;
};

// 3-cycle crossing: linking row of one record shifts by a pairing vector.
struct TransitionX {
    std::string record;
    std::vector<Rat> delta;
    int eps = 1;
};

using Transition = std::variant<TransitionA, TransitionB, TransitionC, TransitionD, TransitionE,
                                TransitionX>;

Catalog apply_transition(const Catalog& c, const Transition& t);

struct QiGenerator {
    Rat c;                   // weight Or*I/iso of the crossing record
    HomologyClass alpha0;    // its class
    Rat area0;               // gamma . alpha0 (must be positive for a valid map)
    std::vector<Rat> delta;  // pairing vector
};

struct QuasiIdentity {
    int n = 0;
    std::vector<QiGenerator> gens;  // applied left to right
};

QuasiIdentity qi_identity(int n);
QuasiIdentity qi_compose(const QuasiIdentity& first, const QuasiIdentity& second);

// theta(alpha) -> theta(alpha) * exp(c q^{a0} theta(alpha0) (alpha . delta)),
// generator by generator. The coefficient ring carries the delta entries, so
// the same code runs over exact rationals and over dual numbers.
template <class C>
std::vector<BasicSeries<C>> qi_apply_lambdas(std::vector<BasicSeries<C>> lambdas,
                                             const std::vector<QiGenerator>& gens,
                                             const std::vector<std::vector<C>>& deltaCoeffs,
                                             const Rat& cutoff) {
    Cutoff cut = Cutoff::at(cutoff);
    for (auto& l : lambdas) l = l.truncated(cut);
    for (size_t g = 0; g < gens.size(); ++g) {
        const QiGenerator& gen = gens[g];
        BasicSeries<C> base = BasicSeries<C>::monomial(C(gen.c), gen.area0, cut) *
                              theta_value(lambdas, gen.alpha0);
        std::vector<BasicSeries<C>> next = lambdas;
        for (size_t i = 0; i < lambdas.size(); ++i) {
            const C& di = deltaCoeffs[g][i];
            if (coeff_ops<C>::is_zero(di)) continue;
            BasicSeries<C> factor = exp_pos(base.scaled(di));
            next[i] = (BasicSeries<C>::one(cut) + lambdas[i]) * factor - BasicSeries<C>::one(cut);
        }
        lambdas = std::move(next);
    }
    return lambdas;
}

ThetaPoint qi_apply(const QuasiIdentity& u, const ThetaPoint& theta, const Rat& cutoff);

struct QiCheckReport {
    bool pass = false;
    std::string reason;
};

// Verifies the increment condition: perturbing theta by q^d * (bounded) moves
// every component of the map by q^{d + e0} * (bounded), e0 = min generator area.
QiCheckReport qi_check(const QuasiIdentity& u, int samples, uint64_t seed, const Rat& cutoff);

std::pair<Catalog, QuasiIdentity> cycle_cross(const Catalog& c, const std::string& recordId,
                                              std::vector<Rat> delta, int eps);

struct VerifyReport {
    bool pass = false;
    int samples = 0;
    Valuation firstDifference;  // valuation of Phi_after - Phi_before at the failing sample
};

// Compares eval_phi on both catalogs at theta = 1 plus sampled theta, exactly.
VerifyReport verify_invariance(const Catalog& before, const Catalog& after, const Rat& cutoff,
                               int thetaSamples, uint64_t seed);

struct FirstOrderReport {
    bool order0 = false;
    bool order1 = false;
    int samples = 0;
};

// Dual-number check of Phi_after(theta) = Phi_before(Upsilon0(theta)) to
// first order in the pairing vector.
FirstOrderReport cycle_cross_first_order_check(const Catalog& before, const std::string& recordId,
                                               const std::vector<Rat>& delta, int eps,
                                               const Rat& cutoff, int thetaSamples, uint64_t seed);

// Exact two-sided comparison for catalogs where the crossing record only ever
// interacts as a leaf (see cycle_cross tests for the admissible regime).
struct ExactCrossReport {
    bool pass = false;
    int samples = 0;
};
ExactCrossReport cycle_cross_exact_check(const Catalog& before, const std::string& recordId,
                                         const std::vector<Rat>& delta, int eps, const Rat& cutoff,
                                         int thetaSamples, uint64_t seed);

// deterministic random theta used by the verification sweeps
ThetaPoint random_theta(int n, const Rat& cutoff, uint64_t seed);

}  // namespace assoc
