#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "assoc/rat_linalg.hpp"
#include "assoc/superpotential.hpp"

namespace assoc {

// Rational cohomology ring data of a closed oriented 7-manifold: Betti
// numbers, cup-product structure constants, Poincare duality H_3 -> H^4 and
// the pairing H^3 x H_3 -> Q.
struct CohRingData {
    std::array<int, 8> betti{};
    // cup[{k,l}][i][j] = coordinates of (basis_i of H^k) cup (basis_j of H^l)
    std::map<std::pair<int, int>, std::vector<std::vector<RatVec>>> cup;
    RatMat pd;       // b4 x b3, column j = Pd(e_j)
    RatMat pairing;  // b3 x b3, beta(alpha) = sum beta_i pairing[i][j] alpha_j

    const std::vector<std::vector<RatVec>>& cup_block(int k, int l) const;
    RatVec cup_apply(int k, int l, const RatVec& x, const RatVec& y) const;
};

struct RingIssue {
    std::string what;
};

// Structural validation: grading, graded commutativity, associativity, unit,
// Pd invertibility, pairing nondegeneracy, and the cup/Pd/pairing
// compatibility that makes the deformed differential symmetric.
std::vector<RingIssue> validate_ring(const CohRingData& ring);

// The quantum-product well-definedness constraints tied to a GW table:
// (H^1 cup H^2) . alpha = 0 and delta cup Pd(alpha) = 0 for GW-supported
// alpha. Returns human-readable failures naming the violating triple.
std::vector<RingIssue> validate_qhs_constraints(const CohRingData& ring, const GwTable& gw);

using SeriesMat = std::vector<std::vector<Series>>;

struct DeformedDifferential {
    SeriesMat d;  // b4 x b3 over the truncated ring
    bool thetaCritical = true;
};

DeformedDifferential build_d(const CohRingData& ring, const GwTable& gw, const ThetaPoint& theta,
                             const Rat& cutoff);

struct QcohResult {
    Rat cutoff;
    std::array<int, 8> betti{};
    std::vector<std::vector<Series>> qh3Kernel;  // basis vectors, length b3
    int qh4FreeRank = 0;
    std::vector<Rat> torsionExponents;           // one q-power per pivot

    // elimination data for coset reduction (U d V = pivots)
    SeriesMat u, uinv, v;
    std::vector<std::pair<size_t, Rat>> pivots;  // (row in transformed order, valuation)
    SeriesMat reduced;                           // transformed matrix
    SeriesMat dmat;                              // original differential
};

QcohResult qh_groups(const SeriesMat& d, const Rat& cutoff, const std::array<int, 8>& betti);

// Canonical representative of y + Im(d) in H^4: pivot coordinates reduced
// modulo their q-power, expressed back in the original basis.
std::vector<Series> coker_reduce(const QcohResult& r, const std::vector<Series>& y);

struct QcohElement {
    int degree = 0;
    std::vector<Series> coords;
};

// The deformed product, by the case table: cup in unaffected degrees, kernel
// vectors in degree 3, coset representatives in degree 4, zero above 7.
QcohElement qh_product(const CohRingData& ring, const QcohResult& r, const QcohElement& x,
                       const QcohElement& y);

}  // namespace assoc
