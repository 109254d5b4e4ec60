#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "assoc/rational.hpp"

namespace assoc {

using IntMat = std::vector<std::vector<Int>>;  // row-major, exact integers

// Diagonal of the Smith normal form, padded with zeros to the number of
// columns so the entries read off the cokernel Z^cols / rowspace directly:
// divisors d1 | d2 | ... | dr followed by cols - r zeros (free factors).
struct SmithResult {
    std::vector<Int> divisors;
    int rank = 0;
};

SmithResult smith_normal_form(IntMat m);

// Integer kernel basis of m (column vectors x with m*x = 0), via the SNF
// column transform.
std::vector<std::vector<Int>> integer_kernel(IntMat m);

// Order of Z^cols / rowspace(m); nullopt when infinite.
std::optional<Int> cokernel_order(const IntMat& m);

struct AbelianGroupPresentation {
    int generators = 0;
    IntMat relations;  // rows = relations, columns = generators
};

AbelianGroupPresentation direct_sum(const AbelianGroupPresentation& a,
                                    const AbelianGroupPresentation& b);

// |H1| when finite, 0 otherwise.
Int i_invariant(const AbelianGroupPresentation& p);

inline Int connect_sum_i(const Int& i1, const Int& i2) { return i1 * i2; }

struct ConeSmoothingInput {
    AbelianGroupPresentation presentationOfP;
    IntMat rho;  // 2 rows of g entries: images of (1,0) and (0,1) in H1(P)
};

// Filling slopes for the three smoothings, in order.
inline constexpr std::array<std::array<long, 2>, 3> kFillingSlopes = {{{1, 0}, {0, 1}, {-1, -1}}};

struct ConeSmoothingReport {
    std::array<Int, 2> kernelSlope;   // generator b of Ker(rho), sign-normalized
    Int iN0;                          // I of the singular 3-fold N0
    std::array<Int, 3> iTilde;        // I of the three smoothings
    std::array<Int, 3> pairing;       // c_a = <lambda_a, b> (2x2 determinant)
    Int signedSum;                    // sum_a sign(c_a) * I(tilde N^a)
    bool signedSumZero = false;
};

// Computes H1 of the singular 3-fold and of its three Dehn-type fillings
// from the presentation of H1(P) and the peripheral map rho, and checks the
// signed-sum identity. Throws std::invalid_argument if Ker(rho) does not
// have rank exactly 1.
ConeSmoothingReport cone_smoothings(const ConeSmoothingInput& input);

std::string report_str(const ConeSmoothingReport& r);

}  // namespace assoc
