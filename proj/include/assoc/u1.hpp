#pragma once

#include <array>
#include <vector>

#include "assoc/rational.hpp"

namespace assoc {

// Quadratic invariants y1, y2, y3 of the circle action and the quotient map
// Pi = (x1, x2, x3, y1, y2, y3) : R^7 -> R^6.
std::array<Rat, 3> u1_invariants(const std::array<Rat, 7>& x);
std::array<Rat, 6> u1_reduce(const std::array<Rat, 7>& x);
std::array<double, 6> u1_reduce_d(const std::array<double, 7>& x);

// Exact identity y1^2 + y2^2 + y3^2 = (x4^2 + x5^2 + x6^2 + x7^2)^2.
bool u1_y_identity(const std::array<Rat, 7>& x);

// Circle action with rational rotation (cos, sin) = ((1-t^2), 2t)/(1+t^2).
std::array<Rat, 7> u1_act_rational(const std::array<Rat, 7>& x, const Rat& t);

// Almost complex structure at a point of R^6 with u = |y| > 0; throws on the
// singular locus u = 0.
std::array<std::array<double, 6>, 6> j_matrix(const std::array<double, 6>& p);

// Distance of J * span(t1, t2) from span(t1, t2), relative to |J t|.
double jholo_residual(const std::array<double, 6>& p, const std::array<double, 6>& t1,
                      const std::array<double, 6>& t2);

}  // namespace assoc
