#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "assoc/rat_linalg.hpp"
#include "assoc/rational.hpp"

namespace assoc {

using Vec7 = std::array<double, 7>;
using Mat7 = std::array<std::array<double, 7>, 7>;  // column j = image of e_j

// Alternating form on R^7 with exact rational coefficients, stored on
// strictly increasing 0-based index tuples.
class AltForm {
  public:
    explicit AltForm(int degree) : degree_(degree) {}

    int degree() const { return degree_; }
    const std::map<std::vector<int>, Rat>& terms() const { return terms_; }

    // Adds c * dx_I for an arbitrary index tuple, normalizing by sorting
    // (terms with repeated indices vanish).
    void add_term(std::vector<int> idx, Rat c);

    Rat coeff(const std::vector<int>& sorted_idx) const;

    AltForm operator-() const;
    friend AltForm operator+(const AltForm& a, const AltForm& b);
    friend AltForm operator-(const AltForm& a, const AltForm& b);
    AltForm scaled(const Rat& c) const;
    friend bool operator==(const AltForm& a, const AltForm& b);

    friend AltForm wedge(const AltForm& a, const AltForm& b);

    // Evaluation on degree() many vectors (exact / floating point).
    Rat eval(const std::vector<RatVec>& vectors) const;
    double eval_d(const std::vector<Vec7>& vectors) const;

  private:
    int degree_;
    std::map<std::vector<int>, Rat> terms_;
};

// The model forms of the flat G2 structure and the Calabi-Yau pieces under
// the identification (x1, x2 + i x3, x4 + i x5, x6 + i x7).
const AltForm& phi0();
const AltForm& star_phi0();
AltForm omega0();
AltForm re_omega0();
AltForm im_omega0();

// phi0-type cross product with respect to a 3-form: <cross(u,v), w> = f(u,v,w).
RatVec cross(const AltForm& f, const RatVec& u, const RatVec& v);
Vec7 cross_d(const AltForm& f, const Vec7& u, const Vec7& v);

// Oriented plane given by an ordered (orthonormal) basis.
struct OrientedPlaneQ {
    std::vector<RatVec> basis;  // k vectors of length 7
};
struct OrientedPlaneD {
    std::vector<Vec7> basis;
};

bool is_orthonormal(const OrientedPlaneQ& p);
bool is_orthonormal(const OrientedPlaneD& p, double tol);

// f evaluated on the plane's oriented basis; throws on degree/dimension
// mismatch or a non-orthonormal basis.
Rat calibration_value(const AltForm& f, const OrientedPlaneQ& p);
double calibration_value(const AltForm& f, const OrientedPlaneD& p, double tol = 1e-9);

// Exact verification of the flat Calabi-Yau decomposition of phi0, *phi0.
bool cy_decomposition_check();

// Dimension of the space of linear vector fields annihilating phi0
// (kernel of a 35 x 49 rational system).
int stabilizer_dimension();

// Positively oriented orthonormal completion of an orthonormal 3-frame.
std::vector<Vec7> oriented_complement(const std::vector<Vec7>& v3);

// Solution space of the linear conditions f(v_i, v_j, z) = 0 cutting out the
// 4-plane extensions W = span(V, z) with f|_W = 0. Exact; used for the
// coassociative-witness construction.
std::vector<RatVec> coassociative_extension_space(const AltForm& f, const std::vector<RatVec>& v3);

// Frame map A with pullback of psi under A equal to *phi0, found by damped
// Gauss-Newton from the identity; nullopt when the search does not converge
// (psi not recognizably positive near the model form).
std::optional<Mat7> find_normal_frame(const AltForm& psi, double tol = 1e-11);

struct TamenessReport {
    bool pass = false;
    double minValue = 0.0;
    std::vector<Vec7> worstPlane;  // 3 basis vectors realizing the minimum
    int samples = 0;
    double frameResidual = 0.0;
};

// Samples psi-associative planes via the cross product in psi's normal frame
// and reports min phi|_V. Throws std::domain_error when no normal frame is
// found.
TamenessReport tameness_check(const AltForm& phi, const AltForm& psi, int samples, uint64_t seed);

}  // namespace assoc
