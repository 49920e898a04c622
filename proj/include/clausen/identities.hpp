#pragma once

#include "clausen/hypergeometric.hpp"
#include "clausen/kummer.hpp"

namespace clausen::ident {

using kummer::ModuliPoint;
using numerics::Cx;
using numerics::QuadratureSpec;
using se::CurveSignature;

struct IdentityReport {
    std::string name;
    std::vector<std::pair<std::string, Cx>> inputs;
    Cx lhs{}, rhs{};
    double abs_residual = 0.0, rel_residual = 0.0;
    bool passed = false;
    double tolerance = 0.0;
};

// passed <=> rel_residual <= tol, or abs_residual <= tol when |rhs| < 1
IdentityReport make_report(std::string name, std::vector<std::pair<std::string, Cx>> inputs,
                           Cx lhs, Cx rhs, double tolerance);

// Thm 1: F2(b1+b2-1/2; b1,b2; 2b1,2b2; z1,z2) =
//   (L1+L2)^{2b1+2b2-1} 2F1(a,b2;b1+1/2;L1^2) 2F1(a,b2;2b2;1-L2^2)
// on the branch anchored at (L1,L2) -> (0,1); for real moduli this is the
// component |L1| < |L2| (the z-map is symmetric in L1 <-> L2, the right side
// is not, and z1 = 1 on the diagonal separates the components).
IdentityReport verify_multivariate_clausen(double beta1, double beta2, const ModuliPoint& mp);

struct DualityRowResult {
    Cx A, B, z1, z2, h;
    IdentityReport report;
};
DualityRowResult duality_row(int n, double beta1, double beta2, const ModuliPoint& mp);
// (z1,z2) = (1/A, 1-B/A) for every row, in exact arithmetic
bool duality_row_consistent_exact(int n);

// the (z1,z2) <-> (z2,z1) swap symmetry: series-level symmetry of F2 plus
// consistency of the right side under the induced moduli involution
// (L1,L2) -> (-(1-L2)/(1+L2), (1+L1)/(1-L1)) via Kummer's quadratics
IdentityReport verify_symmetry_swap(double beta1, double beta2, const ModuliPoint& mp);
// (A,B) -> (A/(A-B), (A-1)/(A-B)) is an exact involution
bool symmetry_involution_exact();

// both displayed Clausen 3F2 identities at z1 = -4 L1^2/(1-L1^2)^2
std::pair<IdentityReport, IdentityReport> verify_clausen_3f2(double beta1, double beta2, Cx L1);

// Lem:F2period: iterated integral (outer u on [A,B], inner closed form)
// against the displayed F2 expression; 1 < A < B real
IdentityReport f2_period_double_integral(const CurveSignature& sig, double A, double B, int k,
                                         int l, const QuadratureSpec& spec);

// two-cycle period matching: the sigma-period (product of closed-form
// curve periods on S0^{(r,2r-p,2r-q)}) against the fibration-route period
// assembled from F2 and the two-form scale; r >= 2, 1 <= i,j <= r-1
IdentityReport verify_period_equality(const CurveSignature& sig, const ModuliPoint& mp, int i,
                                      int j);

struct MirrorMapResult {
    IdentityReport roundtrip;              // |Lambda(theta) - sqrt(lambda)|
    std::array<double, 3> series_coeffs;   // of q^{1/4}, q^{3/4}, q^{5/4}: 4, -16, 56
};
MirrorMapResult mirror_map_check(double lambda);

} // namespace clausen::ident
