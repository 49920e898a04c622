#pragma once

#include "clausen/superelliptic.hpp"

namespace clausen::kummer {

using numerics::Cx;
using ratfunc::BigQ;
using ratfunc::Factored;
using ratfunc::MultiPoly;
using ratfunc::RatFunc;
using se::CurveSignature;

// Numerical invariants of the resolved product-quotient surface S0.
// The four consistency identities (Noether, signature index, chi
// decomposition, Hodge symmetry) hold for every r; see consistent().
struct SurfaceInvariants {
    long K2, euler, chi, tau, irregularity, pg, h11;
    bool consistent() const;
};
SurfaceInvariants surface_invariants(int r);

// Square roots (L1, L2) of the two curve moduli, on the generic locus.
struct ModuliPoint {
    Cx L1, L2;
};
void validate(const ModuliPoint& mp); // throws SingularLocus off the generic locus

// Period of the holomorphic two-form over the product two-cycles:
// which = 1: a x a, 2: a x b, 3: b x a, 4: b x b, with the first factor on
// SE(L1^2)_{r,p,q} and the second on SE(L2^2)_{r,2r-p,2r-q}; 1 <= k,l <= r-1.
Cx kummer_period(const CurveSignature& sig, const ModuliPoint& mp, int k, int l, int which);

// moduli of the non-isotrivial fibration: A = (L1+L2)^2/(4 L1 L2),
// B = (L1 L2 + 1)^2 / (4 L1 L2)
std::pair<Cx, Cx> moduli_AB(const ModuliPoint& mp);
std::pair<RatFunc, RatFunc> moduli_AB_exact();

// moduli of the twisted Legendre pencil behind the J6 pull-back
std::pair<Cx, Cx> moduli_AB_j6(const ModuliPoint& mp);
std::pair<RatFunc, RatFunc> moduli_AB_j6_exact();

// scalar of pi^*(du ^ dx/y) = scale . dzeta1/eta1 (x) dzeta2/eta2, principal
// branches: 2^{2-2p/r} L1^{3/2-p/2r-q/2r} L2^{1/2-p/2r+q/2r} / (L1^2-1)^{1-p/r}
Cx two_form_scale(const CurveSignature& sig, const ModuliPoint& mp);

// ---------------------------------------------------------------------------
// fibrations
// ---------------------------------------------------------------------------

enum class FibrationId { J4a, J4b, J5, J6, J7, J8 };
std::string to_string(FibrationId id);
FibrationId fibration_from_string(const std::string& s);

enum class SignatureConstraint { None, QeqR, Qeq3Rm2P };

// The fibration data: U, X and the rational cofactor of eta1 eta2 in Y,
// as rational functions of (zeta1, zeta2, L1, L2).
struct FibrationData {
    FibrationId id;
    CurveSignature sig;
    SignatureConstraint constraint;
    RatFunc U, X, Y_prefactor;
    std::vector<std::string> notes; // reading/correction metadata
};
FibrationData fibration_data(FibrationId id, const CurveSignature& sig);

// An exact certificate: the claimed identity reduced to the zero polynomial,
// plus one numeric spot check that pins the 2r-th root-of-unity branch.
struct Certificate {
    std::string name;
    bool zero = false;
    std::string residual;        // canonical polynomial, "0" on success
    double spot_residual = 0.0;  // |Y^{2r} - rhs| / |rhs| at the spot point
    int branch_root_index = 0;   // nearest k of Y / rhs^{1/2r} = rho_{2r}^k
    std::vector<std::string> notes;
};

Certificate verify_fibration_exact(FibrationId id, const CurveSignature& sig);

// Lem:6lines: the degree-two base change carrying the twisted Legendre
// pencil to the generalized J6 fibration (q = r), plus ramification data
Certificate verify_base_change_j6(const CurveSignature& sig);

// Lem:double_cover: pull-back of the non-isotrivial fibration under
// u = (1+z)^2/(4z), including the two-form cofactor identity
Certificate verify_double_cover(const CurveSignature& sig);

// the remark linking the twisted-Legendre resolvent family to the J6/J7
// fibrations (q = r): two exact identities
std::pair<Certificate, Certificate> verify_legendre_links(const CurveSignature& sig);
// negative control used by tests: one exponent perturbed, must fail
bool legendre_link_perturbed_fails(const CurveSignature& sig);

// rows of the duality table: (A, B, z1, z2, h) as exact rational
// functions of (L1, L2)
struct DualityRowExact {
    RatFunc A, B, z1, z2, h;
};
DualityRowExact duality_row_exact(int n); // n = 1..4

// serialize to the canonical certificate text (see External Interfaces)
std::string serialize(const Certificate& cert);

} // namespace clausen::kummer
