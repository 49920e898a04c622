#pragma once

#include <optional>

#include "clausen/numerics.hpp"
#include "clausen/ratfunc.hpp"

namespace clausen::se {

using numerics::Cx;
using numerics::QuadratureSpec;
using ratfunc::BigQ;
using ratfunc::RatFunc;

// Integer triple (r,p,q) of the curve family y^{2r} = x^{p+q-r} (x-1)^{2r-p}
// (x-lambda)^{2r-p}, subject to the range inequalities and the divisibility
// constraints that make the resolved model smooth of genus 2r-1.
struct CurveSignature {
    int r = 1, p = 1, q = 1;
    CurveSignature swapped() const { return {r, 2 * r - p, 2 * r - q}; } // (p,q) -> (2r-p,2r-q)
    std::string str() const;
};

// nullopt when valid; otherwise the name of the first violated constraint
std::optional<std::string> check_signature(int r, int p, int q);
CurveSignature validate_signature(int r, int p, int q); // throws ConstraintViolation
std::vector<CurveSignature> valid_signatures(int max_r);

int genus(const CurveSignature& sig); // 2r - 1

// hypergeometric shadows and cycle constants of a signature
struct BranchConstants {
    BigQ beta1, beta2;   // q/(2r), p/(2r)
    Cx rho;              // exp(2 pi i / (2r))
    std::vector<Cx> C;   // C[k-1] = (rho-1)/rho^k, k = 1..2r-1
    Cx phase_beta2;      // (-1)^{beta2} = exp(i pi p/(2r))
};
BranchConstants branch_constants(const CurveSignature& sig);

enum class PointLabel { Zero, One, Lambda, Infinity };

struct PuiseuxRecord {
    PointLabel point;
    int multiplicity;
    std::pair<int, int> coefficients; // coprime (a,b) of the local model x^a = y^b
};
std::vector<PuiseuxRecord> puiseux_table(const CurveSignature& sig);

enum class Cycle { A, B };

// closed-form period of dx/y over the k-th A- or B-cycle, k = 1..2r-1;
// principal branches, lambda off {0,1}
Cx period_closed(const CurveSignature& sig, Cycle cycle, int k, Cx lambda);

// quadrature oracle along the real branch-cut layout (lambda real in (0,1)):
// A: C_k Int_0^lambda dx/y, B: (-1)^{beta2} C_k Int_lambda^1 dx/y with the
// proof's branch of y = x^{alpha} (1-x)^{1-beta2} (lambda-x)^{1-beta2}
Cx period_quadrature(const CurveSignature& sig, Cycle cycle, int k, double lambda,
                     const QuadratureSpec& spec);

// B/A period ratio (independent of k)
Cx tau_ratio(const CurveSignature& sig, Cx lambda);

// ---------------------------------------------------------------------------
// The rational transformations of the SWmodel lemma, with exact verifiers.
// Fractional powers of the y-maps only ever appear through their 2r-th
// powers, which are rational; each verifier raises the transformed curve
// equation accordingly and reduces it to zero in exact arithmetic.
// ---------------------------------------------------------------------------

struct SwTransform {
    RatFunc x, u;          // substitutions
    RatFunc y_pow2r_over_eta_pow2r; // (y/eta)^{2r}
};

struct SwModelMaps {
    CurveSignature sig;
    SwTransform legendre1; // (zeta2, L2) -> (Legendre) form
    SwTransform legendre2; // (zeta1, lambda1) -> (Legendre) form
    RatFunc lambda1_of_L2; // ((1+L2)/(1-L2))^2
    RatFunc u_of_L2;       // (1+L2)^2 / (4 L2)

    bool verify_legendre1(std::string* why = nullptr) const;
    bool verify_legendre2(std::string* why = nullptr) const;
    // the p = r route (ConstraintViolation when p != r)
    bool verify_legendre3(std::string* why = nullptr) const;
    // the (8r-q, 4r-q)-correspondence identity (p = r semantics)
    bool verify_correspondence(std::string* why = nullptr) const;
};

SwModelMaps swmodel_maps(const CurveSignature& sig);

} // namespace clausen::se
