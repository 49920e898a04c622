#pragma once

#include <utility>

#include "clausen/numerics.hpp"
#include "clausen/ratfunc.hpp"

namespace clausen::hyp {

using numerics::Cx;
using numerics::QuadratureSpec;

struct Hyp2F1Params {
    Cx a, b, c;
};

struct AppellF2Params {
    Cx alpha, beta1, beta2, gamma1, gamma2;
};

// The quadric-constrained subfamily: alpha = b1+b2-1/2, gamma_i = 2 b_i,
// held as exact rationals so the constraint is exact by construction.
struct QuadricParams {
    ratfunc::BigQ beta1, beta2;
    ratfunc::BigQ alpha, gamma1, gamma2; // derived in the constructor

    QuadricParams(ratfunc::BigQ b1, ratfunc::BigQ b2);
    AppellF2Params to_f2() const;
    // the three constraints of the quadric property on the stored rationals
    bool satisfies_quadric() const;
};

void validate(const Hyp2F1Params& p);  // PoleError when c is near a non-positive integer
void validate(const AppellF2Params& p);

// rising factorial (a)_n
Cx pochhammer(Cx a, unsigned n);

// Gauss 2F1, principal branch (cut [1, inf)). Series for |z| <= 0.95;
// Euler integral when Re c > Re b > 0 and z is off the cut; DomainError
// otherwise. Relative accuracy ~1e-11 or better.
Cx eval_2f1(const Hyp2F1Params& p, Cx z);
Cx eval_2f1_series(const Hyp2F1Params& p, Cx z);
Cx eval_2f1_euler(const Hyp2F1Params& p, Cx z, const QuadratureSpec& spec);

// theta f = z f'(z), summed term-wise from the defining series (|z| <= 0.95)
Cx eval_2f1_theta(const Hyp2F1Params& p, Cx z);

// 3F2(a1,a2,a3; b1,b2; z), series with tail-ratio stopping, |z| <= 0.95
Cx eval_3f2(Cx a1, Cx a2, Cx a3, Cx b1, Cx b2, Cx z);

// Appell F2. Series (diagonal-by-diagonal) for |z1|+|z2| <= 0.95; the 2D
// Euler integral when Re gamma_i > Re beta_i > 0 and 1 - z1 x - z2 u stays
// away from zero on the closed unit square; DomainError otherwise.
Cx eval_f2(const AppellF2Params& p, Cx z1, Cx z2);
Cx eval_f2_series(const AppellF2Params& p, Cx z1, Cx z2);
Cx eval_f2_integral(const AppellF2Params& p, Cx z1, Cx z2, const QuadratureSpec& spec);

// theta-derivative lattice of F2 from the series: returns
// (F, th_{z1} F, th_{z2} F, th_{z1} th_{z2} F)
std::array<Cx, 4> eval_f2_theta_vector(const AppellF2Params& p, Cx z1, Cx z2);

// minimal |1 - z1 x - z2 u| over the closed unit square (the 2D Euler
// integrand's pole line distance, used for the integral precondition)
double f2_integrand_pole_gap(Cx z1, Cx z2);

// right-hand side of the 1D Euler integral transform: evaluates
// A^{-alpha} F2(alpha; b1,b2; g1,g2; 1/A, 1-B/A) through the U-integral of
// 2F1(alpha,b1;g1;1/U) over [A,B]. Principal branches throughout.
Cx f2_euler_transform(const AppellF2Params& p, Cx A, Cx B, const QuadratureSpec& spec);

// the two linear transformations induced by (A,B) -> (B,A) and (1-A,1-B)
struct F2LinearTransform {
    int which; // 1 or 2
    AppellF2Params params;
    std::pair<Cx, Cx> map_ab(Cx A, Cx B) const;
};
F2LinearTransform linear_transform_params(int which, const AppellF2Params& p);

// both sides of Kummer's two quadratic identities at modulus Lambda
struct KummerQuadraticPair {
    Cx lhs1, rhs1, lhs2, rhs2;
};
KummerQuadraticPair kummer_quadratic_pair(double beta1, double beta2, Cx Lambda);

} // namespace clausen::hyp
