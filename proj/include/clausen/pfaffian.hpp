#pragma once

#include <array>

#include "clausen/numerics.hpp"
#include "clausen/ratfunc.hpp"

namespace clausen::pfaff {

using numerics::Cx;
using numerics::MatC;
using ratfunc::BigQ;
using ratfunc::RatFunc;

// A matrix of one-forms: one coefficient matrix per coordinate differential.
struct ConnectionForm {
    int dim = 0;
    std::vector<std::string> coords;
    std::vector<MatC> coeff;
};

// Rank-4 connection of the quadric-constrained Appell F2 system in the
// theta-derivative frame (F, th1 F, th2 F, th1 th2 F); coords (z1, z2).
// alpha is always beta1 + beta2 - 1/2.
ConnectionForm omega_f2_at(double beta1, double beta2, Cx z1, Cx z2);

// Rank-2 connection of f(L) = 2F1(b1+b2-1/2, b2; b1+1/2; L^2); coord (L).
ConnectionForm omega_2f1_at(double beta1, double beta2, Cx Lambda);

// Outer tensor product connection on H = f(L1)-vector (x) f(L2)-vector,
// assembled as Omega (x) I + I (x) Omega; coords (L1, L2).
ConnectionForm omega_tensor_at(double beta1, double beta2, Cx L1, Cx L2);

struct GaugeEval {
    MatC g;                       // full gauge, prefactor included
    MatC g_tilde;                 // rational part: g = (L1+L2)^{2 alpha} g_tilde
    Cx prefactor;                 // (L1+L2)^{2 alpha}, principal branch
    std::array<Cx, 2> dlog_extra; // d(L1), d(L2) coefficients of 2 alpha dlog(L1+L2)
};
GaugeEval gauge_at(double beta1, double beta2, Cx L1, Cx L2);

// z = T(L1,L2) together with the exact Jacobian d(z1,z2)/d(L1,L2)
struct ModuliMapT {
    Cx z1, z2;
    Eigen::Matrix2cd jacobian;
};
ModuliMapT moduli_map_T(Cx L1, Cx L2);

// max-norm of Omega_tensor - (g^{-1} (T* Omega_F2) g - g^{-1} dg) per
// coordinate, where dg is evaluated from the exact rational derivative of
// g_tilde plus the 2 alpha dlog(L1+L2) term. (The decomposition holds with
// the minus sign on g^{-1}dg; see the project notes.)
double decomposition_residual(double beta1, double beta2, Cx L1, Cx L2);

// ---------------------------------------------------------------------------
// exact-arithmetic side
// ---------------------------------------------------------------------------

template <int N> using RfMat = std::array<std::array<RatFunc, size_t(N)>, size_t(N)>;

// connection coefficient matrices as rational functions (variables "z1","z2"
// resp. "L1","L2"); entry [i][j] of coordinate k
struct ExactF2Connection {
    RfMat<4> dz1, dz2;
};
ExactF2Connection omega_f2_exact(const BigQ& beta1, const BigQ& beta2);

struct ExactTensorConnection {
    RfMat<4> dL1, dL2;
};
ExactTensorConnection omega_tensor_exact(const BigQ& beta1, const BigQ& beta2);

RfMat<4> gauge_tilde_exact(const BigQ& beta1, const BigQ& beta2);

struct ExactModuliMapT {
    RatFunc z1, z2;        // in variables L1, L2
    RfMat<2> jacobian;
};
ExactModuliMapT moduli_map_T_exact();

// verifies g~ . Omega_tensor_k - (T* Omega_F2)_k . g~ + d_k g~ + (2a/(L1+L2)) g~ = 0
// for k = 1,2 as identities of rational functions; false means the identity
// failed (the offending entry is reported through `why` when non-null)
bool decomposition_check_exact(const BigQ& beta1, const BigQ& beta2,
                               std::string* why = nullptr);

// negative control: same check with one gauge entry deliberately perturbed;
// must come back false
bool decomposition_check_exact_perturbed(const BigQ& beta1, const BigQ& beta2);

} // namespace clausen::pfaff
