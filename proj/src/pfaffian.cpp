#include "clausen/pfaffian.hpp"

#include <cmath>
#include <mutex>

namespace clausen::pfaff {

using numerics::cpow;
using ratfunc::bigq;
using ratfunc::MultiPoly;
using ratfunc::ratfunc_equal;

namespace {

// The connection entries are written once, generically over the scalar type,
// and instantiated with Cx (numeric path) and RatFunc (exact path) so the two
// paths cannot drift apart.

template <class T> struct Mat4 { std::array<std::array<T, 4>, 4> m{}; };
template <class T> struct Mat2 { std::array<std::array<T, 2>, 2> m{}; };

template <class T> struct F2Entries { Mat4<T> d1, d2; };

// alpha = b1 + b2 - 1/2 throughout; `one` supplies the multiplicative unit
template <class T>
F2Entries<T> f2_connection_entries(const T& al, const T& b1, const T& b2,
                                   const T& z1, const T& z2, const T& one) {
    const T two = one + one, three = two + one;
    const T zero = one - one;
    F2Entries<T> E;
    auto& M1 = E.d1.m;
    auto& M2 = E.d2.m;
    for (auto& row : M1) row.fill(zero);
    for (auto& row : M2) row.fill(zero);

    const T z1m1 = z1 - one, z2m1 = z2 - one, zsum = z1 + z2 - one;

    M1[0][1] = one / z1;
    M2[0][2] = one / z2;

    M1[1][0] = -(al * b1) / z1m1;
    M1[1][1] = -((al + b1) * z1 - two * b1 + one) / (z1 * z1m1);
    M1[1][2] = -b1 / z1m1;
    M1[1][3] = -one / z1m1;
    M2[1][3] = one / z2;

    M2[2][0] = -(al * b2) / z2m1;
    M2[2][1] = -b2 / z2m1;
    M2[2][2] = -((al + b2) * z2 - two * b2 + one) / (z2 * z2m1);
    M2[2][3] = -one / z2m1;
    M1[2][3] = one / z1;

    M1[3][0] = al * b1 * b2 * z2 / (z1m1 * zsum);
    M2[3][0] = al * b1 * b2 * z1 / (z2m1 * zsum);
    M1[3][1] = b2 * (al - b1 + one) * z2 / (z1m1 * zsum);
    M2[3][1] = -(b2 * ((al - two * b1 + one) * z2 - b1 * z1 - al + two * b1 - one)) / (z2m1 * zsum);
    M2[3][2] = b1 * (al - b2 + one) * z1 / (z2m1 * zsum);
    M1[3][2] = -(b1 * ((al - two * b2 + one) * z1 - b2 * z2 - al + two * b2 - one)) / (z1m1 * zsum);
    M1[3][3] = -(((al + b1 - two * b2 + one) * z1 * z1 +
                  ((two * b1 - b2 - one) * z2 - al - three * b1 + two * b2) * z1 +
                  (one - two * b1) * z2 + two * b1 - one)) /
               (z1 * z1m1 * zsum);
    M2[3][3] = -(((al + b2 - two * b1 + one) * z2 * z2 +
                  ((two * b2 - b1 - one) * z1 - al - three * b2 + two * b1) * z2 +
                  (one - two * b2) * z1 + two * b2 - one)) /
               (z2 * z2m1 * zsum);
    return E;
}

template <class T>
Mat2<T> hyp2f1_connection_entries(const T& b1, const T& b2, const T& L, const T& one) {
    const T two = one + one, four = two + two;
    Mat2<T> A;
    A.m[0][0] = one - one;
    A.m[0][1] = one / L;
    const T L2m1 = L * L - one;
    A.m[1][0] = -(two * (two * b1 + two * b2 - one) * b2 * L) / L2m1;
    A.m[1][1] = -(((two * b1 + four * b2 - one) * L * L - two * b1 + one)) / (L * L2m1);
    return A;
}

// Kronecker assembly for H ordered (f1 f2, th1 f1 f2, f1 th2 f2, th1 f1 th2 f2)
template <class T>
void tensor_assembly(const Mat2<T>& A, const Mat2<T>& B, Mat4<T>& T1, Mat4<T>& T2,
                     const T& one) {
    const T zero = one - one;
    constexpr int idx[4][2] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    for (int I = 0; I < 4; ++I)
        for (int J = 0; J < 4; ++J) {
            T1.m[size_t(I)][size_t(J)] =
                idx[I][1] == idx[J][1] ? A.m[size_t(idx[I][0])][size_t(idx[J][0])] : zero;
            T2.m[size_t(I)][size_t(J)] =
                idx[I][0] == idx[J][0] ? B.m[size_t(idx[I][1])][size_t(idx[J][1])] : zero;
        }
}

// rational part of the gauge (the (L1+L2)^{2 alpha} prefactor removed)
template <class T>
Mat4<T> gauge_tilde_entries(const T& b1, const T& b2, const T& L1, const T& L2, const T& one) {
    const T two = one + one, half = one / two;
    const T al = b1 + b2 - half;
    const T zero = one - one;
    Mat4<T> g;
    for (auto& row : g.m) row.fill(zero);

    const T L1sq = L1 * L1, L2sq = L2 * L2;
    const T m = L1 * L2;                      // product of moduli
    const T mm1 = m - one, mp1 = m + one;     // L1 L2 -+ 1
    const T d1 = L1sq - one, d2 = L2sq - one; // Lambda_i^2 - 1
    const T diff = L1 - L2;

    g.m[0][0] = one;
    g.m[1][0] = -(two * al * m) / mm1;
    g.m[1][1] = -(L2 * d1) / (mm1 * diff);
    g.m[1][2] = (L1 * d2) / (mm1 * diff);
    g.m[2][0] = al * d1 * d2 / (m * m - one);
    g.m[2][1] = d1 * d2 / (two * (m * m - one));
    g.m[2][2] = g.m[2][1];
    g.m[3][0] = -(al * m * d1 * d2 * ((two * b1 - one) * m - two * b1 - one)) /
                (mp1 * mm1 * mm1 * mm1);
    g.m[3][1] = (L2 * d1 * d2 *
                 (two * al * L1sq * L2sq - ((two * b1 - one) * L1sq + two * b1 + one) * m +
                  (two * b1 + one) * L1sq - two * b2)) /
                (two * mm1 * mm1 * mm1 * mp1 * diff);
    g.m[3][2] = -(L1 * d1 * d2 *
                  (two * al * L1sq * L2sq - ((two * b1 - one) * L2sq + two * b1 + one) * m +
                   (two * b1 + one) * L2sq - two * b2)) /
                (two * mm1 * mm1 * mm1 * mp1 * diff);
    g.m[3][3] = -(d1 * d2) / (two * mm1 * mm1);
    return g;
}

void require_away(bool ok, const char* what) {
    if (!ok) throw SingularLocus(std::string("evaluation point too close to ") + what);
}

constexpr double kLocusGap = 1e-8;

MatC to_matc(const Mat4<Cx>& a) {
    MatC m(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = a.m[size_t(i)][size_t(j)];
    return m;
}

} // namespace

// ---------------------------------------------------------------------------
// numeric path
// ---------------------------------------------------------------------------

ConnectionForm omega_f2_at(double beta1, double beta2, Cx z1, Cx z2) {
    require_away(std::abs(z1) >= kLocusGap, "z1 = 0");
    require_away(std::abs(z1 - 1.0) >= kLocusGap, "z1 = 1");
    require_away(std::abs(z2) >= kLocusGap, "z2 = 0");
    require_away(std::abs(z2 - 1.0) >= kLocusGap, "z2 = 1");
    require_away(std::abs(z1 + z2 - 1.0) / std::sqrt(2.0) >= kLocusGap, "z1 + z2 = 1");
    const Cx one(1.0, 0.0);
    const Cx al(beta1 + beta2 - 0.5, 0.0);
    auto E = f2_connection_entries<Cx>(al, Cx(beta1), Cx(beta2), z1, z2, one);
    return {4, {"z1", "z2"}, {to_matc(E.d1), to_matc(E.d2)}};
}

ConnectionForm omega_2f1_at(double beta1, double beta2, Cx Lambda) {
    require_away(std::abs(Lambda) >= kLocusGap, "Lambda = 0");
    require_away(std::abs(Lambda - 1.0) >= kLocusGap, "Lambda = 1");
    require_away(std::abs(Lambda + 1.0) >= kLocusGap, "Lambda = -1");
    auto A = hyp2f1_connection_entries<Cx>(Cx(beta1), Cx(beta2), Lambda, Cx(1.0));
    MatC m(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m(i, j) = A.m[size_t(i)][size_t(j)];
    return {2, {"L"}, {m}};
}

ConnectionForm omega_tensor_at(double beta1, double beta2, Cx L1, Cx L2) {
    for (Cx L : {L1, L2}) {
        require_away(std::abs(L) >= kLocusGap, "Lambda = 0");
        require_away(std::abs(L - 1.0) >= kLocusGap, "Lambda = 1");
        require_away(std::abs(L + 1.0) >= kLocusGap, "Lambda = -1");
    }
    const Cx one(1.0, 0.0);
    auto A = hyp2f1_connection_entries<Cx>(Cx(beta1), Cx(beta2), L1, one);
    auto B = hyp2f1_connection_entries<Cx>(Cx(beta1), Cx(beta2), L2, one);
    Mat4<Cx> T1, T2;
    tensor_assembly(A, B, T1, T2, one);
    return {4, {"L1", "L2"}, {to_matc(T1), to_matc(T2)}};
}

GaugeEval gauge_at(double beta1, double beta2, Cx L1, Cx L2) {
    require_away(std::abs(L1 * L2 - 1.0) >= kLocusGap, "L1 L2 = 1");
    require_away(std::abs(L1 * L2 + 1.0) >= kLocusGap, "L1 L2 = -1");
    require_away(std::abs(L1 - L2) >= kLocusGap, "L1 = L2");
    require_away(std::abs(L1 + L2) >= kLocusGap, "L1 = -L2");
    for (Cx L : {L1, L2}) {
        require_away(std::abs(L - 1.0) >= kLocusGap, "Lambda = 1");
        require_away(std::abs(L + 1.0) >= kLocusGap, "Lambda = -1");
    }
    const Cx one(1.0, 0.0);
    double al = beta1 + beta2 - 0.5;
    auto gt = gauge_tilde_entries<Cx>(Cx(beta1), Cx(beta2), L1, L2, one);
    GaugeEval out;
    out.g_tilde = to_matc(gt);
    out.prefactor = cpow(L1 + L2, 2.0 * al);
    out.g = out.prefactor * out.g_tilde;
    out.dlog_extra = {2.0 * al / (L1 + L2), 2.0 * al / (L1 + L2)};
    return out;
}

ModuliMapT moduli_map_T(Cx L1, Cx L2) {
    require_away(std::abs(L1 + L2) >= kLocusGap, "L1 = -L2");
    ModuliMapT out;
    Cx s = L1 + L2;
    out.z1 = 4.0 * L1 * L2 / (s * s);
    out.z2 = -(L1 * L1 - 1.0) * (L2 * L2 - 1.0) / (s * s);
    // closed-form derivatives of the rational map
    out.jacobian(0, 0) = 4.0 * L2 / (s * s) - 8.0 * L1 * L2 / (s * s * s);
    out.jacobian(0, 1) = 4.0 * L1 / (s * s) - 8.0 * L1 * L2 / (s * s * s);
    out.jacobian(1, 0) = -2.0 * L1 * (L2 * L2 - 1.0) / (s * s) +
                         2.0 * (L1 * L1 - 1.0) * (L2 * L2 - 1.0) / (s * s * s);
    out.jacobian(1, 1) = -2.0 * L2 * (L1 * L1 - 1.0) / (s * s) +
                         2.0 * (L1 * L1 - 1.0) * (L2 * L2 - 1.0) / (s * s * s);
    return out;
}

// ---------------------------------------------------------------------------
// exact path
// ---------------------------------------------------------------------------

namespace {

RatFunc rf_const(const BigQ& q) { return RatFunc::constant(q); }

struct ExactGaugePack {
    RfMat<4> g, dg1, dg2;
};

template <int N>
RfMat<N> rf_zero_mat() {
    RfMat<N> m;
    for (auto& row : m)
        for (auto& e : row) e = RatFunc::constant(BigQ(0));
    return m;
}

template <int N>
RfMat<N> from_mat(const Mat4<RatFunc>& a) {
    RfMat<N> m;
    for (size_t i = 0; i < size_t(N); ++i)
        for (size_t j = 0; j < size_t(N); ++j) m[i][j] = a.m[i][j];
    return m;
}

ExactGaugePack build_gauge_pack(const BigQ& b1, const BigQ& b2) {
    RatFunc L1 = RatFunc::variable("L1"), L2 = RatFunc::variable("L2");
    RatFunc one = RatFunc::constant(BigQ(1));
    auto gt = gauge_tilde_entries<RatFunc>(rf_const(b1), rf_const(b2), L1, L2, one);
    ExactGaugePack pack;
    pack.g = from_mat<4>(gt);
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j) {
            pack.dg1[i][j] = pack.g[i][j].derivative("L1");
            pack.dg2[i][j] = pack.g[i][j].derivative("L2");
        }
    return pack;
}

const ExactGaugePack& cached_gauge_pack(const BigQ& b1, const BigQ& b2) {
    static std::mutex mu;
    static std::map<std::pair<std::string, std::string>, ExactGaugePack> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(b1.get_str(), b2.get_str());
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_gauge_pack(b1, b2)).first;
    return it->second;
}

// continued-fraction rationalization; the betas used in practice are exact
// small rationals stored in a double
BigQ rationalize(double x) {
    long num = 1, den = 0, pnum = 0, pden = 1;
    double v = x;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(v);
        long a = long(fl);
        long nnum = a * num + pnum, nden = a * den + pden;
        pnum = num;
        pden = den;
        num = nnum;
        den = nden;
        if (den != 0 && std::abs(double(num) / double(den) - x) < 1e-14 * std::max(1.0, std::abs(x)))
            break;
        double frac = v - fl;
        if (frac < 1e-15) break;
        v = 1.0 / frac;
        if (std::abs(v) > 4e18) break;
    }
    if (den == 0) throw DomainError("rationalize: failed");
    return bigq(num, den);
}

std::map<std::string, Cx> lpoint(Cx L1, Cx L2) { return {{"L1", L1}, {"L2", L2}}; }

} // namespace

ExactF2Connection omega_f2_exact(const BigQ& beta1, const BigQ& beta2) {
    RatFunc z1 = RatFunc::variable("z1"), z2 = RatFunc::variable("z2");
    RatFunc one = RatFunc::constant(BigQ(1));
    BigQ al = beta1 + beta2 - bigq(1, 2);
    auto E = f2_connection_entries<RatFunc>(rf_const(al), rf_const(beta1), rf_const(beta2), z1, z2,
                                            one);
    return {from_mat<4>(E.d1), from_mat<4>(E.d2)};
}

ExactTensorConnection omega_tensor_exact(const BigQ& beta1, const BigQ& beta2) {
    RatFunc one = RatFunc::constant(BigQ(1));
    auto A = hyp2f1_connection_entries<RatFunc>(rf_const(beta1), rf_const(beta2),
                                                RatFunc::variable("L1"), one);
    auto B = hyp2f1_connection_entries<RatFunc>(rf_const(beta1), rf_const(beta2),
                                                RatFunc::variable("L2"), one);
    Mat4<RatFunc> T1, T2;
    tensor_assembly(A, B, T1, T2, one);
    return {from_mat<4>(T1), from_mat<4>(T2)};
}

RfMat<4> gauge_tilde_exact(const BigQ& beta1, const BigQ& beta2) {
    return cached_gauge_pack(beta1, beta2).g;
}

ExactModuliMapT moduli_map_T_exact() {
    RatFunc L1 = RatFunc::variable("L1"), L2 = RatFunc::variable("L2");
    RatFunc one = RatFunc::constant(BigQ(1));
    RatFunc s2 = (L1 + L2) * (L1 + L2);
    ExactModuliMapT out;
    out.z1 = RatFunc::constant(BigQ(4)) * L1 * L2 / s2;
    out.z2 = RatFunc::constant(BigQ(0)) - (L1 * L1 - one) * (L2 * L2 - one) / s2;
    out.jacobian[0][0] = out.z1.derivative("L1");
    out.jacobian[0][1] = out.z1.derivative("L2");
    out.jacobian[1][0] = out.z2.derivative("L1");
    out.jacobian[1][1] = out.z2.derivative("L2");
    return out;
}

double decomposition_residual(double beta1, double beta2, Cx L1, Cx L2) {
    ConnectionForm tens = omega_tensor_at(beta1, beta2, L1, L2);
    ModuliMapT T = moduli_map_T(L1, L2);
    ConnectionForm f2c = omega_f2_at(beta1, beta2, T.z1, T.z2);
    GaugeEval ge = gauge_at(beta1, beta2, L1, L2);

    // pull back: P_k = M_z1 dz1/dL_k + M_z2 dz2/dL_k
    std::array<MatC, 2> P;
    for (int k = 0; k < 2; ++k)
        P[size_t(k)] = f2c.coeff[0] * T.jacobian(0, k) + f2c.coeff[1] * T.jacobian(1, k);

    // exact derivative of g~, evaluated at the point
    const auto& pack = cached_gauge_pack(rationalize(beta1), rationalize(beta2));
    auto eval_mat = [&](const RfMat<4>& m) {
        MatC out(4, 4);
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = 0; j < 4; ++j) out(int(i), int(j)) = m[i][j].eval(lpoint(L1, L2));
        return out;
    };
    std::array<MatC, 2> dG = {eval_mat(pack.dg1), eval_mat(pack.dg2)};

    MatC gi = ge.g_tilde.inverse();
    double resid = 0.0;
    for (int k = 0; k < 2; ++k) {
        // Omega_tensor = g^{-1} (T* Omega_F2) g - g^{-1} dg, with
        // g^{-1} dg = g~^{-1} dg~ + 2 alpha dlog(L1+L2) I
        MatC rhs = gi * P[size_t(k)] * ge.g_tilde - gi * dG[size_t(k)] -
                   ge.dlog_extra[size_t(k)] * MatC::Identity(4, 4);
        resid = std::max(resid, (tens.coeff[size_t(k)] - rhs).cwiseAbs().maxCoeff());
    }
    return resid;
}

namespace {

bool check_exact_impl(const BigQ& beta1, const BigQ& beta2, RfMat<4> G, std::string* why) {
    ExactTensorConnection tens = omega_tensor_exact(beta1, beta2);
    ExactF2Connection f2c = omega_f2_exact(beta1, beta2);
    ExactModuliMapT T = moduli_map_T_exact();

    std::map<std::string, RatFunc> binding{{"z1", T.z1}, {"z2", T.z2}};
    auto pull = [&](int k) {
        RfMat<4> P;
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = 0; j < 4; ++j)
                P[i][j] = ratfunc::substitute(f2c.dz1[i][j], binding) * T.jacobian[0][size_t(k)] +
                          ratfunc::substitute(f2c.dz2[i][j], binding) * T.jacobian[1][size_t(k)];
        return P;
    };

    RfMat<4> dG1, dG2;
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j) {
            dG1[i][j] = G[i][j].derivative("L1");
            dG2[i][j] = G[i][j].derivative("L2");
        }

    BigQ al = beta1 + beta2 - bigq(1, 2);
    RatFunc s = RatFunc::constant(2 * al) /
                (RatFunc::variable("L1") + RatFunc::variable("L2"));

    auto matmul = [](const RfMat<4>& a, const RfMat<4>& b) {
        RfMat<4> c = rf_zero_mat<4>();
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = 0; j < 4; ++j)
                for (size_t k = 0; k < 4; ++k) c[i][j] = c[i][j] + a[i][k] * b[k][j];
        return c;
    };

    for (int k = 0; k < 2; ++k) {
        const RfMat<4>& E = k == 0 ? tens.dL1 : tens.dL2;
        const RfMat<4>& dG = k == 0 ? dG1 : dG2;
        RfMat<4> P = pull(k);
        RfMat<4> lhs = matmul(G, E);
        RfMat<4> rhs = matmul(P, G);
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = 0; j < 4; ++j) {
                // g~ E - P g~ + dg~ + (2a/(L1+L2)) g~ = 0
                RatFunc resid = lhs[i][j] - rhs[i][j] + dG[i][j] + s * G[i][j];
                if (!resid.is_zero()) {
                    if (why)
                        *why = "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                               ") of d" + (k == 0 ? "L1" : "L2") + " does not vanish";
                    return false;
                }
            }
    }
    return true;
}

} // namespace

bool decomposition_check_exact(const BigQ& beta1, const BigQ& beta2, std::string* why) {
    return check_exact_impl(beta1, beta2, gauge_tilde_exact(beta1, beta2), why);
}

bool decomposition_check_exact_perturbed(const BigQ& beta1, const BigQ& beta2) {
    RfMat<4> G = gauge_tilde_exact(beta1, beta2);
    G[3][1] = G[3][1] * RatFunc::constant(bigq(1001, 1000));
    return check_exact_impl(beta1, beta2, G, nullptr);
}

} // namespace clausen::pfaff
