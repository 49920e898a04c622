#include "clausen/superelliptic.hpp"

#include <cmath>
#include <numeric>

#include "clausen/hypergeometric.hpp"

namespace clausen::se {

using numerics::cpow;
using numerics::gamma;
using numerics::integrate_singular;
using numerics::pi;
using numerics::unit_phase;
using ratfunc::bigq;
using ratfunc::MultiPoly;
using ratfunc::ratfunc_equal;

std::string CurveSignature::str() const {
    return "(" + std::to_string(r) + "," + std::to_string(p) + "," + std::to_string(q) + ")";
}

std::optional<std::string> check_signature(int r, int p, int q) {
    if (r < 1 || p < 1 || q < 1) return "r, p, q must be positive";
    if (!(p < 2 * r && q < 2 * r)) return "0 < p, q < 2r";
    if (!(-r < p - q && p - q < r)) return "-r < p - q < r";
    if (!(r < p + q && p + q < 3 * r)) return "r < p + q < 3r";
    if (std::gcd(p, 2 * r) != 1) return "gcd(p, 2r) = 1";
    if (std::gcd(p + q - r, 2 * r) != 1) return "gcd(p+q-r, 2r) = 1";
    if (std::gcd(p - q + r, 2 * r) != 1) return "gcd(p-q+r, 2r) = 1";
    return std::nullopt;
}

CurveSignature validate_signature(int r, int p, int q) {
    if (auto why = check_signature(r, p, q)) throw ConstraintViolation(*why);
    return {r, p, q};
}

std::vector<CurveSignature> valid_signatures(int max_r) {
    std::vector<CurveSignature> out;
    for (int r = 1; r <= max_r; ++r)
        for (int p = 1; p < 2 * r; ++p)
            for (int q = 1; q < 2 * r; ++q)
                if (!check_signature(r, p, q)) out.push_back({r, p, q});
    return out;
}

int genus(const CurveSignature& sig) {
    validate_signature(sig.r, sig.p, sig.q);
    return 2 * sig.r - 1;
}

BranchConstants branch_constants(const CurveSignature& sig) {
    validate_signature(sig.r, sig.p, sig.q);
    BranchConstants bc;
    bc.beta1 = bigq(sig.q, 2 * sig.r);
    bc.beta2 = bigq(sig.p, 2 * sig.r);
    bc.rho = std::exp(Cx(0.0, pi / sig.r));
    for (int k = 1; k <= 2 * sig.r - 1; ++k) bc.C.push_back((bc.rho - 1.0) / cpow(bc.rho, double(k)));
    bc.phase_beta2 = unit_phase(double(sig.p) / (2.0 * sig.r));
    return bc;
}

std::vector<PuiseuxRecord> puiseux_table(const CurveSignature& sig) {
    validate_signature(sig.r, sig.p, sig.q);
    int r = sig.r, p = sig.p, q = sig.q;
    return {
        {PointLabel::Zero, p + q - r, {2 * r, p + q - r}},
        {PointLabel::One, 2 * r - p, {2 * r, 2 * r - p}},
        {PointLabel::Lambda, 2 * r - p, {2 * r, 2 * r - p}},
        {PointLabel::Infinity, r - p + q, {3 * r - p + q, r - p + q}},
    };
}

// ---------------------------------------------------------------------------
// periods
// ---------------------------------------------------------------------------

namespace {

Cx cycle_constant(const CurveSignature& sig, int k) {
    if (k < 1 || k > 2 * sig.r - 1)
        throw DomainError("period: k must lie in 1..2r-1");
    Cx rho = std::exp(Cx(0.0, pi / sig.r));
    return (rho - 1.0) / cpow(rho, double(k));
}

} // namespace

Cx period_closed(const CurveSignature& sig, Cycle cycle, int k, Cx lambda) {
    validate_signature(sig.r, sig.p, sig.q);
    if (std::abs(lambda) < 1e-12 || std::abs(lambda - 1.0) < 1e-12)
        throw DomainError("period_closed: lambda at a degenerate modulus");
    double b1 = double(sig.q) / (2.0 * sig.r);
    double b2 = double(sig.p) / (2.0 * sig.r);
    Cx Ck = cycle_constant(sig, k);
    if (cycle == Cycle::A) {
        // C_k Gamma(3/2-b1-b2) Gamma(b2) lambda^{1/2-b1} / Gamma(3/2-b1)
        //   * 2F1(3/2-b1-b2, 1-b2; 3/2-b1; lambda)
        Cx g = gamma(Cx(1.5 - b1 - b2)) * gamma(Cx(b2)) / gamma(Cx(1.5 - b1));
        Cx f = hyp::eval_2f1({Cx(1.5 - b1 - b2), Cx(1.0 - b2), Cx(1.5 - b1)}, lambda);
        return Ck * g * cpow(lambda, 0.5 - b1) * f;
    }
    // (-1)^{b2} C_k Gamma(b2)^2 / (Gamma(2 b2) (1-lambda)^{1-2 b2})
    //   * 2F1(b1+b2-1/2, b2; 2 b2; 1-lambda)
    Cx g = gamma(Cx(b2)) * gamma(Cx(b2)) / gamma(Cx(2.0 * b2));
    Cx f = hyp::eval_2f1({Cx(b1 + b2 - 0.5), Cx(b2), Cx(2.0 * b2)}, 1.0 - lambda);
    return unit_phase(b2) * Ck * g * cpow(1.0 - lambda, 2.0 * b2 - 1.0) * f;
}

Cx period_quadrature(const CurveSignature& sig, Cycle cycle, int k, double lambda,
                     const QuadratureSpec& spec) {
    validate_signature(sig.r, sig.p, sig.q);
    if (!(lambda > 0.0 && lambda < 1.0))
        throw DomainError("period_quadrature: lambda must be real in (0,1)");
    double b1 = double(sig.q) / (2.0 * sig.r);
    double b2 = double(sig.p) / (2.0 * sig.r);
    double al = b1 + b2 - 0.5;
    Cx Ck = cycle_constant(sig, k);
    if (cycle == Cycle::A) {
        // C_k Int_0^lambda x^{-al} (1-x)^{b2-1} (lambda-x)^{b2-1} dx;
        // every factor is positive real on (0, lambda)
        auto f = [&](Cx, double u, double um1) -> Cx {
            double x = lambda * u;
            double one_minus_x = (1.0 - lambda) + lambda * um1;
            return std::pow(x, -al) * std::pow(one_minus_x, b2 - 1.0) *
                   std::pow(lambda * um1, b2 - 1.0);
        };
        Cx I = integrate_singular(f, Cx(0.0), Cx(lambda), -al, b2 - 1.0, spec);
        return Ck * I;
    }
    // (-1)^{b2} C_k Int_lambda^1 x^{-al} (1-x)^{b2-1} (x-lambda)^{b2-1} dx;
    // the phase is the proof's branch of (lambda-x)^{b2-1} across the cut
    auto f = [&](Cx, double u, double um1) -> Cx {
        double x = lambda + (1.0 - lambda) * u;
        return std::pow(x, -al) * std::pow((1.0 - lambda) * um1, b2 - 1.0) *
               std::pow((1.0 - lambda) * u, b2 - 1.0);
    };
    Cx I = integrate_singular(f, Cx(lambda), Cx(1.0), b2 - 1.0, b2 - 1.0, spec);
    return unit_phase(b2) * Ck * I;
}

Cx tau_ratio(const CurveSignature& sig, Cx lambda) {
    Cx a = period_closed(sig, Cycle::A, 1, lambda);
    if (std::abs(a) < 1e-300) throw DomainError("tau_ratio: vanishing A-period");
    return period_closed(sig, Cycle::B, 1, lambda) / a;
}

// ---------------------------------------------------------------------------
// SWmodel transformations
// ---------------------------------------------------------------------------

namespace {

RatFunc rv(const char* name) { return RatFunc::variable(name); }
RatFunc rc(long n, long d = 1) { return RatFunc::constant(bigq(n, d)); }

// x^2 + 2(1-2u) x + 1 for RatFunc arguments
RatFunc legendre_quadric(const RatFunc& x, const RatFunc& u) {
    return x * x + (rc(2) - rc(4) * u) * x + rc(1);
}

} // namespace

SwModelMaps swmodel_maps(const CurveSignature& sig) {
    validate_signature(sig.r, sig.p, sig.q);
    SwModelMaps m;
    m.sig = sig;
    const int r = sig.r, p = sig.p, q = sig.q;

    // (TransfoLegendre1): x = z2/L2, u = (1+L2)^2/(4 L2),
    // y = eta2 / L2^{3/2 + p/2r - q/2r}  =>  (y/eta2)^{2r} = L2^{-(3r+p-q)}
    RatFunc z2 = rv("zeta2"), L2 = rv("L2");
    m.legendre1.x = z2 / L2;
    m.legendre1.u = (rc(1) + L2) * (rc(1) + L2) / (rc(4) * L2);
    m.legendre1.y_pow2r_over_eta_pow2r = L2.pow(-(3 * r + p - q));
    m.u_of_L2 = m.legendre1.u;
    m.lambda1_of_L2 = ((rc(1) + L2) / (rc(1) - L2)).pow(2);

    // (TransfoLegendre2): x = (z1-1)(z1-l1)/(z1 (1-l1)), u = l1/(l1-1),
    // y = (z1^2-l1) eta1 / (z1^2 (1-l1)^{3/2+p/2r-q/2r})
    RatFunc z1 = rv("zeta1"), l1 = rv("lambda1");
    m.legendre2.x = (z1 - rc(1)) * (z1 - l1) / (z1 * (rc(1) - l1));
    m.legendre2.u = l1 / (l1 - rc(1));
    m.legendre2.y_pow2r_over_eta_pow2r =
        (z1 * z1 - l1).pow(2 * r) / (z1.pow(4 * r) * (rc(1) - l1).pow(3 * r + p - q));
    return m;
}

bool SwModelMaps::verify_legendre1(std::string* why) const {
    const int r = sig.r, p = sig.p, q = sig.q;
    RatFunc z2 = rv("zeta2"), L2 = rv("L2");
    // eta2^{2r} on SE(L2^2)_{r,2r-p,2r-q}
    RatFunc eta2_2r = z2.pow(3 * r - p - q) * (z2 - rc(1)).pow(p) * (z2 - L2 * L2).pow(p);
    RatFunc lhs = legendre1.y_pow2r_over_eta_pow2r * eta2_2r;
    RatFunc rhs = legendre1.x.pow(3 * r - p - q) * legendre_quadric(legendre1.x, legendre1.u).pow(p);
    if (!ratfunc_equal(lhs, rhs)) {
        if (why) *why = "TransfoLegendre1 identity failed";
        return false;
    }
    return true;
}

bool SwModelMaps::verify_legendre2(std::string* why) const {
    const int r = sig.r, p = sig.p, q = sig.q;
    RatFunc z1 = rv("zeta1"), l1 = rv("lambda1");
    // eta1^{2r} on the intermediate curve (zeta1^2 - l1 exponent may be negative)
    RatFunc eta1_2r = z1.pow(r - p + q) * (z1 - rc(1)).pow(3 * r - p - q) *
                      (z1 - l1).pow(3 * r - p - q) * (z1 * z1 - l1).pow(2 * (p - r));
    RatFunc lhs = legendre2.y_pow2r_over_eta_pow2r * eta1_2r;
    RatFunc rhs = legendre2.x.pow(3 * r - p - q) * legendre_quadric(legendre2.x, legendre2.u).pow(p);
    if (!ratfunc_equal(lhs, rhs)) {
        if (why) *why = "TransfoLegendre2 identity failed";
        return false;
    }
    return true;
}

bool SwModelMaps::verify_legendre3(std::string* why) const {
    if (sig.p != sig.r) throw ConstraintViolation("TransfoLegendre3 requires p = r");
    const int r = sig.r, q = sig.q;
    RatFunc z1 = rv("zeta1"), L2 = rv("L2");
    RatFunc l1 = lambda1_of_L2;

    // zeta2 = -(z1-1)(z1-l1)(1-L2)^2/(4 z1)
    RatFunc zeta2 = rc(0) - (z1 - rc(1)) * (z1 - l1) * (rc(1) - L2).pow(2) / (rc(4) * z1);
    // eta2^{2r} = (-1)^q (z1^2-l1)^{2r} (1-L2)^{8r-2q} eta1^{2r} / (2^{8r-2q} z1^{4r})
    RatFunc eta1_2r = z1.pow(q) * (z1 - rc(1)).pow(2 * r - q) * (z1 - l1).pow(2 * r - q);
    RatFunc sign = rc(q % 2 == 0 ? 1 : -1);
    RatFunc eta2_2r = sign * (z1 * z1 - l1).pow(2 * r) * (rc(1) - L2).pow(8 * r - 2 * q) *
                      eta1_2r / (rc(2).pow(8 * r - 2 * q) * z1.pow(4 * r));
    // target: SE(L2^2)_{r,r,2r-q}: eta2^{2r} = zeta2^{2r-q} (zeta2-1)^r (zeta2-L2^2)^r
    RatFunc rhs = zeta2.pow(2 * r - q) * (zeta2 - rc(1)).pow(r) * (zeta2 - L2 * L2).pow(r);
    if (!ratfunc_equal(eta2_2r, rhs)) {
        if (why) *why = "TransfoLegendre3 identity failed";
        return false;
    }
    return true;
}

bool SwModelMaps::verify_correspondence(std::string* why) const {
    // the identity only involves (r, q); it lives on the p = r route but is
    // checked as plain algebra for any signature
    const int r = sig.r, q = sig.q;
    RatFunc z1 = rv("zeta1"), L2 = rv("L2");
    RatFunc l1 = lambda1_of_L2;
    RatFunc zeta2 = rc(0) - (z1 - rc(1)) * (z1 - l1) * (rc(1) - L2).pow(2) / (rc(4) * z1);
    RatFunc sign = rc(q % 2 == 0 ? 1 : -1);
    RatFunc lhs = sign * rc(4).pow(q - 4 * r) * z1.pow(q) * (z1 - rc(1)).pow(2 * r - q) *
                  (z1 - l1).pow(2 * r - q) * (z1 * z1 - l1).pow(2 * r);
    RatFunc rhs = z1.pow(4 * r) * zeta2.pow(2 * r - q) * (zeta2 - rc(1)).pow(r) *
                  (zeta2 - L2 * L2).pow(r) * (L2 - rc(1)).pow(2 * q - 8 * r);
    if (!ratfunc_equal(lhs, rhs)) {
        if (why) *why = "(8r-q,4r-q) correspondence identity failed";
        return false;
    }
    return true;
}

} // namespace clausen::se
