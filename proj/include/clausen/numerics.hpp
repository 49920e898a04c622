#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "clausen/errors.hpp"

namespace clausen::numerics {

using Cx = std::complex<double>;
using MatC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;

inline constexpr double pi = 3.141592653589793238462643383279502884;

// Principal-branch complex power: exp(a log z) with the log cut on the
// negative real axis (arg in (-pi, pi]).  All fractional powers in this
// project go through here so the branch convention is in one place.
Cx cpow(Cx z, Cx a);
Cx cpow(Cx z, double a);

// (-1)^s on the principal branch, i.e. exp(i pi s).
Cx unit_phase(double s);

bool is_finite(Cx z);

// Complex Gamma. Lanczos rational approximation (g = 607/128, 15 terms),
// reflection formula for Re z < 1/2. Relative error <= ~1e-14 for |z| <= 20.
// Throws PoleError within 1e-12 of a non-positive integer.
Cx gamma(Cx z);

// ---------------------------------------------------------------------------
// tanh-sinh quadrature over a straight segment [a,b] in the complex plane.
//
// The integrand is given in the normalized coordinate u in (0,1) of the
// segment x = a + (b-a)u. It receives (x, u, 1-u); the distances to the
// endpoints are passed separately because near the endpoints u and 1-u are
// computed to full relative accuracy (down to ~1e-280), which is what makes
// endpoint singularities x^{e} with e > -1 integrable at machine precision.
// ---------------------------------------------------------------------------

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_level = 12;
};

void validate(const QuadratureSpec& spec); // throws DomainError

using SegmentIntegrand = std::function<Cx(Cx x, double u, double one_minus_u)>;

// exp_a / exp_b declare the endpoint behavior |u|^{exp_a}, |1-u|^{exp_b};
// both must be > -1 or the integral cannot converge (DomainError).
// Throws NoConvergence when level doubling stops contracting.
Cx integrate_singular(const SegmentIntegrand& f, Cx a, Cx b,
                      double exp_a, double exp_b, const QuadratureSpec& spec);

// ---------------------------------------------------------------------------
// Piecewise-linear paths through one or two complex coordinates, with a
// declared singular locus. A locus entry is an affine-linear condition
// sum_i coeff_i z_i = rhs; a singular *point* in one coordinate is the
// special case coeff = (1). Distances are Euclidean in C^d = R^{2d}
// normalized by |coeff|, so "z1 + z2 = 1" measures |z1+z2-1|/sqrt(2).
// ---------------------------------------------------------------------------

struct SingularLine {
    std::vector<Cx> coeff;
    Cx rhs;
};

struct PathSpec {
    std::vector<std::vector<Cx>> waypoints; // each entry: d coordinates
    double clearance = 1e-6;
    std::vector<SingularLine> locus;
};

// throws DomainError for malformed paths, SingularProximity when a segment
// enters the clearance tube
void validate(const PathSpec& path);

// minimal distance from the segment [p,q] (in C^d) to the line
double segment_line_distance(const std::vector<Cx>& p, const std::vector<Cx>& q,
                             const SingularLine& line);

// ---------------------------------------------------------------------------
// Linear ODE transport dY = (sum_i M_i(z) dz_i) Y along a path.
// rhs(z) returns the d coefficient matrices at the point z.
// Dormand-Prince 5(4) with a PI step controller; local error is kept at
// `tol` per unit arc length (default 1e-11 per the module contract).
// ---------------------------------------------------------------------------

using ConnectionRhs = std::function<std::vector<MatC>(const std::vector<Cx>& z)>;

VecC ode_integrate(const ConnectionRhs& rhs, const PathSpec& path, VecC y0,
                   double tol = 1e-11);

} // namespace clausen::numerics
