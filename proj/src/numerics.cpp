#include "clausen/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace clausen::numerics {

Cx cpow(Cx z, Cx a) {
    if (z == Cx(0.0)) {
        if (a == Cx(0.0)) return Cx(1.0);
        if (a.real() > 0.0) return Cx(0.0);
        throw DomainError("cpow: 0 raised to non-positive power");
    }
    return std::exp(a * std::log(z));
}

Cx cpow(Cx z, double a) { return cpow(z, Cx(a, 0.0)); }

Cx unit_phase(double s) { return std::exp(Cx(0.0, pi * s)); }

bool is_finite(Cx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// ---------------------------------------------------------------------------
// Gamma
// ---------------------------------------------------------------------------

namespace {

// Lanczos coefficients for g = 607/128, n = 15 (Godfrey's set).
constexpr double kLanczosG = 4.7421875; // 607/128
constexpr double kLanczos[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

Cx gamma_right_half(Cx z) {
    // valid for Re z >= 0.5
    Cx sum(kLanczos[0], 0.0);
    for (int k = 1; k < 15; ++k) sum += kLanczos[k] / (z - 1.0 + double(k));
    Cx t = z + (kLanczosG - 0.5);
    return std::sqrt(2.0 * pi) * std::exp((z - 0.5) * std::log(t) - t) * sum;
}

} // namespace

Cx gamma(Cx z) {
    if (!is_finite(z)) throw DomainError("gamma: non-finite argument");
    double rz = std::round(z.real());
    if (rz <= 0.0 && std::abs(z - Cx(rz, 0.0)) < 1e-12)
        throw PoleError("gamma: argument within 1e-12 of a non-positive integer");
    Cx g;
    if (z.real() >= 0.5) {
        g = gamma_right_half(z);
    } else {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        g = pi / (std::sin(pi * z) * gamma_right_half(1.0 - z));
    }
    if (!is_finite(g)) throw DomainError("gamma: overflow/non-finite result");
    return g;
}

// ---------------------------------------------------------------------------
// tanh-sinh quadrature
// ---------------------------------------------------------------------------

void validate(const QuadratureSpec& spec) {
    if (!(spec.abs_tol > 0.0 && spec.abs_tol < 1.0))
        throw DomainError("QuadratureSpec: abs_tol must be in (0,1)");
    if (!(spec.rel_tol > 0.0 && spec.rel_tol < 1.0))
        throw DomainError("QuadratureSpec: rel_tol must be in (0,1)");
    if (spec.max_level < 3 || spec.max_level > 15)
        throw DomainError("QuadratureSpec: max_level must be in [3,15]");
}

namespace {

struct TsNode {
    double u;    // node in (0,1), accurate near 0
    double um1;  // 1-u, accurate near 1
    double w;    // du/dt at the node
};

// u(t) = 1/(1+exp(-pi sinh t)), symmetric under t -> -t (u <-> 1-u);
// weight du/dt = pi cosh(t) u (1-u).
TsNode ts_node(double t) {
    double s = pi * std::sinh(t);
    double u = 1.0 / (1.0 + std::exp(-s));
    double um1 = 1.0 / (1.0 + std::exp(s));
    double w = pi * std::cosh(t) * u * um1;
    return {u, um1, w};
}

constexpr double kTsTmax = 6.6; // weights underflow well before this for e > -1

} // namespace

Cx integrate_singular(const SegmentIntegrand& f, Cx a, Cx b,
                      double exp_a, double exp_b, const QuadratureSpec& spec) {
    validate(spec);
    if (!(exp_a > -1.0 && exp_b > -1.0))
        throw DomainError("integrate_singular: endpoint exponents must be > -1");
    if (a == b) return Cx(0.0);

    const Cx jac = b - a;
    auto eval = [&](const TsNode& n) -> Cx {
        // beyond u ~ 1e-300 the weight has underflowed; integrable-singular
        // integrands contribute nothing there
        if (n.w == 0.0 || n.u == 0.0 || n.um1 == 0.0) return Cx(0.0);
        Cx x = a + jac * n.u;
        Cx v = f(x, n.u, n.um1);
        if (!is_finite(v)) return Cx(0.0);
        return v * n.w;
    };

    // level 0: h = 1
    double h = 1.0;
    Cx sum = eval(ts_node(0.0));
    for (int j = 1; j * h <= kTsTmax; ++j) {
        sum += eval(ts_node(j * h));
        sum += eval(ts_node(-j * h));
    }
    Cx prev = sum * h;

    Cx result = prev;
    double err = std::abs(prev);
    for (int level = 1; level <= spec.max_level; ++level) {
        h *= 0.5;
        // new abscissas are the odd multiples of h
        for (double t = h; t <= kTsTmax; t += 2.0 * h) {
            sum += eval(ts_node(t));
            sum += eval(ts_node(-t));
        }
        result = sum * h;
        err = std::abs(result - prev);
        double goal = std::max(spec.abs_tol, spec.rel_tol * std::abs(result));
        if (level >= 3 && err <= goal) return result * jac;
        prev = result;
    }
    double goal = std::max(spec.abs_tol, spec.rel_tol * std::abs(result));
    if (err <= goal) return result * jac;
    throw NoConvergence("integrate_singular: no contraction by max_level");
}

// ---------------------------------------------------------------------------
// paths
// ---------------------------------------------------------------------------

double segment_line_distance(const std::vector<Cx>& p, const std::vector<Cx>& q,
                             const SingularLine& line) {
    // L(z) = sum coeff_i z_i - rhs is affine-linear, so along the segment
    // L(s) = A + B s; the distance is min_s |A + B s| / |coeff|.
    Cx A = -line.rhs, B = 0.0;
    double nrm2 = 0.0;
    for (size_t i = 0; i < line.coeff.size(); ++i) {
        A += line.coeff[i] * p[i];
        B += line.coeff[i] * (q[i] - p[i]);
        nrm2 += std::norm(line.coeff[i]);
    }
    double s = 0.0;
    if (std::norm(B) > 0.0)
        s = std::clamp(-(A.real() * B.real() + A.imag() * B.imag()) / std::norm(B), 0.0, 1.0);
    return std::abs(A + B * s) / std::sqrt(nrm2);
}

void validate(const PathSpec& path) {
    if (path.waypoints.size() < 2) throw DomainError("PathSpec: need at least two waypoints");
    if (!(path.clearance > 0.0)) throw DomainError("PathSpec: clearance must be > 0");
    size_t dim = path.waypoints.front().size();
    for (const auto& w : path.waypoints)
        if (w.size() != dim) throw DomainError("PathSpec: inconsistent dimensions");
    for (size_t i = 0; i + 1 < path.waypoints.size(); ++i) {
        const auto& p = path.waypoints[i];
        const auto& q = path.waypoints[i + 1];
        double len2 = 0.0;
        for (size_t c = 0; c < dim; ++c) len2 += std::norm(q[c] - p[c]);
        if (len2 == 0.0) throw DomainError("PathSpec: consecutive waypoints coincide");
        for (const auto& line : path.locus) {
            if (line.coeff.size() != dim) throw DomainError("PathSpec: locus dimension mismatch");
            if (segment_line_distance(p, q, line) < path.clearance)
                throw SingularProximity("PathSpec: segment violates clearance");
        }
    }
}

// ---------------------------------------------------------------------------
// ODE transport, Dormand-Prince 5(4)
// ---------------------------------------------------------------------------

namespace {

// Butcher tableau of DOPRI5
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// embedded 4th-order weights
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                 e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

} // namespace

VecC ode_integrate(const ConnectionRhs& rhs, const PathSpec& path, VecC y0, double tol) {
    validate(path);
    const size_t dim = path.waypoints.front().size();

    VecC y = std::move(y0);
    for (size_t seg = 0; seg + 1 < path.waypoints.size(); ++seg) {
        const auto& p = path.waypoints[seg];
        const auto& q = path.waypoints[seg + 1];
        std::vector<Cx> dz(dim);
        double arclen = 0.0;
        for (size_t c = 0; c < dim; ++c) {
            dz[c] = q[c] - p[c];
            arclen += std::norm(dz[c]);
        }
        arclen = std::sqrt(arclen);

        auto deriv = [&](double s, const VecC& v) -> VecC {
            std::vector<Cx> z(dim);
            for (size_t c = 0; c < dim; ++c) z[c] = p[c] + dz[c] * s;
            std::vector<MatC> M = rhs(z);
            VecC d = VecC::Zero(v.size());
            for (size_t c = 0; c < dim; ++c) d += dz[c] * (M[c] * v);
            return d;
        };

        double s = 0.0, h = 0.1;
        double errprev = 1.0;
        VecC k1 = deriv(s, y);
        while (s < 1.0) {
            h = std::min(h, 1.0 - s);
            VecC k2 = deriv(s + c2 * h, y + h * (a21 * k1));
            VecC k3 = deriv(s + c3 * h, y + h * (a31 * k1 + a32 * k2));
            VecC k4 = deriv(s + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
            VecC k5 = deriv(s + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            VecC k6 = deriv(s + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            VecC ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            VecC k7 = deriv(s + h, ynew);
            VecC y4 = y + h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

            // error per unit arc length, relative to solution scale
            double scale = std::max(1.0, std::max(y.norm(), ynew.norm()));
            double err = (ynew - y4).norm() / (tol * arclen * std::max(h, 1e-30) * scale);

            if (err <= 1.0) {
                s += h;
                y = std::move(ynew);
                k1 = std::move(k7); // FSAL
                double fac = 0.9 * std::pow(err + 1e-30, -0.17) * std::pow(errprev, 0.08);
                h *= std::clamp(fac, 0.2, 5.0);
                errprev = std::max(err, 1e-4);
            } else {
                h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            }
            if (h < 1e-13) throw StepUnderflow("ode_integrate: step size underflow");
        }
    }
    return y;
}

} // namespace clausen::numerics
