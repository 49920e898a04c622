#include <doctest.h>

#include <numeric>

#include "clausen/hypergeometric.hpp"
#include "clausen/superelliptic.hpp"

using namespace clausen;
using namespace clausen::se;
using numerics::Cx;
using numerics::pi;

namespace {

double agm_2f1(double m) {
    double a = 1.0, g = std::sqrt(1.0 - m);
    for (int i = 0; i < 60 && std::abs(a - g) > 1e-17; ++i) {
        double an = 0.5 * (a + g);
        g = std::sqrt(a * g);
        a = an;
    }
    return 1.0 / a;
}

} // namespace

TEST_CASE("signature validation") {
    CHECK_NOTHROW(validate_signature(1, 1, 1));
    CHECK_NOTHROW(validate_signature(2, 1, 2));
    CHECK_NOTHROW(validate_signature(3, 5, 3));

    auto why = check_signature(3, 2, 3);
    REQUIRE(why.has_value());
    CHECK(*why == "gcd(p, 2r) = 1");
    CHECK_THROWS_AS(validate_signature(3, 2, 3), ConstraintViolation);

    auto s = validate_signature(4, 3, 6);
    CHECK(s.q == 3 * s.r - 2 * s.p); // the J5/J8 subfamily

    CHECK(check_signature(2, 1, 1).has_value());  // p+q = r excluded
    CHECK(check_signature(2, 3, 1).has_value());  // p-q = r excluded
    CHECK(check_signature(1, 1, 2).has_value());

    // the enumeration used by the acceptance suite
    auto sigs = valid_signatures(4);
    CHECK(sigs.size() == 13);
    CHECK(valid_signatures(1).size() == 1);
    CHECK(valid_signatures(2).size() == 3);
}

TEST_CASE("genus is 2r - 1") {
    CHECK(genus({1, 1, 1}) == 1);
    CHECK(genus({3, 5, 3}) == 5);
    CHECK(genus({4, 3, 6}) == 7);
}

TEST_CASE("branch constants") {
    auto bc = branch_constants({2, 1, 2});
    CHECK(bc.beta1 == ratfunc::bigq(1, 2));
    CHECK(bc.beta2 == ratfunc::bigq(1, 4));
    REQUIRE(bc.C.size() == 3);
    for (size_t k = 0; k < bc.C.size(); ++k) {
        Cx expect = (bc.rho - 1.0) / numerics::cpow(bc.rho, double(k + 1));
        CHECK(std::abs(bc.C[k] - expect) < 1e-15);
    }
    CHECK(std::abs(bc.phase_beta2 - std::exp(Cx(0, pi / 4.0))) < 1e-15);
}

TEST_CASE("Puiseux table") {
    auto t1 = puiseux_table({1, 1, 1});
    REQUIRE(t1.size() == 4);
    for (const auto& rec : t1) CHECK(rec.multiplicity == 1); // smooth model

    auto t2 = puiseux_table({2, 1, 2});
    CHECK(t2[0].multiplicity == 1);
    CHECK(t2[1].multiplicity == 3);
    CHECK(t2[2].multiplicity == 3);
    CHECK(t2[3].multiplicity == 3);
    CHECK(t2[0].coefficients == std::pair{4, 1});
    CHECK(t2[3].coefficients == std::pair{7, 3});

    auto t3 = puiseux_table({3, 5, 3});
    CHECK(t3[0].multiplicity == 5);
    CHECK(t3[1].multiplicity == 1);
    CHECK(t3[2].multiplicity == 1);
    CHECK(t3[3].multiplicity == 1);

    // coprimality of the local (a, b) pairs
    for (const auto& sig : valid_signatures(4))
        for (const auto& rec : puiseux_table(sig))
            CHECK(std::gcd(rec.coefficients.first, rec.coefficients.second) == 1);
}

TEST_CASE("elliptic periods recover the classical values") {
    CurveSignature e{1, 1, 1};
    // A-period: 2 pi 2F1(1/2,1/2;1;lambda), via the AGM oracle
    Cx a = period_closed(e, Cycle::A, 1, Cx(0.3));
    CHECK(std::abs(a - Cx(2.0 * pi * agm_2f1(0.3))) < 1e-12);
    // B-period: 2 pi i 2F1(1/2,1/2;1;1-lambda)
    Cx b = period_closed(e, Cycle::B, 1, Cx(0.3));
    CHECK(std::abs(b - Cx(0.0, 2.0 * pi * agm_2f1(0.7))) < 1e-12);

    numerics::QuadratureSpec spec{1e-12, 1e-12, 12};
    Cx aq = period_quadrature(e, Cycle::A, 1, 0.5, spec);
    CHECK(std::abs(aq - Cx(2.0 * pi * agm_2f1(0.5))) < 1e-10);
    CHECK(2.0 * pi * agm_2f1(0.5) == doctest::Approx(7.4162987092054875).epsilon(1e-12));
}

TEST_CASE("closed form agrees with the quadrature oracle") {
    numerics::QuadratureSpec spec{1e-11, 1e-11, 12};
    for (const CurveSignature& sig :
         {CurveSignature{2, 1, 2}, CurveSignature{3, 5, 3}, CurveSignature{4, 3, 6}}) {
        for (double lam : {0.2, 0.5}) {
            for (auto cyc : {Cycle::A, Cycle::B}) {
                Cx c = period_closed(sig, cyc, 1, Cx(lam));
                Cx q = period_quadrature(sig, cyc, 1, lam, spec);
                CHECK(std::abs(c - q) < 1e-8 * std::max(1.0, std::abs(c)));
            }
        }
    }
}

TEST_CASE("phase ladder between cycle indices") {
    CurveSignature sig{3, 5, 3};
    Cx rho = std::exp(Cx(0, pi / sig.r));
    for (int k = 1; k < 2 * sig.r - 1; ++k) {
        Cx a = period_closed(sig, Cycle::A, k, Cx(0.4));
        Cx b = period_closed(sig, Cycle::A, k + 1, Cx(0.4));
        CHECK(std::abs(b / a - 1.0 / rho) < 1e-12);
    }
    numerics::QuadratureSpec spec{1e-11, 1e-11, 12};
    Cx q1 = period_quadrature({2, 1, 2}, Cycle::A, 1, 0.5, spec);
    Cx q2 = period_quadrature({2, 1, 2}, Cycle::A, 2, 0.5, spec);
    Cx rho2 = std::exp(Cx(0, pi / 2.0));
    CHECK(std::abs(q2 / q1 - 1.0 / rho2) < 1e-12);
}

TEST_CASE("cycle-constant identity of the two-cycle matching lemma") {
    // C^{(j+r+1-k)} C^{(i+k-1)} = -C^{(i)} C^{(j)}
    for (int r = 2; r <= 5; ++r) {
        Cx rho = std::exp(Cx(0, pi / r));
        auto C = [&](int k) { return (rho - 1.0) / numerics::cpow(rho, double(k)); };
        for (int i = 1; i <= r - 1; ++i)
            for (int j = 1; j <= r - 1; ++j)
                for (int k = 1; k <= r - 1; ++k)
                    CHECK(std::abs(C(j + r + 1 - k) * C(i + k - 1) + C(i) * C(j)) < 1e-13);
    }
}

TEST_CASE("beta-swap duality is the same formula at the swapped signature") {
    // period2 at (r, 2r-p, 2r-q) equals the beta -> 1-beta substitution; the
    // code evaluates one formula, so this is a code-path assertion comparing
    // it to the hand-built substituted expression
    CurveSignature sig{2, 1, 2};
    CurveSignature sw = sig.swapped();
    double b1 = double(sig.q) / (2.0 * sig.r), b2 = double(sig.p) / (2.0 * sig.r);
    Cx lam(0.35);
    Cx got = period_closed(sw, Cycle::A, 1, lam);
    // period2-A with (b1,b2) -> (1-b1,1-b2):
    Cx rho = std::exp(Cx(0, pi / sig.r));
    Cx C1 = (rho - 1.0) / rho;
    Cx expect = C1 * numerics::gamma(Cx(b1 + b2 - 0.5)) * numerics::gamma(Cx(1.0 - b2)) *
                numerics::cpow(lam, b1 - 0.5) / numerics::gamma(Cx(b1 + 0.5)) *
                hyp::eval_2f1({Cx(b1 + b2 - 0.5), Cx(b2), Cx(b1 + 0.5)}, lam);
    CHECK(std::abs(got - expect) < 1e-13 * std::abs(expect));
}

TEST_CASE("tau ratio") {
    // lambda = 1/2 is the complementary-modulus symmetry point: tau purely imaginary
    Cx t = tau_ratio({1, 1, 1}, Cx(0.5));
    CHECK(std::abs(t.real()) < 1e-10 * std::abs(t));
    CHECK(t.imag() > 0.0);

    // k-independence at (2,1,2)
    CurveSignature sig{2, 1, 2};
    Cx base = period_closed(sig, Cycle::B, 1, Cx(0.3)) / period_closed(sig, Cycle::A, 1, Cx(0.3));
    for (int k = 2; k <= 3; ++k) {
        Cx tk = period_closed(sig, Cycle::B, k, Cx(0.3)) / period_closed(sig, Cycle::A, k, Cx(0.3));
        CHECK(std::abs(tk - base) < 1e-10);
    }

    // elliptic case against the AGM: tau = i K'(Lambda)/K(Lambda), lambda = Lambda^2
    Cx t2 = tau_ratio({1, 1, 1}, Cx(0.1));
    double ratio = agm_2f1(0.9) / agm_2f1(0.1);
    CHECK(std::abs(t2 - Cx(0.0, ratio)) < 1e-9);
}

TEST_CASE("SWmodel transformation bundle") {
    auto m = swmodel_maps({1, 1, 1});
    std::map<std::string, Cx> pt{{"L2", Cx(1.0 / 3)}};
    CHECK(std::abs(m.lambda1_of_L2.eval(pt) - Cx(4.0)) < 1e-15);
    CHECK(std::abs(m.u_of_L2.eval(pt) - Cx(4.0 / 3)) < 1e-15);

    CHECK(m.verify_legendre1());
    CHECK(m.verify_legendre2());
    CHECK(m.verify_legendre3());
    CHECK(m.verify_correspondence());

    for (const CurveSignature& sig : {CurveSignature{2, 1, 2}, CurveSignature{3, 5, 3},
                                      CurveSignature{4, 3, 6}}) {
        auto mm = swmodel_maps(sig);
        CHECK(mm.verify_legendre1());
        CHECK(mm.verify_legendre2());
        CHECK(mm.verify_correspondence());
        CHECK_THROWS_AS(mm.verify_legendre3(), ConstraintViolation); // p != r
    }
}
