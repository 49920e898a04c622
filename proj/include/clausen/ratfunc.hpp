#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "clausen/errors.hpp"

namespace clausen::ratfunc {

// Arbitrary-precision rational. mpq_class keeps den > 0 and gcd(num,den) = 1
// after canonicalization; all arithmetic results are canonical.
using BigQ = mpq_class;

BigQ bigq(long num, long den = 1);
BigQ bigq_from_string(const std::string& s); // "p/q" or "p"

// Graded-lexicographic order on exponent vectors (total degree first, then
// lex). This is the canonical term order used for serialization, leading
// terms and exact division.
struct GrlexLess {
    bool operator()(const std::vector<int32_t>& a, const std::vector<int32_t>& b) const;
};

// Sparse multivariate polynomial over BigQ. Variables are kept sorted by
// name; no zero coefficients are stored. Operations on polynomials with
// different variable sets merge the sets by name.
class MultiPoly {
  public:
    using Exponents = std::vector<int32_t>;
    using TermMap = std::map<Exponents, BigQ, GrlexLess>;

    MultiPoly() = default; // zero polynomial
    static MultiPoly constant(const BigQ& c);
    static MultiPoly constant(long c) { return constant(BigQ(c)); }
    static MultiPoly variable(const std::string& name);

    const std::vector<std::string>& variables() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    BigQ constant_value() const; // 0 for the zero polynomial
    std::size_t term_count() const { return terms_.size(); }
    int degree(const std::string& var) const;
    int total_degree() const;

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
    MultiPoly& operator*=(const BigQ& c);
    MultiPoly pow(unsigned e) const;
    friend bool operator==(const MultiPoly& a, const MultiPoly& b);

    MultiPoly derivative(const std::string& var) const;

    // exact division; nullopt when the divisor does not divide exactly
    std::optional<MultiPoly> divide_exact(const MultiPoly& divisor) const;

    // rational content (gcd of coefficient numerators / lcm of denominators,
    // signed by the grlex-leading coefficient); zero polynomial -> 0
    BigQ content() const;
    // divide by content: primitive integer coefficients, leading coeff > 0
    MultiPoly primitive_part() const;

    std::complex<double> eval(const std::map<std::string, std::complex<double>>& point) const;
    BigQ eval_exact(const std::map<std::string, BigQ>& point) const;

    // canonical serialization, grlex-descending terms
    std::string to_string() const;

    // deterministic total order (for use as a container key)
    static int compare(const MultiPoly& a, const MultiPoly& b);

    // guard against runaway expansions (term count per polynomial)
    static void set_term_guard(std::size_t n);
    static std::size_t term_guard();

  private:
    std::vector<std::string> vars_; // sorted, unique
    TermMap terms_;

    void insert_term(const Exponents& e, const BigQ& c);
    static void align(const MultiPoly& a, const MultiPoly& b, MultiPoly& a2, MultiPoly& b2);
    MultiPoly remap(const std::vector<std::string>& newvars) const;
    friend class RatFunc;
};

// Rational function num/den. Normalized by the rational content of the
// denominator only (den primitive with positive leading coefficient); no
// multivariate gcd is ever computed, equality is by cross-multiplication.
class RatFunc {
  public:
    RatFunc() : num_(), den_(MultiPoly::constant(1)) {}
    RatFunc(MultiPoly num, MultiPoly den);
    explicit RatFunc(const MultiPoly& num) : RatFunc(num, MultiPoly::constant(1)) {}
    static RatFunc constant(const BigQ& c);
    static RatFunc variable(const std::string& name);

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b); // DivisionByZeroPoly
    RatFunc pow(int e) const; // negative allowed, inverts

    RatFunc derivative(const std::string& var) const;
    std::complex<double> eval(const std::map<std::string, std::complex<double>>& point) const;

    std::string to_string() const;

  private:
    MultiPoly num_, den_;
    void normalize();
};

// true iff a.num*b.den - b.num*a.den == 0
bool ratfunc_equal(const RatFunc& a, const RatFunc& b);

// exact composition; variables absent from `bindings` are left in place
RatFunc substitute(const RatFunc& f, const std::map<std::string, RatFunc>& bindings);

// ---------------------------------------------------------------------------
// Product-form rational expressions:  coeff * prod base_i ^ e_i.
//
// The fibration and base-change certificates are identities between products
// of powers of smallish polynomials; keeping the product form and factoring
// every sum back through a dictionary of expected factors keeps the exact
// verification far below the term-count guard. equals() cancels matching
// bases and cross-multiplies whatever residue is left.
// ---------------------------------------------------------------------------

class Factored {
  public:
    Factored() : coeff_(1) {} // the constant 1
    static Factored from(const MultiPoly& p, int power = 1);
    static Factored from(const RatFunc& f);
    static Factored constant(const BigQ& c);

    const BigQ& coeff() const { return coeff_; }
    const std::vector<std::pair<MultiPoly, int>>& factors() const { return factors_; }

    Factored& operator*=(const Factored& o);
    friend Factored operator*(Factored a, const Factored& b) { return a *= b; }
    Factored pow(int e) const;

    // num/den of the fully expanded value (den has positive exponents pulled
    // together). Expansion respects the term guard.
    RatFunc expand() const;

    // numeric evaluation factor by factor (well-conditioned: no cancellation
    // from expanding near-vanishing products)
    std::complex<double> eval(const std::map<std::string, std::complex<double>>& point) const;

    // a + b as a Factored: common factors are pulled out, the small residual
    // sum is expanded and then re-factored through `dict`
    static Factored add(const Factored& a, const Factored& b,
                        const std::vector<MultiPoly>& dict);

    // repeatedly divide every base by dictionary entries (used after add)
    void refactor(const std::vector<MultiPoly>& dict);

    // this / other reduced to lowest product form; identity holds iff the
    // residual difference is the zero polynomial
    MultiPoly residual_difference(const Factored& other) const;
    bool equals(const Factored& other) const;

    std::string to_string() const;

  private:
    BigQ coeff_;
    std::vector<std::pair<MultiPoly, int>> factors_; // primitive bases, distinct
    void push(const MultiPoly& base, int power);
};

} // namespace clausen::ratfunc
