#include "clausen/ratfunc.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <sstream>

namespace clausen::ratfunc {

namespace {
std::atomic<std::size_t> g_term_guard{2'000'000};

void check_guard(std::size_t n) {
    if (n > g_term_guard.load())
        throw Error("MultiPoly: term count " + std::to_string(n) +
                    " exceeds guard " + std::to_string(g_term_guard.load()));
}
} // namespace

void MultiPoly::set_term_guard(std::size_t n) { g_term_guard.store(n); }
std::size_t MultiPoly::term_guard() { return g_term_guard.load(); }

BigQ bigq(long num, long den) {
    if (den == 0) throw DomainError("bigq: zero denominator");
    BigQ q(num, den);
    q.canonicalize();
    return q;
}

BigQ bigq_from_string(const std::string& s) {
    BigQ q;
    if (q.set_str(s, 10) != 0) throw DomainError("bigq_from_string: cannot parse '" + s + "'");
    q.canonicalize();
    return q;
}

bool GrlexLess::operator()(const std::vector<int32_t>& a, const std::vector<int32_t>& b) const {
    long da = std::accumulate(a.begin(), a.end(), 0L);
    long db = std::accumulate(b.begin(), b.end(), 0L);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

MultiPoly MultiPoly::constant(const BigQ& c) {
    MultiPoly p;
    if (c != 0) p.terms_.emplace(Exponents{}, c);
    return p;
}

MultiPoly MultiPoly::variable(const std::string& name) {
    MultiPoly p;
    p.vars_ = {name};
    p.terms_.emplace(Exponents{1}, BigQ(1));
    return p;
}

bool MultiPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int32_t x) { return x == 0; });
}

BigQ MultiPoly::constant_value() const {
    if (terms_.empty()) return BigQ(0);
    if (!is_constant()) throw Error("MultiPoly: not a constant");
    return terms_.begin()->second;
}

int MultiPoly::degree(const std::string& var) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) return 0;
    size_t idx = size_t(it - vars_.begin());
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, int(e[idx]));
    return d;
}

int MultiPoly::total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_)
        d = std::max(d, int(std::accumulate(e.begin(), e.end(), 0L)));
    return d;
}

void MultiPoly::insert_term(const Exponents& e, const BigQ& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MultiPoly MultiPoly::remap(const std::vector<std::string>& newvars) const {
    MultiPoly out;
    out.vars_ = newvars;
    std::vector<int> pos(vars_.size());
    for (size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::find(newvars.begin(), newvars.end(), vars_[i]);
        pos[i] = int(it - newvars.begin());
    }
    for (const auto& [e, c] : terms_) {
        Exponents ne(newvars.size(), 0);
        for (size_t i = 0; i < vars_.size(); ++i) ne[size_t(pos[i])] = e[i];
        out.terms_.emplace(std::move(ne), c);
    }
    return out;
}

void MultiPoly::align(const MultiPoly& a, const MultiPoly& b, MultiPoly& a2, MultiPoly& b2) {
    if (a.vars_ == b.vars_) {
        a2 = a;
        b2 = b;
        return;
    }
    std::vector<std::string> merged;
    std::set_union(a.vars_.begin(), a.vars_.end(), b.vars_.begin(), b.vars_.end(),
                   std::back_inserter(merged));
    a2 = a.remap(merged);
    b2 = b.remap(merged);
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly out(*this);
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    if (vars_ != o.vars_) {
        MultiPoly a2, b2;
        align(*this, o, a2, b2);
        a2 += b2;
        return *this = std::move(a2);
    }
    for (const auto& [e, c] : o.terms_) insert_term(e, c);
    check_guard(terms_.size());
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    if (vars_ != o.vars_) {
        MultiPoly a2, b2;
        align(*this, o, a2, b2);
        a2 -= b2;
        return *this = std::move(a2);
    }
    for (const auto& [e, c] : o.terms_) insert_term(e, -c);
    check_guard(terms_.size());
    return *this;
}

MultiPoly& MultiPoly::operator*=(const BigQ& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (a.vars_ != b.vars_) {
        MultiPoly a2, b2;
        MultiPoly::align(a, b, a2, b2);
        return a2 * b2;
    }
    MultiPoly out;
    out.vars_ = a.vars_;
    const size_t nv = a.vars_.size();
    MultiPoly::Exponents e(nv);
    BigQ c;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (size_t i = 0; i < nv; ++i) e[i] = ea[i] + eb[i];
            c = ca * cb;
            out.insert_term(e, c);
        }
        check_guard(out.terms_.size());
    }
    return out;
}

MultiPoly MultiPoly::pow(unsigned e) const {
    MultiPoly result = MultiPoly::constant(1);
    MultiPoly base = *this;
    while (e > 0) {
        if (e & 1u) result = result * base;
        e >>= 1u;
        if (e > 0) base = base * base;
    }
    return result;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return MultiPoly::compare(a, b) == 0;
}

int MultiPoly::compare(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly a2, b2;
    align(a, b, a2, b2);
    auto ia = a2.terms_.begin(), ib = b2.terms_.begin();
    GrlexLess less;
    for (; ia != a2.terms_.end() && ib != b2.terms_.end(); ++ia, ++ib) {
        if (less(ia->first, ib->first)) return -1;
        if (less(ib->first, ia->first)) return 1;
        int c = cmp(ia->second, ib->second);
        if (c != 0) return c;
    }
    if (ia != a2.terms_.end()) return 1;
    if (ib != b2.terms_.end()) return -1;
    return 0;
}

MultiPoly MultiPoly::derivative(const std::string& var) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) return MultiPoly();
    size_t idx = size_t(it - vars_.begin());
    MultiPoly out;
    out.vars_ = vars_;
    for (const auto& [e, c] : terms_) {
        if (e[idx] == 0) continue;
        Exponents ne = e;
        ne[idx] -= 1;
        out.insert_term(ne, c * BigQ(e[idx]));
    }
    return out;
}

std::optional<MultiPoly> MultiPoly::divide_exact(const MultiPoly& divisor) const {
    if (divisor.is_zero()) throw DivisionByZeroPoly("divide_exact: zero divisor");
    if (is_zero()) return MultiPoly();
    MultiPoly rem, d;
    align(*this, divisor, rem, d);
    const auto& dlead = *d.terms_.rbegin(); // grlex-largest
    MultiPoly q;
    q.vars_ = rem.vars_;
    const size_t nv = rem.vars_.size();
    while (!rem.terms_.empty()) {
        const auto& rlead = *rem.terms_.rbegin();
        Exponents e(nv);
        for (size_t i = 0; i < nv; ++i) {
            e[i] = rlead.first[i] - dlead.first[i];
            if (e[i] < 0) return std::nullopt;
        }
        BigQ c = rlead.second / dlead.second;
        q.insert_term(e, c);
        // rem -= (c x^e) * d
        MultiPoly t;
        t.vars_ = rem.vars_;
        t.terms_.emplace(e, c);
        rem -= t * d;
    }
    return q;
}

BigQ MultiPoly::content() const {
    if (terms_.empty()) return BigQ(0);
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto& [e, c] : terms_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    BigQ content(num_gcd, den_lcm);
    content.canonicalize();
    if (terms_.rbegin()->second < 0) content = -content; // sign from leading term
    return content;
}

MultiPoly MultiPoly::primitive_part() const {
    if (terms_.empty()) return *this;
    BigQ c = content();
    MultiPoly out(*this);
    for (auto& [e, v] : out.terms_) v /= c;
    return out;
}

std::complex<double> MultiPoly::eval(
    const std::map<std::string, std::complex<double>>& point) const {
    std::vector<std::vector<std::complex<double>>> powers(vars_.size());
    for (size_t i = 0; i < vars_.size(); ++i) {
        auto it = point.find(vars_[i]);
        if (it == point.end()) throw DomainError("MultiPoly::eval: missing variable " + vars_[i]);
        powers[i] = {std::complex<double>(1.0), it->second};
    }
    std::complex<double> sum = 0.0;
    for (const auto& [e, c] : terms_) {
        std::complex<double> t(c.get_d(), 0.0);
        for (size_t i = 0; i < vars_.size(); ++i) {
            auto& cache = powers[i];
            while (int32_t(cache.size()) <= e[i]) cache.push_back(cache.back() * cache[1]);
            t *= cache[size_t(e[i])];
        }
        sum += t;
    }
    return sum;
}

BigQ MultiPoly::eval_exact(const std::map<std::string, BigQ>& point) const {
    std::vector<BigQ> vals(vars_.size());
    for (size_t i = 0; i < vars_.size(); ++i) {
        auto it = point.find(vars_[i]);
        if (it == point.end())
            throw DomainError("MultiPoly::eval_exact: missing variable " + vars_[i]);
        vals[i] = it->second;
    }
    BigQ sum = 0;
    for (const auto& [e, c] : terms_) {
        BigQ t = c;
        for (size_t i = 0; i < vars_.size(); ++i)
            for (int32_t k = 0; k < e[i]; ++k) t *= vals[i];
        sum += t;
    }
    return sum;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // grlex descending
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        BigQ c = it->second;
        if (first) {
            if (c < 0) {
                os << "-";
                c = -c;
            }
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        bool monomial = false;
        std::ostringstream mon;
        for (size_t i = 0; i < vars_.size(); ++i) {
            if (it->first[i] == 0) continue;
            if (monomial) mon << "*";
            mon << vars_[i];
            if (it->first[i] > 1) mon << "^" << it->first[i];
            monomial = true;
        }
        if (!monomial) {
            os << c.get_str();
        } else if (c == 1) {
            os << mon.str();
        } else {
            os << c.get_str() << "*" << mon.str();
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// RatFunc
// ---------------------------------------------------------------------------

RatFunc::RatFunc(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZeroPoly("RatFunc: zero denominator");
    normalize();
}

RatFunc RatFunc::constant(const BigQ& c) { return RatFunc(MultiPoly::constant(c)); }
RatFunc RatFunc::variable(const std::string& name) { return RatFunc(MultiPoly::variable(name)); }

void RatFunc::normalize() {
    if (num_.is_zero()) {
        den_ = MultiPoly::constant(1);
        return;
    }
    BigQ c = den_.content();
    for (auto& [e, v] : den_.terms_) v /= c;
    for (auto& [e, v] : num_.terms_) v /= c;
}

RatFunc RatFunc::operator-() const {
    RatFunc out(*this);
    out.num_ = -out.num_;
    return out;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.num_.is_zero()) throw DivisionByZeroPoly("RatFunc: division by zero function");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc RatFunc::pow(int e) const {
    if (e == 0) return RatFunc::constant(BigQ(1));
    if (e > 0) return RatFunc(num_.pow(unsigned(e)), den_.pow(unsigned(e)));
    if (num_.is_zero()) throw DivisionByZeroPoly("RatFunc::pow: negative power of zero");
    return RatFunc(den_.pow(unsigned(-e)), num_.pow(unsigned(-e)));
}

RatFunc RatFunc::derivative(const std::string& var) const {
    // quotient rule (num' den - num den') / den^2
    return RatFunc(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
}

std::complex<double> RatFunc::eval(
    const std::map<std::string, std::complex<double>>& point) const {
    std::complex<double> d = den_.eval(point);
    if (d == std::complex<double>(0.0)) throw SingularLocus("RatFunc::eval: denominator vanishes");
    return num_.eval(point) / d;
}

std::string RatFunc::to_string() const {
    return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
}

bool ratfunc_equal(const RatFunc& a, const RatFunc& b) {
    return (a.num() * b.den() - b.num() * a.den()).is_zero();
}

namespace {

RatFunc substitute_poly(const MultiPoly& p, const std::map<std::string, RatFunc>& bindings) {
    const auto& vars = p.variables();
    // memoized powers per variable
    std::vector<std::vector<RatFunc>> powers(vars.size());
    std::vector<const RatFunc*> bound(vars.size(), nullptr);
    std::vector<RatFunc> identities;
    identities.reserve(vars.size());
    for (size_t i = 0; i < vars.size(); ++i) {
        auto it = bindings.find(vars[i]);
        if (it != bindings.end()) {
            bound[i] = &it->second;
        } else {
            identities.push_back(RatFunc::variable(vars[i]));
            bound[i] = &identities.back();
        }
        powers[i].push_back(RatFunc::constant(BigQ(1)));
    }
    auto power = [&](size_t i, int32_t e) -> const RatFunc& {
        auto& cache = powers[i];
        while (int32_t(cache.size()) <= e) cache.push_back(cache.back() * (*bound[i]));
        return cache[size_t(e)];
    };
    RatFunc sum = RatFunc::constant(BigQ(0));
    for (const auto& [e, c] : p.terms()) {
        RatFunc t = RatFunc::constant(c);
        for (size_t i = 0; i < vars.size(); ++i)
            if (e[i] > 0) t = t * power(i, e[i]);
        sum = sum + t;
    }
    return sum;
}

} // namespace

RatFunc substitute(const RatFunc& f, const std::map<std::string, RatFunc>& bindings) {
    RatFunc n = substitute_poly(f.num(), bindings);
    RatFunc d = substitute_poly(f.den(), bindings);
    if (d.is_zero())
        throw DivisionByZeroPoly("substitute: denominator vanishes identically");
    return n / d;
}

// ---------------------------------------------------------------------------
// Factored
// ---------------------------------------------------------------------------

Factored Factored::constant(const BigQ& c) {
    Factored f;
    f.coeff_ = c;
    return f;
}

void Factored::push(const MultiPoly& base, int power) {
    if (power == 0 || base.is_constant()) {
        if (base.is_constant() && power != 0) {
            BigQ v = base.constant_value();
            if (v == 0) throw DivisionByZeroPoly("Factored: zero base");
            for (int i = 0; i < std::abs(power); ++i) {
                if (power > 0)
                    coeff_ *= v;
                else
                    coeff_ /= v;
            }
        }
        return;
    }
    BigQ c = base.content();
    MultiPoly prim = base.primitive_part();
    for (int i = 0; i < std::abs(power); ++i) {
        if (power > 0)
            coeff_ *= c;
        else
            coeff_ /= c;
    }
    for (auto& [b, e] : factors_) {
        if (b == prim) {
            e += power;
            if (e == 0) {
                std::swap(b, factors_.back().first);
                std::swap(e, factors_.back().second);
                factors_.pop_back();
            }
            return;
        }
    }
    factors_.emplace_back(std::move(prim), power);
}

Factored Factored::from(const MultiPoly& p, int power) {
    if (p.is_zero()) {
        if (power <= 0) throw DivisionByZeroPoly("Factored::from: zero to non-positive power");
        Factored f;
        f.coeff_ = 0;
        return f;
    }
    Factored f;
    f.push(p, power);
    return f;
}

Factored Factored::from(const RatFunc& f) {
    Factored out = Factored::from(f.num(), 1);
    if (out.coeff_ == 0) return out;
    out.push(f.den(), -1);
    return out;
}

Factored& Factored::operator*=(const Factored& o) {
    if (coeff_ == 0 || o.coeff_ == 0) {
        coeff_ = 0;
        factors_.clear();
        return *this;
    }
    coeff_ *= o.coeff_;
    for (const auto& [b, e] : o.factors_) push(b, e);
    return *this;
}

Factored Factored::pow(int e) const {
    Factored out;
    if (coeff_ == 0) {
        if (e <= 0) throw DivisionByZeroPoly("Factored::pow: zero to non-positive power");
        out.coeff_ = 0;
        return out;
    }
    if (e >= 0) {
        out.coeff_ = 1;
        for (int i = 0; i < e; ++i) out.coeff_ *= coeff_;
    } else {
        out.coeff_ = 1;
        for (int i = 0; i < -e; ++i) out.coeff_ /= coeff_;
    }
    for (const auto& [b, p] : factors_) out.push(b, p * e);
    return out;
}

RatFunc Factored::expand() const {
    MultiPoly num = MultiPoly::constant(coeff_.get_num());
    MultiPoly den = MultiPoly::constant(coeff_.get_den());
    for (const auto& [b, e] : factors_) {
        if (e > 0)
            num = num * b.pow(unsigned(e));
        else
            den = den * b.pow(unsigned(-e));
    }
    return RatFunc(std::move(num), std::move(den));
}

std::complex<double> Factored::eval(
    const std::map<std::string, std::complex<double>>& point) const {
    std::complex<double> v(coeff_.get_d(), 0.0);
    for (const auto& [b, e] : factors_) {
        std::complex<double> bv = b.eval(point);
        for (int i = 0; i < std::abs(e); ++i) v = e > 0 ? v * bv : v / bv;
    }
    return v;
}

void Factored::refactor(const std::vector<MultiPoly>& dict) {
    std::vector<std::pair<MultiPoly, int>> work = std::move(factors_);
    factors_.clear();
    for (auto& [base, power] : work) {
        MultiPoly core = base;
        // peel dictionary factors off the core as long as any divides
        bool progressed = true;
        std::vector<std::pair<const MultiPoly*, int>> found;
        while (progressed && !core.is_constant()) {
            progressed = false;
            for (const auto& d : dict) {
                if (d.is_constant()) continue;
                if (auto q = core.divide_exact(d)) {
                    core = std::move(*q);
                    if (!found.empty() && found.back().first == &d)
                        found.back().second++;
                    else
                        found.emplace_back(&d, 1);
                    progressed = true;
                }
            }
        }
        for (auto& [d, mult] : found) push(*d, mult * power);
        push(core, power);
    }
}

Factored Factored::add(const Factored& a, const Factored& b, const std::vector<MultiPoly>& dict) {
    if (a.coeff_ == 0) return b;
    if (b.coeff_ == 0) return a;
    // common part: min exponent per shared base
    Factored common;
    common.coeff_ = 1;
    for (const auto& [base, ea] : a.factors_) {
        for (const auto& [bb, eb] : b.factors_) {
            if (base == bb) {
                int e = std::min(ea, eb);
                if (e != 0) common.push(base, e);
                break;
            }
        }
    }
    Factored ra = a * common.pow(-1);
    Factored rb = b * common.pow(-1);
    // residuals: turn into num/den and add exactly
    RatFunc va = ra.expand(), vb = rb.expand();
    RatFunc sum = va + vb;
    if (sum.is_zero()) return Factored::constant(BigQ(0));
    Factored out = Factored::from(sum);
    out.refactor(dict);
    out *= common;
    return out;
}

MultiPoly Factored::residual_difference(const Factored& other) const {
    // cancel matching bases, then cross-multiply whatever is left
    Factored ratio = *this;
    Factored inv = other.pow(-1);
    ratio *= inv;
    MultiPoly num = MultiPoly::constant(ratio.coeff_.get_num());
    MultiPoly den = MultiPoly::constant(ratio.coeff_.get_den());
    for (const auto& [b, e] : ratio.factors_) {
        if (e > 0)
            num = num * b.pow(unsigned(e));
        else
            den = den * b.pow(unsigned(-e));
    }
    return num - den;
}

bool Factored::equals(const Factored& other) const {
    if (coeff_ == 0 || other.coeff_ == 0) return coeff_ == other.coeff_;
    return residual_difference(other).is_zero();
}

std::string Factored::to_string() const {
    std::ostringstream os;
    os << coeff_.get_str();
    for (const auto& [b, e] : factors_) os << " * (" << b.to_string() << ")^" << e;
    return os.str();
}

} // namespace clausen::ratfunc
