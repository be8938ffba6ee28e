#pragma once

/// Exact arithmetic: arbitrary-precision rationals, multivariate polynomials
/// over Q, and the field of rational functions built from them.  Every other
/// layer of the engine takes its coefficients from here.

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "msx/errors.hpp"

namespace msx {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) { return r.str(); }

/// Exponent vector; length equals the number of variables of the polynomial.
using Exponents = std::vector<int>;

/// Graded lexicographic order on exponent vectors (higher first when iterating
/// a map in reverse).  Canonical term order for printing and hashing.
struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        int da = 0, db = 0;
        for (int e : a) da += e;
        for (int e : b) db += e;
        if (da != db) return da < db;
        return a < b;
    }
};

/// Multivariate polynomial with exact rational coefficients.  Variables are an
/// ordered name sequence; no zero coefficients are stored; variables that
/// appear in no term are dropped on normalization.
class Polynomial {
public:
    using TermMap = std::map<Exponents, Rational, GrlexLess>;

    Polynomial() = default;

    explicit Polynomial(const Rational& c) {
        if (c != 0) terms_[Exponents{}] = c;
    }

    /// The variable `name` itself.
    static Polynomial variable(const std::string& name) {
        Polynomial p;
        p.vars_ = {name};
        p.terms_[Exponents{1}] = 1;
        return p;
    }

    static Polynomial constant(const Rational& c) { return Polynomial(c); }

    /// Build from explicit data; normalizes (drops zero terms, unused vars).
    static Polynomial make(std::vector<std::string> vars, TermMap terms) {
        Polynomial p;
        p.vars_ = std::move(vars);
        p.terms_ = std::move(terms);
        p.normalize();
        return p;
    }

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents(vars_.size(), 0));
    }

    /// Value when constant; undefined behavior otherwise (check is_constant).
    Rational constant_value() const {
        return terms_.empty() ? Rational(0) : terms_.begin()->second;
    }

    int total_degree() const {
        int d = 0;
        for (const auto& [e, c] : terms_) {
            int t = 0;
            for (int x : e) t += x;
            d = std::max(d, t);
        }
        return d;
    }

    bool depends_on(const std::string& name) const {
        auto it = std::find(vars_.begin(), vars_.end(), name);
        if (it == vars_.end()) return false;
        size_t idx = static_cast<size_t>(it - vars_.begin());
        for (const auto& [e, c] : terms_)
            if (e[idx] != 0) return true;
        return false;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        auto [av, bv, vars] = aligned(a, b);
        TermMap t = av;
        for (const auto& [e, c] : bv) {
            auto [it, fresh] = t.emplace(e, c);
            if (!fresh) it->second += c;
        }
        return make(std::move(vars), std::move(t));
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

    Polynomial operator-() const {
        Polynomial p = *this;
        for (auto& [e, c] : p.terms_) c = -c;
        return p;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        auto [av, bv, vars] = aligned(a, b);
        TermMap t;
        for (const auto& [ea, ca] : av)
            for (const auto& [eb, cb] : bv) {
                Exponents e(ea);
                for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                auto [it, fresh] = t.emplace(std::move(e), ca * cb);
                if (!fresh) it->second += ca * cb;
            }
        return make(std::move(vars), std::move(t));
    }

    friend Polynomial operator*(const Rational& c, const Polynomial& p) {
        return Polynomial(c) * p;
    }

    Polynomial pow(int m) const {
        Polynomial r(Rational(1));
        for (int i = 0; i < m; ++i) r = r * (*this);
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        auto [av, bv, vars] = aligned(a, b);
        return av == bv;
    }

    Polynomial derivative(const std::string& name) const {
        auto it = std::find(vars_.begin(), vars_.end(), name);
        if (it == vars_.end()) return Polynomial();
        size_t idx = static_cast<size_t>(it - vars_.begin());
        TermMap t;
        for (const auto& [e, c] : terms_) {
            if (e[idx] == 0) continue;
            Exponents d(e);
            Rational nc = c * e[idx];
            d[idx] -= 1;
            t[std::move(d)] = nc;
        }
        return make(vars_, std::move(t));
    }

    Rational evaluate(const std::map<std::string, Rational>& point) const {
        std::vector<Rational> vals(vars_.size());
        for (size_t i = 0; i < vars_.size(); ++i) {
            auto it = point.find(vars_[i]);
            if (it == point.end())
                throw Error("evaluate: no value for variable " + vars_[i]);
            vals[i] = it->second;
        }
        Rational sum = 0;
        for (const auto& [e, c] : terms_) {
            Rational term = c;
            for (size_t i = 0; i < e.size(); ++i)
                for (int j = 0; j < e[i]; ++j) term *= vals[i];
            sum += term;
        }
        return sum;
    }

    /// gcd of coefficient numerators over lcm of denominators, signed so that
    /// the leading (grlex-greatest) coefficient divided by it is positive.
    Rational content() const {
        if (terms_.empty()) return 1;
        BigInt g = 0, l = 1;
        for (const auto& [e, c] : terms_) {
            g = boost::multiprecision::gcd(g, boost::multiprecision::numerator(c));
            l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(c));
        }
        Rational r(g, l);
        if (terms_.rbegin()->second < 0) r = -r;
        return r;
    }

    /// Componentwise minimum exponent vector over all terms (the largest
    /// monomial dividing every term).
    Exponents min_exponents() const {
        if (terms_.empty()) return Exponents(vars_.size(), 0);
        Exponents m = terms_.begin()->first;
        for (const auto& [e, c] : terms_)
            for (size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
        return m;
    }

    Polynomial divide_monomial(const Exponents& m) const {
        TermMap t;
        for (const auto& [e, c] : terms_) {
            Exponents d(e);
            for (size_t i = 0; i < d.size(); ++i) d[i] -= m[i];
            t[std::move(d)] = c;
        }
        return make(vars_, std::move(t));
    }

    Polynomial divide_content(const Rational& c) const {
        TermMap t;
        for (const auto& [e, q] : terms_) t[e] = q / c;
        return make(vars_, std::move(t));
    }

    /// Terms rendered leading-first in grlex order, e.g. "3*x^2*y - 1/2".
    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            Rational c = it->second;
            if (!first) os << (c < 0 ? " - " : " + ");
            else if (c < 0) os << "-";
            if (c < 0) c = -c;
            first = false;
            bool has_var = false;
            for (int e : it->first)
                if (e != 0) has_var = true;
            if (c != 1 || !has_var) {
                os << to_string(c);
                if (has_var) os << "*";
            }
            bool firstv = true;
            for (size_t i = 0; i < it->first.size(); ++i) {
                int e = it->first[i];
                if (e == 0) continue;
                if (!firstv) os << "*";
                firstv = false;
                os << vars_[i];
                if (e != 1) os << "^" << e;
            }
        }
        return os.str();
    }

private:
    std::vector<std::string> vars_;
    TermMap terms_;

    void normalize() {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = (it->second == 0) ? terms_.erase(it) : std::next(it);
        // Drop variables unused by every term.
        std::vector<bool> used(vars_.size(), false);
        for (const auto& [e, c] : terms_)
            for (size_t i = 0; i < e.size(); ++i)
                if (e[i] != 0) used[i] = true;
        if (std::find(used.begin(), used.end(), false) == used.end()) return;
        std::vector<std::string> nv;
        for (size_t i = 0; i < vars_.size(); ++i)
            if (used[i]) nv.push_back(vars_[i]);
        TermMap nt;
        for (const auto& [e, c] : terms_) {
            Exponents ne;
            for (size_t i = 0; i < e.size(); ++i)
                if (used[i]) ne.push_back(e[i]);
            nt[std::move(ne)] = c;
        }
        vars_ = std::move(nv);
        terms_ = std::move(nt);
    }

    /// Merge two variable sequences preserving both relative orders (they are
    /// subsequences of a common chart order in every use in this engine); if
    /// the orders conflict the union falls back to name order.
    static std::vector<std::string> merge_vars(const std::vector<std::string>& a,
                                               const std::vector<std::string>& b) {
        std::vector<std::string> out;
        size_t i = 0, j = 0;
        auto in = [](const std::vector<std::string>& v, const std::string& s) {
            return std::find(v.begin(), v.end(), s) != v.end();
        };
        while (i < a.size() || j < b.size()) {
            if (i == a.size()) { out.push_back(b[j++]); continue; }
            if (j == b.size()) { out.push_back(a[i++]); continue; }
            if (a[i] == b[j]) { out.push_back(a[i]); ++i; ++j; continue; }
            bool a_in_b = in(b, a[i]), b_in_a = in(a, b[j]);
            if (!a_in_b) { out.push_back(a[i++]); continue; }
            if (!b_in_a) { out.push_back(b[j++]); continue; }
            // Conflicting relative order: deterministic fallback.
            std::vector<std::string> u(a);
            for (const auto& s : b)
                if (!in(u, s)) u.push_back(s);
            std::sort(u.begin(), u.end());
            return u;
        }
        return out;
    }

    static TermMap remap(const Polynomial& p, const std::vector<std::string>& vars) {
        std::vector<size_t> pos(p.vars_.size());
        for (size_t i = 0; i < p.vars_.size(); ++i)
            pos[i] = static_cast<size_t>(
                std::find(vars.begin(), vars.end(), p.vars_[i]) - vars.begin());
        TermMap t;
        for (const auto& [e, c] : p.terms_) {
            Exponents ne(vars.size(), 0);
            for (size_t i = 0; i < e.size(); ++i) ne[pos[i]] = e[i];
            t[std::move(ne)] = c;
        }
        return t;
    }

    static std::tuple<TermMap, TermMap, std::vector<std::string>> aligned(
        const Polynomial& a, const Polynomial& b) {
        if (a.vars_ == b.vars_) return {a.terms_, b.terms_, a.vars_};
        auto vars = merge_vars(a.vars_, b.vars_);
        return {remap(a, vars), remap(b, vars), vars};
    }
};

/// Rational function num/den over Q.  Stored without multivariate GCD
/// normalization; equality is decided by cross-multiplication.  A cheap
/// reduction (integer content and shared monomial factors) curbs growth.
class Scalar {
public:
    Scalar() : num_(), den_(Rational(1)) {}
    Scalar(const Rational& c) : num_(c), den_(Rational(1)) {}  // NOLINT: implicit by design
    Scalar(int c) : Scalar(Rational(c)) {}                     // NOLINT
    Scalar(Polynomial num) : num_(std::move(num)), den_(Rational(1)) {}  // NOLINT

    Scalar(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DivisionByZero();
        reduce();
    }

    static Scalar variable(const std::string& name) { return Scalar(Polynomial::variable(name)); }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant_value() const { return num_.constant_value() / den_.constant_value(); }
    bool is_polynomial() const { return den_.is_constant(); }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        return Scalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        return Scalar(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    Scalar operator-() const {
        Scalar s = *this;
        s.num_ = -s.num_;
        return s;
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        return Scalar(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        if (b.is_zero()) throw DivisionByZero();
        return Scalar(a.num_ * b.den_, a.den_ * b.num_);
    }
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    /// Cross-multiplication equality: n1*d2 == n2*d1.
    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.num_ * b.den_ == b.num_ * a.den_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// Exact quotient rule.
    Scalar partial(const std::string& var) const {
        if (den_.is_constant())
            return Scalar(num_.derivative(var), den_);
        return Scalar(num_.derivative(var) * den_ - num_ * den_.derivative(var),
                      den_ * den_);
    }

    bool depends_on(const std::string& var) const {
        return num_.depends_on(var) || den_.depends_on(var);
    }

    Rational evaluate(const std::map<std::string, Rational>& point) const {
        Rational d = den_.evaluate(point);
        if (d == 0) throw PoleAtPoint();
        return num_.evaluate(point) / d;
    }

    std::string str() const {
        if (den_.is_constant() && den_.constant_value() == 1) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    Polynomial num_, den_;

    void reduce() {
        if (num_.is_zero()) {
            den_ = Polynomial(Rational(1));
            return;
        }
        // Shared monomial factor.
        if (!num_.vars().empty() && !den_.vars().empty()) {
            Exponents mn = num_.min_exponents();
            Exponents md = den_.min_exponents();
            bool any = false;
            // Intersect over shared variables.
            Exponents rn(mn.size(), 0), rd(md.size(), 0);
            for (size_t i = 0; i < num_.vars().size(); ++i) {
                auto it = std::find(den_.vars().begin(), den_.vars().end(), num_.vars()[i]);
                if (it == den_.vars().end()) continue;
                size_t j = static_cast<size_t>(it - den_.vars().begin());
                int m = std::min(mn[i], md[j]);
                if (m > 0) {
                    rn[i] = rd[j] = m;
                    any = true;
                }
            }
            if (any) {
                num_ = num_.divide_monomial(rn);
                den_ = den_.divide_monomial(rd);
            }
        }
        // Make the denominator primitive with positive leading coefficient.
        Rational c = den_.content();
        if (c != 1) {
            num_ = num_.divide_content(c);
            den_ = den_.divide_content(c);
        }
    }
};

inline Scalar arith(const Scalar& a, const Scalar& b, char op) {
    switch (op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/': return a / b;
        default: throw Error("unknown arithmetic op");
    }
}

}  // namespace msx
