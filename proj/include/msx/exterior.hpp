#pragma once

/// Charts, vector-valued differential forms, vector fields, chart maps, and
/// the exterior-calculus operators over the Scalar field.
///
/// A VForm of form degree p and value degree r is stored as a map from
/// (strictly increasing p-tuple of chart coordinate indices,
///  strictly increasing r-tuple of model-space indices in 1..n+k)
/// to Scalar coefficients; permutation signs are absorbed on construction, so
/// equal forms have equal term maps over equal charts.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "msx/scalar.hpp"

namespace msx {

enum class CoordRole { Base, Fiber, Momentum, Frame };

struct Coord {
    std::string name;
    CoordRole role;
};

/// A single local coordinate system.  Model dims (n, k) fix the split of the
/// value space R^{n+k}: indices 1..n are the r̂ block, n+1..n+k the ŝ block.
class Chart {
public:
    Chart(std::string name, std::vector<Coord> coords, int n, int k)
        : name_(std::move(name)), coords_(std::move(coords)), n_(n), k_(k) {
        for (size_t i = 0; i < coords_.size(); ++i) {
            if (!index_.emplace(coords_[i].name, static_cast<int>(i)).second)
                throw BadDimensions("duplicate coordinate " + coords_[i].name);
        }
    }

    const std::string& name() const { return name_; }
    const std::vector<Coord>& coords() const { return coords_; }
    int dim() const { return static_cast<int>(coords_.size()); }
    int n() const { return n_; }
    int k() const { return k_; }

    int index(const std::string& coord) const {
        auto it = index_.find(coord);
        if (it == index_.end()) throw Error("no coordinate " + coord + " on chart " + name_);
        return it->second;
    }
    bool has(const std::string& coord) const { return index_.count(coord) > 0; }
    const std::string& coord_name(int i) const { return coords_[static_cast<size_t>(i)].name; }

    std::vector<std::string> coord_names() const {
        std::vector<std::string> v;
        for (const auto& c : coords_) v.push_back(c.name);
        return v;
    }

private:
    std::string name_;
    std::vector<Coord> coords_;
    int n_, k_;
    std::map<std::string, int> index_;
};

using ChartPtr = std::shared_ptr<const Chart>;

/// Sort `idx` ascending; returns the permutation sign, or 0 on a repeat.
inline int sort_index_sign(std::vector<int>& idx) {
    int sign = 1;
    for (size_t i = 1; i < idx.size(); ++i)
        for (size_t j = i; j > 0 && idx[j] < idx[j - 1]; --j) {
            std::swap(idx[j], idx[j - 1]);
            sign = -sign;
        }
    for (size_t i = 1; i < idx.size(); ++i)
        if (idx[i] == idx[i - 1]) return 0;
    return sign;
}

class VField;

class VForm {
public:
    /// Term key: (form indices, value indices), both strictly increasing.
    using Key = std::pair<std::vector<int>, std::vector<int>>;
    using TermMap = std::map<Key, Scalar>;

    VForm(ChartPtr chart, int form_degree, int value_degree)
        : chart_(std::move(chart)), p_(form_degree), r_(value_degree) {}

    static VForm zero(ChartPtr chart, int p, int r) { return VForm(std::move(chart), p, r); }

    /// The constant function 1 (p = 0, r = 0).
    static VForm one(ChartPtr chart) {
        VForm f(std::move(chart), 0, 0);
        f.add_term({}, {}, Scalar(1));
        return f;
    }

    static VForm function(ChartPtr chart, const Scalar& s) {
        VForm f(std::move(chart), 0, 0);
        f.add_term({}, {}, s);
        return f;
    }

    /// The coordinate differential d(coord).
    static VForm d_coord(const ChartPtr& chart, const std::string& coord) {
        VForm f(chart, 1, 0);
        f.add_term({chart->index(coord)}, {}, Scalar(1));
        return f;
    }

    const ChartPtr& chart() const { return chart_; }
    int form_degree() const { return p_; }
    int value_degree() const { return r_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Accumulate a coefficient on (form, value) index tuples in any order;
    /// sorts and absorbs the permutation signs, drops repeats and zeros.
    void add_term(std::vector<int> form_idx, std::vector<int> value_idx, const Scalar& coeff) {
        if (coeff.is_zero()) return;
        if (static_cast<int>(form_idx.size()) != p_ || static_cast<int>(value_idx.size()) != r_)
            throw DegreeMismatch();
        int sf = sort_index_sign(form_idx);
        if (sf == 0) return;
        int sv = sort_index_sign(value_idx);
        if (sv == 0) return;
        Scalar c = (sf * sv == 1) ? coeff : -coeff;
        Key key{std::move(form_idx), std::move(value_idx)};
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(std::move(key), c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Scalar coefficient(const std::vector<int>& form_idx, const std::vector<int>& value_idx) const {
        auto it = terms_.find(Key{form_idx, value_idx});
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    friend VForm operator+(const VForm& a, const VForm& b) {
        a.check_same(b);
        if (a.p_ != b.p_ || a.r_ != b.r_) throw DegreeMismatch();
        VForm out = a;
        for (const auto& [key, c] : b.terms_) {
            auto it = out.terms_.find(key);
            if (it == out.terms_.end()) {
                out.terms_.emplace(key, c);
            } else {
                it->second += c;
                if (it->second.is_zero()) out.terms_.erase(it);
            }
        }
        return out;
    }

    friend VForm operator-(const VForm& a, const VForm& b) { return a + (-b); }

    VForm operator-() const {
        VForm out = *this;
        for (auto& [key, c] : out.terms_) c = -c;
        return out;
    }

    friend VForm operator*(const Scalar& s, const VForm& a) {
        VForm out(a.chart_, a.p_, a.r_);
        if (s.is_zero()) return out;
        for (const auto& [key, c] : a.terms_) out.terms_.emplace(key, s * c);
        return out;
    }

    friend bool operator==(const VForm& a, const VForm& b) {
        a.check_same(b);
        if (a.p_ != b.p_ || a.r_ != b.r_) return false;
        return (a - b).is_zero();
    }
    friend bool operator!=(const VForm& a, const VForm& b) { return !(a == b); }

    void check_same(const VForm& o) const {
        if (chart_.get() != o.chart_.get()) throw ChartMismatch();
    }

private:
    ChartPtr chart_;
    int p_, r_;
    TermMap terms_;
};

/// Vector field with Scalar components over chart coordinates.
class VField {
public:
    explicit VField(ChartPtr chart) : chart_(std::move(chart)) {}

    const ChartPtr& chart() const { return chart_; }
    const std::map<std::string, Scalar>& components() const { return comps_; }

    void set(const std::string& coord, const Scalar& s) {
        chart_->index(coord);  // validates
        if (s.is_zero())
            comps_.erase(coord);
        else
            comps_[coord] = s;
    }

    Scalar component(const std::string& coord) const {
        auto it = comps_.find(coord);
        return it == comps_.end() ? Scalar(0) : it->second;
    }

    bool is_zero() const {
        for (const auto& [c, s] : comps_)
            if (!s.is_zero()) return false;
        return true;
    }

    friend VField operator+(const VField& a, const VField& b) {
        if (a.chart_.get() != b.chart_.get()) throw ChartMismatch();
        VField out = a;
        for (const auto& [c, s] : b.comps_) out.set(c, out.component(c) + s);
        return out;
    }
    friend VField operator-(const VField& a, const VField& b) {
        if (a.chart_.get() != b.chart_.get()) throw ChartMismatch();
        VField out = a;
        for (const auto& [c, s] : b.comps_) out.set(c, out.component(c) - s);
        return out;
    }
    friend VField operator*(const Scalar& s, const VField& a) {
        VField out(a.chart_);
        for (const auto& [c, x] : a.comps_) out.set(c, s * x);
        return out;
    }
    friend bool operator==(const VField& a, const VField& b) {
        if (a.chart_.get() != b.chart_.get()) throw ChartMismatch();
        std::set<std::string> names;
        for (const auto& [c, s] : a.comps_) names.insert(c);
        for (const auto& [c, s] : b.comps_) names.insert(c);
        for (const auto& c : names)
            if (a.component(c) != b.component(c)) return false;
        return true;
    }
    friend bool operator!=(const VField& a, const VField& b) { return !(a == b); }

    /// Directional derivative of a scalar function.
    Scalar apply(const Scalar& f) const {
        Scalar out(0);
        for (const auto& [c, s] : comps_) out += s * f.partial(c);
        return out;
    }

private:
    ChartPtr chart_;
    std::map<std::string, Scalar> comps_;
};

/// Componentwise Lie bracket [v,w]^mu = v(w^mu) - w(v^mu).
inline VField lie_bracket(const VField& v, const VField& w) {
    if (v.chart().get() != w.chart().get()) throw ChartMismatch();
    VField out(v.chart());
    std::set<std::string> names;
    for (const auto& [c, s] : v.components()) names.insert(c);
    for (const auto& [c, s] : w.components()) names.insert(c);
    for (const auto& c : names) out.set(c, v.apply(w.component(c)) - w.apply(v.component(c)));
    return out;
}

/// Vector-valued wedge: (a^M ⊗ R_M) ∧ (b^N ⊗ R_N) = (a^M ∧ b^N) ⊗ R_{MN}.
inline VForm wedge(const VForm& a, const VForm& b) {
    a.check_same(b);
    VForm out(a.chart(), a.form_degree() + b.form_degree(),
              a.value_degree() + b.value_degree());
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms()) {
            std::vector<int> fi(ka.first);
            fi.insert(fi.end(), kb.first.begin(), kb.first.end());
            std::vector<int> vi(ka.second);
            vi.insert(vi.end(), kb.second.begin(), kb.second.end());
            out.add_term(std::move(fi), std::move(vi), ca * cb);
        }
    return out;
}

inline VForm ext_d(const VForm& a) {
    VForm out(a.chart(), a.form_degree() + 1, a.value_degree());
    const auto& chart = *a.chart();
    for (const auto& [key, c] : a.terms())
        for (int v = 0; v < chart.dim(); ++v) {
            Scalar dc = c.partial(chart.coord_name(v));
            if (dc.is_zero()) continue;
            std::vector<int> fi;
            fi.push_back(v);
            fi.insert(fi.end(), key.first.begin(), key.first.end());
            out.add_term(std::move(fi), key.second, dc);
        }
    return out;
}

/// Interior product contracting the FIRST slot of the form part; the value
/// part is carried along untouched.
inline VForm interior(const VField& x, const VForm& a) {
    if (x.chart().get() != a.chart().get()) throw ChartMismatch();
    if (a.form_degree() < 1) throw DegreeZero();
    VForm out(a.chart(), a.form_degree() - 1, a.value_degree());
    const auto& chart = *a.chart();
    for (const auto& [key, c] : a.terms()) {
        for (size_t j = 0; j < key.first.size(); ++j) {
            Scalar comp = x.component(chart.coord_name(key.first[j]));
            if (comp.is_zero()) continue;
            std::vector<int> fi;
            for (size_t t = 0; t < key.first.size(); ++t)
                if (t != j) fi.push_back(key.first[t]);
            Scalar coeff = comp * c;
            if (j % 2 == 1) coeff = -coeff;
            out.add_term(std::move(fi), key.second, coeff);
        }
    }
    return out;
}

/// Cartan formula: L_X a = X ⌟ da + d(X ⌟ a).
inline VForm lie_derivative(const VField& x, const VForm& a) {
    if (a.form_degree() == 0) {
        VForm out(a.chart(), 0, a.value_degree());
        for (const auto& [key, c] : a.terms()) out.add_term(key.first, key.second, x.apply(c));
        return out;
    }
    return interior(x, ext_d(a)) + ext_d(interior(x, a));
}

inline VForm wedge_power(const VForm& a, int m) {
    if (m < 0) throw BadDegree("wedge_power with m < 0");
    VForm out = VForm::one(a.chart());
    for (int i = 0; i < m; ++i) out = wedge(out, a);
    return out;
}

/// Contract the value part against a covector of matching degree given by its
/// components on strictly increasing index tuples.
inline VForm pair_value(const VForm& a, const std::map<std::vector<int>, Rational>& v) {
    VForm out(a.chart(), a.form_degree(), 0);
    for (const auto& [key, c] : a.terms()) {
        auto it = v.find(key.second);
        if (it == v.end() || it->second == 0) continue;
        out.add_term(key.first, {}, Scalar(it->second) * c);
    }
    return out;
}

/// Map between charts given by a Scalar assignment for each target coordinate.
class ChartMap {
public:
    ChartMap(ChartPtr source, ChartPtr target) : source_(std::move(source)), target_(std::move(target)) {}

    const ChartPtr& source() const { return source_; }
    const ChartPtr& target() const { return target_; }

    void assign(const std::string& target_coord, const Scalar& expr) {
        target_->index(target_coord);
        assignment_[target_coord] = expr;
    }

    const Scalar& assigned(const std::string& target_coord) const {
        auto it = assignment_.find(target_coord);
        if (it == assignment_.end()) throw Error("chart map missing assignment for " + target_coord);
        return it->second;
    }

    static ChartMap identity(const ChartPtr& chart) {
        ChartMap m(chart, chart);
        for (const auto& c : chart->coords()) m.assign(c.name, Scalar::variable(c.name));
        return m;
    }

    /// Substitute the assignments into a Scalar on the target chart.
    Scalar substitute(const Scalar& s) const {
        Scalar n = substitute_poly(s.num());
        Scalar d = substitute_poly(s.den());
        if (d.is_zero()) throw PoleAtSubstitution();
        return n / d;
    }

    std::map<std::string, Rational> image_point(const std::map<std::string, Rational>& source_point) const {
        std::map<std::string, Rational> out;
        for (const auto& c : target_->coords()) out[c.name] = assigned(c.name).evaluate(source_point);
        return out;
    }

private:
    ChartPtr source_, target_;
    std::map<std::string, Scalar> assignment_;

    Scalar substitute_poly(const Polynomial& p) const {
        Scalar out(0);
        for (const auto& [e, c] : p.terms()) {
            Scalar term{Rational(c)};
            for (size_t i = 0; i < e.size(); ++i) {
                const Scalar& v = assigned(p.vars()[i]);
                for (int j = 0; j < e[i]; ++j) term *= v;
            }
            out += term;
        }
        return out;
    }
};

/// Pullback: coordinate substitution in coefficients plus d of the assigned
/// Scalars wedged in place of the coordinate differentials.
inline VForm pullback(const ChartMap& m, const VForm& a) {
    if (a.chart().get() != m.target().get()) throw ChartMismatch();
    const auto& tgt = *m.target();
    VForm out(m.source(), a.form_degree(), a.value_degree());
    for (const auto& [key, c] : a.terms()) {
        VForm piece = VForm::function(m.source(), m.substitute(c));
        for (int idx : key.first) {
            VForm dphi = ext_d(VForm::function(m.source(), m.assigned(tgt.coord_name(idx))));
            piece = wedge(piece, dphi);
        }
        if (piece.is_zero()) continue;
        for (const auto& [pk, pc] : piece.terms()) {
            VForm contrib(m.source(), a.form_degree(), a.value_degree());
            contrib.add_term(pk.first, key.second, pc);
            out = out + contrib;
        }
    }
    return out;
}

/// Jacobian-vector product of a chart map at a point: exact components of the
/// image tangent vector, keyed by target coordinate.
inline std::map<std::string, Rational> pushforward_at(
    const ChartMap& m, const VField& x, const std::map<std::string, Rational>& point) {
    if (x.chart().get() != m.source().get()) throw ChartMismatch();
    std::map<std::string, Rational> out;
    for (const auto& tc : m.target()->coords()) {
        const Scalar& phi = m.assigned(tc.name);
        Rational acc = 0;
        for (const auto& [sc, comp] : x.components()) {
            Scalar dphi = phi.partial(sc);
            if (dphi.is_zero()) continue;
            acc += dphi.evaluate(point) * comp.evaluate(point);
        }
        out[tc.name] = acc;
    }
    return out;
}

}  // namespace msx
