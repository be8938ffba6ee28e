#pragma once

/// Momentum observables, structure-equation solvers, closed-form Hamiltonian
/// vector fields on Z, L_VY, and LM (degree one), and the allowability
/// classification of R^{n+k}-valued observables on L_VY.

#include <map>
#include <optional>
#include <vector>

#include "msx/spaces.hpp"

namespace msx {

/// v = v^i(x) ∂x_i + v^A(x,y) ∂y_A on Y.
struct ProjectableField {
    int n = 1, k = 1;
    std::map<int, Scalar> vi;  // i -> Scalar over x only
    std::map<int, Scalar> vA;  // A -> Scalar over (x, y)

    Scalar horizontal(int i) const {
        auto it = vi.find(i);
        return it == vi.end() ? Scalar(0) : it->second;
    }
    Scalar vertical(int a) const {
        auto it = vA.find(a);
        return it == vA.end() ? Scalar(0) : it->second;
    }

    void validate() const {
        for (const auto& [i, s] : vi)
            for (int a = 1; a <= k; ++a)
                if (!s.partial(yname(a)).is_zero()) throw NotProjectable();
    }

    /// The field as a VField on any chart containing the (x, y) coordinates.
    VField on_chart(const ChartPtr& chart) const {
        VField f(chart);
        for (const auto& [i, s] : vi) f.set(xname(i), s);
        for (const auto& [a, s] : vA) f.set(yname(a), s);
        return f;
    }
};

struct Observable {
    SpaceKind space;
    VForm body;
};

/// f_v = (p^i_A v^A + p v^i) d^{n-1}x_i - p^i_A v^j dy^A ∧ d^{n-2}x_{ij}.
inline VForm momentum_observable_Z(const ProjectableField& v, const ChartPtr& chart) {
    v.validate();
    const int n = chart->n(), k = chart->k();
    VolumeForms vol = volume_forms(chart, 2);
    VForm f = VForm::zero(chart, n - 1, 0);
    for (int i = 1; i <= n; ++i) {
        Scalar c = Scalar::variable("p") * v.horizontal(i);
        for (int a = 1; a <= k; ++a) c += Scalar::variable(pname(i, a)) * v.vertical(a);
        f = f + c * vol.dn1[static_cast<size_t>(i - 1)];
    }
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (i == j) continue;
            for (int a = 1; a <= k; ++a) {
                Scalar c = Scalar::variable(pname(i, a)) * v.horizontal(j);
                if (c.is_zero()) continue;
                VForm dy(chart, 1, 0);
                dy.add_term({chart->index(yname(a))}, {}, c);
                f = f - wedge(dy, vol.dn2.at({i, j}));
            }
        }
    return f;
}

/// Closed-form Hamiltonian vector field on Z:
///   X = v^k ∂x_k + v^A ∂y_A
///     + (p^j_A v^i,_j - p^i_A v^j,_j - p^i_B v^B,_A) ∂/∂p^i_A
///     - (p v^i,_i + p^i_A v^A,_i) ∂/∂p.
inline VField hamiltonian_vf_Z(const ProjectableField& v, const ChartPtr& chart) {
    v.validate();
    const int n = chart->n(), k = chart->k();
    VField x(chart);
    for (int i = 1; i <= n; ++i) x.set(xname(i), v.horizontal(i));
    for (int a = 1; a <= k; ++a) x.set(yname(a), v.vertical(a));
    for (int i = 1; i <= n; ++i)
        for (int a = 1; a <= k; ++a) {
            Scalar c(0);
            for (int j = 1; j <= n; ++j) {
                c += Scalar::variable(pname(j, a)) * v.horizontal(i).partial(xname(j));
                c -= Scalar::variable(pname(i, a)) * v.horizontal(j).partial(xname(j));
            }
            for (int b = 1; b <= k; ++b)
                c -= Scalar::variable(pname(i, b)) * v.vertical(b).partial(yname(a));
            x.set(pname(i, a), c);
        }
    Scalar cp(0);
    for (int i = 1; i <= n; ++i) {
        cp += Scalar::variable("p") * v.horizontal(i).partial(xname(i));
        for (int a = 1; a <= k; ++a)
            cp += Scalar::variable(pname(i, a)) * v.vertical(a).partial(xname(i));
    }
    x.set("p", -cp);
    return x;
}

/// Solve X ⌟ dPotential = -df for X.  Inconsistency means f is not an
/// allowable observable; a nontrivial kernel means the structure form is
/// degenerate.
inline VField solve_structure(const VForm& d_potential, const VForm& f) {
    ContractionSolve sol = solve_contraction(d_potential, -ext_d(f));
    if (sol.status == SolveStatus::Underdetermined) throw SingularStructure();
    if (sol.status == SolveStatus::Inconsistent) throw NotAllowable();
    return sol.field;
}

/// Degree-one tensorial observable on L_VY induced by a projectable field:
///   f̂ = v^i pi^j_i ⊗ r̂_j + v^A pi^B_A ⊗ ŝ_B + v^i pi^B_i ⊗ ŝ_B.
inline VForm tensorial_from_vf_LVY(const ProjectableField& v, const ChartPtr& chart) {
    v.validate();
    const int n = chart->n(), k = chart->k();
    VForm f(chart, 0, 1);
    for (int j = 1; j <= n; ++j) {
        Scalar c(0);
        for (int i = 1; i <= n; ++i) c += v.horizontal(i) * Scalar::variable(piname(j, i));
        f.add_term({}, {j}, c);
    }
    for (int b = 1; b <= k; ++b) {
        Scalar c(0);
        for (int a = 1; a <= k; ++a) c += v.vertical(a) * Scalar::variable(piname(n + b, n + a));
        for (int i = 1; i <= n; ++i) c += v.horizontal(i) * Scalar::variable(piname(n + b, i));
        f.add_term({}, {n + b}, c);
    }
    return f;
}

/// Closed-form Hamiltonian vector field on L_VY:
///   X = v^i ∂x_i + v^A ∂y_A - v^k,_j pi^i_k ∂/∂pi^i_j - v^C,_B pi^A_C ∂/∂pi^A_B
///     - (v^j,_i pi^A_j + v^B,_i pi^A_B) ∂/∂pi^A_i.
inline VField hamiltonian_vf_LVY(const ProjectableField& v, const ChartPtr& chart) {
    v.validate();
    const int n = chart->n(), k = chart->k();
    VField x(chart);
    for (int i = 1; i <= n; ++i) x.set(xname(i), v.horizontal(i));
    for (int a = 1; a <= k; ++a) x.set(yname(a), v.vertical(a));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            Scalar c(0);
            for (int kk = 1; kk <= n; ++kk)
                c += v.horizontal(kk).partial(xname(j)) * Scalar::variable(piname(i, kk));
            x.set(piname(i, j), -c);
        }
    for (int a = 1; a <= k; ++a)
        for (int b = 1; b <= k; ++b) {
            Scalar c(0);
            for (int cc = 1; cc <= k; ++cc)
                c += v.vertical(cc).partial(yname(b)) * Scalar::variable(piname(n + a, n + cc));
            x.set(piname(n + a, n + b), -c);
        }
    for (int a = 1; a <= k; ++a)
        for (int i = 1; i <= n; ++i) {
            Scalar c(0);
            for (int j = 1; j <= n; ++j)
                c += v.horizontal(j).partial(xname(i)) * Scalar::variable(piname(n + a, j));
            for (int b = 1; b <= k; ++b)
                c += v.vertical(b).partial(xname(i)) * Scalar::variable(piname(n + a, n + b));
            x.set(piname(n + a, i), -c);
        }
    return x;
}

/// Natural lift to LM of f = f^i(x) ∂x_i:
///   X = f^i ∂x_i - f^i,_j pi^k_i ∂/∂pi^k_j.
inline VField natural_lift_LM(const std::map<int, Scalar>& f, const ChartPtr& chart) {
    const int n = chart->n();
    auto fi = [&](int i) {
        auto it = f.find(i);
        return it == f.end() ? Scalar(0) : it->second;
    };
    VField x(chart);
    for (int i = 1; i <= n; ++i) x.set(xname(i), fi(i));
    for (int kk = 1; kk <= n; ++kk)
        for (int j = 1; j <= n; ++j) {
            Scalar c(0);
            for (int i = 1; i <= n; ++i)
                c += fi(i).partial(xname(j)) * Scalar::variable(piname(kk, i));
            x.set(piname(kk, j), -c);
        }
    return x;
}

/// Result of matching an R^{n+k}-valued function against the allowable
/// template g^j pi^i_j + xi^i on the r̂ block and
/// g^i pi^B_i + g^A pi^B_A + zeta^B on the ŝ block.
struct HF1Decomposition {
    bool allowable = false;
    ProjectableField g;
    std::vector<Scalar> xi;    // size n, functions of x
    std::vector<Scalar> zeta;  // size k, functions of (x, y)
};

namespace detail {

/// Split a Scalar that must be polynomial of degree <= 1 in the pi
/// coordinates into (per-pi-variable coefficients, pi-free remainder).
/// Returns false if the shape is violated.
inline bool split_linear_in_pi(const Scalar& s, std::map<std::string, Scalar>& coeffs,
                               Scalar& rest) {
    auto is_pi = [](const std::string& v) { return v.size() > 2 && v[0] == 'p' && v[1] == 'i'; };
    for (const auto& v : s.den().vars())
        if (is_pi(v)) return false;
    const Polynomial& num = s.num();
    Scalar den(s.den());
    coeffs.clear();
    rest = Scalar(0);
    for (const auto& [e, c] : num.terms()) {
        int pi_deg = 0;
        std::string pi_var;
        Polynomial mono{Rational(c)};
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (is_pi(num.vars()[i])) {
                pi_deg += e[i];
                pi_var = num.vars()[i];
            } else {
                mono = mono * Polynomial::variable(num.vars()[i]).pow(e[i]);
            }
        }
        if (pi_deg > 1) return false;
        Scalar contrib = Scalar(mono) / den;
        if (pi_deg == 0) {
            rest += contrib;
        } else {
            auto [it, fresh] = coeffs.emplace(pi_var, contrib);
            if (!fresh) it->second += contrib;
        }
    }
    return true;
}

inline bool x_only(const Scalar& s, int k) {
    for (int a = 1; a <= k; ++a)
        if (s.depends_on(yname(a))) return false;
    return true;
}

}  // namespace detail

/// Match f (a value-degree-1 function on L_VY) against the allowable
/// template; the characterization requires n >= 2 and k >= 2.
inline HF1Decomposition classify_HF1_LVY(const VForm& f, const ChartPtr& chart) {
    const int n = chart->n(), k = chart->k();
    if (n < 2 || k < 2) throw OutOfCharacterizedRegime();
    if (f.form_degree() != 0 || f.value_degree() != 1)
        throw DegreeMismatch();
    HF1Decomposition out;
    out.g.n = n;
    out.g.k = k;
    out.xi.assign(static_cast<size_t>(n), Scalar(0));
    out.zeta.assign(static_cast<size_t>(k), Scalar(0));
    std::map<int, std::map<std::string, Scalar>> coeffs;  // value index -> pi var -> coeff
    std::map<int, Scalar> rests;
    for (int mu = 1; mu <= n + k; ++mu) {
        std::map<std::string, Scalar> c;
        Scalar rest;
        if (!detail::split_linear_in_pi(f.coefficient({}, {mu}), c, rest)) return out;
        coeffs[mu] = std::move(c);
        rests[mu] = rest;
    }
    // r̂ block: component i may involve only pi^i_j with coefficient g^j(x),
    // the same g^j for every i; the remainder is xi^i(x).
    std::map<int, Scalar> g_horizontal;
    for (int i = 1; i <= n; ++i) {
        for (const auto& [var, c] : coeffs[i]) {
            bool matched = false;
            for (int j = 1; j <= n; ++j)
                if (var == piname(i, j)) {
                    if (!detail::x_only(c, k)) return out;
                    auto it = g_horizontal.find(j);
                    if (it == g_horizontal.end()) {
                        g_horizontal[j] = c;
                    } else if (it->second != c) {
                        return out;
                    }
                    matched = true;
                    break;
                }
            if (!matched && !c.is_zero()) return out;
        }
        if (!detail::x_only(rests[i], k)) return out;
        out.xi[static_cast<size_t>(i - 1)] = rests[i];
    }
    // Components of g seen only in the ŝ block must still agree, so collect
    // them before deciding.
    std::map<int, Scalar> g_vertical;
    for (int b = 1; b <= k; ++b) {
        for (const auto& [var, c] : coeffs[n + b]) {
            bool matched = false;
            for (int i = 1; i <= n; ++i)
                if (var == piname(n + b, i)) {
                    if (!detail::x_only(c, k)) return out;
                    auto it = g_horizontal.find(i);
                    if (it == g_horizontal.end()) {
                        g_horizontal[i] = c;
                    } else if (it->second != c) {
                        return out;
                    }
                    matched = true;
                    break;
                }
            if (matched) continue;
            for (int a = 1; a <= k; ++a)
                if (var == piname(n + b, n + a)) {
                    auto it = g_vertical.find(a);
                    if (it == g_vertical.end()) {
                        g_vertical[a] = c;
                    } else if (it->second != c) {
                        return out;
                    }
                    matched = true;
                    break;
                }
            if (!matched && !c.is_zero()) return out;
        }
        out.zeta[static_cast<size_t>(b - 1)] = rests[n + b];
    }
    out.g.vi = g_horizontal;
    out.g.vA = g_vertical;
    try {
        out.g.validate();
    } catch (const NotProjectable&) {
        return out;
    }
    out.allowable = true;
    return out;
}

/// Consistency report for the degree-m structure equation
/// d(f̂ ∧ (∧^m i*theta)) = -X_f̂ ⌟ (i*dtheta ∧ (∧^m i*theta)).
struct DegreeMReport {
    bool consistent = false;
    VForm lhs;
    VForm rhs;
};

inline DegreeMReport solve_structure_m(const ProjectableField& v, const ChartPtr& chart, int m) {
    if (m < 0 || m > chart->n() + chart->k() - 2)
        throw BadDegree("m must lie in [0, n+k-2]");
    VForm theta = theta_LVY(chart);
    VForm fhat = tensorial_from_vf_LVY(v, chart);
    VField x = hamiltonian_vf_LVY(v, chart);
    VForm pow_m = wedge_power(theta, m);
    DegreeMReport rep{false, ext_d(wedge(fhat, pow_m)),
                      -interior(x, wedge(ext_d(theta), pow_m))};
    rep.consistent = (rep.lhs == rep.rhs);
    return rep;
}

}  // namespace msx
