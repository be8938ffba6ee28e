#pragma once

/// Canonical charts and canonical geometric objects for each space: the
/// configuration space Y, the affine multiphase space Z, the linear multiphase
/// space J*Y in both representations, the vertically adapted frame bundle
/// L_VY, and the plain frame bundle LM.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "msx/exterior.hpp"
#include "msx/structeq.hpp"

namespace msx {

enum class SpaceTag { Y, Z, JstarGunther, JstarKT, LVY, LM };

struct SpaceKind {
    SpaceTag tag;
    int n = 1;
    int k = 1;  // ignored for LM
};

inline std::string space_tag_name(SpaceTag t) {
    switch (t) {
        case SpaceTag::Y: return "Y";
        case SpaceTag::Z: return "Z";
        case SpaceTag::JstarGunther: return "Jstar.gunther";
        case SpaceTag::JstarKT: return "Jstar.kt";
        case SpaceTag::LVY: return "LVY";
        case SpaceTag::LM: return "LM";
    }
    return "?";
}

// Coordinate name conventions shared by all charts.
inline std::string xname(int i) { return "x" + std::to_string(i); }
inline std::string yname(int a) { return "y" + std::to_string(a); }
/// Momentum p^j_B on Z and J*Y.
inline std::string pname(int j, int b) { return "p" + std::to_string(j) + "_" + std::to_string(b); }
/// Frame coordinate pi^mu_nu on L_VY (global indices 1..n+k) and LM (1..n).
inline std::string piname(int mu, int nu) { return "pi" + std::to_string(mu) + "_" + std::to_string(nu); }

inline ChartPtr make_chart(const SpaceKind& kind) {
    const int n = kind.n, k = kind.k;
    if (n < 1) throw BadDimensions("n must be >= 1");
    if (kind.tag != SpaceTag::LM && k < 1) throw BadDimensions("k must be >= 1");
    std::vector<Coord> coords;
    auto base = [&] {
        for (int i = 1; i <= n; ++i) coords.push_back({xname(i), CoordRole::Base});
    };
    auto fiber = [&] {
        for (int a = 1; a <= k; ++a) coords.push_back({yname(a), CoordRole::Fiber});
    };
    switch (kind.tag) {
        case SpaceTag::Y:
            base();
            fiber();
            return std::make_shared<Chart>("Y", std::move(coords), n, k);
        case SpaceTag::Z:
            base();
            fiber();
            for (int j = 1; j <= n; ++j)
                for (int b = 1; b <= k; ++b) coords.push_back({pname(j, b), CoordRole::Momentum});
            coords.push_back({"p", CoordRole::Momentum});
            return std::make_shared<Chart>("Z", std::move(coords), n, k);
        case SpaceTag::JstarGunther:
        case SpaceTag::JstarKT:
            base();
            fiber();
            for (int j = 1; j <= n; ++j)
                for (int b = 1; b <= k; ++b) coords.push_back({pname(j, b), CoordRole::Momentum});
            return std::make_shared<Chart>(space_tag_name(kind.tag), std::move(coords), n, k);
        case SpaceTag::LVY:
            base();
            fiber();
            // pi^i_j, then pi^A_B, then pi^A_j (the coframe's lower-left block).
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j) coords.push_back({piname(i, j), CoordRole::Frame});
            for (int a = 1; a <= k; ++a)
                for (int b = 1; b <= k; ++b) coords.push_back({piname(n + a, n + b), CoordRole::Frame});
            for (int a = 1; a <= k; ++a)
                for (int j = 1; j <= n; ++j) coords.push_back({piname(n + a, j), CoordRole::Frame});
            return std::make_shared<Chart>("LVY", std::move(coords), n, k);
        case SpaceTag::LM:
            base();
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j) coords.push_back({piname(i, j), CoordRole::Frame});
            return std::make_shared<Chart>("LM", std::move(coords), n, 0);
    }
    throw BadDimensions("unknown space kind");
}

/// d^n x, the d^{n-1}x_i family, and the d^{n-2}x_{ij} family on a chart with
/// base coordinates x^1..x^n.  For n = 1 the depth-2 family is empty.
struct VolumeForms {
    VForm dnx;
    std::vector<VForm> dn1;                    // index i-1 holds d^{n-1}x_i
    std::map<std::pair<int, int>, VForm> dn2;  // (i,j) -> d^{n-2}x_{ij}, i != j
    VolumeForms() : dnx(nullptr, 0, 0) {}
};

inline VolumeForms volume_forms(const ChartPtr& chart, int depth = 2) {
    const int n = chart->n();
    VolumeForms out;
    VForm dnx(chart, n, 0);
    std::vector<int> idx;
    for (int i = 1; i <= n; ++i) idx.push_back(chart->index(xname(i)));
    dnx.add_term(idx, {}, Scalar(1));
    out.dnx = dnx;
    if (depth < 1) return out;
    auto basis = [&](int i) {
        VField e(chart);
        e.set(xname(i), Scalar(1));
        return e;
    };
    for (int i = 1; i <= n; ++i) out.dn1.push_back(interior(basis(i), dnx));
    if (depth < 2 || n == 1) return out;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (i == j) continue;
            out.dn2.emplace(std::make_pair(i, j),
                            interior(basis(j), out.dn1[static_cast<size_t>(i - 1)]));
        }
    return out;
}

/// The pulled-back soldering form on L_VY:
///   i*theta = pi^i_j dx^j ⊗ r̂_i + (pi^A_j dx^j + pi^A_B dy^B) ⊗ ŝ_A.
inline VForm theta_LVY(const ChartPtr& chart) {
    const int n = chart->n(), k = chart->k();
    VForm th(chart, 1, 1);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            th.add_term({chart->index(xname(j))}, {i}, Scalar::variable(piname(i, j)));
    for (int a = 1; a <= k; ++a) {
        for (int j = 1; j <= n; ++j)
            th.add_term({chart->index(xname(j))}, {n + a}, Scalar::variable(piname(n + a, j)));
        for (int b = 1; b <= k; ++b)
            th.add_term({chart->index(yname(b))}, {n + a}, Scalar::variable(piname(n + a, n + b)));
    }
    return th;
}

/// Soldering form on LM: theta = pi^i_j dx^j ⊗ r̂_i.
inline VForm theta_LM(const ChartPtr& chart) {
    const int n = chart->n();
    VForm th(chart, 1, 1);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            th.add_term({chart->index(xname(j))}, {i}, Scalar::variable(piname(i, j)));
    return th;
}

/// The canonical n-form on Z: Theta = p^i_A dy^A ∧ d^{n-1}x_i + p d^n x.
inline VForm Theta_Z(const ChartPtr& chart) {
    const int n = chart->n(), k = chart->k();
    VolumeForms vol = volume_forms(chart, 1);
    VForm theta = Scalar::variable("p") * vol.dnx;
    for (int i = 1; i <= n; ++i)
        for (int a = 1; a <= k; ++a) {
            VForm dy(chart, 1, 0);
            dy.add_term({chart->index(yname(a))}, {}, Scalar::variable(pname(i, a)));
            theta = theta + wedge(dy, vol.dn1[static_cast<size_t>(i - 1)]);
        }
    return theta;
}

/// Ehresmann connection coefficients gamma^A_j over (x, y).
struct ConnectionCoefficients {
    int n = 1, k = 1;
    std::map<std::pair<int, int>, Scalar> gamma;  // (A, j) -> Scalar

    Scalar at(int a, int j) const {
        auto it = gamma.find({a, j});
        return it == gamma.end() ? Scalar(0) : it->second;
    }

    void validate() const {
        for (const auto& [key, s] : gamma) {
            if (key.first < 1 || key.first > k || key.second < 1 || key.second > n)
                throw BadDimensions("connection index out of range");
            for (const auto& v : s.num().vars())
                if (v[0] != 'x' && v[0] != 'y')
                    throw BadDimensions("connection entry depends on " + v);
            for (const auto& v : s.den().vars())
                if (v[0] != 'x' && v[0] != 'y')
                    throw BadDimensions("connection entry depends on " + v);
        }
    }
};

/// Linear multisymplectic potential Theta_gamma.  Günther representation: a
/// TX-valued 1-form with value indices in the r̂ block.  KT representation: a
/// real-valued n-form through the d^{n-1}x_i basis.
inline VForm Theta_gamma(const ChartPtr& chart, SpaceTag tag, const ConnectionCoefficients& gc) {
    const int n = chart->n(), k = chart->k();
    if (gc.n != n || gc.k != k) throw BadDimensions("connection dims do not match chart");
    gc.validate();
    auto scalar_part = [&](int i) {
        // p^i_A dy^A + p^i_A gamma^A_j dx^j  (one-form for fixed i)
        VForm w(chart, 1, 0);
        for (int a = 1; a <= k; ++a) {
            w.add_term({chart->index(yname(a))}, {}, Scalar::variable(pname(i, a)));
            for (int j = 1; j <= n; ++j)
                w.add_term({chart->index(xname(j))}, {},
                           Scalar::variable(pname(i, a)) * gc.at(a, j));
        }
        return w;
    };
    if (tag == SpaceTag::JstarGunther) {
        VForm out(chart, 1, 1);
        for (int i = 1; i <= n; ++i) {
            VForm part = scalar_part(i);
            for (const auto& [key, c] : part.terms()) out.add_term(key.first, {i}, c);
        }
        return out;
    }
    if (tag == SpaceTag::JstarKT) {
        VolumeForms vol = volume_forms(chart, 1);
        VForm out = VForm::zero(chart, n, 0);
        for (int i = 1; i <= n; ++i)
            out = out + wedge(scalar_part(i), vol.dn1[static_cast<size_t>(i - 1)]);
        return out;
    }
    throw BadDimensions("Theta_gamma is defined on the J* representations");
}

/// The unique E with E ⌟ dTheta = Theta on Z.
inline VField euler_field(const ChartPtr& chart) {
    VForm theta = Theta_Z(chart);
    ContractionSolve sol = solve_contraction(ext_d(theta), theta);
    if (sol.status == SolveStatus::Underdetermined) throw SingularStructure();
    if (sol.status == SolveStatus::Inconsistent) throw SolveFailed("Euler field system inconsistent");
    return sol.field;
}

}  // namespace msx
