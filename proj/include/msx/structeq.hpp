#pragma once

/// Solving contraction equations X ⌟ omega = rhs for an unknown vector field:
/// the coefficients of the canonical (form-index, value-index) basis are
/// equated and the resulting linear system over Scalar is eliminated exactly.

#include <map>
#include <vector>

#include "msx/exterior.hpp"
#include "msx/linsolve.hpp"

namespace msx {

struct ContractionSystem {
    std::vector<VForm::Key> keys;            // row labels
    std::vector<std::vector<Scalar>> matrix; // rows x chart-dim
    std::vector<Scalar> rhs;
};

/// Coefficient-matching system for X ⌟ omega = rhs (rhs may be null to get
/// the homogeneous system).
inline ContractionSystem contraction_system(const VForm& omega, const VForm* rhs) {
    const ChartPtr& chart = omega.chart();
    const int dim = chart->dim();
    std::vector<VForm> basis_contractions;
    basis_contractions.reserve(static_cast<size_t>(dim));
    std::map<VForm::Key, int> key_index;
    for (int mu = 0; mu < dim; ++mu) {
        VField e(chart);
        e.set(chart->coord_name(mu), Scalar(1));
        VForm c = interior(e, omega);
        for (const auto& [key, s] : c.terms()) key_index.emplace(key, 0);
        basis_contractions.push_back(std::move(c));
    }
    if (rhs != nullptr)
        for (const auto& [key, s] : rhs->terms()) key_index.emplace(key, 0);

    ContractionSystem sys;
    int row = 0;
    for (auto& [key, idx] : key_index) {
        idx = row++;
        sys.keys.push_back(key);
    }
    sys.matrix.assign(sys.keys.size(), std::vector<Scalar>(static_cast<size_t>(dim), Scalar(0)));
    sys.rhs.assign(sys.keys.size(), Scalar(0));
    for (int mu = 0; mu < dim; ++mu)
        for (const auto& [key, s] : basis_contractions[static_cast<size_t>(mu)].terms())
            sys.matrix[static_cast<size_t>(key_index[key])][static_cast<size_t>(mu)] = s;
    if (rhs != nullptr)
        for (const auto& [key, s] : rhs->terms())
            sys.rhs[static_cast<size_t>(key_index.at(key))] = s;
    return sys;
}

struct ContractionSolve {
    SolveStatus status;
    VField field;
    int kernel_dim;
};

inline ContractionSolve solve_contraction(const VForm& omega, const VForm& rhs) {
    omega.check_same(rhs);
    ContractionSystem sys = contraction_system(omega, &rhs);
    SolveResult res = solve_linear(sys.matrix, sys.rhs);
    ContractionSolve out{res.status, VField(omega.chart()), res.kernel_dim};
    if (res.status == SolveStatus::Unique)
        for (int mu = 0; mu < omega.chart()->dim(); ++mu)
            out.field.set(omega.chart()->coord_name(mu), res.solution[static_cast<size_t>(mu)]);
    return out;
}

/// Symbol-level kernel of X -> X ⌟ omega (0 means nondegenerate).
inline int contraction_kernel_dim(const VForm& omega) {
    ContractionSystem sys = contraction_system(omega, nullptr);
    SolveResult res = solve_linear(sys.matrix, sys.rhs);
    return res.kernel_dim;
}

/// Rank of the contraction matrix evaluated at a rational point.
inline int contraction_rank_at(const VForm& omega, const std::map<std::string, Rational>& point) {
    ContractionSystem sys = contraction_system(omega, nullptr);
    std::vector<std::vector<Rational>> m(sys.matrix.size());
    for (size_t r = 0; r < sys.matrix.size(); ++r)
        for (const auto& s : sys.matrix[r]) m[r].push_back(s.evaluate(point));
    // Rational Gaussian elimination.
    int rank = 0;
    const int rows = static_cast<int>(m.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
    for (int col = 0; col < cols && rank < rows; ++col) {
        int sel = -1;
        for (int r = rank; r < rows; ++r)
            if (m[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        std::swap(m[static_cast<size_t>(rank)], m[static_cast<size_t>(sel)]);
        for (int r = rank + 1; r < rows; ++r) {
            Rational f = m[static_cast<size_t>(r)][static_cast<size_t>(col)] /
                         m[static_cast<size_t>(rank)][static_cast<size_t>(col)];
            if (f == 0) continue;
            for (int c = col; c < cols; ++c)
                m[static_cast<size_t>(r)][static_cast<size_t>(c)] -=
                    f * m[static_cast<size_t>(rank)][static_cast<size_t>(c)];
        }
        ++rank;
    }
    return rank;
}

}  // namespace msx
