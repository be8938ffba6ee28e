#pragma once

/// Exact linear solves over the Scalar field using fraction-free (Bareiss)
/// elimination: each update is (pivot*a_ij - a_ip*a_pj) / previous_pivot, so
/// intermediate entries stay small products instead of nested fractions.

#include <vector>

#include "msx/scalar.hpp"

namespace msx {

enum class SolveStatus { Unique, Inconsistent, Underdetermined };

struct SolveResult {
    SolveStatus status = SolveStatus::Unique;
    std::vector<Scalar> solution;  // valid when status == Unique
    int rank = 0;
    int kernel_dim = 0;  // unknowns - rank
};

/// Solve A x = b exactly.  Rows may exceed unknowns; inconsistent systems are
/// reported, as is a nontrivial kernel (solution not returned in that case).
inline SolveResult solve_linear(std::vector<std::vector<Scalar>> a, std::vector<Scalar> b) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
    std::vector<int> pivot_row(cols, -1);
    Scalar prev_pivot(1);
    int rank = 0;

    for (int col = 0; col < cols && rank < rows; ++col) {
        int sel = -1;
        for (int r = rank; r < rows; ++r)
            if (!a[r][col].is_zero()) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        std::swap(a[rank], a[sel]);
        std::swap(b[rank], b[sel]);
        const Scalar pivot = a[rank][col];
        for (int r = 0; r < rows; ++r) {
            if (r == rank) continue;
            const Scalar factor = a[r][col];
            for (int c = 0; c < cols; ++c)
                a[r][c] = arith(pivot * a[r][c] - factor * a[rank][c], prev_pivot, '/');
            b[r] = arith(pivot * b[r] - factor * b[rank], prev_pivot, '/');
        }
        prev_pivot = pivot;
        pivot_row[col] = rank;
        ++rank;
    }

    SolveResult res;
    res.rank = rank;
    res.kernel_dim = cols - rank;
    for (int r = rank; r < rows; ++r)
        if (!b[r].is_zero()) {
            res.status = SolveStatus::Inconsistent;
            return res;
        }
    if (res.kernel_dim > 0) {
        res.status = SolveStatus::Underdetermined;
        return res;
    }
    res.solution.assign(static_cast<size_t>(cols), Scalar(0));
    for (int col = 0; col < cols; ++col) {
        int r = pivot_row[col];
        res.solution[static_cast<size_t>(col)] = b[r] / a[r][col];
    }
    return res;
}

}  // namespace msx
