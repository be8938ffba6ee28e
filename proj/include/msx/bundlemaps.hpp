#pragma once

/// The adapted structure group, its actions, frame algebra at points, the
/// associated-bundle representative maps, the chart map from the adapted frame
/// bundle to the affine multiphase space, and the connection / symmetry
/// breaking / splitting equivalences.

#include <map>
#include <utility>
#include <vector>

#include "msx/hamilton.hpp"

namespace msx {

/// Dense rational matrix.
struct QMat {
    int rows = 0, cols = 0;
    std::vector<std::vector<Rational>> a;

    QMat() = default;
    QMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r), std::vector<Rational>(static_cast<size_t>(c), Rational(0))) {}

    static QMat identity(int m) {
        QMat q(m, m);
        for (int i = 0; i < m; ++i) q.at(i, i) = 1;
        return q;
    }

    Rational& at(int r, int c) { return a[static_cast<size_t>(r)][static_cast<size_t>(c)]; }
    const Rational& at(int r, int c) const { return a[static_cast<size_t>(r)][static_cast<size_t>(c)]; }

    friend QMat operator*(const QMat& x, const QMat& y) {
        if (x.cols != y.rows) throw ShapeMismatch("matrix product");
        QMat out(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int j = 0; j < y.cols; ++j) {
                Rational s = 0;
                for (int l = 0; l < x.cols; ++l) s += x.at(i, l) * y.at(l, j);
                out.at(i, j) = s;
            }
        return out;
    }
    friend QMat operator+(const QMat& x, const QMat& y) {
        if (x.rows != y.rows || x.cols != y.cols) throw ShapeMismatch("matrix sum");
        QMat out = x;
        for (int i = 0; i < x.rows; ++i)
            for (int j = 0; j < x.cols; ++j) out.at(i, j) += y.at(i, j);
        return out;
    }
    friend QMat operator-(const QMat& x, const QMat& y) {
        if (x.rows != y.rows || x.cols != y.cols) throw ShapeMismatch("matrix difference");
        QMat out = x;
        for (int i = 0; i < x.rows; ++i)
            for (int j = 0; j < x.cols; ++j) out.at(i, j) -= y.at(i, j);
        return out;
    }
    friend QMat operator*(const Rational& c, const QMat& x) {
        QMat out = x;
        for (auto& row : out.a)
            for (auto& v : row) v *= c;
        return out;
    }
    friend bool operator==(const QMat& x, const QMat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
    friend bool operator!=(const QMat& x, const QMat& y) { return !(x == y); }

    Rational trace() const {
        Rational t = 0;
        for (int i = 0; i < rows && i < cols; ++i) t += at(i, i);
        return t;
    }

    Rational det() const {
        if (rows != cols) throw ShapeMismatch("determinant of nonsquare matrix");
        QMat m = *this;
        Rational d = 1;
        for (int col = 0; col < cols; ++col) {
            int sel = -1;
            for (int r = col; r < rows; ++r)
                if (m.at(r, col) != 0) { sel = r; break; }
            if (sel < 0) return 0;
            if (sel != col) {
                std::swap(m.a[static_cast<size_t>(sel)], m.a[static_cast<size_t>(col)]);
                d = -d;
            }
            d *= m.at(col, col);
            for (int r = col + 1; r < rows; ++r) {
                Rational f = m.at(r, col) / m.at(col, col);
                if (f == 0) continue;
                for (int c = col; c < cols; ++c) m.at(r, c) -= f * m.at(col, c);
            }
        }
        return d;
    }

    QMat inverse() const {
        if (rows != cols) throw ShapeMismatch("inverse of nonsquare matrix");
        QMat m = *this;
        QMat inv = identity(rows);
        for (int col = 0; col < cols; ++col) {
            int sel = -1;
            for (int r = col; r < rows; ++r)
                if (m.at(r, col) != 0) { sel = r; break; }
            if (sel < 0) throw SingularFrame();
            std::swap(m.a[static_cast<size_t>(sel)], m.a[static_cast<size_t>(col)]);
            std::swap(inv.a[static_cast<size_t>(sel)], inv.a[static_cast<size_t>(col)]);
            Rational p = m.at(col, col);
            for (int c = 0; c < cols; ++c) {
                m.at(col, c) /= p;
                inv.at(col, c) /= p;
            }
            for (int r = 0; r < rows; ++r) {
                if (r == col) continue;
                Rational f = m.at(r, col);
                if (f == 0) continue;
                for (int c = 0; c < cols; ++c) {
                    m.at(r, c) -= f * m.at(col, c);
                    inv.at(r, c) -= f * inv.at(col, c);
                }
            }
        }
        return inv;
    }
};

/// (N, K, A): block lower triangular (N 0 / A K) with N in GL(n), K in GL(k).
struct GroupElement {
    QMat N, K, A;

    GroupElement(QMat n_, QMat k_, QMat a_) : N(std::move(n_)), K(std::move(k_)), A(std::move(a_)) {
        if (N.rows != N.cols || K.rows != K.cols || A.rows != K.rows || A.cols != N.cols)
            throw ShapeMismatch("group element blocks");
        if (N.det() == 0 || K.det() == 0) throw SingularFrame();
    }

    static GroupElement identity(int n, int k) {
        return GroupElement(QMat::identity(n), QMat::identity(k), QMat(k, n));
    }

    int n() const { return N.rows; }
    int k() const { return K.rows; }

    /// The full (n+k)x(n+k) block matrix.
    QMat block() const {
        QMat m(n() + k(), n() + k());
        for (int i = 0; i < n(); ++i)
            for (int j = 0; j < n(); ++j) m.at(i, j) = N.at(i, j);
        for (int b = 0; b < k(); ++b)
            for (int j = 0; j < n(); ++j) m.at(n() + b, j) = A.at(b, j);
        for (int b = 0; b < k(); ++b)
            for (int c = 0; c < k(); ++c) m.at(n() + b, n() + c) = K.at(b, c);
        return m;
    }

    friend GroupElement operator*(const GroupElement& g, const GroupElement& h) {
        return GroupElement(g.N * h.N, g.K * h.K, g.A * h.N + g.K * h.A);
    }

    GroupElement inverse() const {
        QMat ni = N.inverse(), ki = K.inverse();
        return GroupElement(ni, ki, Rational(-1) * (ki * A * ni));
    }

    friend bool operator==(const GroupElement& g, const GroupElement& h) {
        return g.N == h.N && g.K == h.K && g.A == h.A;
    }
};

/// A vertically adapted frame at a point of Y: column mu of E holds the chart
/// components of frame vector mu.  The last k columns are vertical, so the
/// top-right n x k block vanishes.
struct FramePoint {
    std::map<std::string, Rational> base;  // x and y coordinate values
    QMat E;
    int n = 1, k = 1;

    void validate() const {
        if (E.rows != n + k || E.cols != n + k) throw ShapeMismatch("frame matrix size");
        for (int i = 0; i < n; ++i)
            for (int b = 0; b < k; ++b)
                if (E.at(i, n + b) != 0)
                    throw ShapeMismatch("frame not vertically adapted");
        if (E.det() == 0) throw SingularFrame();
    }

    QMat top_left() const {  // base components of the horizontal-candidate vectors
        QMat f(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) f.at(i, j) = E.at(i, j);
        return f;
    }
    QMat bottom_left() const {
        QMat g(k, n);
        for (int b = 0; b < k; ++b)
            for (int j = 0; j < n; ++j) g.at(b, j) = E.at(n + b, j);
        return g;
    }
    QMat bottom_right() const {
        QMat h(k, k);
        for (int b = 0; b < k; ++b)
            for (int c = 0; c < k; ++c) h.at(b, c) = E.at(n + b, n + c);
        return h;
    }
};

/// (B, lambda) with B an n x k matrix.
struct MomentumLabel {
    QMat B;
    Rational lambda;
};

/// A map L_VY -> R^{k x n} given componentwise by Scalars over the chart.
struct SymmetryBreaker {
    int n = 1, k = 1;
    std::map<std::pair<int, int>, Scalar> lam;  // (B, i) -> Scalar

    Scalar at(int b, int i) const {
        auto it = lam.find({b, i});
        return it == lam.end() ? Scalar(0) : it->second;
    }
};

// ---- Group actions ----

/// (y, {e_i, eps_A}) . (N,K,A) = (y, {e_j N^j_i + eps_B A^B_i, eps_B K^B_A}).
inline FramePoint group_action_frame(const FramePoint& w, const GroupElement& g) {
    if (g.n() != w.n || g.k() != w.k) throw ShapeMismatch("group vs frame dims");
    FramePoint out = w;
    out.E = w.E * g.block();
    return out;
}

/// Action on the dual coframe, rows of C: C . g = block(g)^{-1} C.
inline QMat group_action_coframe(const QMat& c, const GroupElement& g) {
    if (c.rows != g.n() + g.k()) throw ShapeMismatch("coframe rows");
    return g.block().inverse() * c;
}

/// (N,K,A) . W = K W N^{-1} - A N^{-1} on R^{k x n}.
inline QMat group_action_kn_affine(const QMat& w, const GroupElement& g) {
    if (w.rows != g.k() || w.cols != g.n()) throw ShapeMismatch("operand is not k x n");
    QMat ni = g.N.inverse();
    return g.K * w * ni - g.A * ni;
}

/// (N,K,A) . B = N B K^{-1} on R^{n x k}.
inline QMat group_action_nk_linear(const QMat& b, const GroupElement& g) {
    if (b.rows != g.n() || b.cols != g.k()) throw ShapeMismatch("operand is not n x k");
    return g.N * b * g.K.inverse();
}

/// (N,K,A) . B = det(N^{-1}) N B K^{-1}.
inline QMat group_action_nk_normalized(const QMat& b, const GroupElement& g) {
    return Rational(1) / g.N.det() * group_action_nk_linear(b, g);
}

/// (N,K,A) . (B, lambda) = det(N^{-1}) (N B K^{-1}, lambda - Tr(B K^{-1} A)).
inline MomentumLabel group_action_nk_r(const MomentumLabel& bl, const GroupElement& g) {
    if (bl.B.rows != g.n() || bl.B.cols != g.k()) throw ShapeMismatch("operand is not n x k");
    Rational dinv = Rational(1) / g.N.det();
    MomentumLabel out;
    out.B = dinv * (g.N * bl.B * g.K.inverse());
    out.lambda = dinv * (bl.lambda - (bl.B * g.K.inverse() * g.A).trace());
    return out;
}

// ---- Representative maps at frame points ----

namespace detail {

/// Constant-coefficient 1-form from a covector row (components on dx, dy).
inline VForm covector_form(const ChartPtr& chart, const std::vector<Rational>& row) {
    VForm f(chart, 1, 0);
    for (size_t mu = 0; mu < row.size(); ++mu)
        if (row[mu] != 0) f.add_term({static_cast<int>(mu)}, {}, Scalar(row[mu]));
    return f;
}

inline VField constant_field(const ChartPtr& chart, const QMat& e, int col) {
    VField v(chart);
    for (int mu = 0; mu < e.rows; ++mu)
        if (e.at(mu, col) != 0) v.set(chart->coord_name(mu), Scalar(e.at(mu, col)));
    return v;
}

}  // namespace detail

/// rho_Z [w, (B, lambda)] = (y, B^j_B eps^B ^ omega(e)_j + lambda omega(e))
/// as an n-form over the chart on Y at w.base.
inline VForm rho_Z(const FramePoint& w, const MomentumLabel& bl, const ChartPtr& chartY) {
    w.validate();
    const int n = w.n, k = w.k;
    if (bl.B.rows != n || bl.B.cols != k) throw ShapeMismatch("label is not n x k");
    QMat c = w.E.inverse();  // row mu = dual coframe covector mu
    auto cov = [&](int mu) {
        return detail::covector_form(chartY, c.a[static_cast<size_t>(mu)]);
    };
    VForm omega = VForm::one(chartY);
    for (int i = 0; i < n; ++i) omega = wedge(omega, cov(i));
    VForm out = Scalar(bl.lambda) * omega;
    for (int j = 0; j < n; ++j) {
        VForm omega_j = interior(detail::constant_field(chartY, w.E, j), omega);
        for (int b = 0; b < k; ++b) {
            if (bl.B.at(j, b) == 0) continue;
            out = out + wedge(Scalar(bl.B.at(j, b)) * cov(n + b), omega_j);
        }
    }
    return out;
}

/// psi [[w, W]] = (y, -W^B_j (pi_* e)^j (x) eps_B): returns the k x n matrix
/// of components on dx^i (x) d/dy^A, entry (A, i).
inline QMat psi_image(const FramePoint& w, const QMat& wmat) {
    w.validate();
    if (wmat.rows != w.k || wmat.cols != w.n) throw ShapeMismatch("operand is not k x n");
    return Rational(-1) * (w.bottom_right() * wmat * w.top_left().inverse());
}

/// psi_hat [w, W]: the jet point, returned as the k x n matrix of jet
/// coordinates gamma^A_i (components of the image of d/dx_i on d/dy_A).
inline QMat psi_hat_image(const FramePoint& w, const QMat& wmat) {
    w.validate();
    if (wmat.rows != w.k || wmat.cols != w.n) throw ShapeMismatch("operand is not k x n");
    return (w.bottom_left() - w.bottom_right() * wmat) * w.top_left().inverse();
}

/// rho_Gu [w, B]_Gu: component matrix on dy^A (x) d/dx_j, entry (j, A).
inline QMat rho_Gu_image(const FramePoint& w, const QMat& b) {
    w.validate();
    if (b.rows != w.n || b.cols != w.k) throw ShapeMismatch("operand is not n x k");
    return w.top_left() * b * w.bottom_right().inverse();
}

/// rho_KT [w, B]: component matrix on dy^A (x) omega-basis d^{n-1}x_j,
/// entry (j, A).
inline QMat rho_KT_image(const FramePoint& w, const QMat& b) {
    QMat m = rho_Gu_image(w, b);
    return Rational(1) / w.top_left().det() * m;
}

// ---- Symbolic matrix helpers over the Scalar field ----

using SMat = std::vector<std::vector<Scalar>>;

inline Scalar sym_det(const SMat& m) {
    const size_t n = m.size();
    if (n == 0) return Scalar(1);
    if (n == 1) return m[0][0];
    Scalar d(0);
    for (size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        SMat minor;
        for (size_t r = 1; r < n; ++r) {
            std::vector<Scalar> row;
            for (size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        Scalar term = m[0][j] * sym_det(minor);
        d = (j % 2 == 0) ? d + term : d - term;
    }
    return d;
}

/// adj(m)[i][j] = cofactor of entry (j, i), so m * adj(m) = det(m) I.
inline SMat sym_adjugate(const SMat& m) {
    const size_t n = m.size();
    SMat adj(n, std::vector<Scalar>(n, Scalar(0)));
    if (n == 1) {
        adj[0][0] = Scalar(1);
        return adj;
    }
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c) {
            SMat minor;
            for (size_t i = 0; i < n; ++i) {
                if (i == r) continue;
                std::vector<Scalar> row;
                for (size_t j = 0; j < n; ++j)
                    if (j != c) row.push_back(m[i][j]);
                minor.push_back(std::move(row));
            }
            Scalar cof = sym_det(minor);
            if ((r + c) % 2 == 1) cof = -cof;
            adj[c][r] = cof;
        }
    return adj;
}

namespace detail {

/// The n x n block (pi^i_j) of coframe variables, in Scalar form.
inline SMat pi_base_block(int n) {
    SMat m(static_cast<size_t>(n), std::vector<Scalar>(static_cast<size_t>(n), Scalar(0)));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            m[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] = Scalar::variable(piname(i, j));
    return m;
}

inline SMat pi_fiber_block(int n, int k) {
    SMat m(static_cast<size_t>(k), std::vector<Scalar>(static_cast<size_t>(k), Scalar(0)));
    for (int a = 1; a <= k; ++a)
        for (int b = 1; b <= k; ++b)
            m[static_cast<size_t>(a - 1)][static_cast<size_t>(b - 1)] =
                Scalar::variable(piname(n + a, n + b));
    return m;
}

inline SMat pi_mixed_block(int n, int k) {
    SMat m(static_cast<size_t>(k), std::vector<Scalar>(static_cast<size_t>(n), Scalar(0)));
    for (int a = 1; a <= k; ++a)
        for (int j = 1; j <= n; ++j)
            m[static_cast<size_t>(a - 1)][static_cast<size_t>(j - 1)] =
                Scalar::variable(piname(n + a, j));
    return m;
}

inline SMat sym_mul(const SMat& x, const SMat& y) {
    SMat out(x.size(), std::vector<Scalar>(y[0].size(), Scalar(0)));
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = 0; j < y[0].size(); ++j) {
            Scalar s(0);
            for (size_t l = 0; l < y.size(); ++l) s += x[i][l] * y[l][j];
            out[i][j] = s;
        }
    return out;
}

/// Inverse of the base block: (pi^{-1})[i][j] = adj/det.
inline SMat pi_base_inverse(int n, Scalar* det_out = nullptr) {
    SMat pin = pi_base_block(n);
    Scalar det = sym_det(pin);
    if (det_out != nullptr) *det_out = det;
    SMat adj = sym_adjugate(pin);
    for (auto& row : adj)
        for (auto& s : row) s = s / det;
    return adj;
}

}  // namespace detail

/// phi_{(B,lambda)}: the chart map from the L_VY chart to the Z chart,
///   p^j_B = det(pi^l_m) B^i_A pi^A_B (pi^{-1})^j_i,
///   p     = det(pi^l_m) (B^i_A pi^A_k (pi^{-1})^k_i + lambda).
inline ChartMap phi_B_lambda(const MomentumLabel& bl, const ChartPtr& chartLVY,
                             const ChartPtr& chartZ) {
    const int n = chartLVY->n(), k = chartLVY->k();
    if (bl.B.rows != n || bl.B.cols != k) throw ShapeMismatch("label is not n x k");
    ChartMap m(chartLVY, chartZ);
    for (int i = 1; i <= n; ++i) m.assign(xname(i), Scalar::variable(xname(i)));
    for (int a = 1; a <= k; ++a) m.assign(yname(a), Scalar::variable(yname(a)));
    Scalar det(0);
    SMat pinv = detail::pi_base_inverse(n, &det);
    for (int j = 1; j <= n; ++j)
        for (int b = 1; b <= k; ++b) {
            Scalar s(0);
            for (int i = 1; i <= n; ++i)
                for (int a = 1; a <= k; ++a)
                    s += Scalar(bl.B.at(i - 1, a - 1)) *
                         Scalar::variable(piname(n + a, n + b)) *
                         pinv[static_cast<size_t>(j - 1)][static_cast<size_t>(i - 1)];
            m.assign(pname(j, b), det * s);
        }
    Scalar ps(0);
    for (int i = 1; i <= n; ++i)
        for (int a = 1; a <= k; ++a)
            for (int kk = 1; kk <= n; ++kk)
                ps += Scalar(bl.B.at(i - 1, a - 1)) * Scalar::variable(piname(n + a, kk)) *
                      pinv[static_cast<size_t>(kk - 1)][static_cast<size_t>(i - 1)];
    m.assign("p", det * (ps + Scalar(bl.lambda)));
    return m;
}

/// The pairing covector for the n-form comparison theorem: weights on sorted
/// value index tuples such that pair_value(wedge_power(i*theta, n), V)
/// equals the pullback of Theta through phi_{(B,lambda)}.
inline std::map<std::vector<int>, Rational> theorem71_covector(const MomentumLabel& bl,
                                                               int n, int k) {
    std::map<std::vector<int>, Rational> v;
    if (n == 1) {
        v[{1}] = bl.lambda;
        for (int a = 1; a <= k; ++a)
            if (bl.B.at(0, a - 1) != 0) v[{1 + a}] = bl.B.at(0, a - 1);
        return v;
    }
    // The sorted-tuple storage of a wedge power aggregates all n! orderings
    // into one term, so each weight carries a 1/n! normalization.
    Rational norm(1);
    for (int i = 2; i <= n; ++i) norm /= i;
    // All-base tuple (1..n): weight lambda.
    std::vector<int> full;
    for (int i = 1; i <= n; ++i) full.push_back(i);
    if (bl.lambda != 0) v[full] = norm * bl.lambda;
    // One fiber index: n-1 base indices with one missing value j.
    for (int miss = 1; miss <= n; ++miss) {
        // sign of the permutation (miss, rest ascending) relative to ascending
        int sign = (miss - 1) % 2 == 0 ? 1 : -1;
        // moving the fiber index from first slot to last costs (-1)^(n-1)
        if ((n - 1) % 2 == 1) sign = -sign;
        for (int a = 1; a <= k; ++a) {
            Rational b = bl.B.at(miss - 1, a - 1);
            if (b == 0) continue;
            std::vector<int> key;
            for (int i = 1; i <= n; ++i)
                if (i != miss) key.push_back(i);
            key.push_back(n + a);
            v[key] = norm * sign * b;
        }
    }
    return v;
}

/// Dual-route verification of the pushforward theorem: at each sample point,
/// the Jacobian pushforward of the Hamiltonian field on L_VY equals the
/// closed-form Hamiltonian field on Z at the image point, and the displayed
/// pushforward formula agrees with the Jacobian route.
struct PushforwardReport {
    bool jacobian_matches_target = true;
    bool formula_matches_jacobian = true;
    int points_checked = 0;
};

/// The displayed coordinate formula for phi_* X, as Scalars on the L_VY chart
/// keyed by Z coordinate names.
inline std::map<std::string, Scalar> pushforward_formula(const VField& x,
                                                         const MomentumLabel& bl,
                                                         const ChartPtr& chartLVY) {
    const int n = chartLVY->n(), k = chartLVY->k();
    Scalar det(0);
    SMat pinv = detail::pi_base_inverse(n, &det);
    auto Pi = [&](int r, int c) { return pinv[static_cast<size_t>(r - 1)][static_cast<size_t>(c - 1)]; };
    auto B = [&](int i, int a) { return Scalar(bl.B.at(i - 1, a - 1)); };
    std::map<std::string, Scalar> out;
    for (int i = 1; i <= n; ++i) out[xname(i)] = x.component(xname(i));
    for (int a = 1; a <= k; ++a) out[yname(a)] = x.component(yname(a));
    for (int i = 1; i <= n; ++i)
        for (int a = 1; a <= k; ++a) {
            Scalar s(0);
            for (int j = 1; j <= n; ++j)
                for (int b = 1; b <= k; ++b) {
                    Scalar pab = Scalar::variable(piname(n + b, n + a));
                    Scalar t = Pi(i, j) * x.component(piname(n + b, n + a));
                    for (int kk = 1; kk <= n; ++kk)
                        for (int l = 1; l <= n; ++l) {
                            Scalar xc = x.component(piname(kk, l));
                            if (xc.is_zero()) continue;
                            t -= pab * Pi(i, kk) * Pi(l, j) * xc;
                            t += pab * Pi(i, j) * Pi(l, kk) * xc;
                        }
                    s += B(j, b) * t;
                }
            out[pname(i, a)] = det * s;
        }
    Scalar ps(0);
    for (int i = 1; i <= n; ++i)
        for (int a = 1; a <= k; ++a) {
            Scalar t(0);
            for (int kk = 1; kk <= n; ++kk) {
                for (int j = 1; j <= n; ++j)
                    for (int l = 1; l <= n; ++l) {
                        Scalar xc = x.component(piname(j, l));
                        if (!xc.is_zero())
                            t -= Scalar::variable(piname(n + a, kk)) * Pi(kk, j) * Pi(l, i) * xc;
                    }
                t += Pi(kk, i) * x.component(piname(n + a, kk));
            }
            for (int l = 1; l <= n; ++l)
                for (int kk = 1; kk <= n; ++kk)
                    for (int j = 1; j <= n; ++j) {
                        Scalar xc = x.component(piname(kk, l));
                        if (!xc.is_zero())
                            t += Pi(l, kk) * Pi(j, i) * Scalar::variable(piname(n + a, j)) * xc;
                    }
            ps += B(i, a) * t;
        }
    Scalar lt(0);
    for (int kk = 1; kk <= n; ++kk)
        for (int l = 1; l <= n; ++l) {
            Scalar xc = x.component(piname(kk, l));
            if (!xc.is_zero()) lt += Pi(l, kk) * xc;
        }
    out["p"] = det * (ps + Scalar(bl.lambda) * lt);
    return out;
}

inline PushforwardReport pushforward_theorem72(
    const ProjectableField& v, const MomentumLabel& bl, const ChartPtr& chartLVY,
    const ChartPtr& chartZ, const std::vector<std::map<std::string, Rational>>& points) {
    VField xhat = hamiltonian_vf_LVY(v, chartLVY);
    VField xz = hamiltonian_vf_Z(v, chartZ);
    ChartMap phi = phi_B_lambda(bl, chartLVY, chartZ);
    std::map<std::string, Scalar> formula = pushforward_formula(xhat, bl, chartLVY);
    PushforwardReport rep;
    for (const auto& pt : points) {
        std::map<std::string, Rational> jac = pushforward_at(phi, xhat, pt);
        std::map<std::string, Rational> image = phi.image_point(pt);
        for (const auto& c : chartZ->coords()) {
            Rational target = xz.component(c.name).evaluate(image);
            if (jac.at(c.name) != target) rep.jacobian_matches_target = false;
            if (formula.at(c.name).evaluate(pt) != jac.at(c.name))
                rep.formula_matches_jacobian = false;
        }
        ++rep.points_checked;
    }
    return rep;
}

// ---- Connection / symmetry breaking / splitting ----

/// lambda_gamma^B_i = pi^B_A (e^j_i gamma^A_j + e^A_i), with the frame entries
/// e^j_i, e^A_i recovered symbolically from the coframe variables.
inline SymmetryBreaker connection_to_lambda(const ConnectionCoefficients& gc,
                                            const ChartPtr& chartLVY) {
    const int n = chartLVY->n(), k = chartLVY->k();
    if (gc.n != n || gc.k != k) throw BadDimensions("connection dims do not match chart");
    gc.validate();
    Scalar detn(0), detk(0);
    SMat f = detail::pi_base_inverse(n, &detn);  // e^j_i = f[j][i]
    SMat pik = detail::pi_fiber_block(n, k);
    SMat hk = sym_adjugate(pik);
    Scalar dk = sym_det(pik);
    for (auto& row : hk)
        for (auto& s : row) s = s / dk;
    // e^A_i: bottom-left block of the frame = -pik^{-1} pimix pin^{-1}.
    SMat g = detail::sym_mul(detail::sym_mul(hk, detail::pi_mixed_block(n, k)), f);
    for (auto& row : g)
        for (auto& s : row) s = -s;
    SymmetryBreaker out;
    out.n = n;
    out.k = k;
    for (int b = 1; b <= k; ++b)
        for (int i = 1; i <= n; ++i) {
            Scalar s(0);
            for (int a = 1; a <= k; ++a) {
                Scalar inner = g[static_cast<size_t>(a - 1)][static_cast<size_t>(i - 1)];
                for (int j = 1; j <= n; ++j)
                    inner += f[static_cast<size_t>(j - 1)][static_cast<size_t>(i - 1)] * gc.at(a, j);
                s += Scalar::variable(piname(n + b, n + a)) * inner;
            }
            if (!s.is_zero()) out.lam[{b, i}] = s;
        }
    return out;
}

/// The full L_VY chart point determined by a frame point: base coordinates
/// plus the coframe entries pi = E^{-1}.
inline std::map<std::string, Rational> lvy_point_of(const FramePoint& w) {
    w.validate();
    QMat c = w.E.inverse();
    std::map<std::string, Rational> pt = w.base;
    const int n = w.n, k = w.k;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) pt[piname(i, j)] = c.at(i - 1, j - 1);
    for (int a = 1; a <= k; ++a)
        for (int b = 1; b <= k; ++b) pt[piname(n + a, n + b)] = c.at(n + a - 1, n + b - 1);
    for (int a = 1; a <= k; ++a)
        for (int j = 1; j <= n; ++j) pt[piname(n + a, j)] = c.at(n + a - 1, j - 1);
    return pt;
}

/// gamma_y(e_j) := lambda^B_j eps_B extended by gamma_y(eps_A) = eps_A:
/// the induced connection coefficients gamma^A_i at the base point of w.
inline ConnectionCoefficients lambda_to_connection(const SymmetryBreaker& sb,
                                                   const FramePoint& w) {
    w.validate();
    const int n = w.n, k = w.k;
    if (sb.n != n || sb.k != k) throw BadDimensions("symmetry breaker dims");
    std::map<std::string, Rational> pt = lvy_point_of(w);
    QMat lamval(k, n);
    for (int b = 1; b <= k; ++b)
        for (int i = 1; i <= n; ++i) lamval.at(b - 1, i - 1) = sb.at(b, i).evaluate(pt);
    // Write the coordinate basis in the frame: columns of E^{-1} give the
    // frame components of d/dx_i and d/dy_A.
    QMat c = w.E.inverse();
    ConnectionCoefficients out;
    out.n = n;
    out.k = k;
    for (int i = 1; i <= n; ++i) {
        // d/dx_i = sum_j c(j,i) e_j + sum_A c(n+A,i) eps_A; apply gamma and
        // read off the d/dy_A components.
        for (int a = 1; a <= k; ++a) {
            Rational comp = 0;
            for (int j = 1; j <= n; ++j) {
                Rational cj = c.at(j - 1, i - 1);
                if (cj == 0) continue;
                for (int b = 1; b <= k; ++b)
                    comp += cj * lamval.at(b - 1, j - 1) * w.E.at(n + a - 1, n + b - 1);
            }
            for (int b = 1; b <= k; ++b)
                comp += c.at(n + b - 1, i - 1) * w.E.at(n + a - 1, n + b - 1);
            if (comp != 0) out.gamma[{a, i}] = Scalar(comp);
        }
    }
    return out;
}

/// The splitting n-form (p + p^i_A gamma^A_i) d^n x on the Z chart.
inline VForm splitting_map(const ConnectionCoefficients& gc, const ChartPtr& chartZ) {
    const int n = chartZ->n(), k = chartZ->k();
    if (gc.n != n || gc.k != k) throw BadDimensions("connection dims do not match chart");
    gc.validate();
    Scalar c = Scalar::variable("p");
    for (int i = 1; i <= n; ++i)
        for (int a = 1; a <= k; ++a)
            c += Scalar::variable(pname(i, a)) * gc.at(a, i);
    return c * volume_forms(chartZ, 0).dnx;
}

/// Fundamental vertical field of A in the L_VY chart:
///   A* = -(A^B_l pi^l_j) d/dpi^{n+B}_j.
inline VField fundamental_vertical_field(const QMat& a, const ChartPtr& chartLVY) {
    const int n = chartLVY->n(), k = chartLVY->k();
    if (a.rows != k || a.cols != n) throw ShapeMismatch("operand is not k x n");
    VField out(chartLVY);
    for (int b = 1; b <= k; ++b)
        for (int j = 1; j <= n; ++j) {
            Scalar s(0);
            for (int l = 1; l <= n; ++l)
                s += Scalar(a.at(b - 1, l - 1)) * Scalar::variable(piname(l, j));
            out.set(piname(n + b, j), -s);
        }
    return out;
}

/// Checks d(lambda_gamma)(A*) = A identically, the flat connection property.
struct FundamentalVerticalReport {
    bool matches = true;
    SMat result;  // (B, i) entry of the contraction
};

inline FundamentalVerticalReport fundamental_vertical_check(const ConnectionCoefficients& gc,
                                                            const QMat& a,
                                                            const ChartPtr& chartLVY) {
    const int n = chartLVY->n(), k = chartLVY->k();
    SymmetryBreaker sb = connection_to_lambda(gc, chartLVY);
    VField astar = fundamental_vertical_field(a, chartLVY);
    FundamentalVerticalReport rep;
    rep.result.assign(static_cast<size_t>(k), std::vector<Scalar>(static_cast<size_t>(n), Scalar(0)));
    for (int b = 1; b <= k; ++b)
        for (int i = 1; i <= n; ++i) {
            Scalar s = astar.apply(sb.at(b, i));
            rep.result[static_cast<size_t>(b - 1)][static_cast<size_t>(i - 1)] = s;
            if (s != Scalar(a.at(b - 1, i - 1))) rep.matches = false;
        }
    return rep;
}

}  // namespace msx
