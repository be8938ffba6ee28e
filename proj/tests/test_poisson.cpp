#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "msx/poisson.hpp"
#include "msx/rng.hpp"

using namespace msx;

namespace {

ProjectableField pf(int n, int k) {
    ProjectableField v;
    v.n = n;
    v.k = k;
    return v;
}

ProjectableField random_pf(SplitMix64& rng, int n, int k, int deg = 2) {
    ProjectableField v = pf(n, k);
    std::vector<std::string> xs, xys;
    for (int i = 1; i <= n; ++i) xs.push_back(xname(i));
    xys = xs;
    for (int a = 1; a <= k; ++a) xys.push_back(yname(a));
    for (int i = 1; i <= n; ++i) v.vi[i] = Scalar(rng.polynomial(xs, deg));
    for (int a = 1; a <= k; ++a) v.vA[a] = Scalar(rng.polynomial(xys, deg));
    return v;
}

}  // namespace

TEST_CASE("bracket on the multiphase space") {
    ChartPtr z = make_chart({SpaceTag::Z, 2, 1});

    ProjectableField dx1 = pf(2, 1), dx2 = pf(2, 1);
    dx1.vi[1] = Scalar(1);
    dx2.vi[2] = Scalar(1);
    BracketZReport r = bracket_Z(dx1, dx2, z);
    CHECK(r.decomposition_holds);
    CHECK(r.f_lie.is_zero());  // [v,w] = 0 for commuting horizontal fields
    CHECK(r.bracket == Scalar(-1) * r.exact_term);

    // diagonal vanishes
    ChartPtr z1 = make_chart({SpaceTag::Z, 1, 1});
    ProjectableField v = pf(1, 1);
    v.vA[1] = Scalar::variable("y1");
    CHECK(bracket_Z(v, v, z1).bracket.is_zero());

    // v = d/dy1, w = y1 d/dy1: [v,w] = d/dy1
    ProjectableField dy1 = pf(1, 1);
    dy1.vA[1] = Scalar(1);
    BracketZReport r2 = bracket_Z(dy1, v, z1);
    CHECK(r2.decomposition_holds);
    CHECK(r2.f_lie == momentum_observable_Z(dy1, z1));
}

TEST_CASE("bracket antisymmetry and commutator compatibility") {
    ChartPtr z = make_chart({SpaceTag::Z, 2, 1});
    SplitMix64 rng(19);
    for (int t = 0; t < 10; ++t) {
        ProjectableField v = random_pf(rng, 2, 1);
        ProjectableField w = random_pf(rng, 2, 1);
        BracketZReport ab = bracket_Z(v, w, z);
        BracketZReport ba = bracket_Z(w, v, z);
        CHECK(ab.bracket == Scalar(-1) * ba.bracket);
        CHECK(ab.decomposition_holds);

        // [X_v, X_w] hook Theta = observable of [v,w]
        VField comm = lie_bracket(hamiltonian_vf_Z(v, z), hamiltonian_vf_Z(w, z));
        CHECK(interior(comm, Theta_Z(z)) == momentum_observable_Z(lie_bracket(v, w), z));
    }
}

TEST_CASE("frame-bundle bracket closes") {
    ChartPtr lvy = make_chart({SpaceTag::LVY, 1, 1});

    ProjectableField dx1 = pf(1, 1);
    dx1.vi[1] = Scalar(1);
    ProjectableField xdx = pf(1, 1);
    xdx.vi[1] = Scalar::variable("x1");
    BracketT1VReport r = bracket_T1V(xdx, dx1, lvy);
    CHECK(r.routes_agree);
    CHECK(r.closes);
    ProjectableField minus_dx1 = pf(1, 1);
    minus_dx1.vi[1] = Scalar(-1);
    CHECK(r.bracket == tensorial_from_vf_LVY(minus_dx1, lvy));

    ProjectableField dy1 = pf(1, 1);
    dy1.vA[1] = Scalar(1);
    ProjectableField ydy = pf(1, 1);
    ydy.vA[1] = Scalar::variable("y1");
    BracketT1VReport r2 = bracket_T1V(dy1, ydy, lvy);
    CHECK(r2.closes);
    CHECK(r2.bracket == tensorial_from_vf_LVY(dy1, lvy));

    SplitMix64 rng(43);
    for (int t = 0; t < 20; ++t) {
        ProjectableField u = random_pf(rng, 1, 1, 1);
        ProjectableField v = random_pf(rng, 1, 1, 1);
        ProjectableField w = random_pf(rng, 1, 1, 1);
        // Jacobi, via closure into the Lie algebra of projectable fields
        VForm total = bracket_T1V(u, lie_bracket(v, w), lvy).bracket +
                      bracket_T1V(v, lie_bracket(w, u), lvy).bracket +
                      bracket_T1V(w, lie_bracket(u, v), lvy).bracket;
        CHECK(total.is_zero());
    }
}

TEST_CASE("degree-m brackets decompose") {
    ChartPtr lvy = make_chart({SpaceTag::LVY, 1, 1});
    ProjectableField dx1 = pf(1, 1);
    dx1.vi[1] = Scalar(1);
    ProjectableField dy1 = pf(1, 1);
    dy1.vA[1] = Scalar(1);

    BracketDegreeMReport m0 = bracket_degree_m(dx1, dy1, lvy, 0);
    CHECK(m0.decomposition_holds);
    CHECK(m0.bracket == bracket_T1V(dx1, dy1, lvy).bracket);

    BracketDegreeMReport m1 = bracket_degree_m(dx1, dy1, lvy, 1);
    CHECK(m1.decomposition_holds);

    ChartPtr lvy21 = make_chart({SpaceTag::LVY, 2, 1});
    SplitMix64 rng(47);
    for (int t = 0; t < 5; ++t) {
        ProjectableField v = random_pf(rng, 2, 1, 1);
        ProjectableField w = random_pf(rng, 2, 1, 1);
        CHECK(bracket_degree_m(v, w, lvy21, 1).decomposition_holds);  // m = n-1
    }
}

TEST_CASE("euler projection ingredients") {
    ChartPtr z = make_chart({SpaceTag::Z, 2, 1});
    VField e = euler_field(z);
    SplitMix64 rng(53);
    for (int t = 0; t < 10; ++t) {
        ProjectableField v = random_pf(rng, 2, 1);
        VForm f = momentum_observable_Z(v, z);
        CHECK(interior(e, ext_d(f)) == f);
    }
}
