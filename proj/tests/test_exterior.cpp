#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "msx/hamilton.hpp"
#include "msx/rng.hpp"
#include "msx/spaces.hpp"

using namespace msx;

namespace {

ChartPtr plane() {
    std::vector<Coord> coords = {{"x1", CoordRole::Base}, {"x2", CoordRole::Base}};
    return std::make_shared<Chart>("plane", coords, 2, 0);
}

VForm dvx(const ChartPtr& c, const std::string& name) { return VForm::d_coord(c, name); }

VForm random_form(SplitMix64& rng, const ChartPtr& chart, int p, int r) {
    VForm f(chart, p, r);
    const int dim = chart->dim();
    const int nk = chart->n() + chart->k();
    for (int t = 0; t < 3; ++t) {
        std::vector<int> fi, vi;
        std::set<int> used;
        while (static_cast<int>(fi.size()) < p) {
            int c = static_cast<int>(rng.below(static_cast<std::uint64_t>(dim)));
            if (used.insert(c).second) fi.push_back(c);
        }
        used.clear();
        while (static_cast<int>(vi.size()) < r) {
            int c = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(nk)));
            if (used.insert(c).second) vi.push_back(c);
        }
        f.add_term(fi, vi, Scalar(rng.polynomial(chart->coord_names(), 2)));
    }
    return f;
}

VField random_field(SplitMix64& rng, const ChartPtr& chart) {
    VField x(chart);
    for (const auto& c : chart->coords())
        if (rng.below(2)) x.set(c.name, Scalar(rng.polynomial(chart->coord_names(), 1)));
    return x;
}

}  // namespace

TEST_CASE("wedge basics") {
    ChartPtr c = plane();
    VForm dx1 = dvx(c, "x1"), dx2 = dvx(c, "x2");

    CHECK(wedge(dx1, dx1).is_zero());

    // (x dy) ^ (dx) = -x dx^dy with chart Z(1,1)
    ChartPtr z = make_chart({SpaceTag::Z, 1, 1});
    VForm a = Scalar::variable("x1") * dvx(z, "y1");
    VForm got = wedge(a, dvx(z, "x1"));
    VForm want(z, 2, 0);
    want.add_term({z->index("x1"), z->index("y1")}, {}, -Scalar::variable("x1"));
    CHECK(got == want);

    // two (1,1)-forms commute: sign (-1)^{1*1+1*1} = +1
    SplitMix64 rng(3);
    for (int t = 0; t < 10; ++t) {
        VForm u = random_form(rng, z, 1, 1);
        VForm v = random_form(rng, z, 1, 1);
        CHECK(wedge(u, v) == wedge(v, u));
    }
}

TEST_CASE("graded commutativity sign") {
    ChartPtr z = make_chart({SpaceTag::LVY, 1, 1});
    SplitMix64 rng(17);
    for (int pa = 0; pa <= 2; ++pa)
        for (int ra = 0; ra <= 1; ++ra)
            for (int pb = 0; pb <= 2; ++pb)
                for (int rb = 0; rb <= 1; ++rb) {
                    VForm a = random_form(rng, z, pa, ra);
                    VForm b = random_form(rng, z, pb, rb);
                    int sign = ((pa * pb + ra * rb) % 2 == 0) ? 1 : -1;
                    CHECK(wedge(a, b) == Scalar(sign) * wedge(b, a));
                }
}

TEST_CASE("exterior derivative") {
    ChartPtr c = plane();
    VForm a = Scalar::variable("x1") * dvx(c, "x2");
    VForm want(c, 2, 0);
    want.add_term({0, 1}, {}, Scalar(1));
    CHECK(ext_d(a) == want);
    CHECK(ext_d(dvx(c, "x1")).is_zero());

    // d of a wedge power of the frame-bundle form, n=1, k=1
    ChartPtr lvy = make_chart({SpaceTag::LVY, 1, 1});
    VForm th = theta_LVY(lvy);
    CHECK(ext_d(wedge_power(th, 2)) == Scalar(2) * wedge(ext_d(th), th));

    // d.d = 0 on random forms
    SplitMix64 rng(29);
    for (int t = 0; t < 200; ++t) {
        VForm f = random_form(rng, lvy, static_cast<int>(rng.below(3)), static_cast<int>(rng.below(2)));
        CHECK(ext_d(ext_d(f)).is_zero());
    }
}

TEST_CASE("interior product") {
    ChartPtr c = plane();
    VForm dx12 = wedge(dvx(c, "x1"), dvx(c, "x2"));
    VField d1(c), d2(c);
    d1.set("x1", Scalar(1));
    d2.set("x2", Scalar(1));

    CHECK(interior(d1, dx12) == dvx(c, "x2"));
    CHECK(interior(d2, interior(d1, dx12)) == VForm::one(c));
    CHECK(interior(d2, dx12) == Scalar(-1) * dvx(c, "x1"));
    CHECK_THROWS_AS(interior(d1, VForm::one(c)), DegreeZero);

    // antiderivation, value parts carried along
    ChartPtr lvy = make_chart({SpaceTag::LVY, 1, 1});
    SplitMix64 rng(31);
    for (int t = 0; t < 20; ++t) {
        int pa = 1 + static_cast<int>(rng.below(2));
        VForm a = random_form(rng, lvy, pa, 1);
        VForm b = random_form(rng, lvy, 1, 1);
        VField x = random_field(rng, lvy);
        VForm lhs = interior(x, wedge(a, b));
        VForm rhs = wedge(interior(x, a), b) +
                    Scalar(pa % 2 == 0 ? 1 : -1) * wedge(a, interior(x, b));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("lie derivative") {
    ChartPtr c = plane();
    VField d1(c);
    d1.set("x1", Scalar(1));
    VForm a = Scalar::variable("x1") * dvx(c, "x2");
    CHECK(lie_derivative(d1, a) == dvx(c, "x2"));

    ChartPtr lvy = make_chart({SpaceTag::LVY, 1, 1});
    SplitMix64 rng(37);
    for (int t = 0; t < 15; ++t) {
        VForm f = random_form(rng, lvy, 1, 1);
        VForm g = random_form(rng, lvy, 1, 0);
        VField x = random_field(rng, lvy);
        CHECK(lie_derivative(x, ext_d(f)) == ext_d(lie_derivative(x, f)));
        CHECK(lie_derivative(x, wedge(f, g)) ==
              wedge(lie_derivative(x, f), g) + wedge(f, lie_derivative(x, g)));
    }

    // the canonical potential is constant along Hamiltonian flows
    ChartPtr z = make_chart({SpaceTag::Z, 2, 1});
    ProjectableField v;
    v.n = 2;
    v.k = 1;
    v.vA[1] = Scalar::variable("y1");
    CHECK(lie_derivative(hamiltonian_vf_Z(v, z), Theta_Z(z)).is_zero());
}

TEST_CASE("pullback") {
    ChartPtr c = plane();
    ChartMap id = ChartMap::identity(c);
    SplitMix64 rng(41);
    VForm a = random_form(rng, c, 1, 0);
    CHECK(pullback(id, a) == a);

    // x -> x^2 on a 1-dimensional chart
    std::vector<Coord> one = {{"x1", CoordRole::Base}};
    ChartPtr line = std::make_shared<Chart>("line", one, 1, 0);
    ChartMap sq(line, line);
    sq.assign("x1", Scalar::variable("x1") * Scalar::variable("x1"));
    CHECK(pullback(sq, dvx(line, "x1")) == Scalar(2) * Scalar::variable("x1") * dvx(line, "x1"));

    // functoriality on products and d
    ChartPtr z = make_chart({SpaceTag::Z, 1, 1});
    ChartMap m(c, z);
    m.assign("x1", Scalar::variable("x1") + Scalar::variable("x2"));
    m.assign("y1", Scalar::variable("x1") * Scalar::variable("x2"));
    m.assign("p1_1", Scalar::variable("x2"));
    m.assign("p", Scalar(1));
    for (int t = 0; t < 10; ++t) {
        VForm u = random_form(rng, z, 1, 0);
        VForm v2 = random_form(rng, z, 1, 0);
        CHECK(pullback(m, wedge(u, v2)) == wedge(pullback(m, u), pullback(m, v2)));
        CHECK(pullback(m, ext_d(u)) == ext_d(pullback(m, u)));
    }
}

TEST_CASE("pushforward at a point") {
    ChartPtr c = plane();
    ChartMap id = ChartMap::identity(c);
    VField x(c);
    x.set("x1", Scalar::variable("x2"));
    auto val = pushforward_at(id, x, {{"x1", 1}, {"x2", 3}});
    CHECK(val["x1"] == Rational(3));
    CHECK(val["x2"] == Rational(0));

    std::vector<Coord> one = {{"x1", CoordRole::Base}};
    ChartPtr line = std::make_shared<Chart>("line", one, 1, 0);
    ChartMap dbl(line, line);
    dbl.assign("x1", Scalar(2) * Scalar::variable("x1"));
    VField dx(line);
    dx.set("x1", Scalar(1));
    auto v2 = pushforward_at(dbl, dx, {{"x1", 5}});
    CHECK(v2["x1"] == Rational(2));
}

TEST_CASE("wedge power and value pairing") {
    ChartPtr lvy = make_chart({SpaceTag::LVY, 1, 1});
    VForm th = theta_LVY(lvy);
    CHECK(wedge_power(th, 0) == VForm::one(lvy));
    CHECK(wedge_power(VForm::d_coord(lvy, "x1"), 2).is_zero());

    // pairing drops the value part against a covector
    VForm a(lvy, 1, 1);
    a.add_term({lvy->index("x1")}, {1}, Scalar(1));
    CHECK(pair_value(a, {{{1}, Rational(1)}}) == VForm::d_coord(lvy, "x1"));
    CHECK(pair_value(a, {}).is_zero());
}
