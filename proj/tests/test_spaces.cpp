#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "msx/spaces.hpp"
#include "msx/structeq.hpp"

using namespace msx;

TEST_CASE("chart construction") {
    ChartPtr z11 = make_chart({SpaceTag::Z, 1, 1});
    CHECK(z11->coord_names() == std::vector<std::string>{"x1", "y1", "p1_1", "p"});

    CHECK(make_chart({SpaceTag::LVY, 2, 1})->dim() == 10);  // 2+1+4+1+2
    CHECK(make_chart({SpaceTag::LM, 2, 0})->dim() == 6);
    CHECK(make_chart({SpaceTag::Z, 2, 2})->dim() == 2 + 2 + 4 + 1);
    CHECK(make_chart({SpaceTag::JstarGunther, 2, 2})->dim() == 2 + 2 + 4);
    CHECK_THROWS_AS(make_chart({SpaceTag::Z, 0, 1}), BadDimensions);
}

TEST_CASE("volume form family") {
    ChartPtr z1 = make_chart({SpaceTag::Z, 1, 1});
    VolumeForms v1 = volume_forms(z1, 2);
    CHECK(v1.dnx == VForm::d_coord(z1, "x1"));
    CHECK(v1.dn1[0] == VForm::one(z1));
    CHECK(v1.dn2.empty());  // empty by convention at n=1

    ChartPtr z2 = make_chart({SpaceTag::Z, 2, 1});
    VolumeForms v2 = volume_forms(z2, 2);
    CHECK(v2.dn1[0] == VForm::d_coord(z2, "x2"));
    CHECK(v2.dn1[1] == Scalar(-1) * VForm::d_coord(z2, "x1"));
    CHECK(v2.dn2.at({1, 2}) == VForm::one(z2));
}

TEST_CASE("frame bundle soldering form") {
    ChartPtr lvy = make_chart({SpaceTag::LVY, 1, 1});
    VForm th = theta_LVY(lvy);
    VForm want(lvy, 1, 1);
    want.add_term({lvy->index("x1")}, {1}, Scalar::variable("pi1_1"));
    want.add_term({lvy->index("x1")}, {2}, Scalar::variable("pi2_1"));
    want.add_term({lvy->index("y1")}, {2}, Scalar::variable("pi2_2"));
    CHECK(th == want);

    // horizontality: contractions with fiber directions vanish
    for (const auto& c : lvy->coords()) {
        if (c.role != CoordRole::Frame) continue;
        VField d(lvy);
        d.set(c.name, Scalar(1));
        CHECK(interior(d, th).is_zero());
    }

    // the r-hat block of d(theta) never involves dy
    ChartPtr lvy2 = make_chart({SpaceTag::LVY, 2, 1});
    VForm dth = ext_d(theta_LVY(lvy2));
    int ydx = lvy2->index("y1");
    for (const auto& [key, c] : dth.terms()) {
        if (key.second[0] > 2) continue;  // s-hat block
        for (int idx : key.first) CHECK(idx != ydx);
    }
}

TEST_CASE("canonical n-form on the affine multiphase space") {
    ChartPtr z1 = make_chart({SpaceTag::Z, 1, 1});
    VForm th1 = Theta_Z(z1);
    VForm want1(z1, 1, 0);
    want1.add_term({z1->index("y1")}, {}, Scalar::variable("p1_1"));
    want1.add_term({z1->index("x1")}, {}, Scalar::variable("p"));
    CHECK(th1 == want1);

    ChartPtr z2 = make_chart({SpaceTag::Z, 2, 1});
    VForm th2 = Theta_Z(z2);
    CHECK(th2.form_degree() == 2);
    CHECK(th2.value_degree() == 0);
    VForm want2(z2, 2, 0);
    want2.add_term({z2->index("y1"), z2->index("x2")}, {}, Scalar::variable("p1_1"));
    want2.add_term({z2->index("y1"), z2->index("x1")}, {}, -Scalar::variable("p2_1"));
    want2.add_term({z2->index("x1"), z2->index("x2")}, {}, Scalar::variable("p"));
    CHECK(th2 == want2);

    CHECK(ext_d(ext_d(th2)).is_zero());
}

TEST_CASE("connection-dependent potentials") {
    ChartPtr gu = make_chart({SpaceTag::JstarGunther, 1, 1});
    ConnectionCoefficients zero;
    zero.n = 1;
    zero.k = 1;
    VForm t0 = Theta_gamma(gu, SpaceTag::JstarGunther, zero);
    VForm want(gu, 1, 1);
    want.add_term({gu->index("y1")}, {1}, Scalar::variable("p1_1"));
    CHECK(t0 == want);

    ConnectionCoefficients cgam;
    cgam.n = 1;
    cgam.k = 1;
    cgam.gamma[{1, 1}] = Scalar(5);
    VForm t1 = Theta_gamma(gu, SpaceTag::JstarGunther, cgam);
    VForm want1 = want;
    want1.add_term({gu->index("x1")}, {1}, Scalar(5) * Scalar::variable("p1_1"));
    CHECK(t1 == want1);

    ChartPtr kt = make_chart({SpaceTag::JstarKT, 2, 1});
    VForm tkt = Theta_gamma(kt, SpaceTag::JstarKT, ConnectionCoefficients{2, 1, {}});
    VForm wkt(kt, 2, 0);
    wkt.add_term({kt->index("y1"), kt->index("x2")}, {}, Scalar::variable("p1_1"));
    wkt.add_term({kt->index("y1"), kt->index("x1")}, {}, -Scalar::variable("p2_1"));
    CHECK(tkt == wkt);
}

TEST_CASE("euler field") {
    ChartPtr z1 = make_chart({SpaceTag::Z, 1, 1});
    VField e1 = euler_field(z1);
    CHECK(e1.component("p1_1") == Scalar::variable("p1_1"));
    CHECK(e1.component("p") == Scalar::variable("p"));
    CHECK(e1.component("x1").is_zero());
    CHECK(e1.component("y1").is_zero());
    CHECK(interior(e1, ext_d(Theta_Z(z1))) == Theta_Z(z1));

    ChartPtr z2 = make_chart({SpaceTag::Z, 2, 1});
    VField e2 = euler_field(z2);
    for (int i = 1; i <= 2; ++i) CHECK(e2.component(xname(i)).is_zero());
    CHECK(e2.component("y1").is_zero());
    CHECK(interior(e2, ext_d(Theta_Z(z2))) == Theta_Z(z2));
}

TEST_CASE("structure form nondegeneracy at the symbol level") {
    for (auto [n, k] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}}) {
        ChartPtr z = make_chart({SpaceTag::Z, n, k});
        CHECK(contraction_kernel_dim(ext_d(Theta_Z(z))) == 0);
    }
}
