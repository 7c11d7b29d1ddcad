#include <catch2/catch_amalgamated.hpp>

#include <hodgeforge/bergman.hpp>
#include <hodgeforge/chow.hpp>

#include <random>
#include <vector>

using namespace hodgeforge;

namespace {

ChowElement ray_class(const ChowSpace& c, int ray) {
    RatVec v = zero_vec(c.fan.rays.size());
    v[ray] = 1;
    return divisor_class(c, v);
}

std::vector<int> hilbert_of(const Matroid& m) {
    return chow_space(bergman_fan(m)).hilbert;
}

} // namespace

TEST_CASE("monomial arithmetic") {
    Fan b3 = bergman_fan(boolean_matroid(3));

    Monomial x0{{{0, 1}}}, x3{{{3, 1}}}, x5{{{5, 1}}};
    auto flag = monomial_product(b3, x0, x3);
    REQUIRE(flag.has_value());
    CHECK(flag->powers == std::vector<std::pair<int, int>>{{0, 1}, {3, 1}});
    CHECK(monomial_to_string(*flag) == "0^1*3^1");
    CHECK(monomial_to_string(Monomial{}) == "1");

    // {1} and {2,3} are incomparable, the support is not a cone
    CHECK_FALSE(monomial_product(b3, x0, x5).has_value());

    auto sq = monomial_product(b3, x0, x0);
    REQUIRE(sq.has_value());
    CHECK(sq->powers == std::vector<std::pair<int, int>>{{0, 2}});

    CHECK(monomial_before(x0, x3));
    CHECK(monomial_before(*sq, x3)); // smaller ray first, larger exponent first
}

TEST_CASE("hilbert functions of the corpus") {
    CHECK(hilbert_of(boolean_matroid(2)) == std::vector<int>{1, 1});
    CHECK(hilbert_of(boolean_matroid(3)) == std::vector<int>{1, 4, 1});
    CHECK(hilbert_of(boolean_matroid(4)) == std::vector<int>{1, 11, 11, 1});
    CHECK(hilbert_of(uniform_matroid(5, 5)) == std::vector<int>{1, 26, 66, 26, 1});
    CHECK(hilbert_of(uniform_matroid(2, 3)) == std::vector<int>{1, 1});
    CHECK(hilbert_of(uniform_matroid(2, 4)) == std::vector<int>{1, 1});
    CHECK(hilbert_of(uniform_matroid(3, 4)) == std::vector<int>{1, 7, 1});
    CHECK(hilbert_of(uniform_matroid(3, 5)) == std::vector<int>{1, 11, 1});
    CHECK(hilbert_of(uniform_matroid(4, 5)) == std::vector<int>{1, 21, 21, 1});
    CHECK(hilbert_of(uniform_matroid(1, 4)) == std::vector<int>{1});
}

TEST_CASE("degree one dimension equals rays modulo linear span") {
    // independent count: the degree-1 piece drops one dimension per
    // independent coordinate functional on the rays
    for (const Matroid& m : {boolean_matroid(3), boolean_matroid(4), uniform_matroid(3, 4),
                             uniform_matroid(2, 5), uniform_matroid(4, 5)}) {
        Fan f = bergman_fan(m);
        ChowSpace c = chow_space(f);
        Mat rows = f.rays;
        int expect = static_cast<int>(f.rays.size()) - rank_of(rows);
        CHECK(c.dim(1) == expect);
    }
}

TEST_CASE("linear relations identify parallel classes") {
    ChowSpace c = chow_space(bergman_fan(uniform_matroid(2, 3)));
    auto rels = linear_relations(c);
    REQUIRE(rels.size() == 2);
    CHECK(rels[0].functional == RatVec{Rat(1), Rat(0)});

    // x_{1} = x_{2} = x_{3} in degree one
    CHECK(on_basis(c, ray_class(c, 0)) == on_basis(c, ray_class(c, 1)));
    CHECK(on_basis(c, ray_class(c, 1)) == on_basis(c, ray_class(c, 2)));
}

TEST_CASE("stanley reisner vanishing") {
    ChowSpace c = chow_space(bergman_fan(boolean_matroid(3)));
    CHECK(multiply(c, ray_class(c, 0), ray_class(c, 5)).is_zero()); // {1}, {2,3}
    CHECK(multiply(c, ray_class(c, 0), ray_class(c, 1)).is_zero()); // {1}, {2}
    CHECK_FALSE(multiply(c, ray_class(c, 0), ray_class(c, 3)).is_zero());
}

TEST_CASE("ring operations") {
    ChowSpace c = chow_space(bergman_fan(uniform_matroid(3, 4)));
    std::mt19937 rng(20260814);
    std::uniform_int_distribution<int> coef(-3, 3);

    auto random_divisor = [&] {
        RatVec v = zero_vec(c.fan.rays.size());
        for (auto& x : v) x = Rat(coef(rng));
        return divisor_class(c, v);
    };

    for (int trial = 0; trial < 10; ++trial) {
        ChowElement a = random_divisor(), b = random_divisor(), d = random_divisor();

        // commutativity and associativity
        CHECK(on_basis(c, multiply(c, a, b)) == on_basis(c, multiply(c, b, a)));
        ChowElement ab_d = multiply(c, multiply(c, a, b), d);
        ChowElement a_bd = multiply(c, a, multiply(c, b, d));
        CHECK(on_basis(c, ab_d) == on_basis(c, a_bd));

        // distributivity over addition
        ChowElement lhs = multiply(c, a, chow_add(b, d));
        ChowElement rhs = chow_add(multiply(c, a, b), multiply(c, a, d));
        CHECK(on_basis(c, lhs) == on_basis(c, rhs));

        // unit
        CHECK(on_basis(c, multiply(c, chow_one(c), a)) == on_basis(c, a));
    }

    // normal form is idempotent and basis coordinates round-trip
    ChowElement x = random_divisor();
    ChowElement nf = normal_form(c, x);
    CHECK(on_basis(c, normal_form(c, nf)) == on_basis(c, nf));
    CHECK(on_basis(c, from_basis(c, 1, on_basis(c, nf))) == on_basis(c, nf));

    // products beyond the top degree vanish
    ChowElement top = multiply(c, multiply(c, ray_class(c, 0), ray_class(c, 0)), ray_class(c, 0));
    CHECK(top.is_zero());
    CHECK(top.grade == 3);
}

TEST_CASE("balancing of the unit weight") {
    for (const Matroid& m : {boolean_matroid(3), boolean_matroid(4), uniform_matroid(3, 4),
                             uniform_matroid(2, 4)}) {
        Fan f = bergman_fan(m);
        CHECK_FALSE(is_balanced(f, all_ones_weight(f)).has_value());
    }

    // flipping one weight breaks balance
    Fan b3 = bergman_fan(boolean_matroid(3));
    MinkowskiWeight w = all_ones_weight(b3);
    w.w[0] = -1;
    CHECK(is_balanced(b3, w).has_value());

    MinkowskiWeight short_w{RatVec(2, Rat(1))};
    CHECK_THROWS_AS(is_balanced(b3, short_w), PreconditionFailure);
}

TEST_CASE("weight space is one dimensional") {
    for (const Matroid& m : {boolean_matroid(3), uniform_matroid(3, 4), uniform_matroid(2, 4)}) {
        Fan f = bergman_fan(m);
        ChowSpace c = chow_space(f);
        auto basis = mw_space(f, c);
        REQUIRE(basis.size() == 1);
        // the generator is proportional to the unit weight
        const RatVec& w = basis[0].w;
        for (const Rat& x : w) CHECK(x == w[0]);
        CHECK(w[0] != 0);
    }
}

TEST_CASE("degree map on the boolean fan") {
    Fan b3 = bergman_fan(boolean_matroid(3));
    ChowSpace c = chow_space(b3);
    DegreeMap dm = degree_map(c, all_ones_weight(b3));

    ChowElement flag = multiply(c, ray_class(c, 0), ray_class(c, 3)); // x_{1} x_{12}
    CHECK(degree_of(c, dm, flag) == Rat(1));

    // both flags through {1,2} are the same top class
    ChowElement other = multiply(c, ray_class(c, 1), ray_class(c, 3));
    CHECK(on_basis(c, flag) == on_basis(c, other));

    ChowElement sq0 = multiply(c, ray_class(c, 0), ray_class(c, 0));
    CHECK(degree_of(c, dm, sq0) == Rat(-1));
    ChowElement sq3 = multiply(c, ray_class(c, 3), ray_class(c, 3));
    CHECK(degree_of(c, dm, sq3) == Rat(-1));

    // every maximal cone monomial has degree equal to its weight
    for (const auto& sigma : b3.max_cones()) {
        ChowElement x = chow_one(c);
        for (int r : sigma) x = multiply(c, x, ray_class(c, r));
        CHECK(degree_of(c, dm, x) == Rat(1));
    }
}

TEST_CASE("degree is representative independent") {
    ChowSpace c = chow_space(bergman_fan(uniform_matroid(3, 4)));
    DegreeMap dm = degree_map(c, all_ones_weight(c.fan));
    std::mt19937 rng(991);
    std::uniform_int_distribution<int> coef(-2, 2);

    for (int trial = 0; trial < 8; ++trial) {
        RatVec v = zero_vec(c.fan.rays.size()), u = v;
        for (auto& x : v) x = Rat(coef(rng));
        for (auto& x : u) x = Rat(coef(rng));
        // shift v by a global linear functional: same divisor class
        RatVec shifted = v;
        RatVec functional = {Rat(coef(rng)), Rat(coef(rng)), Rat(coef(rng))};
        for (std::size_t r = 0; r < shifted.size(); ++r)
            shifted[r] += dot(functional, c.fan.rays[r]);
        ChowElement a = divisor_class(c, v), b = divisor_class(c, shifted);
        CHECK(on_basis(c, a) == on_basis(c, b));
        ChowElement filler = divisor_class(c, u);
        CHECK(degree_of(c, dm, multiply(c, a, filler)) ==
              degree_of(c, dm, multiply(c, b, filler)));
    }
}

TEST_CASE("restriction to a link is a ring map") {
    Fan b3 = bergman_fan(boolean_matroid(3));
    ChowSpace c = chow_space(b3);
    std::vector<int> tau = {3}; // ray of {1,2}
    LinkData l = link(b3, tau);
    ChowSpace cl = chow_space(l.fan);

    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int trial = 0; trial < 8; ++trial) {
        RatVec v = zero_vec(c.fan.rays.size()), u = v;
        for (auto& x : v) x = Rat(coef(rng));
        for (auto& x : u) x = Rat(coef(rng));
        ChowElement a = divisor_class(c, v), b = divisor_class(c, u);
        ChowElement prod_then = restrict_to_link(c, multiply(c, a, b), tau, l, cl);
        ChowElement then_prod = multiply(cl, restrict_to_link(c, a, tau, l, cl),
                                         restrict_to_link(c, b, tau, l, cl));
        CHECK(on_basis(cl, prod_then) == on_basis(cl, then_prod));
    }
}

TEST_CASE("weight restriction and adjunction") {
    Fan b3 = bergman_fan(boolean_matroid(3));
    ChowSpace c = chow_space(b3);
    MinkowskiWeight w = all_ones_weight(b3);
    DegreeMap dm = degree_map(c, w);

    // adjunction for every ray and every top link basis class
    for (std::size_t r = 0; r < b3.rays.size(); ++r) {
        std::vector<int> tau = {static_cast<int>(r)};
        LinkData l = link(b3, tau);
        ChowSpace cl = chow_space(l.fan);
        MinkowskiWeight wl = restrict_weight(b3, tau, l, w);
        DegreeMap dml = degree_map(cl, wl);
        for (int idx = 0; idx < cl.dim(cl.top); ++idx) {
            ChowElement f{cl.top, {{cl.basis_cols[cl.top][idx], Rat(1)}}};
            CHECK(adjunction_check(c, dm, tau, l, cl, dml, f));
        }
    }
}

TEST_CASE("divisor pullbacks") {
    Fan b3 = bergman_fan(boolean_matroid(3));

    SECTION("identity map returns the piecewise linear values") {
        RatVec coeffs = {Rat(2), Rat(3), Rat(5), Rat(7), Rat(11), Rat(13)};
        RatVec back = pullback_divisor(b3, b3, FanMap{mat_identity(2)}, coeffs);
        CHECK(back == coeffs);
    }

    SECTION("subdivision evaluates at the new ray") {
        SubdivisionData sub = star_subdivision(b3, {0, 3});
        RatVec coeffs = {Rat(2), Rat(3), Rat(5), Rat(7), Rat(11), Rat(13)};
        RatVec up = pullback_divisor(sub.fan, b3, FanMap{mat_identity(2)}, coeffs);
        for (int r = 0; r < 6; ++r) CHECK(up[r] == coeffs[r]);
        CHECK(up[6] == coeffs[0] + coeffs[3]); // value at e_{1} + e_{12}
    }
}

TEST_CASE("element pullback along a subdivision is a graded injection") {
    Fan b3 = bergman_fan(boolean_matroid(3));
    SubdivisionData sub = star_subdivision(b3, {0, 3});
    ChowSpace cb = chow_space(b3), cs = chow_space(sub.fan);
    FanMap ident{mat_identity(2)};

    CHECK(cs.hilbert == std::vector<int>{1, 5, 1});

    for (int g = 0; g <= cb.top; ++g) {
        Mat img;
        for (int j = 0; j < cb.dim(g); ++j) {
            ChowElement bj{g, {{cb.basis_cols[g][j], Rat(1)}}};
            img.push_back(on_basis(cs, pullback_element(cs, cb, ident, bj)));
        }
        CHECK(rank_of(img) == cb.dim(g));
    }

    // pullback respects products
    ChowElement a = ray_class(cb, 2), b = ray_class(cb, 4);
    ChowElement pa = pullback_element(cs, cb, ident, a);
    ChowElement pb = pullback_element(cs, cb, ident, b);
    ChowElement pab = pullback_element(cs, cb, ident, multiply(cb, a, b));
    CHECK(on_basis(cs, multiply(cs, pa, pb)) == on_basis(cs, pab));
}

TEST_CASE("chow rings of products") {
    Fan b2 = bergman_fan(boolean_matroid(2));
    Fan b3 = bergman_fan(boolean_matroid(3));

    CHECK(product_chow_iso_check(b2, b2));
    CHECK(product_chow_iso_check(b2, b3));

    CHECK(chow_space(product(b2, b2)).hilbert == std::vector<int>{1, 2, 1});
    CHECK(chow_space(product(b2, b3)).hilbert == std::vector<int>{1, 5, 5, 1});
}
