#include "test_support.hpp"

#include <doctest.h>

using namespace gg;
using ggtest::Rng;

namespace {

GroupPtr rsp_group() {
    return Group::table({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, {"R", "P", "S"});
}

GroupPtr random_any_group(Rng& rng) {
    switch (rng.i64(0, 5)) {
        case 0:
            return Group::integers();
        case 1:
            return Group::lattice_z2();
        case 2:
            return Group::rational_circle();
        case 3:
            return rng.finite_abelian_group();
        case 4:
            return ggtest::s3_group();
        default:
            return Group::product({Group::integers(), rng.finite_abelian_group()});
    }
}

}  // namespace

TEST_CASE("integers combine and fold") {
    auto z = Group::integers();
    CHECK(z->combine(Element::integer(3), Element::integer(5)) == Element::integer(8));
    CHECK(z->fold({}) == Element::integer(0));
    CHECK(z->fold({Element::integer(2), Element::integer(-7), Element::integer(1)}) ==
          Element::integer(-4));
}

TEST_CASE("rock-scissors-paper table") {
    auto g = rsp_group();
    Element r = g->parse_element("R"), p = g->parse_element("P"), s = g->parse_element("S");
    CHECK(g->combine(r, p) == p);
    CHECK(g->combine(p, r) == p);
    CHECK(g->combine(s, s) == p);
    CHECK(g->combine(p, s) == r);
    CHECK(g->combine(s, p) == r);
    CHECK(g->identity() == r);
    CHECK(g->inverse(p) == s);
    CHECK(g->inverse(s) == p);
    CHECK(g->is_abelian());
}

TEST_CASE("rational circle combines mod 1") {
    auto q1 = Group::rational_circle();
    CHECK(q1->combine(q1->parse_element("3/4"), q1->parse_element("1/2")) ==
          Element::rational_mod1(Rat(1, 4)));
    CHECK(q1->inverse(q1->parse_element("1/3")) == Element::rational_mod1(Rat(2, 3)));
    CHECK_THROWS_AS(q1->parse_element("5/4"), ValidationError);
}

TEST_CASE("finite table validation") {
    CHECK_THROWS_AS(Group::table({{0, 1}, {1, 0}, {0, 1}}), ValidationError);   // not square
    CHECK_THROWS_AS(Group::table({{0, 0}, {1, 1}}), ValidationError);           // not Latin
    CHECK_THROWS_AS(Group::table({{1, 0}, {0, 1}}, {}, true, {}, 0), ValidationError);
    CHECK_THROWS_AS(Group::table({{0, 1}, {1, 0}}, {}, false), ValidationError); // Z/2 is abelian
    // order-5 Latin square that is a quasigroup, not a group (no associativity)
    CHECK_THROWS_AS(Group::table({{0, 1, 2, 3, 4},
                                  {1, 0, 3, 4, 2},
                                  {2, 4, 0, 1, 3},
                                  {3, 2, 4, 0, 1},
                                  {4, 3, 1, 2, 0}}),
                    ValidationError);
    auto s3 = ggtest::s3_group();
    CHECK(s3->order() == 6);
    CHECK_FALSE(s3->is_abelian());
    CHECK(s3->is_fc());
}

TEST_CASE("bijections apply and invert") {
    auto z = Group::integers();
    auto q1 = Group::rational_circle();
    CHECK(Bijection::affine_z(-1, 0).apply(*z, Element::integer(7)) == Element::integer(-7));
    CHECK(Bijection::affine_q1(-1, Rat(0)).apply(*q1, Element::rational_mod1(Rat(1, 3))) ==
          Element::rational_mod1(Rat(2, 3)));
    CHECK(Bijection::identity().apply(*z, Element::integer(5)) == Element::integer(5));
    CHECK_THROWS_AS(Bijection::affine_z(1, 3).apply(*q1, Element::rational_mod1(Rat(0))),
                    VariantMismatch);
    CHECK_THROWS_AS(Bijection::permutation({0, 0, 1}), ValidationError);
}

TEST_CASE("group axioms on randomized instances") {
    Rng rng(0x5eed0001);
    for (int round = 0; round < 250; ++round) {
        GroupPtr g = random_any_group(rng);
        Element a = rng.element_of(*g), b = rng.element_of(*g), c = rng.element_of(*g);
        CHECK(g->combine(g->combine(a, b), c) == g->combine(a, g->combine(b, c)));
        CHECK(g->combine(a, g->inverse(a)) == g->identity());
        CHECK(g->combine(g->inverse(a), a) == g->identity());
        CHECK(g->combine(a, g->identity()) == a);
        if (g->is_abelian()) CHECK(g->combine(a, b) == g->combine(b, a));
    }
}

TEST_CASE("bijection round trips on randomized elements") {
    Rng rng(0x5eed0002);
    auto z = Group::integers();
    auto q1 = Group::rational_circle();
    for (int round = 0; round < 250; ++round) {
        Element x = rng.element_of(*z, 1000);
        Bijection eta = Bijection::affine_z(rng.coin() ? 1 : -1, Int(rng.i64(-50, 50)));
        CHECK(eta.inverse().apply(*z, eta.apply(*z, x)) == x);

        Element y = rng.element_of(*q1);
        Bijection rho = Bijection::affine_q1(rng.coin() ? 1 : -1, rng.rat01(9));
        CHECK(rho.inverse().apply(*q1, rho.apply(*q1, y)) == y);

        GroupPtr fin = rng.finite_abelian_group();
        std::vector<std::uint32_t> perm(fin->order());
        std::iota(perm.begin(), perm.end(), 0u);
        std::shuffle(perm.begin(), perm.end(), rng.eng);
        Bijection sigma = Bijection::permutation(perm);
        Element e = rng.element_of(*fin);
        CHECK(sigma.inverse().apply(*fin, sigma.apply(*fin, e)) == e);
    }
}

TEST_CASE("element parse and format round trip") {
    Rng rng(0x5eed0003);
    auto groups = std::vector<GroupPtr>{Group::integers(), Group::lattice_z2(),
                                        Group::rational_circle(), rsp_group(),
                                        Group::product({Group::integers(), Group::lattice_z2()})};
    for (const auto& g : groups) {
        for (int round = 0; round < 40; ++round) {
            Element e = rng.element_of(*g, 99);
            CHECK(g->parse_element(g->format_element(e)) == e);
        }
    }
}

TEST_CASE("product groups enumerate in mixed radix order") {
    auto g = Group::product({Group::cyclic(2), Group::cyclic(3)});
    CHECK(g->order() == 6);
    CHECK(g->is_abelian());
    auto all = g->elements();
    CHECK(all.size() == 6);
    for (std::uint64_t i = 0; i < 6; ++i) CHECK(g->element_index(all[i]) == i);
}
