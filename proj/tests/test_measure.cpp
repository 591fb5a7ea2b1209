#include "test_support.hpp"

#include <doctest.h>

using namespace gg;
using ggtest::Rng;

TEST_CASE("measure validation") {
    auto z = Group::integers();
    auto q1 = Group::rational_circle();
    Measure ok = Measure::finite_support(
        {{Element::integer(0), Rat(1, 2)}, {Element::integer(1), Rat(1, 2)}});
    CHECK_NOTHROW(ok.validate(*z));

    CHECK_THROWS_WITH_AS(Measure::finite_support({{Element::integer(0), Rat(1, 2)},
                                                  {Element::integer(1), Rat(1, 3)}}),
                         "measure weights must sum to 1 (got 5/6)", ValidationError);
    CHECK_THROWS_AS(Measure::finite_support({{Element::integer(0), Rat(-1)},
                                             {Element::integer(1), Rat(2)}}),
                    ValidationError);
    CHECK_THROWS_AS(Measure::two_ended(Rat(1)).validate(*q1), VariantMismatch);
    CHECK_THROWS_AS(Measure::interval_mean().validate(*z), VariantMismatch);
    CHECK_THROWS_AS(Measure::uniform_finite().validate(*z), VariantMismatch);
    CHECK_THROWS_AS(Measure::two_ended(Rat(3, 2)), ValidationError);
}

TEST_CASE("duplicate atoms merge canonically") {
    Measure merged = Measure::finite_support({{Element::integer(5), Rat(1, 2)},
                                              {Element::integer(5), Rat(1, 4)},
                                              {Element::integer(2), Rat(1, 4)}});
    CHECK(merged.atoms().size() == 2);
    CHECK(merged.atoms()[0].point == Element::integer(2));
    CHECK(merged.atoms()[1].weight == Rat(3, 4));
}

TEST_CASE("pushforward of the symbolic means") {
    auto z = Group::integers();
    auto q1 = Group::rational_circle();
    CHECK(Measure::two_ended(Rat(1)).pushforward(Bijection::affine_z(-1, 0), *z) ==
          Measure::two_ended(Rat(0)));
    CHECK(Measure::two_ended(Rat(1, 3)).pushforward(Bijection::affine_z(1, 44), *z) ==
          Measure::two_ended(Rat(1, 3)));
    CHECK(Measure::interval_mean().pushforward(Bijection::affine_q1(-1, Rat(0)), *q1) ==
          Measure::interval_mean());
}

TEST_CASE("pushforward of point masses uses the inverse map") {
    auto z = Group::integers();
    // rho(A) = mu(eta(A)): for eta(x) = x + 3, rho({2}) = delta_5({5}) = 1
    Measure pushed = Measure::dirac(Element::integer(5)).pushforward(Bijection::affine_z(1, 3), *z);
    CHECK(pushed == Measure::dirac(Element::integer(2)));
    Bijection eta = Bijection::affine_z(1, 3);
    CHECK(eta.apply(*z, Element::integer(2)) == Element::integer(5));
}

TEST_CASE("pushforward round trip") {
    Rng rng(0x5eed0201);
    auto z = Group::integers();
    for (int round = 0; round < 200; ++round) {
        Measure mu = rng.measure_on_z(*z, 2);
        Bijection eta = Bijection::affine_z(rng.coin() ? 1 : -1, Int(rng.i64(-30, 30)));
        CHECK(mu.pushforward(eta, *z).pushforward(eta.inverse(), *z) == mu);
    }
}

TEST_CASE("change of variables against integration") {
    // integrate(f, pushforward(mu, eta)) = integrate(f o inverse(eta), mu)
    Rng rng(0x5eed0202);
    auto z = Group::integers();
    for (int round = 0; round < 200; ++round) {
        EventuallyPeriodicZ f = rng.epz();
        Bijection eta = Bijection::affine_z(rng.coin() ? 1 : -1, Int(rng.i64(-25, 25)));
        Measure mu = rng.coin() ? rng.finite_measure(*z) : Measure::two_ended(rng.rat01_closed(8));
        Rat via_pushforward = integrate(PayoffFn(f), mu.pushforward(eta, *z), *z);
        Rat via_precompose = integrate(PayoffFn(f).precompose(eta.inverse()), mu, *z);
        CHECK(via_pushforward == via_precompose);
    }
    // with eta(x) = -x the map is self-inverse, so the two sides agree with
    // eta itself on both ends
    for (int round = 0; round < 50; ++round) {
        EventuallyPeriodicZ f = rng.epz();
        Bijection neg = Bijection::affine_z(-1, 0);
        Measure mu = rng.coin() ? rng.finite_measure(*z) : Measure::two_ended(rng.rat01_closed(8));
        CHECK(integrate(PayoffFn(f), mu.pushforward(neg, *z), *z) ==
              integrate(PayoffFn(f).precompose(neg), mu, *z));
    }
}

TEST_CASE("uniform measures are translation invariant") {
    Rng rng(0x5eed0203);
    for (int round = 0; round < 200; ++round) {
        GroupPtr g = rng.finite_abelian_group();
        FiniteTableFn f = rng.table_fn(g);
        Element shift = rng.element_of(*g);
        FiniteTableFn translated = f.convolve({{Rat(1), shift}});
        CHECK(integrate(PayoffFn(translated), Measure::uniform_finite(), *g) ==
              integrate(PayoffFn(f), Measure::uniform_finite(), *g));
    }
}

TEST_CASE("mixtures expand and integrate linearly") {
    Rng rng(0x5eed0204);
    auto z = Group::integers();
    for (int round = 0; round < 200; ++round) {
        Measure a = rng.finite_measure(*z);
        Measure b = rng.finite_measure(*z);
        Rat w = rng.rat01_closed(9);
        Measure mix = Measure::mixture(w, a, b);
        EventuallyPeriodicZ f = rng.epz();
        Rat direct = integrate(PayoffFn(f), mix, *z);
        Rat linear = w * integrate(PayoffFn(f), a, *z) + (Rat(1) - w) * integrate(PayoffFn(f), b, *z);
        CHECK(direct == linear);
        CHECK(mix.is_finitely_supported(*z));
        Rat expanded = 0;
        for (const auto& atom : mix.expand_atoms(*z)) expanded += atom.weight * f.eval(atom.point.integer());
        CHECK(expanded == direct);
    }
}
