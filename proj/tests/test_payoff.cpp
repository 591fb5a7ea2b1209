#include "test_support.hpp"

#include <doctest.h>

using namespace gg;
using ggtest::Rng;

namespace {

EventuallyPeriodicZ two_z_indicator() {
    return EventuallyPeriodicZ(2, {Rat(1), Rat(0)}, {Rat(1), Rat(0)}, 0, {Rat(1)});
}

EventuallyPeriodicZ wald_phi1() { return EventuallyPeriodicZ::split(Rat(0), Rat(1, 2), Rat(1)); }

EventuallyPeriodicZ nat_indicator() { return EventuallyPeriodicZ::split(Rat(0), Rat(1), Rat(1)); }

/// Uniform average over an integer interval, evaluated point by point.
Rat window_average(const EventuallyPeriodicZ& f, std::int64_t lo, std::int64_t hi) {
    Rat total = 0;
    for (std::int64_t x = lo; x <= hi; ++x) total += f.eval(Int(x));
    return total / Rat(Int(hi - lo + 1));
}

/// Riemann sum of a Q1 payoff over the factorial grid {k/n! : k < n!}.
Rat factorial_riemann_sum(const StepQ1& f, std::int64_t n) {
    std::int64_t size = 1;
    for (std::int64_t i = 2; i <= n; ++i) size *= i;
    Rat total = 0;
    for (std::int64_t k = 0; k < size; ++k) total += f.eval(Rat(Int(k), Int(size)));
    return total / Rat(Int(size));
}

StepQ1 love_hate_even() {
    // -min(w, 1-w)
    return StepQ1({Rat(0), Rat(1, 2), Rat(1)}, {{Rat(-1), Rat(0)}, {Rat(1), Rat(-1)}}, {});
}

}  // namespace

TEST_CASE("eventually periodic evaluation") {
    auto f = two_z_indicator();
    CHECK(f.eval(7) == 0);
    CHECK(f.eval(-4) == 1);
    CHECK(f.eval(0) == 1);
    CHECK(wald_phi1().eval(0) == Rat(1, 2));
    CHECK(wald_phi1().eval(Int("-1000000000000000000000")) == 0);
    CHECK(wald_phi1().eval(Int("1000000000000000000000")) == 1);
}

TEST_CASE("eventual averages with window oracle") {
    CHECK(two_z_indicator().eventual_averages() == std::pair<Rat, Rat>{Rat(1, 2), Rat(1, 2)});
    CHECK(wald_phi1().eventual_averages() == std::pair<Rat, Rat>{Rat(0), Rat(1)});
    CHECK(nat_indicator().eventual_averages() == std::pair<Rat, Rat>{Rat(0), Rat(1)});
    // window oracle: averages over whole periods beyond the core match exactly
    Rng rng(0x5eed0101);
    for (int round = 0; round < 200; ++round) {
        EventuallyPeriodicZ f = rng.epz();
        auto [minus, plus] = f.eventual_averages();
        std::int64_t m = f.period(), k = f.core_radius();
        std::int64_t reps = rng.i64(1, 1000 / m + 1);
        CHECK(window_average(f, k + 1, k + reps * m) == plus);
        CHECK(window_average(f, -k - reps * m, -k - 1) == minus);
    }
}

TEST_CASE("step function evaluation and lebesgue value") {
    StepQ1 quarter_half = StepQ1::indicator_interval(Rat(1, 4), Rat(1, 2), true, true);
    CHECK(quarter_half.eval(Rat(1, 3)) == 1);
    CHECK(quarter_half.eval(Rat(1, 4)) == 1);
    CHECK(quarter_half.eval(Rat(1, 2)) == 1);
    CHECK(quarter_half.eval(Rat(9, 16)) == 0);
    CHECK(quarter_half.lebesgue() == Rat(1, 4));
    CHECK(StepQ1::constant(Rat(1)).lebesgue() == 1);

    // piecewise linear min(w, 1-w): the factorial Riemann sums hit 1/4 exactly
    StepQ1 tent({Rat(0), Rat(1, 2), Rat(1)}, {{Rat(1), Rat(0)}, {Rat(-1), Rat(1)}}, {});
    CHECK(tent.lebesgue() == Rat(1, 4));
    CHECK(factorial_riemann_sum(tent, 6) == Rat(1, 4));
    CHECK(factorial_riemann_sum(tent, 7) == Rat(1, 4));
}

TEST_CASE("exact suprema") {
    CHECK(wald_phi1().sup().value == 1);
    auto even_sup = love_hate_even().sup();
    CHECK(even_sup.value == 0);
    CHECK(even_sup.attained);
    CHECK(*even_sup.witness == Element::rational_mod1(Rat(0)));

    auto z2 = Group::cyclic(2);
    FiniteTableFn mp(z2, {Rat(-1), Rat(1)});
    CHECK(mp.sup().value == 1);
    CHECK(*mp.sup().witness == Element::finite_index(1));

    // increasing linear piece: supremum approached at the right endpoint only
    StepQ1 ramp({Rat(0), Rat(1)}, {{Rat(1), Rat(0)}}, {});
    auto ramp_sup = ramp.sup();
    CHECK(ramp_sup.value == 1);
    CHECK_FALSE(ramp_sup.attained);
}

TEST_CASE("sup dominates pointwise evaluation") {
    Rng rng(0x5eed0102);
    auto z = Group::integers();
    auto q1 = Group::rational_circle();
    for (int round = 0; round < 200; ++round) {
        PayoffFn f = rng.coin() ? PayoffFn(rng.epz()) : PayoffFn(rng.step_q1());
        const Group& g = f.kind() == PayoffFn::Kind::EventuallyPeriodicZ ? *z : *q1;
        SupResult sup = f.sup();
        for (int probe = 0; probe < 12; ++probe) {
            Element x = rng.element_of(g, 200);
            CHECK(f.eval(g, x) <= sup.value);
        }
        if (sup.attained) CHECK(f.eval(g, *sup.witness) == sup.value);
    }
}

TEST_CASE("precomposition with affine maps") {
    auto reflected = nat_indicator().precompose_affine(-1, 0);
    CHECK(reflected.eventual_averages() == std::pair<Rat, Rat>{Rat(1), Rat(0)});

    auto shifted = wald_phi1().precompose_affine(1, 3);
    CHECK(shifted.eventual_averages() == std::pair<Rat, Rat>{Rat(0), Rat(1)});
    CHECK(shifted.eval(-3) == Rat(1, 2));  // core moved to -3
    CHECK(shifted.eval(0) == 1);

    StepQ1 quarter_half = StepQ1::indicator_interval(Rat(1, 4), Rat(1, 2), true, true);
    StepQ1 moved = quarter_half.precompose_affine(1, Rat(1, 4));
    CHECK(moved.lebesgue() == Rat(1, 4));
    Rng rng(0x5eed0103);
    for (int probe = 0; probe < 60; ++probe) {
        Rat x = rng.rat01(16);
        CHECK(moved.eval(x) == quarter_half.eval(frac_mod1(x + Rat(1, 4))));
    }
}

TEST_CASE("tail averages transform exactly under precomposition") {
    Rng rng(0x5eed0104);
    for (int round = 0; round < 200; ++round) {
        EventuallyPeriodicZ f = rng.epz();
        auto [minus, plus] = f.eventual_averages();
        Int shift(rng.i64(-40, 40));
        auto same = f.precompose_affine(1, shift);
        CHECK(same.eventual_averages() == std::pair<Rat, Rat>{minus, plus});
        auto swapped = f.precompose_affine(-1, shift);
        CHECK(swapped.eventual_averages() == std::pair<Rat, Rat>{plus, minus});
        // spot-check pointwise agreement
        for (int probe = 0; probe < 6; ++probe) {
            Int x(rng.i64(-200, 200));
            CHECK(same.eval(x) == f.eval(x + shift));
            CHECK(swapped.eval(x) == f.eval(-x + shift));
        }
    }
}

TEST_CASE("lebesgue value is invariant under affine precomposition") {
    Rng rng(0x5eed0105);
    for (int round = 0; round < 200; ++round) {
        StepQ1 f = rng.step_q1();
        int sign = rng.coin() ? 1 : -1;
        Rat shift = rng.rat01(12);
        StepQ1 moved = f.precompose_affine(sign, shift);
        CHECK(moved.lebesgue() == f.lebesgue());
        for (int probe = 0; probe < 6; ++probe) {
            Rat x = rng.rat01(20);
            CHECK(moved.eval(x) == f.eval(frac_mod1(Rat(sign) * x + shift)));
        }
    }
}

TEST_CASE("convolution preserves tail averages and lebesgue values") {
    Rng rng(0x5eed0106);
    for (int round = 0; round < 200; ++round) {
        EventuallyPeriodicZ f = rng.epz();
        std::vector<Rat> weights = rng.simplex(static_cast<std::size_t>(rng.i64(1, 3)));
        std::vector<std::pair<Rat, Int>> shifts;
        for (const Rat& w : weights) shifts.emplace_back(w, Int(rng.i64(-25, 25)));
        auto conv = f.convolve(shifts);
        CHECK(conv.eventual_averages() == f.eventual_averages());
        for (int probe = 0; probe < 4; ++probe) {
            Int x(rng.i64(-120, 120));
            Rat expected = 0;
            for (const auto& [w, d] : shifts) expected += w * f.eval(x + d);
            CHECK(conv.eval(x) == expected);
        }

        StepQ1 s = rng.step_q1();
        std::vector<std::pair<Rat, Rat>> qshifts;
        for (const Rat& w : weights) qshifts.emplace_back(w, rng.rat01(10));
        StepQ1 sconv = s.convolve(qshifts);
        CHECK(sconv.lebesgue() == s.lebesgue());
        for (int probe = 0; probe < 4; ++probe) {
            Rat x = rng.rat01(14);
            Rat expected = 0;
            for (const auto& [w, d] : qshifts) expected += w * s.eval(frac_mod1(x + d));
            CHECK(sconv.eval(x) == expected);
        }
    }
}

TEST_CASE("lattice predicates decide membership") {
    PredicateZ2 quadrant = PredicateZ2::cone(1, 0, 0, 1);
    CHECK(quadrant.contains(2, 3));
    CHECK_FALSE(quadrant.contains(0, 5));   // boundary rays excluded
    CHECK_FALSE(quadrant.contains(4, 0));
    CHECK_FALSE(quadrant.contains(0, 0));
    CHECK_FALSE(quadrant.contains(-1, 7));

    PredicateZ2 upper = PredicateZ2::cone(1, 0, -1, 0);  // open half plane y > 0
    CHECK(upper.contains(-100, 1));
    CHECK_FALSE(upper.contains(3, 0));

    PredicateZ2 wide = PredicateZ2::cone(1, 0, 0, -1);  // everything but the closed fourth quadrant
    CHECK(wide.contains(-1, 0));
    CHECK(wide.contains(1, 1));
    CHECK_FALSE(wide.contains(1, -1));
    CHECK_FALSE(wide.contains(1, 0));

    PredicateZ2 checker = PredicateZ2::periodic(2, 2, {{1, 0}, {0, 1}});
    CHECK(checker.contains(0, 0));
    CHECK(checker.contains(-1, 1));
    CHECK_FALSE(checker.contains(0, 1));

    PredicateZ2 combo = PredicateZ2::predicate_and(
        {quadrant, PredicateZ2::predicate_not(PredicateZ2::finite_set({{Int(1), Int(1)}}))});
    CHECK(combo.contains(2, 1));
    CHECK_FALSE(combo.contains(1, 1));

    CHECK_THROWS_AS(PredicateZ2::cone(1, 1, 2, 2), ValidationError);
    CHECK_THROWS_AS(PayoffFn(quadrant).sup(), UnsupportedError);
}

TEST_CASE("payoff wrappers check group compatibility") {
    auto z = Group::integers();
    auto q1 = Group::rational_circle();
    PayoffFn f(two_z_indicator());
    CHECK(f.compatible_with(*z));
    CHECK_FALSE(f.compatible_with(*q1));
    CHECK_THROWS_AS(f.eval(*q1, Element::rational_mod1(Rat(0))), VariantMismatch);
    CHECK_THROWS_AS(f.lebesgue_q1(), VariantMismatch);
    CHECK_THROWS_AS(PayoffFn(love_hate_even()).eventual_averages(), VariantMismatch);
}
