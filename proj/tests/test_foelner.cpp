#include "test_support.hpp"

#include <doctest.h>

using namespace gg;
using ggtest::Rng;

namespace {

EventuallyPeriodicZ two_z_indicator() {
    return EventuallyPeriodicZ(2, {Rat(1), Rat(0)}, {Rat(1), Rat(0)}, 0, {Rat(1)});
}

EventuallyPeriodicZ nat_indicator() { return EventuallyPeriodicZ::split(Rat(0), Rat(1), Rat(1)); }

PredicateZ2 quadrant() { return PredicateZ2::cone(1, 0, 0, 1); }

}  // namespace

TEST_CASE("window construction") {
    auto z = Group::integers();
    auto z2 = Group::lattice_z2();
    auto q1 = Group::rational_circle();

    Window sym = build_window(z, WindowSpec::z_symmetric(2));
    CHECK(sym.size() == 5);
    CHECK(sym.elements.front() == Element::integer(-2));
    CHECK(sym.elements.back() == Element::integer(2));

    Window cone = build_window(z2, WindowSpec::z2_cone(3, quadrant()));
    CHECK(cone.size() == 9);
    for (const Element& e : cone.elements) {
        CHECK(e.lattice().first >= 1);
        CHECK(e.lattice().first <= 3);
        CHECK(e.lattice().second >= 1);
    }

    Window fact = build_window(q1, WindowSpec::q1_factorial(3));
    CHECK(fact.size() == 6);
    CHECK(fact.elements[1] == Element::rational_mod1(Rat(1, 6)));

    CHECK_THROWS_AS(build_window(z, WindowSpec::q1_factorial(3)), VariantMismatch);
    // a cone so thin that no lattice point of the 1-square lies inside
    CHECK_THROWS_AS(build_window(z2, WindowSpec::z2_cone(1, PredicateZ2::cone(5, 1, 4, 1))),
                    ValidationError);
}

TEST_CASE("invariance defects") {
    auto z = Group::integers();
    auto z2 = Group::lattice_z2();
    auto q1 = Group::rational_circle();

    CHECK(invariance_defect(build_window(z, WindowSpec::z_symmetric(10)), Element::integer(1)) ==
          Rat(2, 21));
    CHECK(invariance_defect(build_window(q1, WindowSpec::q1_factorial(4)),
                            Element::rational_mod1(Rat(1, 8))) == 0);
    // the quadrant window shifted by (1,1) loses and gains an L-shaped rim
    for (std::int64_t n : {10, 50, 200}) {
        Rat defect =
            invariance_defect(build_window(z2, WindowSpec::z2_cone(n, quadrant())), Element::lattice(1, 1));
        CHECK(defect == Rat(Int(4 * n - 2), Int(n * n)));
    }
}

TEST_CASE("defect bounds along the window families") {
    Rng rng(0x5eed0501);
    auto z = Group::integers();
    auto q1 = Group::rational_circle();
    for (int round = 0; round < 200; ++round) {
        std::int64_t g = rng.i64(-40, 40);
        std::int64_t n = rng.i64(50, 400);
        Rat defect = invariance_defect(build_window(z, WindowSpec::z_symmetric(n)),
                                       Element::integer(Int(g)));
        CHECK(defect == Rat(Int(2 * std::min(std::abs(g), 2 * n + 1)), Int(2 * n + 1)));
        CHECK(defect <= Rat(Int(2 * std::abs(g)), Int(2 * n + 1)));

        std::int64_t den = rng.i64(1, 24);
        Rat shift = Rat(Int(rng.i64(0, den - 1)), Int(den));
        Window fact = build_window(q1, WindowSpec::q1_factorial(4));
        Rat qdefect = invariance_defect(fact, Element::rational_mod1(shift));
        if (Int(24) % denominator(shift) == 0) CHECK(qdefect == 0);
    }
    // O(1/n) decay on cone windows, measured not assumed
    std::vector<std::int64_t> ns{10, 20, 40, 80, 160, 320};
    auto z2 = Group::lattice_z2();
    Rng rng2(0x5eed0502);
    for (int round = 0; round < 10; ++round) {
        Element g = Element::lattice(Int(rng2.i64(-3, 3)), Int(rng2.i64(-3, 3)));
        Rat prev;
        bool first = true;
        for (std::int64_t n : ns) {
            Rat d = invariance_defect(build_window(z2, WindowSpec::z2_cone(n, quadrant())), g);
            Int g1 = g.lattice().first < 0 ? Int(-g.lattice().first) : g.lattice().first;
            Int g2 = g.lattice().second < 0 ? Int(-g.lattice().second) : g.lattice().second;
            CHECK(d <= Rat(4 * (g1 + g2) + 4, Int(n)));
            if (!first) CHECK(d <= prev);
            prev = d;
            first = false;
        }
    }
}

TEST_CASE("density series") {
    auto z = Group::integers();
    auto z2 = Group::lattice_z2();
    auto q1 = Group::rational_circle();

    for (std::int64_t n : {5, 17, 100}) {
        CHECK(window_density(PayoffFn(quadrant()), build_window(z2, WindowSpec::z2_cone(n, quadrant()))) ==
              1);
        CHECK(window_density(PayoffFn(two_z_indicator()), build_window(z, WindowSpec::z_symmetric(n))) ==
              Rat(Int(n + 1), Int(2 * n + 1)));
    }
    // the factorial windows count half-open intervals exactly once the
    // denominators divide n!
    StepQ1 half_open = StepQ1::indicator_interval(Rat(1, 4), Rat(1, 2), true, false);
    CHECK(window_density(PayoffFn(half_open), build_window(q1, WindowSpec::q1_factorial(4))) ==
          Rat(1, 4));
    CHECK(window_density(PayoffFn(half_open), build_window(q1, WindowSpec::q1_factorial(6))) ==
          Rat(1, 4));
    StepQ1 closed = StepQ1::indicator_interval(Rat(1, 4), Rat(1, 2), true, true);
    CHECK(window_density(PayoffFn(closed), build_window(q1, WindowSpec::q1_factorial(4))) ==
          Rat(1, 4) + Rat(1, 24));

    DensitySweep sweep = density_sweep(PayoffFn(two_z_indicator()), z,
                                       {WindowSpec::z_symmetric(10), WindowSpec::z_symmetric(100),
                                        WindowSpec::z_symmetric(1000)});
    CHECK(sweep.points.size() == 3);
    CHECK(sweep.final_value == Rat(1001, 2001));
}

TEST_CASE("empirical window measures integrate through the standard path") {
    auto z = Group::integers();
    Rng rng(0x5eed0503);
    for (int round = 0; round < 60; ++round) {
        EventuallyPeriodicZ f = rng.epz_indicator(8, 4);
        Window w = build_window(z, WindowSpec::z_symmetric(rng.i64(3, 40)));
        CHECK(window_density(PayoffFn(f), w) == integrate(PayoffFn(f), w.empirical(), *z));
    }
}

TEST_CASE("right windows recover the right tail average exactly") {
    Rng rng(0x5eed0504);
    auto z = Group::integers();
    for (int round = 0; round < 200; ++round) {
        EventuallyPeriodicZ f = rng.epz(6, 4);
        auto [minus, plus] = f.eventual_averages();
        std::int64_t m = f.period(), k = f.core_radius();
        std::int64_t reps = rng.i64(1, 40);
        // translate the window past the core so it spans whole periods
        Window w = build_window(z, WindowSpec::z_right(reps * m - 1));
        Window moved = w.translated(Element::integer(Int(k + 1)));
        CHECK(integrate(PayoffFn(f), moved.empirical(), *z) == plus);
        (void)minus;
    }
}

TEST_CASE("upper Banach density on the worked sets") {
    CHECK(upper_banach_density(nat_indicator(), 100) == 1);
    CHECK(upper_banach_density(nat_indicator(), 1000) == 1);
    CHECK(upper_banach_density(two_z_indicator(), 100) == Rat(101, 201));
    EventuallyPeriodicZ empty = EventuallyPeriodicZ::constant(Rat(0));
    CHECK(upper_banach_density(empty, 50) == 0);
}

TEST_CASE("upper Banach density brackets the maximal tail average") {
    Rng rng(0x5eed0505);
    for (int round = 0; round < 200; ++round) {
        EventuallyPeriodicZ f = rng.epz_indicator(16, 10);
        auto [minus, plus] = f.eventual_averages();
        Rat hi = std::max(minus, plus);
        std::int64_t n = 10000;
        std::int64_t m = f.period(), k = f.core_radius();
        Rat value = upper_banach_density(f, n, n + k + m + 10);
        CHECK(value >= hi - Rat(1, 100));
        CHECK(value <= hi + Rat(Int(2 * m + 2 * k + 1), Int(2 * n + 1)));
    }
    // one run at the default translate range
    EventuallyPeriodicZ f = Rng(0x5eed0506).epz_indicator(12, 6);
    auto [minus, plus] = f.eventual_averages();
    Rat hi = std::max(minus, plus);
    Rat value = upper_banach_density(f, 10000);
    CHECK(value >= hi - Rat(1, 100));
    CHECK(value <= hi + Rat(1, 100));
}
