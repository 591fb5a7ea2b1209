#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace gg;
using ggtest::Rng;

namespace {

EventuallyPeriodicZ two_z_indicator() {
    return EventuallyPeriodicZ(2, {Rat(1), Rat(0)}, {Rat(1), Rat(0)}, 0, {Rat(1)});
}

EventuallyPeriodicZ nat_indicator() { return EventuallyPeriodicZ::split(Rat(0), Rat(1), Rat(1)); }

EventuallyPeriodicZ wald_phi1() { return EventuallyPeriodicZ::split(Rat(0), Rat(1, 2), Rat(1)); }

GameSpec wald_game() {
    GameSpec game = ggtest::z_game({wald_phi1(), EventuallyPeriodicZ::split(Rat(1), Rat(1, 2), Rat(0))});
    game.eta[1] = Bijection::affine_z(-1, 0);
    return game;
}

GameSpec rsp_q1_game() {
    StepQ1 phi1({Rat(0), Rat(1, 3), Rat(2, 3), Rat(1)},
                {{Rat(0), Rat(0)}, {Rat(0), Rat(1, 2)}, {Rat(0), Rat(1)}},
                {{Rat(0), Rat(1, 2)}, {Rat(1, 3), Rat(1, 2)}, {Rat(2, 3), Rat(1, 2)}});
    StepQ1 phi2({Rat(0), Rat(1, 3), Rat(2, 3), Rat(1)},
                {{Rat(0), Rat(1)}, {Rat(0), Rat(1, 2)}, {Rat(0), Rat(0)}},
                {{Rat(0), Rat(1, 2)}, {Rat(1, 3), Rat(1, 2)}, {Rat(2, 3), Rat(1, 2)}});
    GameSpec game;
    game.group = Group::rational_circle();
    game.players = 2;
    game.phi = {PayoffFn(phi1), PayoffFn(phi2)};
    game.eta = {Bijection::affine_q1(-1, Rat(0)), Bijection::identity()};
    game.neighborhoods = {{0, 1}, {0, 1}};
    game.nu = OrderWeights::uniform(2);
    return game;
}

}  // namespace

TEST_CASE("single integrals") {
    auto z = Group::integers();
    auto q1 = Group::rational_circle();
    for (const Rat& theta : {Rat(0), Rat(1, 3), Rat(1, 2), Rat(1)}) {
        CHECK(integrate(PayoffFn(two_z_indicator()), Measure::two_ended(theta), *z) == Rat(1, 2));
    }
    CHECK(integrate(PayoffFn(nat_indicator()), Measure::two_ended(Rat(1)), *z) == 1);
    CHECK(integrate(PayoffFn(StepQ1::indicator_interval(Rat(1, 4), Rat(1, 2), true, true)),
                    Measure::interval_mean(), *q1) == Rat(1, 4));
    CHECK_THROWS_AS(integrate(PayoffFn(two_z_indicator()), Measure::interval_mean(), *z),
                    VariantMismatch);
}

TEST_CASE("partial integration convolves or collapses") {
    auto z = Group::integers();
    // against a point mass: a translate, same tail averages
    FnOrConst shifted = partial_integrate(PayoffFn(nat_indicator()),
                                          Measure::dirac(Element::integer(5)),
                                          Bijection::identity(), *z);
    const PayoffFn& fn = std::get<PayoffFn>(shifted);
    CHECK(fn.eval(*z, Element::integer(-5)) == 1);
    CHECK(fn.eval(*z, Element::integer(-6)) == 0);
    CHECK(fn.eventual_averages() == std::pair<Rat, Rat>{Rat(0), Rat(1)});
    // against the one-sided means: a constant
    CHECK(std::get<Rat>(partial_integrate(PayoffFn(nat_indicator()), Measure::two_ended(Rat(1)),
                                          Bijection::identity(), *z)) == 1);
    CHECK(std::get<Rat>(partial_integrate(PayoffFn(nat_indicator()), Measure::two_ended(Rat(0)),
                                          Bijection::identity(), *z)) == 0);
}

TEST_CASE("iterated payoff on the pick-the-larger-integer game") {
    GameSpec game = wald_game();
    Profile profile{{Measure::two_ended(Rat(1)), Measure::two_ended(Rat(1))}};
    CHECK(iterated_payoff(game, profile, {0, 1}, 0) == 1);
    CHECK(iterated_payoff(game, profile, {1, 0}, 0) == 0);
    CHECK(iterated_payoff(game, profile, {1, 0}, 1) == 1);
    CHECK(payoff_nu(game, profile, OrderWeights::uniform(2), 0) == Rat(1, 2));
    CHECK(payoff_nu(game, profile, OrderWeights::uniform(2), 1) == Rat(1, 2));

    // pointwise oracle: uniform windows on {0..n} for player 1's measure give
    // an inner integral near 1 at any fixed opponent point
    auto window = build_window(game.group, WindowSpec::z_right(1000));
    for (std::int64_t y : {0, 7, -12}) {
        Profile empirical{{window.empirical(), Measure::dirac(Element::integer(y))}};
        Rat inner = iterated_payoff(game, empirical, {0, 1}, 0);
        CHECK(inner >= Rat(1) - Rat(Int(std::abs(y) + 2), Int(1001)));
        CHECK(inner <= 1);
    }
}

TEST_CASE("order weighted payoffs match spec examples") {
    auto z = Group::integers();
    GameSpec mp = ggtest::z_game({two_z_indicator(),
                                  EventuallyPeriodicZ(2, {Rat(0), Rat(1)}, {Rat(0), Rat(1)}, 0,
                                                      {Rat(0)})});
    Profile profile{{Measure::two_ended(Rat(1, 3)), Measure::two_ended(Rat(1))}};
    for (int i = 0; i < 4; ++i) {
        Rng rng(0x5eed0300 + static_cast<std::uint64_t>(i));
        OrderWeights nu = rng.order_weights(2);
        CHECK(payoff_nu(mp, profile, nu, 0) == Rat(1, 2));
    }

    GameSpec rsp = rsp_q1_game();
    Profile means{{Measure::interval_mean(), Measure::interval_mean()}};
    for (int i = 0; i < 4; ++i) {
        Rng rng(0x5eed0310 + static_cast<std::uint64_t>(i));
        OrderWeights nu = rng.order_weights(2);
        CHECK(payoff_nu(rsp, means, nu, 0) == Rat(1, 2));
        CHECK(payoff_nu(rsp, means, nu, 1) == Rat(1, 2));
    }
    // factorial-subgroup window oracle: uniform on the order-720 subgroup
    auto window = build_window(rsp.group, WindowSpec::q1_factorial(6));
    Profile empirical{{window.empirical(), window.empirical()}};
    CHECK(payoff_nu(rsp, empirical, OrderWeights::uniform(2), 0) == Rat(1, 2));
}

TEST_CASE("order of integration probe") {
    auto z = Group::integers();
    auto probe = [&](const Measure& mu, const Measure& lambda) {
        return fubini_gap(PayoffFn(nat_indicator()), mu, lambda, z);
    };
    CHECK(probe(Measure::two_ended(Rat(0)), Measure::two_ended(Rat(1))) ==
          std::pair<Rat, Rat>{Rat(0), Rat(1)});
    CHECK(probe(Measure::dirac(Element::integer(3)), Measure::two_ended(Rat(1))) ==
          std::pair<Rat, Rat>{Rat(1), Rat(1)});
    CHECK(fubini_gap(PayoffFn(two_z_indicator()), Measure::two_ended(Rat(0)),
                     Measure::two_ended(Rat(1)), z) == std::pair<Rat, Rat>{Rat(1, 2), Rat(1, 2)});
}

TEST_CASE("iterated integration is order independent on countably additive profiles") {
    Rng rng(0x5eed0301);
    auto z = Group::integers();
    for (int round = 0; round < 200; ++round) {
        int players = static_cast<int>(rng.i64(2, 3));
        std::vector<EventuallyPeriodicZ> phis;
        for (int i = 0; i < players; ++i) phis.push_back(rng.epz(4, 2, 3, 4));
        GameSpec game = ggtest::z_game(std::move(phis));
        for (auto& eta : game.eta)
            if (rng.coin()) eta = Bijection::affine_z(rng.coin() ? 1 : -1, Int(rng.i64(-6, 6)));
        Profile profile;
        for (int i = 0; i < players; ++i) profile.measures.push_back(rng.finite_measure(*z, 3, 8));

        std::vector<int> order(static_cast<std::size_t>(players));
        std::iota(order.begin(), order.end(), 0);
        Rat reference = iterated_payoff(game, profile, order, 0);
        CHECK(reference == ggtest::enumeration_oracle(game, profile.measures, 0));
        while (std::next_permutation(order.begin(), order.end()))
            CHECK(iterated_payoff(game, profile, order, 0) == reference);
    }
}

TEST_CASE("collapse factorization: the first symbolic measure decides the term") {
    Rng rng(0x5eed0302);
    auto z = Group::integers();
    for (int round = 0; round < 200; ++round) {
        GameSpec game = ggtest::z_game({rng.epz(4, 3), rng.epz(4, 3), rng.epz(4, 3)});
        Rat theta = rng.rat01_closed(7);
        Measure finite = rng.finite_measure(*z, 2, 10);
        Profile profile{{finite, Measure::two_ended(theta),
                         rng.coin() ? Measure::two_ended(rng.rat01_closed(7))
                                    : rng.finite_measure(*z, 2, 10)}};
        // the symbolic mean is innermost: everything after it is irrelevant,
        // and the value is its collapse of the bare payoff
        auto [minus, plus] = game.phi[0].eventual_averages();
        Rat collapsed = theta * plus + (Rat(1) - theta) * minus;
        CHECK(iterated_payoff(game, profile, {1, 0, 2}, 0) == collapsed);
        CHECK(iterated_payoff(game, profile, {1, 2, 0}, 0) == collapsed);
        // finite prefix then the mean: the convolved averages are unchanged,
        // so the same constant results no matter the suffix arrangement
        CHECK(iterated_payoff(game, profile, {0, 1, 2}, 0) == collapsed);
    }
}

TEST_CASE("payoff is affine in each strategy coordinate") {
    Rng rng(0x5eed0303);
    auto z = Group::integers();
    for (int round = 0; round < 200; ++round) {
        GameSpec game = ggtest::z_game({rng.epz(4, 2), rng.epz(4, 2)});
        OrderWeights nu = rng.order_weights(2);
        Measure fixed = rng.measure_on_z(*z, 1);
        Measure a = rng.measure_on_z(*z, 1);
        Measure b = rng.measure_on_z(*z, 1);
        Rat w = rng.rat01_closed(8);
        Profile mixed{{Measure::mixture(w, a, b), fixed}};
        Profile pa{{a, fixed}};
        Profile pb{{b, fixed}};
        for (int i = 0; i < 2; ++i) {
            Rat lhs = payoff_nu(game, mixed, nu, i);
            Rat rhs = w * payoff_nu(game, pa, nu, i) + (Rat(1) - w) * payoff_nu(game, pb, nu, i);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("marginal order weights agree with full permutation sums") {
    Rng rng(0x5eed0304);
    auto z = Group::integers();
    for (int round = 0; round < 60; ++round) {
        int players = static_cast<int>(rng.i64(2, 4));
        std::vector<EventuallyPeriodicZ> phis;
        for (int i = 0; i < players; ++i) phis.push_back(rng.epz(3, 2, 3, 4));
        GameSpec game = ggtest::z_game(std::move(phis));
        // random neighborhood for player 0 containing 0
        if (players >= 3 && rng.coin()) {
            game.neighborhoods[0] = {0, static_cast<int>(rng.i64(1, players - 1))};
            std::sort(game.neighborhoods[0].begin(), game.neighborhoods[0].end());
        }
        OrderWeights nu = rng.order_weights(players);
        Profile profile;
        for (int i = 0; i < players; ++i) profile.measures.push_back(rng.measure_on_z(*z, 1));

        Rat direct = payoff_nu(game, profile, nu, 0);
        Rat summed = 0;
        if (nu.is_uniform()) {
            std::vector<int> order(static_cast<std::size_t>(players));
            std::iota(order.begin(), order.end(), 0);
            Int count = 0;
            Rat acc = 0;
            do {
                acc += iterated_payoff(game, profile, order, 0);
                ++count;
            } while (std::next_permutation(order.begin(), order.end()));
            summed = acc / Rat(count);
        } else {
            for (const auto& [order, weight] : nu.atoms())
                summed += weight * iterated_payoff(game, profile, order, 0);
        }
        CHECK(direct == summed);
    }
}

TEST_CASE("flipping the innermost convention reverses order lists") {
    Rng rng(0x5eed0305);
    auto z = Group::integers();
    for (int round = 0; round < 60; ++round) {
        GameSpec game = ggtest::z_game({rng.epz(3, 2), rng.epz(3, 2)});
        Profile profile{{rng.measure_on_z(*z, 1), rng.measure_on_z(*z, 1)}};
        OrderWeights forward = OrderWeights::single({0, 1});
        OrderWeights backward = OrderWeights::single({1, 0});
        EvalOptions flipped{true};
        CHECK(payoff_nu(game, profile, forward, 0, flipped) ==
              payoff_nu(game, profile, backward, 0));
        CHECK(iterated_payoff(game, profile, {0, 1}, 0, flipped) ==
              iterated_payoff(game, profile, {1, 0}, 0));
    }
}
