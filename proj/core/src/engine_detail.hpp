#pragma once

#include "groupgames/game.hpp"
#include "groupgames/integrate.hpp"

#include <optional>
#include <vector>

namespace gg::detail {

/// Intermediate state of an iterated integral: still a representable
/// function of the not-yet-integrated joint combination, or a constant once
/// a symbolic invariant mean has collapsed it.
struct State {
    std::optional<PayoffFn> fn;
    Rat constant = 0;

    bool is_const() const { return !fn.has_value(); }
    static State of(PayoffFn f) { return State{std::move(f), Rat(0)}; }
    static State of_const(Rat c) { return State{std::nullopt, std::move(c)}; }
};

/// w * A + (1 - w) * B, exact in every class combination.
State combine_states(const Rat& w, const State& a, const State& b);

/// Integrates out one variable: state of phi(w * eta(x)) against mu.
State step(const State& state, const Measure& mu, const Bijection& eta, const Group& group);

/// Value of a fully integrated state (evaluate the empty combination).
Rat finish(const State& state, const Group& group);

/// Direct enumeration over finitely supported strategies; the only path for
/// non-abelian finite groups and lattice predicates.
bool brute_force_needed(const GameSpec& game, int player);
Rat brute_force_value(const GameSpec& game, const Profile& profile, int player,
                      const std::optional<std::pair<int, Measure>>& replacement = std::nullopt);

/// Iterated value for one relative order of the player's neighborhood
/// (innermost-first). `replacement` substitutes a candidate strategy.
Rat term_value(const GameSpec& game, const Profile& profile, int player,
               const std::vector<int>& order,
               const std::optional<std::pair<int, Measure>>& replacement = std::nullopt);

/// Keeps only members of `subset`, preserving relative order.
std::vector<int> restrict_order(const std::vector<int>& pi, const std::vector<int>& subset);

/// Cache key for order-weighted sums: everything after the first purely
/// symbolic measure cannot change a collapsed constant.
std::vector<int> truncate_after_first_symbolic(const Profile& profile, const std::vector<int>& order,
                                               const std::optional<std::pair<int, Measure>>& replacement =
                                                   std::nullopt);

PayoffFn payoff_affine(const std::vector<std::pair<Rat, const PayoffFn*>>& terms, const Rat& constant);

}  // namespace gg::detail
