#pragma once

#include "groupgames/group.hpp"
#include "groupgames/integrate.hpp"
#include "groupgames/measure.hpp"
#include "groupgames/payoff.hpp"

#include <string>
#include <vector>

namespace gg {

/**
 * A group game: player i's payoff is phi_i applied to the group combination
 * of eta_j(x_j) over her neighborhood P_i (ascending player order). The
 * bijections eta_j are global, one per player, shared by every payoff that
 * touches player j.
 */
struct GameSpec {
    GroupPtr group;
    int players = 0;
    std::vector<PayoffFn> phi;                    // one per player
    std::vector<Bijection> eta;                   // one per player
    std::vector<std::vector<int>> neighborhoods;  // sorted 0-based ids, i in P_i, |P_i| >= 2
    OrderWeights nu = OrderWeights::uniform(2);

    /// Throws ValidationError / VariantMismatch on any broken invariant.
    void validate() const;

    friend bool operator==(const GameSpec& a, const GameSpec& b);
};

/// One mixed strategy per player.
struct Profile {
    std::vector<Measure> measures;

    void validate(const GameSpec& game) const;

    friend bool operator==(const Profile& a, const Profile& b) = default;
};

}  // namespace gg
