#include "groupgames/game.hpp"

#include "groupgames/errors.hpp"

#include <algorithm>

namespace gg {

void GameSpec::validate() const {
    if (!group) throw ValidationError("game needs a group");
    if (players < 2) throw ValidationError("game needs at least two players");
    if (phi.size() != static_cast<std::size_t>(players))
        throw ValidationError("need exactly one payoff function per player");
    if (eta.size() != static_cast<std::size_t>(players))
        throw ValidationError("need exactly one bijection per player");
    if (neighborhoods.size() != static_cast<std::size_t>(players))
        throw ValidationError("need exactly one neighborhood per player");
    if (nu.players() != players) throw ValidationError("order weights sized for a different game");
    for (int i = 0; i < players; ++i) {
        const auto& fn = phi[static_cast<std::size_t>(i)];
        if (!fn.compatible_with(*group))
            throw VariantMismatch("payoff of player " + std::to_string(i + 1) +
                                  " does not match the group");
        if (!eta[static_cast<std::size_t>(i)].compatible_with(*group))
            throw VariantMismatch("bijection of player " + std::to_string(i + 1) +
                                  " does not match the group");
        const auto& hood = neighborhoods[static_cast<std::size_t>(i)];
        if (hood.size() < 2)
            throw ValidationError("neighborhood of player " + std::to_string(i + 1) +
                                  " needs at least two players");
        if (!std::is_sorted(hood.begin(), hood.end()) ||
            std::adjacent_find(hood.begin(), hood.end()) != hood.end())
            throw ValidationError("neighborhoods must be sorted lists of distinct players");
        if (hood.front() < 0 || hood.back() >= players)
            throw ValidationError("neighborhood of player " + std::to_string(i + 1) +
                                  " references an unknown player");
        if (!std::binary_search(hood.begin(), hood.end(), i))
            throw ValidationError("player " + std::to_string(i + 1) +
                                  " must belong to her own neighborhood");
    }
}

bool operator==(const GameSpec& a, const GameSpec& b) {
    if (!a.group || !b.group || !a.group->same_as(*b.group)) return false;
    return a.players == b.players && a.phi == b.phi && a.eta == b.eta &&
           a.neighborhoods == b.neighborhoods && a.nu == b.nu;
}

void Profile::validate(const GameSpec& game) const {
    if (measures.size() != static_cast<std::size_t>(game.players))
        throw ValidationError("profile needs exactly one measure per player");
    for (const Measure& m : measures) m.validate(*game.group);
}

}  // namespace gg
