#pragma once

#include "groupgames/game.hpp"
#include "groupgames/integrate.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gg {

/// Description of the mean(s) attaining the top of an invariant-mean range.
struct MeanDescription {
    enum class Kind {
        TwoEndedTheta,  // a specific theta in {0, 1} (or the tie default 1/2)
        ThetaFree,      // every theta in [0,1] attains the value
        IntervalMean,
        UniformFinite,
    };
    Kind kind = Kind::UniformFinite;
    std::optional<Rat> theta;

    Measure to_measure() const;
    std::string describe() const;
};

/// The exact range of the invariant-mean integral over the payoff's class,
/// with a description of the maximizing mean.
struct IRange {
    Rat lo;
    Rat hi;
    MeanDescription argmax;
};

IRange i_range(const PayoffFn& fn, const Group& group);

/// The order-independent equilibrium profile: per player, the mean that
/// maximizes her own integral in transformed coordinates, pulled back
/// through her bijection. Never reads the game's order weights.
Profile construct_equilibrium(const GameSpec& game);

/// Payoff when player `player` swaps her strategy for `candidate`.
Rat deviation_value(const GameSpec& game, const Profile& profile, int player,
                    const Measure& candidate, const OrderWeights& nu, const EvalOptions& options = {});

struct TermValue {
    std::vector<int> order;  // relative order on the neighborhood, innermost first
    Rat weight;
    Rat value;
};

/// Exact best response over the representable deviation class: all pure
/// strategies plus the symbolic extreme means, which exhausts the class by
/// affinity of the payoff in the deviating coordinate.
struct GapEntry {
    Rat profile_payoff;
    Measure best_deviation = Measure::uniform_finite();
    Rat deviation_payoff;
    Rat gap;  // deviation_payoff - profile_payoff
    bool sup_attained = true;
    std::vector<TermValue> terms;
};

GapEntry best_response_gap(const GameSpec& game, const Profile& profile, int player,
                           const OrderWeights& nu, const EvalOptions& options = {});

struct GapReport {
    std::vector<GapEntry> entries;
    bool certified = false;  // true iff every gap <= 0
};

GapReport verify_equilibrium(const GameSpec& game, const Profile& profile, const OrderWeights& nu,
                             const EvalOptions& options = {});
GapReport verify_equilibrium(const GameSpec& game, const Profile& profile,
                             const EvalOptions& options = {});

/// Tail-mass structure of profiles on Z: each player's theta must sit on the
/// payoff-maximizing end, with full indifference when the tail averages tie.
struct ZStructureEntry {
    Rat theta;  // in transformed coordinates
    Rat tail_average_minus;
    Rat tail_average_plus;
    enum class Requirement { ThetaZero, ThetaOne, Free } required;
    bool pass;
};

struct ZStructureReport {
    std::vector<ZStructureEntry> entries;
    bool pass = false;
};

ZStructureReport z_structure_check(const GameSpec& game, const Profile& profile);

}  // namespace gg
