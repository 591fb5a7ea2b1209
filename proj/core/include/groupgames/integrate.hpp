#pragma once

#include "groupgames/group.hpp"
#include "groupgames/measure.hpp"
#include "groupgames/payoff.hpp"
#include "groupgames/rational.hpp"

#include <variant>
#include <vector>

namespace gg {

struct GameSpec;
struct Profile;

/**
 * Probability weights over integration orders. Orders are written
 * innermost-first: the first listed player's measure is integrated first.
 * The "uniform" preset spreads mass evenly over all N! permutations without
 * materializing them.
 */
class OrderWeights {
public:
    using Order = std::vector<int>;

    static OrderWeights uniform(int players);
    static OrderWeights single(Order order);
    static OrderWeights weighted(int players, std::vector<std::pair<Order, Rat>> atoms);

    int players() const { return players_; }
    bool is_uniform() const { return uniform_; }
    const std::vector<std::pair<Order, Rat>>& atoms() const { return atoms_; }

    /**
     * Marginal weights over the relative orders of `subset` (ascending player
     * ids in, innermost-first orders out). Summing the full distribution over
     * permutations with a common relative order is the unique marginal
     * consistent with the iterated-integral extension. When `reversed`, each
     * relative order is flipped first (the alternate innermost convention).
     */
    std::vector<std::pair<Order, Rat>> marginal_on(const std::vector<int>& subset, bool reversed) const;

    friend bool operator==(const OrderWeights& a, const OrderWeights& b);

private:
    OrderWeights() = default;

    int players_ = 0;
    bool uniform_ = true;
    std::vector<std::pair<Order, Rat>> atoms_;
};

/// Evaluation conventions. `innermost_last` flips the reading of order lists
/// so the last listed measure is integrated first (sensitivity analysis).
struct EvalOptions {
    bool innermost_last = false;
};

/// Exact single integral of a representable payoff against a measure.
Rat integrate(const PayoffFn& fn, const Measure& mu, const Group& group);

/// Integrating one variable out of phi(w * eta(x)) with respect to mu:
/// finitely supported measures convolve and keep the class, symbolic
/// invariant means collapse to a constant, mixtures combine affinely.
using FnOrConst = std::variant<PayoffFn, Rat>;
FnOrConst partial_integrate(const PayoffFn& fn, const Measure& mu, const Bijection& eta,
                            const Group& group);

/// Player i's payoff integrated in the order d mu_{pi(1)} innermost, ...,
/// d mu_{pi(N)} outermost (pi listed innermost-first, 0-based players).
Rat iterated_payoff(const GameSpec& game, const Profile& profile, const std::vector<int>& pi,
                    int player, const EvalOptions& options = {});

/// The order-weighted payoff: sum over orders of nu(pi) * iterated_payoff.
Rat payoff_nu(const GameSpec& game, const Profile& profile, const OrderWeights& nu, int player,
              const EvalOptions& options = {});

/// Two-player order-of-integration probe for u(x,y) = phi(x*y):
/// (mu-innermost value, lambda-innermost value).
std::pair<Rat, Rat> fubini_gap(const PayoffFn& fn, const Measure& mu, const Measure& lambda,
                               const GroupPtr& group);

}  // namespace gg
