#include "groupgames/integrate.hpp"

#include "engine_detail.hpp"
#include "groupgames/errors.hpp"
#include "groupgames/game.hpp"

#include <algorithm>
#include <map>

namespace gg {

namespace {

void validate_order(const std::vector<int>& order, int players) {
    std::vector<bool> seen(static_cast<std::size_t>(players), false);
    if (order.size() != static_cast<std::size_t>(players))
        throw ValidationError("order must list every player exactly once");
    for (int p : order) {
        if (p < 0 || p >= players || seen[static_cast<std::size_t>(p)])
            throw ValidationError("order must be a permutation of the players");
        seen[static_cast<std::size_t>(p)] = true;
    }
}

Rat factorial_rat(std::size_t n) {
    Int f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= Int(std::uint64_t(i));
    return Rat(f);
}

}  // namespace

OrderWeights OrderWeights::uniform(int players) {
    if (players < 1) throw ValidationError("order weights need at least one player");
    OrderWeights w;
    w.players_ = players;
    w.uniform_ = true;
    return w;
}

OrderWeights OrderWeights::single(Order order) {
    return weighted(static_cast<int>(order.size()), {{std::move(order), Rat(1)}});
}

OrderWeights OrderWeights::weighted(int players, std::vector<std::pair<Order, Rat>> atoms) {
    if (players < 1) throw ValidationError("order weights need at least one player");
    std::map<Order, Rat> merged;
    Rat total = 0;
    for (auto& [order, weight] : atoms) {
        validate_order(order, players);
        if (weight < 0) throw ValidationError("order weights must be nonnegative");
        total += weight;
        merged[order] += weight;
    }
    if (total != 1)
        throw ValidationError("order weights must sum to 1 (got " + rat_to_string(total) + ")");
    OrderWeights w;
    w.players_ = players;
    w.uniform_ = false;
    for (auto& [order, weight] : merged)
        if (weight > 0) w.atoms_.emplace_back(order, weight);
    return w;
}

std::vector<std::pair<OrderWeights::Order, Rat>> OrderWeights::marginal_on(
    const std::vector<int>& subset, bool reversed) const {
    if (!std::is_sorted(subset.begin(), subset.end()))
        throw ValidationError("marginal subset must be sorted");
    std::map<Order, Rat> acc;
    if (uniform_) {
        Order perm = subset;
        Rat w = Rat(1) / factorial_rat(subset.size());
        std::sort(perm.begin(), perm.end());
        do {
            acc[perm] += w;
        } while (std::next_permutation(perm.begin(), perm.end()));
    } else {
        for (const auto& [order, weight] : atoms_) {
            Order restricted = detail::restrict_order(order, subset);
            if (reversed) std::reverse(restricted.begin(), restricted.end());
            acc[restricted] += weight;
        }
    }
    std::vector<std::pair<Order, Rat>> out(acc.begin(), acc.end());
    return out;
}

bool operator==(const OrderWeights& a, const OrderWeights& b) {
    return a.players_ == b.players_ && a.uniform_ == b.uniform_ && a.atoms_ == b.atoms_;
}

Rat integrate(const PayoffFn& fn, const Measure& mu, const Group& group) {
    if (!fn.compatible_with(group)) throw VariantMismatch("payoff class does not match the group");
    mu.validate(group);
    switch (mu.kind()) {
        case Measure::Kind::FiniteSupport: {
            Rat total = 0;
            for (const Measure::Atom& a : mu.atoms()) total += a.weight * fn.eval(group, a.point);
            return total;
        }
        case Measure::Kind::TwoEndedMeanZ: {
            auto [minus, plus] = fn.eventual_averages();
            return mu.theta() * plus + (Rat(1) - mu.theta()) * minus;
        }
        case Measure::Kind::IntervalMeanQ1:
            return fn.lebesgue_q1();
        case Measure::Kind::UniformFinite:
            return fn.finite_table().average();
        case Measure::Kind::Mixture:
            return mu.mix_weight() * integrate(fn, mu.mix_first(), group) +
                   (Rat(1) - mu.mix_weight()) * integrate(fn, mu.mix_second(), group);
    }
    throw Error("unreachable");
}

namespace detail {

PayoffFn payoff_affine(const std::vector<std::pair<Rat, const PayoffFn*>>& terms, const Rat& constant) {
    if (terms.empty()) throw ValidationError("affine combination needs at least one payoff term");
    PayoffFn::Kind kind = terms.front().second->kind();
    for (const auto& [w, fn] : terms) {
        (void)w;
        if (fn->kind() != kind) throw VariantMismatch("affine combination across payoff classes");
    }
    switch (kind) {
        case PayoffFn::Kind::EventuallyPeriodicZ: {
            std::vector<EventuallyPeriodicZ::Term> ts;
            ts.reserve(terms.size());
            for (const auto& [w, fn] : terms) ts.push_back({w, &fn->ep_z(), 0});
            return PayoffFn(EventuallyPeriodicZ::combine(ts, constant));
        }
        case PayoffFn::Kind::StepQ1: {
            std::vector<StepQ1::Term> ts;
            ts.reserve(terms.size());
            for (const auto& [w, fn] : terms) ts.push_back({w, &fn->step_q1()});
            return PayoffFn(StepQ1::affine_combination(ts, constant));
        }
        case PayoffFn::Kind::FiniteTable: {
            std::vector<FiniteTableFn::Term> ts;
            ts.reserve(terms.size());
            for (const auto& [w, fn] : terms) ts.push_back({w, &fn->finite_table()});
            return PayoffFn(FiniteTableFn::affine_combination(ts, constant));
        }
        case PayoffFn::Kind::PredicateZ2:
            throw UnsupportedError("lattice predicates have no affine calculus; use the direct sum path");
    }
    throw Error("unreachable");
}

State combine_states(const Rat& w, const State& a, const State& b) {
    Rat rest = Rat(1) - w;
    if (a.is_const() && b.is_const()) return State::of_const(w * a.constant + rest * b.constant);
    if (!a.is_const() && !b.is_const()) {
        return State::of(payoff_affine({{w, &*a.fn}, {rest, &*b.fn}}, Rat(0)));
    }
    const State& fn_side = a.is_const() ? b : a;
    const Rat& fn_weight = a.is_const() ? rest : w;
    Rat const_part = a.is_const() ? w * a.constant : rest * b.constant;
    return State::of(payoff_affine({{fn_weight, &*fn_side.fn}}, const_part));
}

State step(const State& state, const Measure& mu, const Bijection& eta, const Group& group) {
    if (state.is_const()) return state;
    const PayoffFn& fn = *state.fn;
    switch (mu.kind()) {
        case Measure::Kind::FiniteSupport: {
            const auto& atoms = mu.atoms();
            switch (fn.kind()) {
                case PayoffFn::Kind::EventuallyPeriodicZ: {
                    std::vector<std::pair<Rat, Int>> shifts;
                    shifts.reserve(atoms.size());
                    for (const auto& a : atoms)
                        shifts.emplace_back(a.weight, eta.apply(group, a.point).integer());
                    return State::of(PayoffFn(fn.ep_z().convolve(shifts)));
                }
                case PayoffFn::Kind::StepQ1: {
                    std::vector<std::pair<Rat, Rat>> shifts;
                    shifts.reserve(atoms.size());
                    for (const auto& a : atoms)
                        shifts.emplace_back(a.weight, eta.apply(group, a.point).rational());
                    return State::of(PayoffFn(fn.step_q1().convolve(shifts)));
                }
                case PayoffFn::Kind::FiniteTable: {
                    std::vector<std::pair<Rat, Element>> shifts;
                    shifts.reserve(atoms.size());
                    for (const auto& a : atoms)
                        shifts.emplace_back(a.weight, eta.apply(group, a.point));
                    return State::of(PayoffFn(fn.finite_table().convolve(shifts)));
                }
                case PayoffFn::Kind::PredicateZ2:
                    throw UnsupportedError(
                        "lattice predicates integrate by direct enumeration only");
            }
            throw Error("unreachable");
        }
        case Measure::Kind::TwoEndedMeanZ: {
            if (eta.kind() != Bijection::Kind::Identity && eta.kind() != Bijection::Kind::AffineZ)
                throw VariantMismatch("two-ended mean integrated through a non-Z bijection");
            auto [minus, plus] = fn.eventual_averages();
            Rat theta = mu.theta();
            if (eta.kind() == Bijection::Kind::AffineZ && eta.sign() == -1) theta = Rat(1) - theta;
            return State::of_const(theta * plus + (Rat(1) - theta) * minus);
        }
        case Measure::Kind::IntervalMeanQ1: {
            if (eta.kind() != Bijection::Kind::Identity && eta.kind() != Bijection::Kind::AffineQ1)
                throw VariantMismatch("interval mean integrated through a non-Q1 bijection");
            return State::of_const(fn.lebesgue_q1());
        }
        case Measure::Kind::UniformFinite:
            // eta is a bijection of the finite group, so the uniform image is
            // uniform and the collapse is the plain table average.
            return State::of_const(fn.finite_table().average());
        case Measure::Kind::Mixture: {
            State a = step(state, mu.mix_first(), eta, group);
            State b = step(state, mu.mix_second(), eta, group);
            return combine_states(mu.mix_weight(), a, b);
        }
    }
    throw Error("unreachable");
}

Rat finish(const State& state, const Group& group) {
    if (state.is_const()) return state.constant;
    return state.fn->eval(group, group.identity());
}

bool brute_force_needed(const GameSpec& game, int player) {
    return game.phi[static_cast<std::size_t>(player)].kind() == PayoffFn::Kind::PredicateZ2 ||
           !game.group->is_abelian();
}

Rat brute_force_value(const GameSpec& game, const Profile& profile, int player,
                      const std::optional<std::pair<int, Measure>>& replacement) {
    const auto& hood = game.neighborhoods[static_cast<std::size_t>(player)];
    const Group& group = *game.group;
    std::vector<std::vector<Measure::Atom>> atom_lists;
    atom_lists.reserve(hood.size());
    std::size_t combos = 1;
    for (int j : hood) {
        const Measure& mu = (replacement && replacement->first == j)
                                ? replacement->second
                                : profile.measures[static_cast<std::size_t>(j)];
        if (!mu.is_finitely_supported(group))
            throw UnsupportedError(
                "this game needs finitely supported strategies (direct enumeration path)");
        atom_lists.push_back(mu.expand_atoms(group));
        if (atom_lists.back().empty()) throw Error("empty atom list");
        if (combos > (std::size_t(2) << 24) / atom_lists.back().size())
            throw UnsupportedError("support product too large for direct enumeration");
        combos *= atom_lists.back().size();
    }
    const PayoffFn& fn = game.phi[static_cast<std::size_t>(player)];
    std::vector<std::size_t> idx(hood.size(), 0);
    Rat total = 0;
    while (true) {
        Rat weight = 1;
        Element acc = group.identity();
        for (std::size_t k = 0; k < hood.size(); ++k) {
            const Measure::Atom& a = atom_lists[k][idx[k]];
            weight *= a.weight;
            acc = group.combine(acc, game.eta[static_cast<std::size_t>(hood[k])].apply(group, a.point));
        }
        total += weight * fn.eval(group, acc);
        std::size_t k = hood.size();
        while (k > 0) {
            --k;
            if (++idx[k] < atom_lists[k].size()) break;
            idx[k] = 0;
            if (k == 0) return total;
        }
    }
}

Rat term_value(const GameSpec& game, const Profile& profile, int player,
               const std::vector<int>& order,
               const std::optional<std::pair<int, Measure>>& replacement) {
    State state = State::of(game.phi[static_cast<std::size_t>(player)]);
    for (int j : order) {
        if (state.is_const()) break;
        const Measure& mu = (replacement && replacement->first == j)
                                ? replacement->second
                                : profile.measures[static_cast<std::size_t>(j)];
        state = step(state, mu, game.eta[static_cast<std::size_t>(j)], *game.group);
    }
    return finish(state, *game.group);
}

std::vector<int> restrict_order(const std::vector<int>& pi, const std::vector<int>& subset) {
    std::vector<int> out;
    out.reserve(subset.size());
    for (int p : pi) {
        if (std::binary_search(subset.begin(), subset.end(), p)) out.push_back(p);
    }
    return out;
}

std::vector<int> truncate_after_first_symbolic(
    const Profile& profile, const std::vector<int>& order,
    const std::optional<std::pair<int, Measure>>& replacement) {
    std::vector<int> out;
    out.reserve(order.size());
    for (int j : order) {
        out.push_back(j);
        const Measure& mu = (replacement && replacement->first == j)
                                ? replacement->second
                                : profile.measures[static_cast<std::size_t>(j)];
        if (mu.is_symbolic_mean()) break;
    }
    return out;
}

}  // namespace detail

Rat iterated_payoff(const GameSpec& game, const Profile& profile, const std::vector<int>& pi,
                    int player, const EvalOptions& options) {
    game.validate();
    profile.validate(game);
    if (player < 0 || player >= game.players) throw ValidationError("player index out of range");
    validate_order(pi, game.players);
    if (detail::brute_force_needed(game, player))
        return detail::brute_force_value(game, profile, player);
    std::vector<int> order = pi;
    if (options.innermost_last) std::reverse(order.begin(), order.end());
    order = detail::restrict_order(order, game.neighborhoods[static_cast<std::size_t>(player)]);
    return detail::term_value(game, profile, player, order);
}

Rat payoff_nu(const GameSpec& game, const Profile& profile, const OrderWeights& nu, int player,
              const EvalOptions& options) {
    game.validate();
    profile.validate(game);
    if (player < 0 || player >= game.players) throw ValidationError("player index out of range");
    if (nu.players() != game.players) throw ValidationError("order weights sized for a different game");
    if (detail::brute_force_needed(game, player))
        return detail::brute_force_value(game, profile, player);
    const auto& hood = game.neighborhoods[static_cast<std::size_t>(player)];
    auto marginal = nu.marginal_on(hood, options.innermost_last);
    std::map<std::vector<int>, Rat> memo;
    Rat total = 0;
    for (const auto& [order, weight] : marginal) {
        std::vector<int> key = detail::truncate_after_first_symbolic(profile, order);
        auto it = memo.find(key);
        if (it == memo.end())
            it = memo.emplace(key, detail::term_value(game, profile, player, order)).first;
        total += weight * it->second;
    }
    return total;
}

std::pair<Rat, Rat> fubini_gap(const PayoffFn& fn, const Measure& mu, const Measure& lambda,
                               const GroupPtr& group) {
    GameSpec game;
    game.group = group;
    game.players = 2;
    game.phi = {fn, fn};
    game.eta = {Bijection::identity(), Bijection::identity()};
    game.neighborhoods = {{0, 1}, {0, 1}};
    game.nu = OrderWeights::uniform(2);
    Profile profile{{mu, lambda}};
    Rat mu_inner = iterated_payoff(game, profile, {0, 1}, 0);
    Rat lambda_inner = iterated_payoff(game, profile, {1, 0}, 0);
    return {mu_inner, lambda_inner};
}

}  // namespace gg
