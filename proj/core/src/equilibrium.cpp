#include "groupgames/equilibrium.hpp"

#include "engine_detail.hpp"
#include "groupgames/errors.hpp"

#include <algorithm>
#include <map>

namespace gg {

Measure MeanDescription::to_measure() const {
    switch (kind) {
        case Kind::TwoEndedTheta:
            return Measure::two_ended(*theta);
        case Kind::ThetaFree:
            return Measure::two_ended(theta.value_or(Rat(1, 2)));
        case Kind::IntervalMean:
            return Measure::interval_mean();
        case Kind::UniformFinite:
            return Measure::uniform_finite();
    }
    throw Error("unreachable");
}

std::string MeanDescription::describe() const {
    switch (kind) {
        case Kind::TwoEndedTheta:
            return "two-ended " + rat_to_string(*theta);
        case Kind::ThetaFree:
            return "two-ended theta free in [0,1]";
        case Kind::IntervalMean:
            return "interval-mean";
        case Kind::UniformFinite:
            return "uniform";
    }
    throw Error("unreachable");
}

IRange i_range(const PayoffFn& fn, const Group& group) {
    if (!fn.compatible_with(group)) throw VariantMismatch("payoff class does not match the group");
    switch (fn.kind()) {
        case PayoffFn::Kind::EventuallyPeriodicZ: {
            auto [minus, plus] = fn.eventual_averages();
            IRange r;
            r.lo = std::min(minus, plus);
            r.hi = std::max(minus, plus);
            if (plus > minus) {
                r.argmax = {MeanDescription::Kind::TwoEndedTheta, Rat(1)};
            } else if (plus < minus) {
                r.argmax = {MeanDescription::Kind::TwoEndedTheta, Rat(0)};
            } else {
                r.argmax = {MeanDescription::Kind::ThetaFree, Rat(1, 2)};
            }
            return r;
        }
        case PayoffFn::Kind::StepQ1: {
            Rat v = fn.lebesgue_q1();
            return {v, v, {MeanDescription::Kind::IntervalMean, std::nullopt}};
        }
        case PayoffFn::Kind::FiniteTable: {
            Rat v = fn.finite_table().average();
            return {v, v, {MeanDescription::Kind::UniformFinite, std::nullopt}};
        }
        case PayoffFn::Kind::PredicateZ2:
            throw UnsupportedError(
                "no exact invariant-mean range for lattice predicates; use window densities "
                "(density sweeps / upper Banach bounds)");
    }
    throw Error("unreachable");
}

Profile construct_equilibrium(const GameSpec& game) {
    game.validate();
    if (!game.group->is_abelian() && !game.group->is_finite())
        throw UnsupportedError("equilibrium construction needs an abelian group when infinite");
    Profile profile;
    profile.measures.reserve(static_cast<std::size_t>(game.players));
    for (int i = 0; i < game.players; ++i) {
        IRange range = i_range(game.phi[static_cast<std::size_t>(i)], *game.group);
        Measure transformed = range.argmax.to_measure();
        profile.measures.push_back(
            transformed.pushforward(game.eta[static_cast<std::size_t>(i)], *game.group));
    }
    return profile;
}

Rat deviation_value(const GameSpec& game, const Profile& profile, int player,
                    const Measure& candidate, const OrderWeights& nu, const EvalOptions& options) {
    game.validate();
    profile.validate(game);
    candidate.validate(*game.group);
    if (player < 0 || player >= game.players) throw ValidationError("player index out of range");
    std::optional<std::pair<int, Measure>> replacement{{player, candidate}};
    if (detail::brute_force_needed(game, player))
        return detail::brute_force_value(game, profile, player, replacement);
    const auto& hood = game.neighborhoods[static_cast<std::size_t>(player)];
    auto marginal = nu.marginal_on(hood, options.innermost_last);
    std::map<std::vector<int>, Rat> memo;
    Rat total = 0;
    for (const auto& [order, weight] : marginal) {
        std::vector<int> key = detail::truncate_after_first_symbolic(profile, order, replacement);
        auto it = memo.find(key);
        if (it == memo.end())
            it = memo.emplace(key, detail::term_value(game, profile, player, order, replacement)).first;
        total += weight * it->second;
    }
    return total;
}

namespace {

/// The exact map x -> deviation_value(dirac_x) as a representable function
/// plus a constant; `fn` is empty when the map does not depend on x (some
/// opponent's symbolic mean erases the deviation point in every order).
struct PureDeviationFn {
    std::optional<PayoffFn> fn;
    Rat constant = 0;
};

PureDeviationFn pure_deviation_function(const GameSpec& game, const Profile& profile, int player,
                                        const OrderWeights& nu, const EvalOptions& options) {
    const auto& hood = game.neighborhoods[static_cast<std::size_t>(player)];
    auto marginal = nu.marginal_on(hood, options.innermost_last);
    const Group& group = *game.group;

    PureDeviationFn out;
    std::vector<std::pair<Rat, PayoffFn>> weighted_fns;
    for (const auto& [order, weight] : marginal) {
        detail::State state = detail::State::of(game.phi[static_cast<std::size_t>(player)]);
        auto it = order.begin();
        for (; it != order.end() && *it != player; ++it) {
            if (state.is_const()) break;
            state = detail::step(state, profile.measures[static_cast<std::size_t>(*it)],
                                 game.eta[static_cast<std::size_t>(*it)], group);
        }
        if (state.is_const() || it == order.end() || *it != player) {
            // collapsed before the deviation point was reached
            out.constant += weight * detail::finish(state, group);
            continue;
        }
        ++it;  // skip the deviating player; a Dirac only translates the state,
               // which commutes with the remaining steps
        for (; it != order.end(); ++it) {
            if (state.is_const()) break;
            state = detail::step(state, profile.measures[static_cast<std::size_t>(*it)],
                                 game.eta[static_cast<std::size_t>(*it)], group);
        }
        if (state.is_const()) {
            out.constant += weight * state.constant;
        } else {
            weighted_fns.emplace_back(
                weight, state.fn->precompose(game.eta[static_cast<std::size_t>(player)]));
        }
    }
    if (!weighted_fns.empty()) {
        std::vector<std::pair<Rat, const PayoffFn*>> terms;
        terms.reserve(weighted_fns.size());
        for (const auto& [w, fn] : weighted_fns) terms.emplace_back(w, &fn);
        out.fn = detail::payoff_affine(terms, out.constant);
        out.constant = 0;
    }
    return out;
}

std::vector<Measure> symbolic_deviation_candidates(const GameSpec& game, int player) {
    const PayoffFn& fn = game.phi[static_cast<std::size_t>(player)];
    switch (fn.kind()) {
        case PayoffFn::Kind::EventuallyPeriodicZ:
            return {Measure::two_ended(Rat(0)), Measure::two_ended(Rat(1))};
        case PayoffFn::Kind::StepQ1:
            return {Measure::interval_mean()};
        case PayoffFn::Kind::FiniteTable:
            return {Measure::uniform_finite()};
        default:
            return {};
    }
}

}  // namespace

GapEntry best_response_gap(const GameSpec& game, const Profile& profile, int player,
                           const OrderWeights& nu, const EvalOptions& options) {
    game.validate();
    profile.validate(game);
    if (player < 0 || player >= game.players) throw ValidationError("player index out of range");
    const Group& group = *game.group;
    const PayoffFn& own = game.phi[static_cast<std::size_t>(player)];

    GapEntry entry;
    entry.profile_payoff = payoff_nu(game, profile, nu, player, options);

    const auto& hood = game.neighborhoods[static_cast<std::size_t>(player)];
    for (const auto& [order, weight] : nu.marginal_on(hood, options.innermost_last)) {
        TermValue tv;
        tv.order = order;
        tv.weight = weight;
        tv.value = detail::brute_force_needed(game, player)
                       ? detail::brute_force_value(game, profile, player)
                       : detail::term_value(game, profile, player, order);
        entry.terms.push_back(std::move(tv));
    }

    if (own.kind() == PayoffFn::Kind::PredicateZ2)
        throw UnsupportedError(
            "no exact best response over lattice predicates; use window densities");

    if (detail::brute_force_needed(game, player)) {
        // finite non-abelian table: enumerate every pure strategy exactly
        std::optional<Rat> best;
        std::optional<Element> witness;
        for (const Element& x : group.elements()) {
            Rat v = deviation_value(game, profile, player, Measure::dirac(x), nu, options);
            if (!best || v > *best) {
                best = v;
                witness = x;
            }
        }
        Rat uniform_value =
            deviation_value(game, profile, player, Measure::uniform_finite(), nu, options);
        if (uniform_value > *best) {
            entry.best_deviation = Measure::uniform_finite();
            entry.deviation_payoff = uniform_value;
        } else {
            entry.best_deviation = Measure::dirac(*witness);
            entry.deviation_payoff = *best;
        }
        entry.sup_attained = true;
        entry.gap = entry.deviation_payoff - entry.profile_payoff;
        return entry;
    }

    PureDeviationFn pure = pure_deviation_function(game, profile, player, nu, options);
    Rat best_value;
    Measure best_measure = Measure::uniform_finite();
    bool attained = true;
    if (pure.fn) {
        SupResult sup = pure.fn->sup();
        best_value = sup.value;
        attained = sup.attained;
        best_measure = sup.witness ? Measure::dirac(*sup.witness) : Measure::dirac(group.identity());
    } else {
        best_value = pure.constant;
        best_measure = Measure::dirac(group.identity());
    }
    for (const Measure& candidate : symbolic_deviation_candidates(game, player)) {
        Rat v = deviation_value(game, profile, player, candidate, nu, options);
        if (v > best_value || (v == best_value && !attained)) {
            best_value = v;
            best_measure = candidate;
            attained = true;
        }
    }
    entry.best_deviation = best_measure;
    entry.deviation_payoff = best_value;
    entry.sup_attained = attained;
    entry.gap = best_value - entry.profile_payoff;
    return entry;
}

GapReport verify_equilibrium(const GameSpec& game, const Profile& profile, const OrderWeights& nu,
                             const EvalOptions& options) {
    GapReport report;
    report.certified = true;
    for (int i = 0; i < game.players; ++i) {
        report.entries.push_back(best_response_gap(game, profile, i, nu, options));
        if (report.entries.back().gap > 0) report.certified = false;
    }
    return report;
}

GapReport verify_equilibrium(const GameSpec& game, const Profile& profile, const EvalOptions& options) {
    return verify_equilibrium(game, profile, game.nu, options);
}

ZStructureReport z_structure_check(const GameSpec& game, const Profile& profile) {
    game.validate();
    profile.validate(game);
    if (game.group->kind() != GroupKind::IntegersZ)
        throw VariantMismatch("tail-structure check applies to games on Z");
    ZStructureReport report;
    report.pass = true;
    for (int i = 0; i < game.players; ++i) {
        const Measure& mu = profile.measures[static_cast<std::size_t>(i)];
        if (mu.kind() != Measure::Kind::TwoEndedMeanZ)
            throw VariantMismatch("tail-structure check needs two-ended strategies");
        // theta in the transformed coordinates the construction maximizes over
        Measure transformed =
            mu.pushforward(game.eta[static_cast<std::size_t>(i)].inverse(), *game.group);
        ZStructureEntry e;
        e.theta = transformed.theta();
        auto [minus, plus] = game.phi[static_cast<std::size_t>(i)].eventual_averages();
        e.tail_average_minus = minus;
        e.tail_average_plus = plus;
        if (plus > minus) {
            e.required = ZStructureEntry::Requirement::ThetaOne;
            e.pass = e.theta == 1;
        } else if (plus < minus) {
            e.required = ZStructureEntry::Requirement::ThetaZero;
            e.pass = e.theta == 0;
        } else {
            e.required = ZStructureEntry::Requirement::Free;
            e.pass = true;
        }
        report.pass = report.pass && e.pass;
        report.entries.push_back(std::move(e));
    }
    return report;
}

}  // namespace gg
