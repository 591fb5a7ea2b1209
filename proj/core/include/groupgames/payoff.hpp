#pragma once

#include "groupgames/group.hpp"
#include "groupgames/rational.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

namespace gg {

/// Result of an exact supremum computation. `attained` is false when the
/// value is a least upper bound approached but never reached (open endpoint
/// of a linear piece).
struct SupResult {
    Rat value;
    bool attained = true;
    std::optional<Element> witness;
};

/**
 * Bounded rational function on Z that is exactly periodic on both tails:
 * for x > K the value depends only on x mod m (right_values), for x < -K
 * only on x mod m (left_values), and the window |x| <= K is tabulated.
 *
 * This class is closed under translation, reflection and convolution with
 * finitely supported measures, which is what makes exact iterated
 * integration possible.
 */
class EventuallyPeriodicZ {
public:
    EventuallyPeriodicZ(std::int64_t period, std::vector<Rat> right_values, std::vector<Rat> left_values,
                        std::int64_t core_radius, std::vector<Rat> core_values);

    static EventuallyPeriodicZ constant(const Rat& value);
    /// Period-1 step: left_value on x<0, v0 at 0, right_value on x>0.
    static EventuallyPeriodicZ split(const Rat& left_value, const Rat& v0, const Rat& right_value);
    /// Fully periodic function with the given residue values (core = value at 0).
    static EventuallyPeriodicZ periodic(std::vector<Rat> residue_values);

    Rat eval(const Int& x) const;
    /// (A_minus, A_plus): the two tail averages.
    std::pair<Rat, Rat> eventual_averages() const;
    SupResult sup() const;

    EventuallyPeriodicZ precompose_affine(int sign, const Int& shift) const;
    /// w -> sum_i weight_i * f(w + shift_i); weights need not sum to 1.
    EventuallyPeriodicZ convolve(const std::vector<std::pair<Rat, Int>>& weighted_shifts) const;

    struct Term {
        Rat weight;
        const EventuallyPeriodicZ* fn;
        std::int64_t shift;
    };
    static EventuallyPeriodicZ combine(const std::vector<Term>& terms, const Rat& constant);

    std::int64_t period() const { return period_; }
    const std::vector<Rat>& right_values() const { return right_; }
    const std::vector<Rat>& left_values() const { return left_; }
    std::int64_t core_radius() const { return core_radius_; }
    const std::vector<Rat>& core_values() const { return core_; }

    friend bool operator==(const EventuallyPeriodicZ& a, const EventuallyPeriodicZ& b) = default;

private:
    std::int64_t period_;
    std::vector<Rat> right_;
    std::vector<Rat> left_;
    std::int64_t core_radius_;
    std::vector<Rat> core_;  // size 2K+1, index x+K
};

/**
 * Piecewise linear function on Q cap [0,1). Pieces live on the half-open
 * spans [t_j, t_{j+1}) between consecutive breakpoints; point_values
 * override finitely many points. Evaluation is total.
 */
class StepQ1 {
public:
    struct LinearPiece {
        Rat slope;
        Rat intercept;
        friend bool operator==(const LinearPiece&, const LinearPiece&) = default;
    };

    StepQ1(std::vector<Rat> breakpoints, std::vector<LinearPiece> pieces, std::map<Rat, Rat> point_values);

    static StepQ1 constant(const Rat& value);
    /// Indicator of an interval with selectable endpoint inclusion. Requires 0 <= a < b <= 1.
    static StepQ1 indicator_interval(const Rat& a, const Rat& b, bool closed_left, bool closed_right);

    Rat eval(const Rat& x) const;
    Rat lebesgue() const;
    SupResult sup() const;

    StepQ1 precompose_affine(int sign, const Rat& shift) const;
    StepQ1 convolve(const std::vector<std::pair<Rat, Rat>>& weighted_shifts) const;

    struct Term {
        Rat weight;
        const StepQ1* fn;
    };
    static StepQ1 affine_combination(const std::vector<Term>& terms, const Rat& constant);

    const std::vector<Rat>& breakpoints() const { return breakpoints_; }
    const std::vector<LinearPiece>& pieces() const { return pieces_; }
    const std::map<Rat, Rat>& point_values() const { return points_; }

    friend bool operator==(const StepQ1& a, const StepQ1& b) = default;

private:
    void normalize();

    std::vector<Rat> breakpoints_;  // 0 = t_0 < ... < t_k = 1
    std::vector<LinearPiece> pieces_;
    std::map<Rat, Rat> points_;
};

/// Payoff table over a finite group, one rational per element index.
class FiniteTableFn {
public:
    FiniteTableFn(GroupPtr group, std::vector<Rat> values);

    Rat eval(const Element& x) const;
    Rat average() const;
    SupResult sup() const;

    FiniteTableFn precompose_permutation(const Bijection& permutation) const;
    FiniteTableFn convolve(const std::vector<std::pair<Rat, Element>>& weighted_elements) const;

    struct Term {
        Rat weight;
        const FiniteTableFn* fn;
    };
    static FiniteTableFn affine_combination(const std::vector<Term>& terms, const Rat& constant);

    const GroupPtr& group() const { return group_; }
    const std::vector<Rat>& values() const { return values_; }

    friend bool operator==(const FiniteTableFn& a, const FiniteTableFn& b);

private:
    GroupPtr group_;
    std::vector<Rat> values_;
};

/**
 * Decidable {0,1} payoffs on Z^2: open rational-direction cones, doubly
 * periodic membership tables, finite point sets, and boolean combinations.
 * These feed window densities only; they have no symbolic integral.
 */
class PredicateZ2 {
public:
    /// Open sector swept counterclockwise from ray d1 to ray d2, both rays
    /// excluded; opposite rays give the open half-plane left of d1.
    static PredicateZ2 cone(Int d1x, Int d1y, Int d2x, Int d2y);
    static PredicateZ2 periodic(std::int64_t m1, std::int64_t m2, std::vector<std::vector<int>> table);
    static PredicateZ2 finite_set(std::vector<Element::Pair> points);
    static PredicateZ2 predicate_and(std::vector<PredicateZ2> args);
    static PredicateZ2 predicate_or(std::vector<PredicateZ2> args);
    static PredicateZ2 predicate_not(PredicateZ2 arg);

    bool contains(const Int& x, const Int& y) const;

    enum class NodeKind { Cone, Periodic, FiniteSet, And, Or, Not };
    NodeKind node_kind() const { return kind_; }
    const std::vector<Int>& cone_dirs() const { return cone_; }  // d1x,d1y,d2x,d2y
    std::pair<std::int64_t, std::int64_t> periods() const { return {m1_, m2_}; }
    const std::vector<std::vector<int>>& periodic_table() const { return table_; }
    const std::vector<Element::Pair>& points() const { return points_; }
    const std::vector<PredicateZ2>& children() const { return children_; }

    friend bool operator==(const PredicateZ2& a, const PredicateZ2& b);

private:
    PredicateZ2() = default;

    NodeKind kind_ = NodeKind::Cone;
    std::vector<Int> cone_;
    std::int64_t m1_ = 1, m2_ = 1;
    std::vector<std::vector<int>> table_;
    std::vector<Element::Pair> points_;
    std::vector<PredicateZ2> children_;
};

/// Tagged union over the representable payoff classes.
class PayoffFn {
public:
    enum class Kind { EventuallyPeriodicZ, StepQ1, FiniteTable, PredicateZ2 };

    PayoffFn(EventuallyPeriodicZ fn) : value_(std::move(fn)) {}
    PayoffFn(StepQ1 fn) : value_(std::move(fn)) {}
    PayoffFn(FiniteTableFn fn) : value_(std::move(fn)) {}
    PayoffFn(PredicateZ2 fn) : value_(std::move(fn)) {}

    Kind kind() const { return static_cast<Kind>(value_.index()); }
    const EventuallyPeriodicZ& ep_z() const;
    const StepQ1& step_q1() const;
    const FiniteTableFn& finite_table() const;
    const PredicateZ2& predicate_z2() const;

    bool compatible_with(const Group& group) const;
    Rat eval(const Group& group, const Element& x) const;
    SupResult sup() const;

    /// (A_minus, A_plus); EventuallyPeriodicZ only.
    std::pair<Rat, Rat> eventual_averages() const;
    /// The forced invariant-mean integral on Q1; StepQ1 only.
    Rat lebesgue_q1() const;

    PayoffFn precompose(const Bijection& eta) const;

    friend bool operator==(const PayoffFn& a, const PayoffFn& b) { return a.value_ == b.value_; }

private:
    std::variant<EventuallyPeriodicZ, StepQ1, FiniteTableFn, PredicateZ2> value_;
};

}  // namespace gg
