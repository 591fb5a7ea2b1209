#pragma once

#include "groupgames/group.hpp"
#include "groupgames/rational.hpp"

#include <memory>
#include <vector>

namespace gg {

/**
 * A mixed strategy. Concrete finitely supported measures live next to three
 * symbolic invariant-mean classes:
 *
 *  - TwoEndedMeanZ(theta): the invariant means on Z with mass theta on N.
 *    All of them agree on the eventually periodic algebra, so one rational
 *    pins the whole family there; anything outside that algebra is an error.
 *  - IntervalMeanQ1: the common restriction of every invariant mean on
 *    Q cap [0,1) to step/piecewise-linear functions (the Lebesgue value).
 *  - UniformFinite: the unique invariant measure of a finite group.
 *
 * Mixtures are convex combinations kept in structural form.
 */
class Measure {
public:
    enum class Kind { FiniteSupport, TwoEndedMeanZ, IntervalMeanQ1, UniformFinite, Mixture };

    struct Atom {
        Element point;
        Rat weight;
    };

    static Measure dirac(Element point);
    static Measure finite_support(std::vector<Atom> atoms);
    static Measure two_ended(const Rat& theta);
    static Measure interval_mean();
    static Measure uniform_finite();
    static Measure mixture(const Rat& weight, Measure a, Measure b);

    Kind kind() const { return kind_; }
    const std::vector<Atom>& atoms() const;
    const Rat& theta() const;
    const Rat& mix_weight() const;
    const Measure& mix_first() const;
    const Measure& mix_second() const;

    /// Confirms type invariants and group compatibility.
    void validate(const Group& group) const;

    /// rho with rho(A) = mu(eta(A)); finite atoms map through inverse(eta),
    /// two-ended means flip theta under sign -1.
    Measure pushforward(const Bijection& eta, const Group& group) const;

    /// True for the symbolic invariant means (not for mixtures).
    bool is_symbolic_mean() const;
    /// True when the measure is a finite convex combination of Dirac masses
    /// (finite support, uniform on a finite group, or mixtures of such).
    bool is_finitely_supported(const Group& group) const;
    /// Expands a finitely supported measure into explicit atoms.
    std::vector<Atom> expand_atoms(const Group& group) const;

    friend bool operator==(const Measure& a, const Measure& b);

private:
    Measure() = default;

    Kind kind_ = Kind::FiniteSupport;
    std::vector<Atom> atoms_;
    Rat theta_ = 0;
    Rat mix_weight_ = 0;
    std::shared_ptr<const Measure> mix_a_;
    std::shared_ptr<const Measure> mix_b_;
};

}  // namespace gg
