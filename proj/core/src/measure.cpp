#include "groupgames/measure.hpp"

#include "groupgames/errors.hpp"

#include <algorithm>
#include <map>

namespace gg {

Measure Measure::dirac(Element point) {
    return finite_support({Atom{std::move(point), Rat(1)}});
}

Measure Measure::finite_support(std::vector<Atom> atoms) {
    if (atoms.empty()) throw ValidationError("finitely supported measure needs at least one atom");
    std::map<Element, Rat, ElementLess> merged;
    for (auto& a : atoms) merged[a.point] += a.weight;
    Rat total = 0;
    std::vector<Atom> canonical;
    canonical.reserve(merged.size());
    for (auto& [p, w] : merged) {
        if (w <= 0) throw ValidationError("measure weights must be positive");
        total += w;
        canonical.push_back(Atom{p, w});
    }
    if (total != 1)
        throw ValidationError("measure weights must sum to 1 (got " + rat_to_string(total) + ")");
    Measure m;
    m.kind_ = Kind::FiniteSupport;
    m.atoms_ = std::move(canonical);
    return m;
}

Measure Measure::two_ended(const Rat& theta) {
    if (theta < 0 || theta > 1) throw ValidationError("two-ended mean needs theta in [0,1]");
    Measure m;
    m.kind_ = Kind::TwoEndedMeanZ;
    m.theta_ = theta;
    return m;
}

Measure Measure::interval_mean() {
    Measure m;
    m.kind_ = Kind::IntervalMeanQ1;
    return m;
}

Measure Measure::uniform_finite() {
    Measure m;
    m.kind_ = Kind::UniformFinite;
    return m;
}

Measure Measure::mixture(const Rat& weight, Measure a, Measure b) {
    if (weight < 0 || weight > 1) throw ValidationError("mixture weight must lie in [0,1]");
    Measure m;
    m.kind_ = Kind::Mixture;
    m.mix_weight_ = weight;
    m.mix_a_ = std::make_shared<Measure>(std::move(a));
    m.mix_b_ = std::make_shared<Measure>(std::move(b));
    return m;
}

const std::vector<Measure::Atom>& Measure::atoms() const {
    if (kind_ != Kind::FiniteSupport) throw VariantMismatch("measure has no explicit atoms");
    return atoms_;
}

const Rat& Measure::theta() const {
    if (kind_ != Kind::TwoEndedMeanZ) throw VariantMismatch("measure has no theta parameter");
    return theta_;
}

const Rat& Measure::mix_weight() const {
    if (kind_ != Kind::Mixture) throw VariantMismatch("measure is not a mixture");
    return mix_weight_;
}

const Measure& Measure::mix_first() const {
    if (kind_ != Kind::Mixture) throw VariantMismatch("measure is not a mixture");
    return *mix_a_;
}

const Measure& Measure::mix_second() const {
    if (kind_ != Kind::Mixture) throw VariantMismatch("measure is not a mixture");
    return *mix_b_;
}

void Measure::validate(const Group& group) const {
    switch (kind_) {
        case Kind::FiniteSupport:
            for (const Atom& a : atoms_) group.require(a.point, "measure atom");
            return;
        case Kind::TwoEndedMeanZ:
            if (group.kind() != GroupKind::IntegersZ)
                throw VariantMismatch("two-ended means live on Z only");
            return;
        case Kind::IntervalMeanQ1:
            if (group.kind() != GroupKind::RationalCircleQ1)
                throw VariantMismatch("the interval mean lives on Q1 only");
            return;
        case Kind::UniformFinite:
            if (!group.is_finite())
                throw VariantMismatch("uniform measures need a finite group");
            return;
        case Kind::Mixture:
            mix_a_->validate(group);
            mix_b_->validate(group);
            return;
    }
}

Measure Measure::pushforward(const Bijection& eta, const Group& group) const {
    validate(group);
    if (!eta.compatible_with(group)) throw VariantMismatch("bijection does not match the group");
    switch (kind_) {
        case Kind::FiniteSupport: {
            Bijection inv = eta.inverse();
            std::vector<Atom> out;
            out.reserve(atoms_.size());
            for (const Atom& a : atoms_) out.push_back(Atom{inv.apply(group, a.point), a.weight});
            return finite_support(std::move(out));
        }
        case Kind::TwoEndedMeanZ: {
            if (eta.kind() == Bijection::Kind::Identity) return *this;
            if (eta.kind() != Bijection::Kind::AffineZ)
                throw VariantMismatch("two-ended means push forward through affine-Z bijections only");
            return eta.sign() == 1 ? *this : two_ended(Rat(1) - theta_);
        }
        case Kind::IntervalMeanQ1:
            if (eta.kind() != Bijection::Kind::Identity && eta.kind() != Bijection::Kind::AffineQ1)
                throw VariantMismatch("the interval mean pushes forward through affine-Q1 bijections only");
            return *this;
        case Kind::UniformFinite:
            if (eta.kind() != Bijection::Kind::Identity &&
                eta.kind() != Bijection::Kind::FinitePermutation)
                throw VariantMismatch("uniform measures push forward through finite permutations only");
            return *this;
        case Kind::Mixture:
            return mixture(mix_weight_, mix_a_->pushforward(eta, group), mix_b_->pushforward(eta, group));
    }
    throw Error("unreachable");
}

bool Measure::is_symbolic_mean() const {
    return kind_ == Kind::TwoEndedMeanZ || kind_ == Kind::IntervalMeanQ1 || kind_ == Kind::UniformFinite;
}

bool Measure::is_finitely_supported(const Group& group) const {
    switch (kind_) {
        case Kind::FiniteSupport:
            return true;
        case Kind::UniformFinite:
            return group.is_finite();
        case Kind::Mixture:
            return mix_a_->is_finitely_supported(group) && mix_b_->is_finitely_supported(group);
        default:
            return false;
    }
}

std::vector<Measure::Atom> Measure::expand_atoms(const Group& group) const {
    switch (kind_) {
        case Kind::FiniteSupport:
            return atoms_;
        case Kind::UniformFinite: {
            std::uint64_t n = group.order();
            std::vector<Atom> out;
            out.reserve(n);
            Rat w = Rat(1) / Rat(Int(n));
            for (std::uint64_t i = 0; i < n; ++i) out.push_back(Atom{group.element_at(i), w});
            return out;
        }
        case Kind::Mixture: {
            if (mix_weight_ == 1) return mix_a_->expand_atoms(group);
            if (mix_weight_ == 0) return mix_b_->expand_atoms(group);
            std::vector<Atom> out;
            for (Atom& a : mix_a_->expand_atoms(group)) {
                a.weight *= mix_weight_;
                out.push_back(std::move(a));
            }
            Rat rest = Rat(1) - mix_weight_;
            for (Atom& a : mix_b_->expand_atoms(group)) {
                a.weight *= rest;
                out.push_back(std::move(a));
            }
            // merging/normalization happens in finite_support
            return finite_support(std::move(out)).atoms();
        }
        default:
            throw VariantMismatch("measure is not finitely supported");
    }
}

bool operator==(const Measure& a, const Measure& b) {
    if (a.kind_ != b.kind_) return false;
    switch (a.kind_) {
        case Measure::Kind::FiniteSupport: {
            if (a.atoms_.size() != b.atoms_.size()) return false;
            for (std::size_t i = 0; i < a.atoms_.size(); ++i) {
                if (!(a.atoms_[i].point == b.atoms_[i].point) ||
                    a.atoms_[i].weight != b.atoms_[i].weight)
                    return false;
            }
            return true;
        }
        case Measure::Kind::TwoEndedMeanZ:
            return a.theta_ == b.theta_;
        case Measure::Kind::Mixture:
            return a.mix_weight_ == b.mix_weight_ && *a.mix_a_ == *b.mix_a_ && *a.mix_b_ == *b.mix_b_;
        default:
            return true;
    }
}

}  // namespace gg
