#include "groupgames/payoff.hpp"

#include "groupgames/errors.hpp"

#include <algorithm>
#include <set>

namespace gg {

namespace {

constexpr std::int64_t kMaxPeriod = 1 << 20;
constexpr std::int64_t kMaxCoreRadius = 1 << 20;

std::int64_t int_to_i64_checked(const Int& v, const char* what) {
    if (v > Int(std::int64_t(1) << 40) || v < Int(-(std::int64_t(1) << 40)))
        throw ValidationError(std::string(what) + " out of the supported range");
    return v.convert_to<std::int64_t>();
}

}  // namespace

EventuallyPeriodicZ::EventuallyPeriodicZ(std::int64_t period, std::vector<Rat> right_values,
                                         std::vector<Rat> left_values, std::int64_t core_radius,
                                         std::vector<Rat> core_values)
    : period_(period),
      right_(std::move(right_values)),
      left_(std::move(left_values)),
      core_radius_(core_radius),
      core_(std::move(core_values)) {
    if (period_ < 1 || period_ > kMaxPeriod) throw ValidationError("period must be in [1, 2^20]");
    if (core_radius_ < 0 || core_radius_ > kMaxCoreRadius)
        throw ValidationError("core radius must be in [0, 2^20]");
    if (right_.size() != static_cast<std::size_t>(period_) ||
        left_.size() != static_cast<std::size_t>(period_))
        throw ValidationError("tail value lists must have one entry per residue");
    if (core_.size() != static_cast<std::size_t>(2 * core_radius_ + 1))
        throw ValidationError("core must tabulate every x with |x| <= core_radius");
}

EventuallyPeriodicZ EventuallyPeriodicZ::constant(const Rat& value) {
    return EventuallyPeriodicZ(1, {value}, {value}, 0, {value});
}

EventuallyPeriodicZ EventuallyPeriodicZ::split(const Rat& left_value, const Rat& v0, const Rat& right_value) {
    return EventuallyPeriodicZ(1, {right_value}, {left_value}, 0, {v0});
}

EventuallyPeriodicZ EventuallyPeriodicZ::periodic(std::vector<Rat> residue_values) {
    if (residue_values.empty()) throw ValidationError("periodic() needs at least one value");
    Rat at_zero = residue_values[0];
    std::vector<Rat> left = residue_values;
    return EventuallyPeriodicZ(static_cast<std::int64_t>(residue_values.size()), residue_values,
                               std::move(left), 0, {at_zero});
}

Rat EventuallyPeriodicZ::eval(const Int& x) const {
    if (x > Int(core_radius_)) return right_[mod_floor(x, Int(period_)).convert_to<std::size_t>()];
    if (x < Int(-core_radius_)) return left_[mod_floor(x, Int(period_)).convert_to<std::size_t>()];
    return core_[static_cast<std::size_t>(x.convert_to<std::int64_t>() + core_radius_)];
}

std::pair<Rat, Rat> EventuallyPeriodicZ::eventual_averages() const {
    Rat plus = 0, minus = 0;
    for (const Rat& v : right_) plus += v;
    for (const Rat& v : left_) minus += v;
    Rat m(period_);
    return {minus / m, plus / m};
}

SupResult EventuallyPeriodicZ::sup() const {
    SupResult best;
    best.value = core_[0];
    best.witness = Element::integer(Int(-core_radius_));
    auto consider = [&](const Rat& v, Int witness) {
        if (v > best.value) {
            best.value = v;
            best.witness = Element::integer(std::move(witness));
        }
    };
    for (std::int64_t x = -core_radius_; x <= core_radius_; ++x)
        consider(core_[static_cast<std::size_t>(x + core_radius_)], Int(x));
    for (std::int64_t r = 0; r < period_; ++r) {
        // smallest representative of residue r beyond each tail boundary
        Int right_rep = Int(core_radius_ + 1 + mod_floor_i64(r - (core_radius_ + 1), period_));
        Int left_rep = Int(-(core_radius_ + 1) - mod_floor_i64(-(core_radius_ + 1) - r, period_));
        consider(right_[static_cast<std::size_t>(r)], right_rep);
        consider(left_[static_cast<std::size_t>(r)], left_rep);
    }
    best.attained = true;
    return best;
}

EventuallyPeriodicZ EventuallyPeriodicZ::combine(const std::vector<Term>& terms, const Rat& constant) {
    std::int64_t m = 1;
    std::int64_t radius = 0;
    for (const Term& t : terms) {
        m = lcm_i64(m, t.fn->period_);
        std::int64_t shift_abs = t.shift < 0 ? -t.shift : t.shift;
        radius = std::max(radius, t.fn->core_radius_ + shift_abs);
    }
    if (m > kMaxPeriod) throw ValidationError("combined period too large");
    if (radius > kMaxCoreRadius) throw ValidationError("combined core too large");

    std::vector<Rat> right(static_cast<std::size_t>(m), constant);
    std::vector<Rat> left(static_cast<std::size_t>(m), constant);
    for (std::int64_t j = 0; j < m; ++j) {
        for (const Term& t : terms) {
            std::size_t res = static_cast<std::size_t>(mod_floor_i64(j + t.shift, t.fn->period_));
            right[static_cast<std::size_t>(j)] += t.weight * t.fn->right_[res];
            left[static_cast<std::size_t>(j)] += t.weight * t.fn->left_[res];
        }
    }
    std::vector<Rat> core(static_cast<std::size_t>(2 * radius + 1), constant);
    for (std::int64_t x = -radius; x <= radius; ++x) {
        Rat v = constant;
        for (const Term& t : terms) v += t.weight * t.fn->eval(Int(x + t.shift));
        core[static_cast<std::size_t>(x + radius)] = v;
    }
    return EventuallyPeriodicZ(m, std::move(right), std::move(left), radius, std::move(core));
}

EventuallyPeriodicZ EventuallyPeriodicZ::precompose_affine(int sign, const Int& shift) const {
    std::int64_t c = int_to_i64_checked(shift, "affine shift");
    if (sign == 1) return combine({{Rat(1), this, c}}, Rat(0));
    if (sign != -1) throw ValidationError("affine sign must be +1 or -1");
    // psi(x) = f(-x + c): tails swap sides and residues reflect
    std::int64_t m = period_;
    std::int64_t radius = core_radius_ + (c < 0 ? -c : c);
    if (radius > kMaxCoreRadius) throw ValidationError("combined core too large");
    std::vector<Rat> right(static_cast<std::size_t>(m));
    std::vector<Rat> left(static_cast<std::size_t>(m));
    for (std::int64_t j = 0; j < m; ++j) {
        std::size_t res = static_cast<std::size_t>(mod_floor_i64(c - j, m));
        right[static_cast<std::size_t>(j)] = left_[res];
        left[static_cast<std::size_t>(j)] = right_[res];
    }
    std::vector<Rat> core(static_cast<std::size_t>(2 * radius + 1));
    for (std::int64_t x = -radius; x <= radius; ++x)
        core[static_cast<std::size_t>(x + radius)] = eval(Int(c - x));
    return EventuallyPeriodicZ(m, std::move(right), std::move(left), radius, std::move(core));
}

EventuallyPeriodicZ EventuallyPeriodicZ::convolve(const std::vector<std::pair<Rat, Int>>& weighted_shifts) const {
    std::vector<Term> terms;
    terms.reserve(weighted_shifts.size());
    for (const auto& [w, d] : weighted_shifts)
        terms.push_back({w, this, int_to_i64_checked(d, "convolution shift")});
    return combine(terms, Rat(0));
}

StepQ1::StepQ1(std::vector<Rat> breakpoints, std::vector<LinearPiece> pieces, std::map<Rat, Rat> point_values)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)), points_(std::move(point_values)) {
    if (breakpoints_.size() < 2) throw ValidationError("breakpoints must at least be {0, 1}");
    if (breakpoints_.front() != 0 || breakpoints_.back() != 1)
        throw ValidationError("breakpoints must start at 0 and end at 1");
    for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
        if (!(breakpoints_[i - 1] < breakpoints_[i]))
            throw ValidationError("breakpoints must be strictly increasing");
    }
    if (pieces_.size() + 1 != breakpoints_.size())
        throw ValidationError("need exactly one piece per breakpoint gap");
    for (const auto& [p, v] : points_) {
        (void)v;
        if (p < 0 || p >= 1) throw ValidationError("point values must lie in [0,1)");
    }
    normalize();
}

StepQ1 StepQ1::constant(const Rat& value) {
    return StepQ1({Rat(0), Rat(1)}, {{Rat(0), value}}, {});
}

StepQ1 StepQ1::indicator_interval(const Rat& a, const Rat& b, bool closed_left, bool closed_right) {
    if (a < 0 || !(a < b) || b > 1) throw ValidationError("indicator needs 0 <= a < b <= 1");
    std::vector<Rat> bps{Rat(0)};
    if (a > 0) bps.push_back(a);
    if (b < 1) bps.push_back(b);
    bps.push_back(Rat(1));
    std::vector<LinearPiece> pieces;
    for (std::size_t j = 0; j + 1 < bps.size(); ++j) {
        bool inside = bps[j] >= a && bps[j + 1] <= b;
        pieces.push_back({Rat(0), inside ? Rat(1) : Rat(0)});
    }
    std::map<Rat, Rat> pts;
    pts[a] = closed_left ? Rat(1) : Rat(0);
    if (b < 1) pts[b] = closed_right ? Rat(1) : Rat(0);
    return StepQ1(std::move(bps), std::move(pieces), std::move(pts));
}

void StepQ1::normalize() {
    // drop point entries that agree with the covering piece
    for (auto it = points_.begin(); it != points_.end();) {
        auto idx = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), it->first) -
                   breakpoints_.begin() - 1;
        const LinearPiece& piece = pieces_[static_cast<std::size_t>(idx)];
        if (piece.slope * it->first + piece.intercept == it->second) {
            it = points_.erase(it);
        } else {
            ++it;
        }
    }
    // merge adjacent pieces with the same linear form
    std::vector<Rat> bps{breakpoints_.front()};
    std::vector<LinearPiece> pieces;
    for (std::size_t j = 0; j < pieces_.size(); ++j) {
        if (!pieces.empty() && pieces.back() == pieces_[j]) continue;
        if (j > 0) bps.push_back(breakpoints_[j]);
        pieces.push_back(pieces_[j]);
        // keep breakpoints already emitted consistent: bps grows one behind pieces
        (void)0;
    }
    bps.push_back(breakpoints_.back());
    breakpoints_ = std::move(bps);
    pieces_ = std::move(pieces);
}

Rat StepQ1::eval(const Rat& x) const {
    if (x < 0 || x >= 1) throw VariantMismatch("Q1 payoff evaluated outside [0,1)");
    auto it = points_.find(x);
    if (it != points_.end()) return it->second;
    auto idx =
        std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x) - breakpoints_.begin() - 1;
    const LinearPiece& piece = pieces_[static_cast<std::size_t>(idx)];
    return piece.slope * x + piece.intercept;
}

Rat StepQ1::lebesgue() const {
    Rat total = 0;
    for (std::size_t j = 0; j < pieces_.size(); ++j) {
        const Rat& a = breakpoints_[j];
        const Rat& b = breakpoints_[j + 1];
        total += pieces_[j].slope * (b * b - a * a) / 2 + pieces_[j].intercept * (b - a);
    }
    return total;
}

SupResult StepQ1::sup() const {
    struct Candidate {
        Rat value;
        std::optional<Rat> witness;
    };
    std::vector<Candidate> candidates;
    auto interior_point = [&](const Rat& a, const Rat& b) {
        Rat x = (a + b) / 2;
        while (points_.count(x)) x = (a + x) / 2;
        return x;
    };
    for (std::size_t j = 0; j < pieces_.size(); ++j) {
        const Rat& a = breakpoints_[j];
        const Rat& b = breakpoints_[j + 1];
        const LinearPiece& p = pieces_[j];
        Rat va = p.slope * a + p.intercept;
        Rat vb = p.slope * b + p.intercept;
        if (p.slope == 0) {
            candidates.push_back({va, points_.count(a) ? interior_point(a, b) : a});
        } else {
            candidates.push_back({va, points_.count(a) ? std::optional<Rat>{} : std::optional<Rat>{a}});
            if (vb > va) candidates.push_back({vb, std::nullopt});
        }
    }
    for (const auto& [x, v] : points_) candidates.push_back({v, x});

    SupResult best;
    bool first = true;
    for (const Candidate& c : candidates) {
        bool better = first || c.value > best.value ||
                      (c.value == best.value && !best.attained && c.witness.has_value());
        if (better) {
            best.value = c.value;
            best.attained = c.witness.has_value();
            best.witness = c.witness ? std::optional<Element>(Element::rational_mod1(*c.witness))
                                     : std::nullopt;
            first = false;
        }
    }
    return best;
}

StepQ1 StepQ1::precompose_affine(int sign, const Rat& raw_shift) const {
    if (sign != 1 && sign != -1) throw ValidationError("affine sign must be +1 or -1");
    Rat c = frac_mod1(raw_shift);
    // new breakpoints: preimages of old ones under x = s*w + c
    std::set<Rat> bset{Rat(0), Rat(1)};
    for (const Rat& t : breakpoints_) {
        Rat pre = sign == 1 ? frac_mod1(t - c) : frac_mod1(c - t);
        bset.insert(pre);
    }
    std::vector<Rat> bps(bset.begin(), bset.end());
    std::vector<LinearPiece> pieces;
    pieces.reserve(bps.size() - 1);
    for (std::size_t j = 0; j + 1 < bps.size(); ++j) {
        Rat mid = (bps[j] + bps[j + 1]) / 2;
        Rat src = sign == 1 ? Rat(mid + c) : Rat(c - mid);
        Rat wrapped = frac_mod1(src);
        Rat delta = src - wrapped;  // integer offset absorbed by mod 1
        auto idx = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), wrapped) -
                   breakpoints_.begin() - 1;
        const LinearPiece& p = pieces_[static_cast<std::size_t>(idx)];
        // value(w) = p.slope * (s*w + c - delta) + p.intercept
        pieces.push_back({p.slope * sign, p.slope * (c - delta) + p.intercept});
    }
    std::map<Rat, Rat> pts;
    auto record = [&](const Rat& w) {
        Rat src = frac_mod1(sign == 1 ? Rat(w + c) : Rat(c - w));
        pts[w] = eval(src);
    };
    for (const Rat& t : bps)
        if (t < 1) record(t);
    for (const auto& [x, v] : points_) {
        (void)v;
        record(frac_mod1(sign == 1 ? Rat(x - c) : Rat(c - x)));
    }
    return StepQ1(std::move(bps), std::move(pieces), std::move(pts));
}

StepQ1 StepQ1::affine_combination(const std::vector<Term>& terms, const Rat& constant) {
    std::set<Rat> bset{Rat(0), Rat(1)};
    for (const Term& t : terms)
        for (const Rat& b : t.fn->breakpoints_) bset.insert(b);
    bset.erase(Rat(1));
    bset.insert(Rat(1));
    std::vector<Rat> bps(bset.begin(), bset.end());
    std::vector<LinearPiece> pieces;
    for (std::size_t j = 0; j + 1 < bps.size(); ++j) {
        Rat mid = (bps[j] + bps[j + 1]) / 2;
        LinearPiece acc{Rat(0), constant};
        for (const Term& t : terms) {
            auto idx = std::upper_bound(t.fn->breakpoints_.begin(), t.fn->breakpoints_.end(), mid) -
                       t.fn->breakpoints_.begin() - 1;
            const LinearPiece& p = t.fn->pieces_[static_cast<std::size_t>(idx)];
            acc.slope += t.weight * p.slope;
            acc.intercept += t.weight * p.intercept;
        }
        pieces.push_back(std::move(acc));
    }
    std::set<Rat> special;
    for (const Term& t : terms) {
        for (const auto& [x, v] : t.fn->points_) {
            (void)v;
            special.insert(x);
        }
    }
    for (const Rat& b : bps)
        if (b < 1) special.insert(b);
    std::map<Rat, Rat> pts;
    for (const Rat& x : special) {
        Rat v = constant;
        for (const Term& t : terms) v += t.weight * t.fn->eval(x);
        pts[x] = v;
    }
    return StepQ1(std::move(bps), std::move(pieces), std::move(pts));
}

StepQ1 StepQ1::convolve(const std::vector<std::pair<Rat, Rat>>& weighted_shifts) const {
    std::vector<StepQ1> shifted;
    shifted.reserve(weighted_shifts.size());
    for (const auto& [w, s] : weighted_shifts) {
        (void)w;
        shifted.push_back(precompose_affine(1, s));
    }
    std::vector<Term> terms;
    terms.reserve(shifted.size());
    for (std::size_t i = 0; i < shifted.size(); ++i)
        terms.push_back({weighted_shifts[i].first, &shifted[i]});
    return affine_combination(terms, Rat(0));
}

FiniteTableFn::FiniteTableFn(GroupPtr group, std::vector<Rat> values)
    : group_(std::move(group)), values_(std::move(values)) {
    if (!group_) throw ValidationError("finite table payoff needs a group");
    if (!group_->is_finite()) throw VariantMismatch("finite table payoff on an infinite group");
    if (values_.size() != group_->order())
        throw ValidationError("payoff table length must equal the group order");
}

Rat FiniteTableFn::eval(const Element& x) const {
    return values_[static_cast<std::size_t>(group_->element_index(x))];
}

Rat FiniteTableFn::average() const {
    Rat total = 0;
    for (const Rat& v : values_) total += v;
    return total / Rat(static_cast<std::int64_t>(values_.size()));
}

SupResult FiniteTableFn::sup() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values_.size(); ++i)
        if (values_[i] > values_[best]) best = i;
    return {values_[best], true, group_->element_at(best)};
}

FiniteTableFn FiniteTableFn::precompose_permutation(const Bijection& permutation) const {
    if (permutation.kind() == Bijection::Kind::Identity) return *this;
    if (permutation.kind() != Bijection::Kind::FinitePermutation)
        throw VariantMismatch("finite payoffs precompose with index permutations only");
    std::vector<Rat> out(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) {
        Element mapped = permutation.apply(*group_, group_->element_at(i));
        out[i] = values_[static_cast<std::size_t>(group_->element_index(mapped))];
    }
    return FiniteTableFn(group_, std::move(out));
}

FiniteTableFn FiniteTableFn::convolve(const std::vector<std::pair<Rat, Element>>& weighted_elements) const {
    std::vector<Rat> out(values_.size(), Rat(0));
    for (std::size_t i = 0; i < values_.size(); ++i) {
        Element w = group_->element_at(i);
        for (const auto& [weight, s] : weighted_elements)
            out[i] += weight * eval(group_->combine(w, s));
    }
    return FiniteTableFn(group_, std::move(out));
}

FiniteTableFn FiniteTableFn::affine_combination(const std::vector<Term>& terms, const Rat& constant) {
    if (terms.empty()) throw ValidationError("affine combination needs at least one term");
    const GroupPtr& group = terms.front().fn->group_;
    std::vector<Rat> out(terms.front().fn->values_.size(), constant);
    for (const Term& t : terms) {
        if (!t.fn->group_->same_as(*group))
            throw VariantMismatch("affine combination across different groups");
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += t.weight * t.fn->values_[i];
    }
    return FiniteTableFn(group, std::move(out));
}

bool operator==(const FiniteTableFn& a, const FiniteTableFn& b) {
    return a.group_->same_as(*b.group_) && a.values_ == b.values_;
}

PredicateZ2 PredicateZ2::cone(Int d1x, Int d1y, Int d2x, Int d2y) {
    if ((d1x == 0 && d1y == 0) || (d2x == 0 && d2y == 0))
        throw ValidationError("cone directions must be nonzero");
    Int cross = d1x * d2y - d1y * d2x;
    Int dot = d1x * d2x + d1y * d2y;
    if (cross == 0 && dot > 0) throw ValidationError("cone directions coincide: empty open sector");
    PredicateZ2 p;
    p.kind_ = NodeKind::Cone;
    p.cone_ = {std::move(d1x), std::move(d1y), std::move(d2x), std::move(d2y)};
    return p;
}

PredicateZ2 PredicateZ2::periodic(std::int64_t m1, std::int64_t m2, std::vector<std::vector<int>> table) {
    if (m1 < 1 || m2 < 1) throw ValidationError("periods must be >= 1");
    if (table.size() != static_cast<std::size_t>(m1)) throw ValidationError("membership table has wrong row count");
    for (const auto& row : table) {
        if (row.size() != static_cast<std::size_t>(m2))
            throw ValidationError("membership table has wrong column count");
        for (int v : row)
            if (v != 0 && v != 1) throw ValidationError("membership table entries must be 0/1");
    }
    PredicateZ2 p;
    p.kind_ = NodeKind::Periodic;
    p.m1_ = m1;
    p.m2_ = m2;
    p.table_ = std::move(table);
    return p;
}

PredicateZ2 PredicateZ2::finite_set(std::vector<Element::Pair> points) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    PredicateZ2 p;
    p.kind_ = NodeKind::FiniteSet;
    p.points_ = std::move(points);
    return p;
}

PredicateZ2 PredicateZ2::predicate_and(std::vector<PredicateZ2> args) {
    if (args.empty()) throw ValidationError("boolean combination needs arguments");
    PredicateZ2 p;
    p.kind_ = NodeKind::And;
    p.children_ = std::move(args);
    return p;
}

PredicateZ2 PredicateZ2::predicate_or(std::vector<PredicateZ2> args) {
    if (args.empty()) throw ValidationError("boolean combination needs arguments");
    PredicateZ2 p;
    p.kind_ = NodeKind::Or;
    p.children_ = std::move(args);
    return p;
}

PredicateZ2 PredicateZ2::predicate_not(PredicateZ2 arg) {
    PredicateZ2 p;
    p.kind_ = NodeKind::Not;
    p.children_.push_back(std::move(arg));
    return p;
}

bool PredicateZ2::contains(const Int& x, const Int& y) const {
    switch (kind_) {
        case NodeKind::Cone: {
            if (x == 0 && y == 0) return false;
            const Int& d1x = cone_[0];
            const Int& d1y = cone_[1];
            const Int& d2x = cone_[2];
            const Int& d2y = cone_[3];
            Int c12 = d1x * d2y - d1y * d2x;
            Int c1p = d1x * y - d1y * x;
            Int cp2 = x * d2y - y * d2x;
            if (c12 > 0) return c1p > 0 && cp2 > 0;   // sector narrower than a half-plane
            if (c12 < 0) return c1p > 0 || cp2 > 0;   // wider than a half-plane
            return c1p > 0;                           // opposite rays: open half-plane
        }
        case NodeKind::Periodic: {
            std::size_t i = mod_floor(x, Int(m1_)).convert_to<std::size_t>();
            std::size_t j = mod_floor(y, Int(m2_)).convert_to<std::size_t>();
            return table_[i][j] != 0;
        }
        case NodeKind::FiniteSet:
            return std::binary_search(points_.begin(), points_.end(), Element::Pair(x, y));
        case NodeKind::And:
            for (const auto& c : children_)
                if (!c.contains(x, y)) return false;
            return true;
        case NodeKind::Or:
            for (const auto& c : children_)
                if (c.contains(x, y)) return true;
            return false;
        case NodeKind::Not:
            return !children_[0].contains(x, y);
    }
    return false;
}

bool operator==(const PredicateZ2& a, const PredicateZ2& b) {
    return a.kind_ == b.kind_ && a.cone_ == b.cone_ && a.m1_ == b.m1_ && a.m2_ == b.m2_ &&
           a.table_ == b.table_ && a.points_ == b.points_ && a.children_ == b.children_;
}

const EventuallyPeriodicZ& PayoffFn::ep_z() const {
    if (kind() != Kind::EventuallyPeriodicZ) throw VariantMismatch("payoff is not eventually periodic on Z");
    return std::get<EventuallyPeriodicZ>(value_);
}

const StepQ1& PayoffFn::step_q1() const {
    if (kind() != Kind::StepQ1) throw VariantMismatch("payoff is not a Q1 step function");
    return std::get<StepQ1>(value_);
}

const FiniteTableFn& PayoffFn::finite_table() const {
    if (kind() != Kind::FiniteTable) throw VariantMismatch("payoff is not a finite table");
    return std::get<FiniteTableFn>(value_);
}

const PredicateZ2& PayoffFn::predicate_z2() const {
    if (kind() != Kind::PredicateZ2) throw VariantMismatch("payoff is not a Z^2 predicate");
    return std::get<PredicateZ2>(value_);
}

bool PayoffFn::compatible_with(const Group& group) const {
    switch (kind()) {
        case Kind::EventuallyPeriodicZ:
            return group.kind() == GroupKind::IntegersZ;
        case Kind::StepQ1:
            return group.kind() == GroupKind::RationalCircleQ1;
        case Kind::FiniteTable:
            return group.is_finite() && finite_table().group()->same_as(group);
        case Kind::PredicateZ2:
            return group.kind() == GroupKind::LatticeZ2;
    }
    return false;
}

Rat PayoffFn::eval(const Group& group, const Element& x) const {
    if (!compatible_with(group)) throw VariantMismatch("payoff class does not match the group");
    group.require(x);
    switch (kind()) {
        case Kind::EventuallyPeriodicZ:
            return ep_z().eval(x.integer());
        case Kind::StepQ1:
            return step_q1().eval(x.rational());
        case Kind::FiniteTable:
            return finite_table().eval(x);
        case Kind::PredicateZ2:
            return predicate_z2().contains(x.lattice().first, x.lattice().second) ? Rat(1) : Rat(0);
    }
    throw Error("unreachable");
}

SupResult PayoffFn::sup() const {
    switch (kind()) {
        case Kind::EventuallyPeriodicZ:
            return ep_z().sup();
        case Kind::StepQ1:
            return step_q1().sup();
        case Kind::FiniteTable:
            return finite_table().sup();
        case Kind::PredicateZ2:
            throw UnsupportedError(
                "lattice predicates have no exact supremum here; use window densities");
    }
    throw Error("unreachable");
}

std::pair<Rat, Rat> PayoffFn::eventual_averages() const { return ep_z().eventual_averages(); }

Rat PayoffFn::lebesgue_q1() const { return step_q1().lebesgue(); }

PayoffFn PayoffFn::precompose(const Bijection& eta) const {
    if (eta.kind() == Bijection::Kind::Identity) return *this;
    switch (kind()) {
        case Kind::EventuallyPeriodicZ:
            if (eta.kind() != Bijection::Kind::AffineZ)
                throw VariantMismatch("Z payoffs precompose with affine-Z bijections only");
            return PayoffFn(ep_z().precompose_affine(eta.sign(), eta.shift_z()));
        case Kind::StepQ1:
            if (eta.kind() != Bijection::Kind::AffineQ1)
                throw VariantMismatch("Q1 payoffs precompose with affine-Q1 bijections only");
            return PayoffFn(step_q1().precompose_affine(eta.sign(), eta.shift_q1()));
        case Kind::FiniteTable:
            return PayoffFn(finite_table().precompose_permutation(eta));
        case Kind::PredicateZ2:
            throw UnsupportedError("Z^2 predicates do not support bijection precomposition");
    }
    throw Error("unreachable");
}

}  // namespace gg
