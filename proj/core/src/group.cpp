#include "groupgames/group.hpp"

#include "groupgames/errors.hpp"

#include <algorithm>
#include <sstream>

namespace gg {

std::uint32_t Element::finite_index() const {
    if (!is_finite_index()) throw VariantMismatch("element is not a finite-group index");
    return std::get<std::uint32_t>(value_);
}

const Int& Element::integer() const {
    if (!is_integer()) throw VariantMismatch("element is not an integer");
    return std::get<Int>(value_);
}

const Element::Pair& Element::lattice() const {
    if (!is_lattice()) throw VariantMismatch("element is not a lattice point");
    return std::get<Pair>(value_);
}

const Rat& Element::rational() const {
    if (!is_rational()) throw VariantMismatch("element is not a rational");
    return std::get<Rat>(value_);
}

const Element::Tuple& Element::tuple() const {
    if (!is_tuple()) throw VariantMismatch("element is not a tuple");
    return std::get<Tuple>(value_);
}

bool Element::less(const Element& a, const Element& b) {
    if (a.value_.index() != b.value_.index()) return a.value_.index() < b.value_.index();
    switch (a.value_.index()) {
        case 0:
            return std::get<std::uint32_t>(a.value_) < std::get<std::uint32_t>(b.value_);
        case 1:
            return std::get<Int>(a.value_) < std::get<Int>(b.value_);
        case 2: {
            const auto& pa = std::get<Pair>(a.value_);
            const auto& pb = std::get<Pair>(b.value_);
            if (pa.first != pb.first) return pa.first < pb.first;
            return pa.second < pb.second;
        }
        case 3:
            return std::get<Rat>(a.value_) < std::get<Rat>(b.value_);
        default: {
            const auto& ta = std::get<Tuple>(a.value_);
            const auto& tb = std::get<Tuple>(b.value_);
            for (std::size_t i = 0; i < std::min(ta.size(), tb.size()); ++i) {
                if (ta[i] != tb[i]) return less(ta[i], tb[i]);
            }
            return ta.size() < tb.size();
        }
    }
}

GroupPtr Group::cyclic(std::uint32_t modulus) {
    if (modulus < 1) throw ValidationError("cyclic group needs modulus >= 1");
    auto g = std::shared_ptr<Group>(new Group());
    g->kind_ = GroupKind::FiniteCyclic;
    g->modulus_ = modulus;
    g->abelian_ = true;
    g->fc_ = true;
    return g;
}

GroupPtr Group::table(std::vector<std::vector<std::uint32_t>> cayley, std::vector<std::string> names,
                      std::optional<bool> declared_abelian, std::optional<bool> declared_fc,
                      std::optional<std::uint32_t> declared_identity,
                      std::optional<std::vector<std::uint32_t>> declared_inverse) {
    const std::size_t k = cayley.size();
    if (k == 0) throw ValidationError("empty Cayley table");
    for (const auto& row : cayley) {
        if (row.size() != k) throw ValidationError("Cayley table is not square");
    }
    // Latin square: every row and column is a permutation of 0..k-1.
    for (std::size_t r = 0; r < k; ++r) {
        std::vector<bool> seen_row(k, false), seen_col(k, false);
        for (std::size_t c = 0; c < k; ++c) {
            std::uint32_t rv = cayley[r][c];
            std::uint32_t cv = cayley[c][r];
            if (rv >= k || cv >= k) throw ValidationError("Cayley table entry out of range");
            if (seen_row[rv]) throw ValidationError("Cayley table row is not a permutation");
            if (seen_col[cv]) throw ValidationError("Cayley table column is not a permutation");
            seen_row[rv] = seen_col[cv] = true;
        }
    }
    // associativity (order is small in practice)
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            for (std::size_t c = 0; c < k; ++c)
                if (cayley[cayley[a][b]][c] != cayley[a][cayley[b][c]])
                    throw ValidationError("Cayley table is not associative");
    // two-sided identity
    std::optional<std::uint32_t> identity;
    for (std::uint32_t e = 0; e < k; ++e) {
        bool ok = true;
        for (std::uint32_t x = 0; x < k && ok; ++x) ok = cayley[e][x] == x && cayley[x][e] == x;
        if (ok) {
            identity = e;
            break;
        }
    }
    if (!identity) throw ValidationError("Cayley table has no identity element");
    if (declared_identity && *declared_identity != *identity)
        throw ValidationError("declared identity disagrees with the Cayley table");
    std::vector<std::uint32_t> inverse(k);
    for (std::uint32_t x = 0; x < k; ++x) {
        std::optional<std::uint32_t> inv;
        for (std::uint32_t y = 0; y < k; ++y) {
            if (cayley[x][y] == *identity && cayley[y][x] == *identity) {
                inv = y;
                break;
            }
        }
        if (!inv) throw ValidationError("Cayley table element without inverse");
        inverse[x] = *inv;
    }
    if (declared_inverse) {
        if (declared_inverse->size() != k || *declared_inverse != inverse)
            throw ValidationError("declared inverse table disagrees with the Cayley table");
    }
    bool abelian = true;
    for (std::size_t a = 0; a < k && abelian; ++a)
        for (std::size_t b = a + 1; b < k && abelian; ++b) abelian = cayley[a][b] == cayley[b][a];
    if (declared_abelian && *declared_abelian != abelian)
        throw ValidationError("declared abelian flag disagrees with the Cayley table");
    if (!names.empty() && names.size() != k) throw ValidationError("names list does not match group order");

    auto g = std::shared_ptr<Group>(new Group());
    g->kind_ = GroupKind::FiniteTable;
    g->cayley_ = std::move(cayley);
    g->inverse_ = std::move(inverse);
    g->identity_index_ = *identity;
    g->names_ = std::move(names);
    g->abelian_ = abelian;
    g->fc_ = declared_fc.value_or(true);  // finite groups are FC
    if (g->abelian_) g->fc_ = true;
    return g;
}

GroupPtr Group::integers() {
    auto g = std::shared_ptr<Group>(new Group());
    g->kind_ = GroupKind::IntegersZ;
    return g;
}

GroupPtr Group::lattice_z2() {
    auto g = std::shared_ptr<Group>(new Group());
    g->kind_ = GroupKind::LatticeZ2;
    return g;
}

GroupPtr Group::rational_circle() {
    auto g = std::shared_ptr<Group>(new Group());
    g->kind_ = GroupKind::RationalCircleQ1;
    return g;
}

GroupPtr Group::product(std::vector<GroupPtr> factors) {
    if (factors.empty()) throw ValidationError("direct product needs at least one factor");
    auto g = std::shared_ptr<Group>(new Group());
    g->kind_ = GroupKind::DirectProduct;
    g->abelian_ = true;
    g->fc_ = true;
    for (const auto& f : factors) {
        if (!f) throw ValidationError("null factor in direct product");
        g->abelian_ = g->abelian_ && f->is_abelian();
        g->fc_ = g->fc_ && f->is_fc();
    }
    g->factors_ = std::move(factors);
    return g;
}

bool Group::is_finite() const {
    switch (kind_) {
        case GroupKind::FiniteCyclic:
        case GroupKind::FiniteTable:
            return true;
        case GroupKind::DirectProduct:
            return std::all_of(factors_.begin(), factors_.end(),
                               [](const GroupPtr& f) { return f->is_finite(); });
        default:
            return false;
    }
}

std::uint64_t Group::order() const {
    switch (kind_) {
        case GroupKind::FiniteCyclic:
            return modulus_;
        case GroupKind::FiniteTable:
            return cayley_.size();
        case GroupKind::DirectProduct: {
            std::uint64_t n = 1;
            for (const auto& f : factors_) {
                std::uint64_t fo = f->order();
                if (fo != 0 && n > (std::uint64_t(1) << 40) / fo)
                    throw ValidationError("product group order too large");
                n *= fo;
            }
            return n;
        }
        default:
            throw VariantMismatch("order() called on an infinite group");
    }
}

std::uint32_t Group::modulus() const {
    if (kind_ != GroupKind::FiniteCyclic) throw VariantMismatch("not a cyclic group");
    return modulus_;
}

const std::vector<std::vector<std::uint32_t>>& Group::cayley() const {
    if (kind_ != GroupKind::FiniteTable) throw VariantMismatch("not a table group");
    return cayley_;
}

const std::vector<std::string>& Group::names() const {
    if (kind_ != GroupKind::FiniteTable) throw VariantMismatch("not a table group");
    return names_;
}

const std::vector<GroupPtr>& Group::factors() const {
    if (kind_ != GroupKind::DirectProduct) throw VariantMismatch("not a product group");
    return factors_;
}

Element Group::identity() const {
    switch (kind_) {
        case GroupKind::FiniteCyclic:
            return Element::finite_index(0);
        case GroupKind::FiniteTable:
            return Element::finite_index(identity_index_);
        case GroupKind::IntegersZ:
            return Element::integer(0);
        case GroupKind::LatticeZ2:
            return Element::lattice(0, 0);
        case GroupKind::RationalCircleQ1:
            return Element::rational_mod1(Rat(0));
        case GroupKind::DirectProduct: {
            Element::Tuple parts;
            parts.reserve(factors_.size());
            for (const auto& f : factors_) parts.push_back(f->identity());
            return Element::tuple(std::move(parts));
        }
    }
    throw Error("unreachable");
}

bool Group::contains(const Element& e) const {
    switch (kind_) {
        case GroupKind::FiniteCyclic:
            return e.is_finite_index() && e.finite_index() < modulus_;
        case GroupKind::FiniteTable:
            return e.is_finite_index() && e.finite_index() < cayley_.size();
        case GroupKind::IntegersZ:
            return e.is_integer();
        case GroupKind::LatticeZ2:
            return e.is_lattice();
        case GroupKind::RationalCircleQ1:
            return e.is_rational() && e.rational() >= 0 && e.rational() < 1;
        case GroupKind::DirectProduct: {
            if (!e.is_tuple() || e.tuple().size() != factors_.size()) return false;
            for (std::size_t i = 0; i < factors_.size(); ++i) {
                if (!factors_[i]->contains(e.tuple()[i])) return false;
            }
            return true;
        }
    }
    return false;
}

void Group::require(const Element& e, const char* what) const {
    if (!contains(e)) throw VariantMismatch(std::string(what) + " does not belong to this group");
}

Element Group::combine(const Element& a, const Element& b) const {
    require(a);
    require(b);
    switch (kind_) {
        case GroupKind::FiniteCyclic:
            return Element::finite_index((a.finite_index() + b.finite_index()) % modulus_);
        case GroupKind::FiniteTable:
            return Element::finite_index(cayley_[a.finite_index()][b.finite_index()]);
        case GroupKind::IntegersZ:
            return Element::integer(a.integer() + b.integer());
        case GroupKind::LatticeZ2:
            return Element::lattice(a.lattice().first + b.lattice().first,
                                    a.lattice().second + b.lattice().second);
        case GroupKind::RationalCircleQ1:
            return Element::rational_mod1(a.rational() + b.rational());
        case GroupKind::DirectProduct: {
            Element::Tuple parts;
            parts.reserve(factors_.size());
            for (std::size_t i = 0; i < factors_.size(); ++i)
                parts.push_back(factors_[i]->combine(a.tuple()[i], b.tuple()[i]));
            return Element::tuple(std::move(parts));
        }
    }
    throw Error("unreachable");
}

Element Group::inverse(const Element& a) const {
    require(a);
    switch (kind_) {
        case GroupKind::FiniteCyclic:
            return Element::finite_index(a.finite_index() == 0 ? 0 : modulus_ - a.finite_index());
        case GroupKind::FiniteTable:
            return Element::finite_index(inverse_[a.finite_index()]);
        case GroupKind::IntegersZ:
            return Element::integer(-a.integer());
        case GroupKind::LatticeZ2:
            return Element::lattice(-a.lattice().first, -a.lattice().second);
        case GroupKind::RationalCircleQ1:
            return Element::rational_mod1(-a.rational());
        case GroupKind::DirectProduct: {
            Element::Tuple parts;
            parts.reserve(factors_.size());
            for (std::size_t i = 0; i < factors_.size(); ++i)
                parts.push_back(factors_[i]->inverse(a.tuple()[i]));
            return Element::tuple(std::move(parts));
        }
    }
    throw Error("unreachable");
}

Element Group::fold(const std::vector<Element>& elements) const {
    Element acc = identity();
    for (const auto& e : elements) acc = combine(acc, e);
    return acc;
}

std::vector<Element> Group::elements() const {
    std::uint64_t n = order();
    std::vector<Element> out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(element_at(i));
    return out;
}

std::uint64_t Group::element_index(const Element& e) const {
    require(e);
    switch (kind_) {
        case GroupKind::FiniteCyclic:
        case GroupKind::FiniteTable:
            return e.finite_index();
        case GroupKind::DirectProduct: {
            std::uint64_t idx = 0;
            for (std::size_t i = 0; i < factors_.size(); ++i) {
                idx = idx * factors_[i]->order() + factors_[i]->element_index(e.tuple()[i]);
            }
            return idx;
        }
        default:
            throw VariantMismatch("element_index() needs a finite group");
    }
}

Element Group::element_at(std::uint64_t index) const {
    switch (kind_) {
        case GroupKind::FiniteCyclic:
        case GroupKind::FiniteTable:
            if (index >= order()) throw ValidationError("element index out of range");
            return Element::finite_index(static_cast<std::uint32_t>(index));
        case GroupKind::DirectProduct: {
            if (index >= order()) throw ValidationError("element index out of range");
            Element::Tuple parts(factors_.size(), identity());
            for (std::size_t i = factors_.size(); i-- > 0;) {
                std::uint64_t fo = factors_[i]->order();
                parts[i] = factors_[i]->element_at(index % fo);
                index /= fo;
            }
            return Element::tuple(std::move(parts));
        }
        default:
            throw VariantMismatch("element_at() needs a finite group");
    }
}

std::string Group::format_element(const Element& e) const {
    require(e);
    switch (kind_) {
        case GroupKind::FiniteCyclic:
            return std::to_string(e.finite_index());
        case GroupKind::FiniteTable:
            if (!names_.empty()) return names_[e.finite_index()];
            return std::to_string(e.finite_index());
        case GroupKind::IntegersZ:
            return int_to_string(e.integer());
        case GroupKind::LatticeZ2:
            return "(" + int_to_string(e.lattice().first) + "," + int_to_string(e.lattice().second) + ")";
        case GroupKind::RationalCircleQ1:
            return rat_to_string(e.rational());
        case GroupKind::DirectProduct: {
            std::string out = "(";
            for (std::size_t i = 0; i < factors_.size(); ++i) {
                if (i) out += "; ";
                out += factors_[i]->format_element(e.tuple()[i]);
            }
            out += ")";
            return out;
        }
    }
    throw Error("unreachable");
}

namespace {

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    std::size_t e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

/// Split "a; b; c" at top level (ignoring separators inside parentheses).
std::vector<std::string> split_top(const std::string& s, char sep) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            parts.push_back(strip(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(strip(cur));
    return parts;
}

}  // namespace

Element Group::parse_element(const std::string& raw) const {
    std::string text = strip(raw);
    if (text.empty()) throw ValidationError("empty element literal");
    switch (kind_) {
        case GroupKind::FiniteCyclic: {
            Int v = parse_int(text);
            if (v < 0 || v >= Int(modulus_)) throw ValidationError("residue out of range: '" + text + "'");
            return Element::finite_index(v.convert_to<std::uint32_t>());
        }
        case GroupKind::FiniteTable: {
            for (std::size_t i = 0; i < names_.size(); ++i) {
                if (names_[i] == text) return Element::finite_index(static_cast<std::uint32_t>(i));
            }
            Int v = parse_int(text);
            if (v < 0 || v >= Int(std::uint64_t(cayley_.size())))
                throw ValidationError("table index out of range: '" + text + "'");
            return Element::finite_index(v.convert_to<std::uint32_t>());
        }
        case GroupKind::IntegersZ:
            return Element::integer(parse_int(text));
        case GroupKind::LatticeZ2: {
            if (text.front() != '(' || text.back() != ')')
                throw ValidationError("lattice element must look like '(x,y)': '" + text + "'");
            auto parts = split_top(text.substr(1, text.size() - 2), ',');
            if (parts.size() != 2) throw ValidationError("lattice element must have two coordinates");
            return Element::lattice(parse_int(parts[0]), parse_int(parts[1]));
        }
        case GroupKind::RationalCircleQ1: {
            Rat v = parse_rat(text);
            if (v < 0 || v >= 1) throw ValidationError("Q1 element must lie in [0,1): '" + text + "'");
            return Element::rational_mod1(v);
        }
        case GroupKind::DirectProduct: {
            if (text.front() != '(' || text.back() != ')')
                throw ValidationError("product element must look like '(a; b)': '" + text + "'");
            auto parts = split_top(text.substr(1, text.size() - 2), ';');
            if (parts.size() != factors_.size())
                throw ValidationError("product element arity mismatch");
            Element::Tuple tup;
            tup.reserve(parts.size());
            for (std::size_t i = 0; i < parts.size(); ++i)
                tup.push_back(factors_[i]->parse_element(parts[i]));
            return Element::tuple(std::move(tup));
        }
    }
    throw Error("unreachable");
}

bool Group::same_as(const Group& other) const {
    if (kind_ != other.kind_) return false;
    switch (kind_) {
        case GroupKind::FiniteCyclic:
            return modulus_ == other.modulus_;
        case GroupKind::FiniteTable:
            return cayley_ == other.cayley_ && names_ == other.names_;
        case GroupKind::DirectProduct: {
            if (factors_.size() != other.factors_.size()) return false;
            for (std::size_t i = 0; i < factors_.size(); ++i)
                if (!factors_[i]->same_as(*other.factors_[i])) return false;
            return true;
        }
        default:
            return true;
    }
}

Bijection Bijection::identity() { return Bijection(); }

Bijection Bijection::affine_z(int sign, Int shift) {
    if (sign != 1 && sign != -1) throw ValidationError("affine sign must be +1 or -1");
    Bijection b;
    b.kind_ = Kind::AffineZ;
    b.sign_ = sign;
    b.shift_z_ = std::move(shift);
    return b;
}

Bijection Bijection::affine_q1(int sign, const Rat& shift) {
    if (sign != 1 && sign != -1) throw ValidationError("affine sign must be +1 or -1");
    Bijection b;
    b.kind_ = Kind::AffineQ1;
    b.sign_ = sign;
    b.shift_q1_ = frac_mod1(shift);
    return b;
}

Bijection Bijection::permutation(std::vector<std::uint32_t> perm) {
    std::vector<bool> seen(perm.size(), false);
    for (std::uint32_t v : perm) {
        if (v >= perm.size() || seen[v]) throw ValidationError("not a permutation of 0..k-1");
        seen[v] = true;
    }
    Bijection b;
    b.kind_ = Kind::FinitePermutation;
    b.perm_ = std::move(perm);
    return b;
}

Bijection Bijection::inverse() const {
    switch (kind_) {
        case Kind::Identity:
            return *this;
        case Kind::AffineZ:
            // y = s x + c  =>  x = s y - s c
            return affine_z(sign_, Int(-sign_ * shift_z_));
        case Kind::AffineQ1:
            return affine_q1(sign_, frac_mod1(Rat(-sign_) * shift_q1_));
        case Kind::FinitePermutation: {
            std::vector<std::uint32_t> inv(perm_.size());
            for (std::uint32_t i = 0; i < perm_.size(); ++i) inv[perm_[i]] = i;
            return permutation(std::move(inv));
        }
    }
    throw Error("unreachable");
}

Element Bijection::apply(const Group& group, const Element& x) const {
    group.require(x);
    switch (kind_) {
        case Kind::Identity:
            return x;
        case Kind::AffineZ:
            if (group.kind() != GroupKind::IntegersZ)
                throw VariantMismatch("AffineZ bijection applied off Z");
            return Element::integer(Int(sign_) * x.integer() + shift_z_);
        case Kind::AffineQ1:
            if (group.kind() != GroupKind::RationalCircleQ1)
                throw VariantMismatch("AffineQ1 bijection applied off Q1");
            return Element::rational_mod1(Rat(sign_) * x.rational() + shift_q1_);
        case Kind::FinitePermutation:
            if (!group.is_finite() || group.order() != perm_.size())
                throw VariantMismatch("permutation does not match the group order");
            return group.element_at(perm_[group.element_index(x)]);
    }
    throw Error("unreachable");
}

bool Bijection::compatible_with(const Group& group) const {
    switch (kind_) {
        case Kind::Identity:
            return true;
        case Kind::AffineZ:
            return group.kind() == GroupKind::IntegersZ;
        case Kind::AffineQ1:
            return group.kind() == GroupKind::RationalCircleQ1;
        case Kind::FinitePermutation:
            return group.is_finite() && group.order() == perm_.size();
    }
    return false;
}

bool operator==(const Bijection& a, const Bijection& b) {
    return a.kind_ == b.kind_ && a.sign_ == b.sign_ && a.shift_z_ == b.shift_z_ &&
           a.shift_q1_ == b.shift_q1_ && a.perm_ == b.perm_;
}

}  // namespace gg
