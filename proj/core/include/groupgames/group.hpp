#pragma once

#include "groupgames/rational.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace gg {

class Group;
using GroupPtr = std::shared_ptr<const Group>;

enum class GroupKind {
    FiniteCyclic,
    FiniteTable,
    IntegersZ,
    LatticeZ2,
    RationalCircleQ1,
    DirectProduct,
};

/**
 * One pure strategy. The active alternative must match the group the element
 * is used with; every group operation checks this.
 *
 * Q1 values are kept as reduced fractions in [0,1); construction normalizes.
 */
class Element {
public:
    using Pair = std::pair<Int, Int>;
    using Tuple = std::vector<Element>;

    static Element finite_index(std::uint32_t index) { return Element(index); }
    static Element integer(Int value) { return Element(std::move(value)); }
    static Element lattice(Int x, Int y) { return Element(Pair(std::move(x), std::move(y))); }
    static Element rational_mod1(const Rat& value) { return Element(frac_mod1(value)); }
    static Element tuple(Tuple parts) { return Element(std::move(parts)); }

    bool is_finite_index() const { return std::holds_alternative<std::uint32_t>(value_); }
    bool is_integer() const { return std::holds_alternative<Int>(value_); }
    bool is_lattice() const { return std::holds_alternative<Pair>(value_); }
    bool is_rational() const { return std::holds_alternative<Rat>(value_); }
    bool is_tuple() const { return std::holds_alternative<Tuple>(value_); }

    std::uint32_t finite_index() const;
    const Int& integer() const;
    const Pair& lattice() const;
    const Rat& rational() const;
    const Tuple& tuple() const;

    friend bool operator==(const Element& a, const Element& b) { return a.value_ == b.value_; }
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

    /// Strict total order used for canonical (deterministic) containers.
    static bool less(const Element& a, const Element& b);

private:
    explicit Element(std::uint32_t v) : value_(v) {}
    explicit Element(Int v) : value_(std::move(v)) {}
    explicit Element(Pair v) : value_(std::move(v)) {}
    explicit Element(Rat v) : value_(std::move(v)) {}
    explicit Element(Tuple v) : value_(std::move(v)) {}

    std::variant<std::uint32_t, Int, Pair, Rat, Tuple> value_;
};

struct ElementLess {
    bool operator()(const Element& a, const Element& b) const { return Element::less(a, b); }
};

/**
 * The strategy group. Instances are immutable and shared; all operations are
 * pure, so concurrent use needs no coordination.
 *
 * Finite Cayley tables are validated eagerly: rows and columns must be
 * permutations, a two-sided identity must exist and every element must have
 * an inverse. The abelian flag is checked against the table when declared.
 */
class Group : public std::enable_shared_from_this<Group> {
public:
    static GroupPtr cyclic(std::uint32_t modulus);
    static GroupPtr table(std::vector<std::vector<std::uint32_t>> cayley,
                          std::vector<std::string> names = {},
                          std::optional<bool> declared_abelian = std::nullopt,
                          std::optional<bool> declared_fc = std::nullopt,
                          std::optional<std::uint32_t> declared_identity = std::nullopt,
                          std::optional<std::vector<std::uint32_t>> declared_inverse = std::nullopt);
    static GroupPtr integers();
    static GroupPtr lattice_z2();
    static GroupPtr rational_circle();
    static GroupPtr product(std::vector<GroupPtr> factors);

    GroupKind kind() const { return kind_; }
    bool is_abelian() const { return abelian_; }
    bool is_fc() const { return fc_; }
    bool is_finite() const;
    /// Order of a finite group; throws for infinite groups.
    std::uint64_t order() const;

    std::uint32_t modulus() const;                                  // FiniteCyclic
    const std::vector<std::vector<std::uint32_t>>& cayley() const;  // FiniteTable
    const std::vector<std::string>& names() const;                  // FiniteTable, may be empty
    const std::vector<GroupPtr>& factors() const;                   // DirectProduct

    Element identity() const;
    Element combine(const Element& a, const Element& b) const;
    Element inverse(const Element& a) const;
    /// Left-to-right combine; the empty list folds to the identity.
    Element fold(const std::vector<Element>& elements) const;

    bool contains(const Element& e) const;
    void require(const Element& e, const char* what = "element") const;

    /// Finite groups only: stable enumeration and the index of an element in
    /// it. Products enumerate in mixed-radix order over the factors.
    std::vector<Element> elements() const;
    std::uint64_t element_index(const Element& e) const;
    Element element_at(std::uint64_t index) const;

    std::string format_element(const Element& e) const;
    Element parse_element(const std::string& text) const;

    bool same_as(const Group& other) const;

private:
    Group() = default;

    GroupKind kind_ = GroupKind::IntegersZ;
    bool abelian_ = true;
    bool fc_ = true;
    std::uint32_t modulus_ = 0;
    std::vector<std::vector<std::uint32_t>> cayley_;
    std::vector<std::uint32_t> inverse_;
    std::uint32_t identity_index_ = 0;
    std::vector<std::string> names_;
    std::vector<GroupPtr> factors_;
};

/**
 * Strategy-space relabellings used to pull equilibria back through
 * transformed games: identity, x -> s*x + c on Z, x -> s*x + c (mod 1) on
 * Q1, and index permutations of finite groups. Every variant has an inverse
 * in the same family.
 */
class Bijection {
public:
    enum class Kind { Identity, AffineZ, AffineQ1, FinitePermutation };

    static Bijection identity();
    static Bijection affine_z(int sign, Int shift);
    static Bijection affine_q1(int sign, const Rat& shift);
    static Bijection permutation(std::vector<std::uint32_t> perm);

    Kind kind() const { return kind_; }
    int sign() const { return sign_; }
    const Int& shift_z() const { return shift_z_; }
    const Rat& shift_q1() const { return shift_q1_; }
    const std::vector<std::uint32_t>& perm() const { return perm_; }

    Bijection inverse() const;
    Element apply(const Group& group, const Element& x) const;
    bool compatible_with(const Group& group) const;

    friend bool operator==(const Bijection& a, const Bijection& b);

private:
    Bijection() = default;

    Kind kind_ = Kind::Identity;
    int sign_ = 1;
    Int shift_z_ = 0;
    Rat shift_q1_ = 0;
    std::vector<std::uint32_t> perm_;
};

}  // namespace gg
