#pragma once

#include "groupgames/group.hpp"
#include "groupgames/measure.hpp"
#include "groupgames/payoff.hpp"
#include "groupgames/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace gg {

/**
 * Window families whose empirical measures become asymptotically invariant:
 * integer ranges on Z, cone-restricted squares on Z^2, the factorial
 * subgroups {k/n! : 0 <= k < n!} on Q1 (exactly invariant against every
 * compatible denominator), and whole finite groups.
 */
struct WindowSpec {
    enum class Kind { ZSymmetric, ZRight, ZLeft, Z2Cone, Q1Factorial, FiniteWhole };

    Kind kind = Kind::ZSymmetric;
    std::int64_t n = 0;
    std::optional<PredicateZ2> cone;  // Z2Cone only; must be a cone node

    static WindowSpec z_symmetric(std::int64_t n);
    static WindowSpec z_right(std::int64_t n);
    static WindowSpec z_left(std::int64_t n);
    static WindowSpec z2_cone(std::int64_t n, PredicateZ2 cone);
    static WindowSpec q1_factorial(std::int64_t n);
    static WindowSpec finite_whole();
};

struct Window {
    GroupPtr group;
    WindowSpec spec;
    std::vector<Element> elements;  // sorted by Element::less

    std::size_t size() const { return elements.size(); }
    /// Uniform finitely supported measure on the window.
    Measure empirical() const;
    /// The window shifted by g (elementwise g * x).
    Window translated(const Element& g) const;
};

Window build_window(const GroupPtr& group, const WindowSpec& spec);

/// |(g*F) symmetric-difference F| / |F|, exact.
Rat invariance_defect(const Window& window, const Element& g);

/// |A intersect F| / |F| for a {0,1}-valued payoff indicator.
Rat window_density(const PayoffFn& indicator, const Window& window);

struct DensityPoint {
    std::int64_t n;
    std::uint64_t window_size;
    Rat value;
};

struct DensitySweep {
    std::vector<DensityPoint> points;
    Rat final_value;
    /// max |v - final_value| over the second half of the series
    Rat tail_spread;
};

/// Densities of the set along a list of windows, optionally in parallel
/// (GROUPGAMES_THREADS caps the worker count; results are deterministic).
DensitySweep density_sweep(const PayoffFn& indicator, const GroupPtr& group,
                           const std::vector<WindowSpec>& windows);

/// Same series for the invariance defect of a fixed group element.
DensitySweep defect_sweep(const GroupPtr& group, const std::vector<WindowSpec>& windows,
                          const Element& g);

/**
 * Max over translates t in [-translate_range, translate_range] of
 * |A intersect (t + [-n, n])| / (2n+1): a certified lower bound for the
 * maximal invariant-mean mass of A, exact per window. The default range
 * (translate_range < 0) is 10*n, which suffices for eventually periodic
 * sets but stays a lower bound for arbitrary predicates.
 */
Rat upper_banach_density(const EventuallyPeriodicZ& indicator, std::int64_t n,
                         std::int64_t translate_range = -1);

/// Exact |{x in [lo, hi] : indicator(x) = 1}| via residue counting.
Int indicator_count_in_interval(const EventuallyPeriodicZ& indicator, std::int64_t lo, std::int64_t hi);

}  // namespace gg
