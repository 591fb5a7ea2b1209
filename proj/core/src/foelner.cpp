#include "groupgames/foelner.hpp"

#include "groupgames/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <thread>

namespace gg {

namespace {

constexpr std::int64_t kMaxWindowSize = 10'000'000;

void require_01(const EventuallyPeriodicZ& f) {
    auto check = [](const Rat& v) {
        if (v != 0 && v != 1) throw ValidationError("indicator must be {0,1}-valued");
    };
    for (const Rat& v : f.right_values()) check(v);
    for (const Rat& v : f.left_values()) check(v);
    for (const Rat& v : f.core_values()) check(v);
}

std::size_t worker_count(std::size_t jobs) {
    if (jobs <= 1) return 1;
    unsigned hw = std::thread::hardware_concurrency();
    std::size_t cap = hw == 0 ? 1 : hw;
    if (const char* env = std::getenv("GROUPGAMES_THREADS")) {
        char* end = nullptr;
        long parsed = std::strtol(env, &end, 10);
        if (end != env && parsed >= 1) cap = static_cast<std::size_t>(parsed);
    }
    return std::min(cap, jobs);
}

/// Deterministic parallel map: out[i] = fn(i), chunked over workers.
template <typename Fn>
std::vector<Rat> parallel_map(std::size_t jobs, Fn&& fn) {
    std::vector<Rat> out(jobs);
    std::size_t workers = worker_count(jobs);
    if (workers <= 1) {
        for (std::size_t i = 0; i < jobs; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::future<void>> futures;
    futures.reserve(workers);
    std::size_t chunk = (jobs + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t begin = w * chunk;
        std::size_t end = std::min(jobs, begin + chunk);
        if (begin >= end) break;
        futures.push_back(std::async(std::launch::async, [&, begin, end]() {
            for (std::size_t i = begin; i < end; ++i) out[i] = fn(i);
        }));
    }
    for (auto& f : futures) f.get();
    return out;
}

}  // namespace

WindowSpec WindowSpec::z_symmetric(std::int64_t n) {
    if (n < 0) throw ValidationError("window size must be nonnegative");
    return {Kind::ZSymmetric, n, std::nullopt};
}

WindowSpec WindowSpec::z_right(std::int64_t n) {
    if (n < 0) throw ValidationError("window size must be nonnegative");
    return {Kind::ZRight, n, std::nullopt};
}

WindowSpec WindowSpec::z_left(std::int64_t n) {
    if (n < 0) throw ValidationError("window size must be nonnegative");
    return {Kind::ZLeft, n, std::nullopt};
}

WindowSpec WindowSpec::z2_cone(std::int64_t n, PredicateZ2 cone) {
    if (n < 1) throw ValidationError("cone window needs n >= 1");
    if (cone.node_kind() != PredicateZ2::NodeKind::Cone)
        throw ValidationError("cone window needs a cone predicate");
    return {Kind::Z2Cone, n, std::move(cone)};
}

WindowSpec WindowSpec::q1_factorial(std::int64_t n) {
    if (n < 1 || n > 10) throw ValidationError("factorial window needs 1 <= n <= 10");
    return {Kind::Q1Factorial, n, std::nullopt};
}

WindowSpec WindowSpec::finite_whole() { return {Kind::FiniteWhole, 0, std::nullopt}; }

Measure Window::empirical() const {
    std::vector<Measure::Atom> atoms;
    atoms.reserve(elements.size());
    Rat w = Rat(1) / Rat(Int(std::uint64_t(elements.size())));
    for (const Element& e : elements) atoms.push_back({e, w});
    return Measure::finite_support(std::move(atoms));
}

Window Window::translated(const Element& g) const {
    Window out;
    out.group = group;
    out.spec = spec;
    out.elements.reserve(elements.size());
    for (const Element& e : elements) out.elements.push_back(group->combine(g, e));
    std::sort(out.elements.begin(), out.elements.end(), Element::less);
    return out;
}

Window build_window(const GroupPtr& group, const WindowSpec& spec) {
    if (!group) throw ValidationError("window needs a group");
    Window w;
    w.group = group;
    w.spec = spec;
    switch (spec.kind) {
        case WindowSpec::Kind::ZSymmetric:
        case WindowSpec::Kind::ZRight:
        case WindowSpec::Kind::ZLeft: {
            if (group->kind() != GroupKind::IntegersZ)
                throw VariantMismatch("integer windows need the group Z");
            std::int64_t lo = spec.kind == WindowSpec::Kind::ZRight ? 0 : -spec.n;
            std::int64_t hi = spec.kind == WindowSpec::Kind::ZLeft ? 0 : spec.n;
            if (hi - lo + 1 > kMaxWindowSize) throw ValidationError("window too large");
            w.elements.reserve(static_cast<std::size_t>(hi - lo + 1));
            for (std::int64_t x = lo; x <= hi; ++x) w.elements.push_back(Element::integer(Int(x)));
            break;
        }
        case WindowSpec::Kind::Z2Cone: {
            if (group->kind() != GroupKind::LatticeZ2)
                throw VariantMismatch("cone windows need the group Z^2");
            const PredicateZ2& cone = *spec.cone;
            for (std::int64_t x = -spec.n; x <= spec.n; ++x) {
                for (std::int64_t y = -spec.n; y <= spec.n; ++y) {
                    if (cone.contains(Int(x), Int(y)))
                        w.elements.push_back(Element::lattice(Int(x), Int(y)));
                }
            }
            if (w.elements.empty())
                throw ValidationError("empty cone window (degenerate cone or n too small)");
            break;
        }
        case WindowSpec::Kind::Q1Factorial: {
            if (group->kind() != GroupKind::RationalCircleQ1)
                throw VariantMismatch("factorial windows need the group Q1");
            std::int64_t size = 1;
            for (std::int64_t i = 2; i <= spec.n; ++i) size *= i;
            w.elements.reserve(static_cast<std::size_t>(size));
            for (std::int64_t k = 0; k < size; ++k)
                w.elements.push_back(Element::rational_mod1(Rat(Int(k), Int(size))));
            break;
        }
        case WindowSpec::Kind::FiniteWhole: {
            if (!group->is_finite()) throw VariantMismatch("whole-group windows need a finite group");
            w.elements = group->elements();
            break;
        }
    }
    std::sort(w.elements.begin(), w.elements.end(), Element::less);
    return w;
}

Rat invariance_defect(const Window& window, const Element& g) {
    window.group->require(g);
    Window shifted = window.translated(g);
    std::size_t common = 0;
    auto it_a = window.elements.begin();
    auto it_b = shifted.elements.begin();
    while (it_a != window.elements.end() && it_b != shifted.elements.end()) {
        if (Element::less(*it_a, *it_b)) {
            ++it_a;
        } else if (Element::less(*it_b, *it_a)) {
            ++it_b;
        } else {
            ++common;
            ++it_a;
            ++it_b;
        }
    }
    std::size_t sym_diff = 2 * (window.elements.size() - common);
    return Rat(Int(std::uint64_t(sym_diff)), Int(std::uint64_t(window.elements.size())));
}

namespace {

/// Precomputed {0,1} tables for the counting loops.
struct IndicatorTables {
    std::int64_t period;
    std::int64_t radius;
    std::vector<char> right;
    std::vector<char> left;
    std::vector<char> core;

    explicit IndicatorTables(const EventuallyPeriodicZ& indicator)
        : period(indicator.period()), radius(indicator.core_radius()) {
        auto to01 = [](const std::vector<Rat>& values) {
            std::vector<char> out(values.size());
            for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i] == 1 ? 1 : 0;
            return out;
        };
        right = to01(indicator.right_values());
        left = to01(indicator.left_values());
        core = to01(indicator.core_values());
    }
};

std::int64_t fdiv_i64(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t count_in_interval_i64(const IndicatorTables& tables, std::int64_t lo, std::int64_t hi) {
    if (lo > hi) return 0;
    const std::int64_t K = tables.radius;
    const std::int64_t m = tables.period;
    std::int64_t count = 0;
    for (std::int64_t x = std::max(lo, -K); x <= std::min(hi, K); ++x)
        count += tables.core[static_cast<std::size_t>(x + K)];
    // residue r occupies floor((b-r)/m) - floor((a-1-r)/m) points of [a,b]
    auto count_residues = [&](std::int64_t a, std::int64_t b, const std::vector<char>& values) {
        if (a > b) return;
        for (std::int64_t r = 0; r < m; ++r) {
            if (!values[static_cast<std::size_t>(r)]) continue;
            count += fdiv_i64(b - r, m) - fdiv_i64(a - 1 - r, m);
        }
    };
    count_residues(std::max(lo, K + 1), hi, tables.right);
    count_residues(lo, std::min(hi, -K - 1), tables.left);
    return count;
}

}  // namespace

Int indicator_count_in_interval(const EventuallyPeriodicZ& indicator, std::int64_t lo, std::int64_t hi) {
    require_01(indicator);
    return Int(count_in_interval_i64(IndicatorTables(indicator), lo, hi));
}

Rat window_density(const PayoffFn& indicator, const Window& window) {
    if (window.elements.empty()) throw ValidationError("empty window");
    // fast interval path on Z
    if (indicator.kind() == PayoffFn::Kind::EventuallyPeriodicZ &&
        window.group->kind() == GroupKind::IntegersZ) {
        std::int64_t lo = window.elements.front().integer().convert_to<std::int64_t>();
        std::int64_t hi = window.elements.back().integer().convert_to<std::int64_t>();
        if (Int(hi - lo + 1) == Int(std::uint64_t(window.elements.size()))) {
            Int count = indicator_count_in_interval(indicator.ep_z(), lo, hi);
            return Rat(count, Int(std::uint64_t(window.elements.size())));
        }
    }
    Int count = 0;
    for (const Element& e : window.elements) {
        Rat v = indicator.eval(*window.group, e);
        if (v != 0 && v != 1) throw ValidationError("indicator must be {0,1}-valued");
        if (v == 1) ++count;
    }
    return Rat(count, Int(std::uint64_t(window.elements.size())));
}

namespace {

DensitySweep summarize(std::vector<DensityPoint> points) {
    DensitySweep sweep;
    sweep.points = std::move(points);
    if (sweep.points.empty()) throw ValidationError("sweep needs at least one window");
    sweep.final_value = sweep.points.back().value;
    sweep.tail_spread = 0;
    for (std::size_t i = sweep.points.size() / 2; i < sweep.points.size(); ++i) {
        Rat d = sweep.points[i].value - sweep.final_value;
        if (d < 0) d = -d;
        sweep.tail_spread = std::max(sweep.tail_spread, d);
    }
    return sweep;
}

}  // namespace

namespace {

template <typename PerWindow>
DensitySweep run_sweep(const GroupPtr& group, const std::vector<WindowSpec>& windows,
                       PerWindow&& per_window) {
    std::vector<std::uint64_t> sizes(windows.size(), 0);
    std::vector<Rat> values = parallel_map(windows.size(), [&](std::size_t i) {
        Window w = build_window(group, windows[i]);
        sizes[i] = w.size();
        return per_window(w);
    });
    std::vector<DensityPoint> points;
    points.reserve(windows.size());
    for (std::size_t i = 0; i < windows.size(); ++i)
        points.push_back({windows[i].n, sizes[i], values[i]});
    return summarize(std::move(points));
}

}  // namespace

DensitySweep density_sweep(const PayoffFn& indicator, const GroupPtr& group,
                           const std::vector<WindowSpec>& windows) {
    return run_sweep(group, windows,
                     [&](const Window& w) { return window_density(indicator, w); });
}

DensitySweep defect_sweep(const GroupPtr& group, const std::vector<WindowSpec>& windows,
                          const Element& g) {
    return run_sweep(group, windows, [&](const Window& w) { return invariance_defect(w, g); });
}

Rat upper_banach_density(const EventuallyPeriodicZ& indicator, std::int64_t n,
                         std::int64_t translate_range) {
    if (n < 0) throw ValidationError("window size must be nonnegative");
    require_01(indicator);
    IndicatorTables tables(indicator);
    std::int64_t range = translate_range < 0 ? 10 * n : translate_range;
    std::int64_t best = 0;
    for (std::int64_t t = -range; t <= range; ++t)
        best = std::max(best, count_in_interval_i64(tables, t - n, t + n));
    return Rat(Int(best), Int(2 * n + 1));
}

}  // namespace gg
