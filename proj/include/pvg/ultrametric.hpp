#pragma once

// Nonemptiness of Boolean combinations of balls in a p-branching ultrametric tree.
//
// A region is an intersection of closed balls B(c, r) = {x : V(x - c) >= r}
// minus a finite union of balls. Radii are taken in an ordered value type that
// may be symbolic; every comparison is routed through the caller's operations
// object, so the same routine decides ground instances and drives the
// case-splitting quantifier elimination.
//
// Operations required of `Ops`:
//   Val  dist(std::size_t i, std::size_t j)   V(c_i - c_j); ∞ when i == j
//   bool le(const Val& a, const Val& b)        a <= b
//   Val  succ(const Val& a)                    a + 1
//   unsigned long branching()                  p

#include <cstddef>
#include <vector>

namespace pvg {

template <class Val>
struct Ball {
    std::size_t center;
    Val radius;
};

namespace detail {

template <class Val, class Ops>
bool covered(std::size_t center, const Val& radius, const std::vector<Ball<Val>>& excluded, Ops& ops) {
    std::vector<Ball<Val>> inside;
    for (const auto& e : excluded) {
        const Val d = ops.dist(center, e.center);
        // B(e) ⊇ B(center, radius) iff e.radius <= radius and the centers are e.radius-close.
        if (ops.le(e.radius, radius) && ops.le(e.radius, d)) return true;
        // Otherwise B(e) is strictly inside or disjoint.
        if (!ops.le(e.radius, radius) && ops.le(radius, d)) inside.push_back(e);
    }
    if (inside.size() < ops.branching()) return false;

    // Group the inner balls by the child ball B(·, radius + 1) they fall in.
    const Val child = ops.succ(radius);
    std::vector<std::vector<Ball<Val>>> groups;
    for (const auto& e : inside) {
        bool placed = false;
        for (auto& g : groups) {
            if (ops.le(child, ops.dist(g.front().center, e.center))) {
                g.push_back(e);
                placed = true;
                break;
            }
        }
        if (!placed) groups.push_back({e});
    }
    if (groups.size() < ops.branching()) return false;
    for (const auto& g : groups)
        if (!covered(g.front().center, child, g, ops)) return false;
    return true;
}

} // namespace detail

/// Whether ⋂ lower \ ⋃ excluded is nonempty.
///
/// `lower` must be nonempty and its largest radius must be >= 0, so that the
/// intersection is an honest ball of the tree rooted at level 0. Excluded
/// radii must be finite; removing isolated points never empties an open region.
template <class Val, class Ops>
bool region_nonempty(const std::vector<Ball<Val>>& lower, const std::vector<Ball<Val>>& excluded, Ops& ops) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < lower.size(); ++i)
        if (!ops.le(lower[i].radius, lower[best].radius)) best = i;
    // Nested or disjoint: the intersection is the smallest ball if it lies in every other.
    for (std::size_t i = 0; i < lower.size(); ++i)
        if (i != best && !ops.le(lower[i].radius, ops.dist(lower[best].center, lower[i].center))) return false;
    return !detail::covered(lower[best].center, lower[best].radius, excluded, ops);
}

} // namespace pvg
