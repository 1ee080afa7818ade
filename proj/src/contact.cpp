#include "framecheck/contact.hpp"

#include <algorithm>
#include <numeric>

namespace framecheck {

double axis_gap(const Box3& a, const Box3& b, int axis) {
    const double lo = std::max(a.min[axis], b.min[axis]);
    const double hi = std::min(a.max[axis], b.max[axis]);
    return std::max(0.0, lo - hi);
}

bool are_adjacent(const Box3& a, const Box3& b, const ContactParams& p) {
    for (int k = 0; k < 3; ++k) {
        if (axis_gap(a, b, k) > p.contact_tolerance_eps) return false;
    }
    return true;
}

bool is_grounded(const Box3& box, const ContactParams& p) { return box.min.z < p.ground_height; }

Adjacency adjacency_naive(const Scene& scene, const ContactParams& p) {
    const std::size_t n = scene.members.size();
    Adjacency adj(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (are_adjacent(scene.members[i].box, scene.members[j].box, p)) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
        }
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());
    return adj;
}

Adjacency adjacency_sweep(const Scene& scene, const ContactParams& p) {
    const auto& members = scene.members;
    const std::size_t n = members.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double ma = members[a].box.min.x;
        const double mb = members[b].box.min.x;
        return ma < mb || (ma == mb && a < b);
    });

    Adjacency adj(n);
    for (std::size_t oi = 0; oi < n; ++oi) {
        const Box3& a = members[order[oi]].box;
        for (std::size_t oj = oi + 1; oj < n; ++oj) {
            const Box3& b = members[order[oj]].box;
            // b.min.x >= a.min.x, so once b starts past a the x gap is exactly
            // b.min.x - a.max.x (the same expression axis_gap evaluates) and only grows.
            if (b.min.x - a.max.x > p.contact_tolerance_eps) break;
            if (are_adjacent(a, b, p)) {
                adj[order[oi]].push_back(order[oj]);
                adj[order[oj]].push_back(order[oi]);
            }
        }
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());
    return adj;
}

SupportState compute_support(const Scene& scene, const ContactParams& p) {
    SupportState state;
    const std::size_t n = scene.members.size();
    state.adjacency = adjacency_sweep(scene, p);
    state.grounded.assign(n, false);
    state.supported.assign(n, false);

    std::vector<std::size_t> frontier;
    for (std::size_t i = 0; i < n; ++i) {
        if (is_grounded(scene.members[i].box, p)) {
            state.grounded[i] = true;
            state.supported[i] = true;
            frontier.push_back(i);
        }
    }
    // Least fixed point: everything reachable from the ground set.
    while (!frontier.empty()) {
        const std::size_t i = frontier.back();
        frontier.pop_back();
        for (std::size_t j : state.adjacency[i]) {
            if (!state.supported[j]) {
                state.supported[j] = true;
                frontier.push_back(j);
            }
        }
    }
    state.supported_count = static_cast<std::size_t>(std::count(state.supported.begin(), state.supported.end(), true));
    state.tsi = n == 0 ? 1.0 : static_cast<double>(state.supported_count) / static_cast<double>(n);
    return state;
}

}  // namespace framecheck
