#pragma once

#include <cstddef>
#include <vector>

#include "framecheck/scene.hpp"

namespace framecheck {

struct ContactParams {
    double contact_tolerance_eps = 0.05;  ///< m, per-axis gap allowed for contact
    double ground_height = 0.1;           ///< m, z_min below this is grounded
};

/// Separation of the two boxes' intervals on one axis; 0 when they overlap or touch.
double axis_gap(const Box3& a, const Box3& b, int axis);
inline double axis_gap(const Box3& a, const Box3& b, Axis axis) { return axis_gap(a, b, static_cast<int>(axis)); }

/// Contact relation: gap <= eps on all three axes.
bool are_adjacent(const Box3& a, const Box3& b, const ContactParams& p);
inline bool are_adjacent(const Member& a, const Member& b, const ContactParams& p) {
    return are_adjacent(a.box, b.box, p);
}

/// Sorted neighbour lists, one per member.
using Adjacency = std::vector<std::vector<std::size_t>>;

/// All-pairs contact check.
Adjacency adjacency_naive(const Scene& scene, const ContactParams& p);

/// Sweep-and-prune along x; identical output to adjacency_naive.
Adjacency adjacency_sweep(const Scene& scene, const ContactParams& p);

struct SupportState {
    Adjacency adjacency;
    std::vector<bool> grounded;
    std::vector<bool> supported;
    std::size_t supported_count = 0;
    double tsi = 1.0;  ///< supported / members; 1 for an empty scene

    bool all_supported() const { return supported_count == supported.size(); }
};

/// Ground set and least fixed point of the support relation.
SupportState compute_support(const Scene& scene, const ContactParams& p);

bool is_grounded(const Box3& box, const ContactParams& p);

}  // namespace framecheck
