#include "axiscope/metrics.hpp"

#include <algorithm>
#include <stdexcept>

#include "axiscope/parallel.hpp"

namespace axiscope {

std::vector<EntityId> branch_membership(const ClassGraph& g, const Axis& axis, EntityId c) {
    std::vector<EntityId> out;
    for (EntityId b : axis.branches)
        if (is_subclass_of(g, c, b)) out.push_back(b);
    return out;
}

std::vector<std::uint8_t> branch_hit_counts(const ClassGraph& g, const Axis& axis) {
    std::vector<NodeMask> masks(axis.branches.size());
    parallel_for(masks.size(), [&](std::size_t i) { masks[i] = g.descendants_mask(axis.branches[i]); });
    std::vector<std::uint8_t> hits(g.node_count(), 0);
    for (const auto& m : masks)
        for (std::size_t v = 0; v < hits.size(); ++v)
            if (m[v] && hits[v] < 255) ++hits[v];
    return hits;
}

CoverageReport axis_coverage(const ClassGraph& g, const Axis& axis) {
    CoverageReport r;
    r.axis = axis;
    r.per_branch.assign(axis.branches.size(), 0);

    std::vector<NodeMask> masks(axis.branches.size() + 1);
    parallel_for(masks.size(), [&](std::size_t i) {
        masks[i] = g.descendants_mask(i == 0 ? axis.subject : axis.branches[i - 1]);
    });
    const NodeMask& eligible = masks[0];

    for (ClassGraph::Index v = 0; v < g.node_count(); ++v) {
        if (!eligible[v] || !(g.is_class_index(v) || g.id_at(v) == axis.subject)) continue;
        ++r.eligible_count;
        std::size_t hits = 0;
        for (std::size_t b = 0; b < axis.branches.size(); ++b) {
            if (masks[b + 1][v]) {
                ++hits;
                ++r.per_branch[b];
            }
        }
        if (hits > 0) ++r.covered_count;
        if (hits >= 2 && axis.mode == AxisMode::disjoint) r.violations.push_back(g.id_at(v));
    }
    // The owning class is eligible even when the graph has never seen it.
    if (!g.index_of(axis.subject)) {
        r.eligible_count = 1;
        for (std::size_t b = 0; b < axis.branches.size(); ++b) {
            if (axis.branches[b] == axis.subject) {
                ++r.per_branch[b];
                r.covered_count = 1;
            }
        }
    }
    r.coverage_ratio = r.eligible_count ? static_cast<double>(r.covered_count) / r.eligible_count : 0.0;
    return r;
}

std::vector<EntityId> disjointness_violations(const ClassGraph& g, const Axis& axis) {
    if (axis.mode != AxisMode::disjoint)
        throw NotDisjointAxis("axis " + axis.address() + " is a union of (overlapping), not a disjoint union");
    auto hits = branch_hit_counts(g, axis);
    std::vector<EntityId> out;
    for (ClassGraph::Index v = 0; v < g.node_count(); ++v)
        if (hits[v] >= 2 && g.is_class_index(v)) out.push_back(g.id_at(v));
    return out;
}

Histogram multiaxial_histogram(const ClassGraph& g, const std::vector<Axis>& axes) {
    if (axes.empty()) throw std::invalid_argument("multiaxial_histogram needs at least one axis");

    // Flatten every branch of every axis into one sweep list.
    std::vector<std::pair<std::size_t, EntityId>> sweeps;
    for (std::size_t a = 0; a < axes.size(); ++a)
        for (EntityId b : axes[a].branches) sweeps.emplace_back(a, b);
    std::vector<NodeMask> masks(sweeps.size());
    parallel_for(sweeps.size(), [&](std::size_t i) { masks[i] = g.descendants_mask(sweeps[i].second); });

    std::vector<std::size_t> typed(g.node_count(), 0);
    std::vector<std::uint8_t> on_axis(g.node_count(), 0);
    std::size_t i = 0;
    for (std::size_t a = 0; a < axes.size(); ++a) {
        std::fill(on_axis.begin(), on_axis.end(), 0);
        for (; i < sweeps.size() && sweeps[i].first == a; ++i)
            for (std::size_t v = 0; v < on_axis.size(); ++v) on_axis[v] |= masks[i][v];
        for (std::size_t v = 0; v < on_axis.size(); ++v) typed[v] += on_axis[v];
    }

    Histogram h;
    for (ClassGraph::Index v = 0; v < g.node_count(); ++v)
        if (g.is_class_index(v) && typed[v] > 0) ++h[typed[v]];
    return h;
}

}  // namespace axiscope
