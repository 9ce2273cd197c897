#pragma once
// Axis coverage over the class graph.
//
// Eligible classes for an axis are the subclasses of the axis's owning class
// (reflexive). A class is covered when it is a (reflexive) subclass of at
// least one branch. All counts are over distinct classes.
//
// Note: a literal reading of "eligible = subclass of one of the branches"
// would make every ratio 1. Measuring against the owning class's subtree is
// what reproduces the published abstract/concrete figure (about 4%).

#include <cstddef>
#include <map>
#include <vector>

#include "axiscope/axes.hpp"
#include "axiscope/graph.hpp"

namespace axiscope {

class NotDisjointAxis : public Error {
public:
    using Error::Error;
};

struct CoverageReport {
    Axis axis;
    std::size_t eligible_count = 0;
    std::size_t covered_count = 0;
    /// Parallel to axis.branches: eligible classes under each branch.
    std::vector<std::size_t> per_branch;
    /// Eligible classes under ≥ 2 branches. Always empty for overlapping axes.
    std::vector<EntityId> violations;
    double coverage_ratio = 0.0;
};

/// axis-count k → number of classes typed along exactly k axes (k ≥ 1).
using Histogram = std::map<std::size_t, std::size_t>;

/// Branches b of `axis` with is_subclass_of(c, b), in branch order.
std::vector<EntityId> branch_membership(const ClassGraph& g, const Axis& axis, EntityId c);

CoverageReport axis_coverage(const ClassGraph& g, const Axis& axis);

/// Classes of `g` under two or more branches, ascending. Throws
/// NotDisjointAxis for overlapping axes.
std::vector<EntityId> disjointness_violations(const ClassGraph& g, const Axis& axis);

Histogram multiaxial_histogram(const ClassGraph& g, const std::vector<Axis>& axes);

/// Per-node count of branches of `axis` that the node reaches. Branch sweeps
/// run in parallel; each is O(V + E).
std::vector<std::uint8_t> branch_hit_counts(const ClassGraph& g, const Axis& axis);

}  // namespace axiscope
