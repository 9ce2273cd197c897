#pragma once
// Product lattice of several axes: one node per combination of branches.
//
// The population is the classes eligible for every axis. A class lands on a
// node when it sits under exactly one branch of each axis; classes under two
// branches of some axis are ambiguous, classes missing an axis are
// uncovered. Occupancy is exact (not cumulative over refinements).
//
// DOT edges join nodes that differ in exactly one coordinate.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "axiscope/axes.hpp"
#include "axiscope/graph.hpp"

namespace axiscope {

inline constexpr std::size_t default_lattice_cap = 10'000;

class LatticeTooLarge : public Error {
public:
    LatticeTooLarge(std::size_t nodes, std::size_t cap)
        : Error("lattice would have " + (nodes ? std::to_string(nodes) : std::string("more than 2^64")) +
                " nodes, above the cap of " + std::to_string(cap)),
          nodes_(nodes) {}
    /// Requested node count; 0 when it overflows.
    std::size_t nodes() const { return nodes_; }

private:
    std::size_t nodes_;
};

/// Branch index per axis.
using LatticeNode = std::vector<std::size_t>;

class Lattice {
public:
    const std::vector<Axis>& axes() const { return axes_; }
    std::size_t node_count() const { return occupancy_.size(); }
    /// Node at lexicographic position `index` (first axis most significant).
    LatticeNode node(std::size_t index) const;
    std::size_t index_of(const LatticeNode& node) const;
    std::size_t occupancy(std::size_t index) const { return occupancy_[index]; }
    std::size_t tabulated() const;
    std::size_t ambiguous_count() const { return ambiguous_; }
    std::size_t uncovered_count() const { return uncovered_; }
    std::size_t population() const { return tabulated() + ambiguous_ + uncovered_; }

    /// Node count of the product, or nullopt on overflow.
    static std::optional<std::size_t> product_size(const std::vector<Axis>& axes);

private:
    friend Lattice build_lattice(const ClassGraph&, const std::vector<Axis>&, std::size_t);
    friend Lattice lattice_from_counts(std::vector<Axis>, std::vector<std::size_t>, std::size_t, std::size_t);

    std::vector<Axis> axes_;
    std::vector<std::size_t> occupancy_;
    std::size_t ambiguous_ = 0;
    std::size_t uncovered_ = 0;
};

Lattice build_lattice(const ClassGraph& g, const std::vector<Axis>& axes, std::size_t cap = default_lattice_cap);

/// Assembles a lattice from known occupancy (lexicographic order).
Lattice lattice_from_counts(std::vector<Axis> axes, std::vector<std::size_t> occupancy, std::size_t ambiguous = 0,
                            std::size_t uncovered = 0);

/// Zero-occupancy nodes, lexicographic order.
std::vector<LatticeNode> missing_combinations(const Lattice& l);

/// Pairs (i, j), i < j, of node indices at Hamming distance 1, sorted.
std::vector<std::pair<std::size_t, std::size_t>> lattice_edges(const Lattice& l);

using LabelTable = std::map<EntityId, std::string>;

std::string emit_dot(const Lattice& l, const LabelTable* labels = nullptr);

}  // namespace axiscope
