#pragma once
// Mutual information between two axes.
//
// The population is the classes eligible for both axes. A class under two
// or more branches of either axis is excluded as ambiguous; a class missing
// a branch on either axis is excluded as uncovered. Everything else lands in
// exactly one cell of the contingency table.

#include <cstddef>
#include <optional>
#include <vector>

#include "axiscope/axes.hpp"
#include "axiscope/graph.hpp"

namespace axiscope {

struct JointTable {
    Axis axis_a;
    Axis axis_b;
    /// Row-major |A.branches| × |B.branches| cell counts.
    std::vector<std::size_t> counts;
    std::size_t n = 0;
    std::size_t excluded_ambiguous = 0;
    std::size_t excluded_uncovered = 0;

    std::size_t rows() const { return axis_a.branches.size(); }
    std::size_t cols() const { return axis_b.branches.size(); }
    std::size_t at(std::size_t i, std::size_t j) const { return counts[i * cols() + j]; }
};

/// A bare table without axes, for property testing and external callers.
JointTable make_table(std::size_t rows, std::size_t cols, std::vector<std::size_t> counts);
JointTable transpose(const JointTable& t);

struct MIReport {
    JointTable table;
    double h_a = 0.0;  // bits
    double h_b = 0.0;
    double mi_bits = 0.0;
    /// mi / min(h_a, h_b); empty when n = 0 or min entropy = 0.
    std::optional<double> nmi;
};

JointTable joint_table(const ClassGraph& g, const Axis& a, const Axis& b);

MIReport mutual_information(const JointTable& t);

}  // namespace axiscope
