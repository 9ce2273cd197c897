#pragma once
// The `subclass of` (P279) graph.
//
// Classes are the items with at least one P279 statement selected by the
// rank policy. Nodes are classes plus every entity they point at, so a
// parent that has no P279 statement of its own is reachable but is not a
// class. Cycles are kept; each strongly connected component is mutually
// reachable.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "axiscope/model.hpp"

namespace axiscope {

enum class RankPolicy : std::uint8_t { truthy, include_deprecated, all_ranks };

std::string_view to_string(RankPolicy p);
std::optional<RankPolicy> parse_rank_policy(std::string_view s) noexcept;

/// Applies the policy to one (subject, property) group, preserving key order.
std::vector<const Statement*> select_by_policy(std::span<const Statement* const> group, RankPolicy policy);

/// Per-node flag vector, indexed like ClassGraph::nodes().
using NodeMask = std::vector<std::uint8_t>;

class ClassGraph {
public:
    using Index = std::uint32_t;

    ClassGraph() = default;

    RankPolicy policy() const { return policy_; }

    std::span<const EntityId> nodes() const { return nodes_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t class_count() const { return class_count_; }
    std::size_t edge_count() const { return parents_.size(); }

    std::optional<Index> index_of(EntityId id) const;
    EntityId id_at(Index i) const { return nodes_[i]; }
    bool is_class_index(Index i) const { return is_class_[i] != 0; }
    bool is_class(EntityId id) const;

    std::span<const Index> parents_of(Index i) const {
        return {parents_.data() + parent_off_[i], parents_.data() + parent_off_[i + 1]};
    }
    std::span<const Index> children_of(Index i) const {
        return {children_.data() + child_off_[i], children_.data() + child_off_[i + 1]};
    }

    /// Sorted class ids.
    std::vector<EntityId> classes() const;
    /// Sorted (child, parent) pairs.
    std::vector<std::pair<EntityId, EntityId>> edges() const;
    /// Classes whose only selected P279 values are novalue.
    std::span<const EntityId> root_candidates() const { return root_candidates_; }

    /// Nodes that reach `root` (reflexive). Empty mask entries for unknown root.
    /// O(V + E).
    NodeMask descendants_mask(EntityId root) const;

    friend bool operator==(const ClassGraph&, const ClassGraph&) = default;

private:
    friend ClassGraph build_class_graph(const KnowledgeBase&, RankPolicy);
    friend ClassGraph load_snapshot(std::istream&);

    void link(std::vector<std::pair<Index, Index>> edges);

    RankPolicy policy_ = RankPolicy::truthy;
    std::vector<EntityId> nodes_;  // sorted
    std::vector<std::uint8_t> is_class_;
    std::size_t class_count_ = 0;
    std::vector<std::uint32_t> parent_off_{0};
    std::vector<Index> parents_;
    std::vector<std::uint32_t> child_off_{0};
    std::vector<Index> children_;
    std::vector<EntityId> root_candidates_;
};

ClassGraph build_class_graph(const KnowledgeBase& kb, RankPolicy policy);

/// Reflexive-transitive subclass test. An unknown `a` is only a subclass of itself.
bool is_subclass_of(const ClassGraph& g, EntityId a, EntityId b);

/// Sorted {c in classes ∪ {root} : is_subclass_of(c, root)}.
std::vector<EntityId> subclasses_of(const ClassGraph& g, EntityId root);

/// Sorted classes that do not reach `root`.
std::vector<EntityId> unconnected_classes(const ClassGraph& g, EntityId root);

struct CycleReport {
    /// Each cycle is a strongly connected component (size ≥ 2) or a
    /// self-loop, ids ascending; cycles ordered by their smallest id.
    std::vector<std::vector<EntityId>> cycles;

    bool empty() const { return cycles.empty(); }
};

CycleReport find_cycles(const ClassGraph& g);

class SnapshotError : public Error {
public:
    using Error::Error;
};

/// Binary snapshot: "AXSCGRPH" magic, one version byte, then the graph.
void save_snapshot(const ClassGraph& g, std::ostream& out);
ClassGraph load_snapshot(std::istream& in);

}  // namespace axiscope
