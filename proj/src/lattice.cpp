#include "axiscope/lattice.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "axiscope/parallel.hpp"

namespace axiscope {

std::optional<std::size_t> Lattice::product_size(const std::vector<Axis>& axes) {
    std::size_t n = 1;
    for (const Axis& a : axes) {
        std::size_t k = a.branches.size();
        if (k != 0 && n > std::numeric_limits<std::size_t>::max() / k) return std::nullopt;
        n *= k;
    }
    return n;
}

LatticeNode Lattice::node(std::size_t index) const {
    LatticeNode out(axes_.size());
    for (std::size_t d = axes_.size(); d-- > 0;) {
        std::size_t k = axes_[d].branches.size();
        out[d] = index % k;
        index /= k;
    }
    return out;
}

std::size_t Lattice::index_of(const LatticeNode& node) const {
    std::size_t index = 0;
    for (std::size_t d = 0; d < axes_.size(); ++d) index = index * axes_[d].branches.size() + node[d];
    return index;
}

std::size_t Lattice::tabulated() const { return std::accumulate(occupancy_.begin(), occupancy_.end(), std::size_t{0}); }

Lattice lattice_from_counts(std::vector<Axis> axes, std::vector<std::size_t> occupancy, std::size_t ambiguous,
                            std::size_t uncovered) {
    auto size = Lattice::product_size(axes);
    if (axes.empty() || !size || *size != occupancy.size())
        throw std::invalid_argument("occupancy does not match the axis product");
    Lattice l;
    l.axes_ = std::move(axes);
    l.occupancy_ = std::move(occupancy);
    l.ambiguous_ = ambiguous;
    l.uncovered_ = uncovered;
    return l;
}

Lattice build_lattice(const ClassGraph& g, const std::vector<Axis>& axes, std::size_t cap) {
    if (axes.empty()) throw std::invalid_argument("a lattice needs at least one axis");
    auto size = Lattice::product_size(axes);
    if (!size || *size > cap) throw LatticeTooLarge(size.value_or(0), cap);

    Lattice l;
    l.axes_ = axes;
    l.occupancy_.assign(*size, 0);

    std::vector<EntityId> roots;
    for (const Axis& a : axes) roots.push_back(a.subject);
    for (const Axis& a : axes) roots.insert(roots.end(), a.branches.begin(), a.branches.end());
    std::vector<NodeMask> masks(roots.size());
    parallel_for(roots.size(), [&](std::size_t i) { masks[i] = g.descendants_mask(roots[i]); });

    LatticeNode coord(axes.size());
    for (ClassGraph::Index v = 0; v < g.node_count(); ++v) {
        bool eligible = true;
        bool is_subject = false;
        for (std::size_t d = 0; d < axes.size(); ++d) {
            eligible = eligible && masks[d][v];
            is_subject = is_subject || g.id_at(v) == axes[d].subject;
        }
        if (!eligible || !(g.is_class_index(v) || is_subject)) continue;

        bool ambiguous = false, uncovered = false;
        std::size_t m = axes.size();
        for (std::size_t d = 0; d < axes.size(); ++d) {
            std::size_t hits = 0;
            for (std::size_t b = 0; b < axes[d].branches.size(); ++b, ++m) {
                if (masks[m][v]) {
                    ++hits;
                    coord[d] = b;
                }
            }
            ambiguous = ambiguous || hits >= 2;
            uncovered = uncovered || hits == 0;
        }
        if (ambiguous) ++l.ambiguous_;
        else if (uncovered) ++l.uncovered_;
        else ++l.occupancy_[l.index_of(coord)];
    }
    return l;
}

std::vector<LatticeNode> missing_combinations(const Lattice& l) {
    std::vector<LatticeNode> out;
    for (std::size_t i = 0; i < l.node_count(); ++i)
        if (l.occupancy(i) == 0) out.push_back(l.node(i));
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> lattice_edges(const Lattice& l) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const auto& axes = l.axes();
    for (std::size_t i = 0; i < l.node_count(); ++i) {
        LatticeNode n = l.node(i);
        for (std::size_t d = 0; d < axes.size(); ++d) {
            LatticeNode m = n;
            for (std::size_t b = n[d] + 1; b < axes[d].branches.size(); ++b) {
                m[d] = b;
                out.emplace_back(i, l.index_of(m));
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    return out;
}

std::string branch_label(EntityId id, const LabelTable* labels) {
    if (labels) {
        if (auto it = labels->find(id); it != labels->end()) return it->second + " (" + to_string(id) + ")";
    }
    return to_string(id);
}

}  // namespace

std::string emit_dot(const Lattice& l, const LabelTable* labels) {
    std::ostringstream out;
    out << "digraph lattice {\n";
    out << "  graph [rankdir=TB];\n";
    out << "  node [shape=box, fontname=\"Helvetica\"];\n";
    out << "  edge [dir=none];\n";
    for (std::size_t i = 0; i < l.node_count(); ++i) {
        LatticeNode n = l.node(i);
        std::string label;
        for (std::size_t d = 0; d < n.size(); ++d) label += branch_label(l.axes()[d].branches[n[d]], labels) + "\n";
        label += "n=" + std::to_string(l.occupancy(i));
        out << "  n" << i << " [label=\"" << dot_escape(label) << "\"";
        if (l.occupancy(i) == 0) out << ", style=dashed";
        out << "];\n";
    }
    for (auto [a, b] : lattice_edges(l)) out << "  n" << a << " -> n" << b << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace axiscope
