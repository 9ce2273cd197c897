#include "axiscope/graph.hpp"

#include <algorithm>
#include <cstring>
#include <istream>
#include <ostream>

namespace axiscope {

std::string_view to_string(RankPolicy p) {
    switch (p) {
        case RankPolicy::truthy: return "truthy";
        case RankPolicy::include_deprecated: return "include-deprecated";
        case RankPolicy::all_ranks: return "all";
    }
    return "truthy";
}

std::optional<RankPolicy> parse_rank_policy(std::string_view s) noexcept {
    if (s == "truthy") return RankPolicy::truthy;
    if (s == "include-deprecated") return RankPolicy::include_deprecated;
    if (s == "all" || s == "all-ranks") return RankPolicy::all_ranks;
    return std::nullopt;
}

std::vector<const Statement*> select_by_policy(std::span<const Statement* const> group, RankPolicy policy) {
    if (policy == RankPolicy::all_ranks) return {group.begin(), group.end()};
    auto out = truthy_select(group);
    if (policy == RankPolicy::include_deprecated) {
        for (const Statement* s : group)
            if (s->rank == Rank::deprecated) out.push_back(s);
        std::sort(out.begin(), out.end(), [](auto* a, auto* b) { return a->key < b->key; });
    }
    return out;
}

std::optional<ClassGraph::Index> ClassGraph::index_of(EntityId id) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id);
    if (it == nodes_.end() || *it != id) return std::nullopt;
    return static_cast<Index>(it - nodes_.begin());
}

bool ClassGraph::is_class(EntityId id) const {
    auto i = index_of(id);
    return i && is_class_[*i];
}

std::vector<EntityId> ClassGraph::classes() const {
    std::vector<EntityId> out;
    out.reserve(class_count_);
    for (Index i = 0; i < nodes_.size(); ++i)
        if (is_class_[i]) out.push_back(nodes_[i]);
    return out;
}

std::vector<std::pair<EntityId, EntityId>> ClassGraph::edges() const {
    std::vector<std::pair<EntityId, EntityId>> out;
    out.reserve(parents_.size());
    for (Index i = 0; i < nodes_.size(); ++i)
        for (Index p : parents_of(i)) out.emplace_back(nodes_[i], nodes_[p]);
    return out;
}

void ClassGraph::link(std::vector<std::pair<Index, Index>> edges) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    const std::size_t n = nodes_.size();
    parent_off_.assign(n + 1, 0);
    child_off_.assign(n + 1, 0);
    for (auto [c, p] : edges) {
        ++parent_off_[c + 1];
        ++child_off_[p + 1];
    }
    for (std::size_t i = 0; i < n; ++i) {
        parent_off_[i + 1] += parent_off_[i];
        child_off_[i + 1] += child_off_[i];
    }
    parents_.resize(edges.size());
    children_.resize(edges.size());
    std::vector<std::uint32_t> fill(child_off_.begin(), child_off_.end() - 1);
    for (std::size_t k = 0; k < edges.size(); ++k) {
        auto [c, p] = edges[k];
        parents_[k] = p;  // edges are sorted by child, so this is already CSR order
        children_[fill[p]++] = c;
    }
}

ClassGraph build_class_graph(const KnowledgeBase& kb, RankPolicy policy) {
    ClassGraph g;
    g.policy_ = policy;

    std::vector<EntityId> classes;
    std::vector<std::pair<EntityId, EntityId>> raw_edges;
    kb.for_each_group(props::subclass_of, [&](EntityId subject, std::span<const Statement* const> group) {
        auto kept = select_by_policy(group, policy);
        if (kept.empty()) return;
        classes.push_back(subject);
        bool only_novalue = true;
        for (const Statement* s : kept) {
            if (!s->value.is_novalue()) only_novalue = false;
            if (auto parent = s->value.as_entity()) raw_edges.emplace_back(subject, *parent);
        }
        if (only_novalue) g.root_candidates_.push_back(subject);
    });

    g.nodes_ = classes;
    g.nodes_.reserve(classes.size() + raw_edges.size());
    for (const auto& e : raw_edges) g.nodes_.push_back(e.second);
    std::sort(g.nodes_.begin(), g.nodes_.end());
    g.nodes_.erase(std::unique(g.nodes_.begin(), g.nodes_.end()), g.nodes_.end());
    g.nodes_.shrink_to_fit();

    g.is_class_.assign(g.nodes_.size(), 0);
    for (EntityId c : classes) g.is_class_[*g.index_of(c)] = 1;
    g.class_count_ = classes.size();

    std::vector<std::pair<ClassGraph::Index, ClassGraph::Index>> edges;
    edges.reserve(raw_edges.size());
    for (auto [c, p] : raw_edges) edges.emplace_back(*g.index_of(c), *g.index_of(p));
    raw_edges.clear();
    raw_edges.shrink_to_fit();
    g.link(std::move(edges));
    return g;
}

NodeMask ClassGraph::descendants_mask(EntityId root) const {
    NodeMask mask(nodes_.size(), 0);
    auto r = index_of(root);
    if (!r) return mask;
    std::vector<Index> stack{*r};
    mask[*r] = 1;
    while (!stack.empty()) {
        Index v = stack.back();
        stack.pop_back();
        for (Index c : children_of(v)) {
            if (!mask[c]) {
                mask[c] = 1;
                stack.push_back(c);
            }
        }
    }
    return mask;
}

bool is_subclass_of(const ClassGraph& g, EntityId a, EntityId b) {
    if (a == b) return true;
    auto ai = g.index_of(a);
    auto bi = g.index_of(b);
    if (!ai || !bi) return false;
    std::vector<std::uint8_t> seen(g.node_count(), 0);
    std::vector<ClassGraph::Index> stack{*ai};
    seen[*ai] = 1;
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (auto p : g.parents_of(v)) {
            if (p == *bi) return true;
            if (!seen[p]) {
                seen[p] = 1;
                stack.push_back(p);
            }
        }
    }
    return false;
}

std::vector<EntityId> subclasses_of(const ClassGraph& g, EntityId root) {
    auto mask = g.descendants_mask(root);
    std::vector<EntityId> out;
    bool root_seen = false;
    for (ClassGraph::Index i = 0; i < g.node_count(); ++i) {
        if (!mask[i]) continue;
        EntityId id = g.id_at(i);
        if (g.is_class_index(i) || id == root) out.push_back(id);
        root_seen |= id == root;
    }
    if (!root_seen) out.insert(std::lower_bound(out.begin(), out.end(), root), root);
    return out;
}

std::vector<EntityId> unconnected_classes(const ClassGraph& g, EntityId root) {
    auto mask = g.descendants_mask(root);
    std::vector<EntityId> out;
    for (ClassGraph::Index i = 0; i < g.node_count(); ++i)
        if (g.is_class_index(i) && !mask[i]) out.push_back(g.id_at(i));
    return out;
}

CycleReport find_cycles(const ClassGraph& g) {
    using Index = ClassGraph::Index;
    constexpr Index unvisited = ~Index{0};
    const std::size_t n = g.node_count();

    // Iterative Tarjan over child -> parent edges.
    std::vector<Index> order(n, unvisited), low(n, 0);
    std::vector<std::uint8_t> on_stack(n, 0);
    std::vector<Index> scc_stack;
    struct Frame {
        Index v;
        std::uint32_t next_edge;
    };
    std::vector<Frame> call;
    Index counter = 0;
    CycleReport report;

    for (Index start = 0; start < n; ++start) {
        if (order[start] != unvisited) continue;
        call.push_back({start, 0});
        order[start] = low[start] = counter++;
        scc_stack.push_back(start);
        on_stack[start] = 1;

        while (!call.empty()) {
            Frame& f = call.back();
            auto parents = g.parents_of(f.v);
            if (f.next_edge < parents.size()) {
                Index w = parents[f.next_edge++];
                if (order[w] == unvisited) {
                    order[w] = low[w] = counter++;
                    scc_stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], order[w]);
                }
                continue;
            }
            Index v = f.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] != order[v]) continue;

            std::vector<EntityId> component;
            Index w;
            do {
                w = scc_stack.back();
                scc_stack.pop_back();
                on_stack[w] = 0;
                component.push_back(g.id_at(w));
            } while (w != v);
            bool self_loop = false;
            if (component.size() == 1) {
                auto ps = g.parents_of(v);
                self_loop = std::find(ps.begin(), ps.end(), v) != ps.end();
            }
            if (component.size() >= 2 || self_loop) {
                std::sort(component.begin(), component.end());
                report.cycles.push_back(std::move(component));
            }
        }
    }
    std::sort(report.cycles.begin(), report.cycles.end());
    return report;
}

namespace {

constexpr char snapshot_magic[8] = {'A', 'X', 'S', 'C', 'G', 'R', 'P', 'H'};
constexpr std::uint8_t snapshot_version = 1;

template <typename T>
void put(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void put_vec(std::ostream& out, const std::vector<T>& v) {
    put<std::uint64_t>(out, v.size());
    out.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(T)));
}

template <typename T>
T get(std::istream& in) {
    T v{};
    if (!in.read(reinterpret_cast<char*>(&v), sizeof(T))) throw SnapshotError("truncated graph snapshot");
    return v;
}

template <typename T>
std::vector<T> get_vec(std::istream& in, std::uint64_t limit) {
    auto n = get<std::uint64_t>(in);
    if (n > limit) throw SnapshotError("corrupt graph snapshot: implausible length");
    // Grow in chunks so a corrupt length fails on EOF rather than on allocation.
    constexpr std::uint64_t chunk = std::uint64_t{1} << 20;
    std::vector<T> v;
    while (v.size() < n) {
        std::size_t at = v.size();
        std::size_t take = static_cast<std::size_t>(std::min<std::uint64_t>(chunk, n - at));
        v.resize(at + take);
        if (!in.read(reinterpret_cast<char*>(v.data() + at), static_cast<std::streamsize>(take * sizeof(T))))
            throw SnapshotError("truncated graph snapshot");
    }
    return v;
}

}  // namespace

void save_snapshot(const ClassGraph& g, std::ostream& out) {
    out.write(snapshot_magic, sizeof snapshot_magic);
    put<std::uint8_t>(out, snapshot_version);
    put<std::uint8_t>(out, static_cast<std::uint8_t>(g.policy()));
    std::vector<std::uint64_t> ids;
    ids.reserve(g.node_count());
    for (EntityId id : g.nodes()) ids.push_back(id.value);
    put_vec(out, ids);
    std::vector<std::uint8_t> flags(g.node_count());
    for (ClassGraph::Index i = 0; i < g.node_count(); ++i) flags[i] = g.is_class_index(i);
    put_vec(out, flags);
    std::vector<std::uint32_t> parents;
    std::vector<std::uint32_t> offsets{0};
    for (ClassGraph::Index i = 0; i < g.node_count(); ++i) {
        for (auto p : g.parents_of(i)) parents.push_back(p);
        offsets.push_back(static_cast<std::uint32_t>(parents.size()));
    }
    put_vec(out, offsets);
    put_vec(out, parents);
    std::vector<std::uint64_t> roots;
    for (EntityId id : g.root_candidates()) roots.push_back(id.value);
    put_vec(out, roots);
    if (!out) throw SnapshotError("failed to write graph snapshot");
}

ClassGraph load_snapshot(std::istream& in) {
    char magic[sizeof snapshot_magic];
    if (!in.read(magic, sizeof magic) || std::memcmp(magic, snapshot_magic, sizeof magic) != 0)
        throw SnapshotError("not a graph snapshot (bad magic)");
    auto version = get<std::uint8_t>(in);
    if (version != snapshot_version)
        throw SnapshotError("unsupported graph snapshot version " + std::to_string(version));
    auto policy = get<std::uint8_t>(in);
    if (policy > static_cast<std::uint8_t>(RankPolicy::all_ranks)) throw SnapshotError("corrupt graph snapshot: policy");

    constexpr std::uint64_t limit = std::uint64_t{1} << 32;
    ClassGraph g;
    g.policy_ = static_cast<RankPolicy>(policy);
    for (auto v : get_vec<std::uint64_t>(in, limit)) g.nodes_.push_back(EntityId{v});
    g.is_class_ = get_vec<std::uint8_t>(in, limit);
    auto offsets = get_vec<std::uint32_t>(in, limit);
    auto parents = get_vec<std::uint32_t>(in, limit);
    for (auto v : get_vec<std::uint64_t>(in, limit)) g.root_candidates_.push_back(EntityId{v});

    const std::size_t n = g.nodes_.size();
    if (g.is_class_.size() != n || offsets.size() != n + 1 || offsets.back() != parents.size() ||
        !std::is_sorted(offsets.begin(), offsets.end()) ||
        std::adjacent_find(g.nodes_.begin(), g.nodes_.end(), std::greater_equal<>{}) != g.nodes_.end())
        throw SnapshotError("corrupt graph snapshot: inconsistent tables");
    g.class_count_ = static_cast<std::size_t>(std::count(g.is_class_.begin(), g.is_class_.end(), 1));

    std::vector<std::pair<ClassGraph::Index, ClassGraph::Index>> edges;
    edges.reserve(parents.size());
    for (ClassGraph::Index i = 0; i < n; ++i) {
        for (auto k = offsets[i]; k < offsets[i + 1]; ++k) {
            if (parents[k] >= n) throw SnapshotError("corrupt graph snapshot: edge target");
            edges.emplace_back(i, parents[k]);
        }
    }
    g.link(std::move(edges));
    return g;
}

}  // namespace axiscope
