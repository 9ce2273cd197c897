#include "axiscope/axes.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

namespace axiscope {

std::string_view to_string(AxisMode m) { return m == AxisMode::disjoint ? "disjoint" : "overlapping"; }

std::string Axis::address() const { return to_string(subject) + "/" + std::to_string(ordinal); }

AxisExtraction extract_axes(const KnowledgeBase& kb, const AxisExtractionOptions& opts) {
    AxisExtraction out;
    std::vector<std::pair<const Statement*, AxisMode>> picked;

    for (auto [property, mode] : {std::pair{props::disjoint_union_of, AxisMode::disjoint},
                                  std::pair{props::union_of, AxisMode::overlapping}}) {
        kb.for_each_group(property, [&, mode = mode](EntityId, std::span<const Statement* const> group) {
            for (const Statement* s : select_by_policy(group, opts.rank_policy)) {
                if (s->value.as_entity() == items::list_of_values_as_qualifiers) picked.emplace_back(s, mode);
            }
        });
    }
    std::sort(picked.begin(), picked.end(), [](auto& a, auto& b) { return a.first->key < b.first->key; });

    std::map<EntityId, std::size_t> ordinals;
    for (auto [s, mode] : picked) {
        Axis axis;
        axis.subject = s->subject;
        axis.mode = mode;
        axis.rank = s->rank;
        axis.statement_key = s->key;
        axis.references = s->references;
        for (const Qualifier& q : s->qualifiers) {
            if (opts.qualifier_allowlist && !opts.qualifier_allowlist->contains(q.property)) continue;
            auto branch = q.value.as_entity();
            if (!branch) continue;
            if (std::find(axis.branches.begin(), axis.branches.end(), *branch) != axis.branches.end()) {
                ++out.duplicate_branches;
                continue;
            }
            axis.branches.push_back(*branch);
        }
        if (axis.branches.size() < 2) {
            ++out.skipped_too_few;
            continue;
        }
        axis.ordinal = ++ordinals[axis.subject];
        out.axes.push_back(std::move(axis));
    }
    return out;
}

std::vector<std::pair<EntityId, std::size_t>> multi_union_items(const std::vector<Axis>& axes) {
    std::map<EntityId, std::size_t> counts;
    for (const Axis& a : axes) ++counts[a.subject];
    std::vector<std::pair<EntityId, std::size_t>> out;
    for (auto [id, n] : counts)
        if (n > 1) out.emplace_back(id, n);
    std::stable_sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.second > b.second; });
    return out;
}

std::vector<std::pair<EntityId, std::size_t>> multi_union_items(const KnowledgeBase& kb,
                                                                const AxisExtractionOptions& opts) {
    return multi_union_items(extract_axes(kb, opts).axes);
}

const Axis& find_axis(const std::vector<Axis>& axes, std::string_view address) {
    auto slash = address.find('/');
    auto subject = try_parse_entity_id(address.substr(0, slash));
    if (!subject) throw AxisLookupError("malformed axis address '" + std::string(address) + "'");

    std::optional<std::size_t> ordinal;
    if (slash != std::string_view::npos) {
        std::size_t n = 0;
        auto digits = address.substr(slash + 1);
        if (digits.empty() || digits.size() > 9 ||
            !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw AxisLookupError("malformed axis ordinal in '" + std::string(address) + "'");
        for (char c : digits) n = n * 10 + static_cast<std::size_t>(c - '0');
        ordinal = n;
    }

    std::vector<const Axis*> matches;
    for (const Axis& a : axes)
        if (a.subject == *subject && (!ordinal || a.ordinal == *ordinal)) matches.push_back(&a);
    if (matches.empty()) throw AxisLookupError("unknown axis " + std::string(address));
    if (matches.size() > 1)
        throw AxisLookupError(to_string(*subject) + " carries " + std::to_string(matches.size()) +
                              " axes; address one as " + to_string(*subject) + "/N");
    return *matches.front();
}

std::string axis_to_jsonl(const Axis& axis) {
    nlohmann::ordered_json j;
    j["subject"] = to_string(axis.subject);
    j["mode"] = std::string(to_string(axis.mode));
    auto branches = nlohmann::ordered_json::array();
    for (EntityId b : axis.branches) branches.push_back(to_string(b));
    j["branches"] = std::move(branches);
    j["rank"] = std::string(to_string(axis.rank));
    return j.dump();
}

void export_axes_jsonl(const std::vector<Axis>& axes, std::ostream& out) {
    for (const Axis& a : axes) out << axis_to_jsonl(a) << '\n';
}

}  // namespace axiscope
