#include "axiscope/model.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <tuple>

namespace axiscope {

namespace {

template <typename Int>
std::optional<Int> parse_prefixed(std::string_view text, char prefix) noexcept {
    if (text.size() < 2 || text.front() != prefix) return std::nullopt;
    std::string_view digits = text.substr(1);
    if (digits.front() == '0') return std::nullopt;  // rejects Q0 and leading zeros
    for (char c : digits) {
        if (c < '0' || c > '9') return std::nullopt;
    }
    Int out{};
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), out);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
    return out;
}

}  // namespace

std::optional<EntityId> try_parse_entity_id(std::string_view text) noexcept {
    if (auto v = parse_prefixed<std::uint64_t>(text, 'Q')) return EntityId{*v};
    return std::nullopt;
}

std::optional<PropertyId> try_parse_property_id(std::string_view text) noexcept {
    if (auto v = parse_prefixed<std::uint32_t>(text, 'P')) return PropertyId{*v};
    return std::nullopt;
}

EntityId parse_entity_id(std::string_view text) {
    if (auto id = try_parse_entity_id(text)) return *id;
    throw MalformedId("malformed entity id: '" + std::string(text) + "'");
}

PropertyId parse_property_id(std::string_view text) {
    if (auto id = try_parse_property_id(text)) return *id;
    throw MalformedId("malformed property id: '" + std::string(text) + "'");
}

std::string to_string(EntityId id) { return "Q" + std::to_string(id.value); }
std::string to_string(PropertyId id) { return "P" + std::to_string(id.value); }

std::string_view to_string(Rank r) {
    switch (r) {
        case Rank::preferred: return "preferred";
        case Rank::normal: return "normal";
        case Rank::deprecated: return "deprecated";
    }
    return "normal";
}

std::optional<Rank> parse_rank(std::string_view s) noexcept {
    if (s == "normal") return Rank::normal;
    if (s == "preferred") return Rank::preferred;
    if (s == "deprecated") return Rank::deprecated;
    return std::nullopt;
}

std::strong_ordering compare_content(const Statement& a, const Statement& b) {
    if (auto c = a.subject <=> b.subject; c != 0) return c;
    if (auto c = a.property <=> b.property; c != 0) return c;
    if (auto c = a.value <=> b.value; c != 0) return c;
    if (auto c = a.rank <=> b.rank; c != 0) return c;
    if (auto c = std::lexicographical_compare_three_way(a.qualifiers.begin(), a.qualifiers.end(),
                                                        b.qualifiers.begin(), b.qualifiers.end());
        c != 0)
        return c;
    return a.references <=> b.references;
}

bool same_content(const Statement& a, const Statement& b) { return compare_content(a, b) == 0; }

StatementKey KnowledgeBaseBuilder::add(EntityId subject, PropertyId property, Value value, Rank rank,
                                       std::vector<Qualifier> qualifiers, std::vector<std::string> references) {
    StatementKey key{statements_.size()};
    statements_.push_back(Statement{subject, property, std::move(value), rank, std::move(qualifiers),
                                    std::move(references), key});
    return key;
}

KnowledgeBase KnowledgeBaseBuilder::freeze() && {
    if (statements_.size() > std::numeric_limits<std::uint32_t>::max())
        throw Error("knowledge base exceeds 2^32 statements");

    KnowledgeBase kb;
    kb.statements_ = std::move(statements_);
    statements_.clear();
    const auto& st = kb.statements_;
    const auto n = static_cast<std::uint32_t>(st.size());

    kb.by_sp_.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) kb.by_sp_[i] = i;
    kb.by_ps_ = kb.by_sp_;
    // Keys equal indices, so a stable sort keeps key order within groups.
    std::stable_sort(kb.by_sp_.begin(), kb.by_sp_.end(), [&](std::uint32_t a, std::uint32_t b) {
        return std::tie(st[a].subject, st[a].property) < std::tie(st[b].subject, st[b].property);
    });
    std::stable_sort(kb.by_ps_.begin(), kb.by_ps_.end(), [&](std::uint32_t a, std::uint32_t b) {
        return std::tie(st[a].property, st[a].subject) < std::tie(st[b].property, st[b].subject);
    });

    for (std::uint32_t i = 0; i < n; ++i) {
        if (st[i].value.is_entity()) kb.by_pv_.push_back(i);
    }
    std::stable_sort(kb.by_pv_.begin(), kb.by_pv_.end(), [&](std::uint32_t a, std::uint32_t b) {
        return std::make_pair(st[a].property, st[a].value.entity()) <
               std::make_pair(st[b].property, st[b].value.entity());
    });

    kb.items_.reserve(n + kb.by_pv_.size());
    for (const auto& s : st) {
        kb.items_.push_back(s.subject);
        if (auto e = s.value.as_entity()) kb.items_.push_back(*e);
    }
    std::sort(kb.items_.begin(), kb.items_.end());
    kb.items_.erase(std::unique(kb.items_.begin(), kb.items_.end()), kb.items_.end());
    kb.items_.shrink_to_fit();
    return kb;
}

std::vector<const Statement*> KnowledgeBase::by_subject(EntityId subject) const {
    auto lo = std::partition_point(by_sp_.begin(), by_sp_.end(),
                                   [&](std::uint32_t i) { return statements_[i].subject < subject; });
    std::vector<const Statement*> out;
    for (auto it = lo; it != by_sp_.end() && statements_[*it].subject == subject; ++it)
        out.push_back(&statements_[*it]);
    std::sort(out.begin(), out.end(), [](auto* a, auto* b) { return a->key < b->key; });
    return out;
}

std::vector<const Statement*> KnowledgeBase::by_subject_property(EntityId subject, PropertyId property) const {
    auto key = std::make_pair(subject, property);
    auto lo = std::partition_point(by_sp_.begin(), by_sp_.end(), [&](std::uint32_t i) {
        return std::make_pair(statements_[i].subject, statements_[i].property) < key;
    });
    std::vector<const Statement*> out;
    for (auto it = lo; it != by_sp_.end() && statements_[*it].subject == subject &&
                       statements_[*it].property == property;
         ++it)
        out.push_back(&statements_[*it]);
    return out;
}

std::vector<const Statement*> KnowledgeBase::by_property_value(PropertyId property, EntityId value) const {
    auto key = std::make_pair(property, value);
    auto lo = std::partition_point(by_pv_.begin(), by_pv_.end(), [&](std::uint32_t i) {
        return std::make_pair(statements_[i].property, statements_[i].value.entity()) < key;
    });
    std::vector<const Statement*> out;
    for (auto it = lo; it != by_pv_.end() && statements_[*it].property == property &&
                       statements_[*it].value.entity() == value;
         ++it)
        out.push_back(&statements_[*it]);
    return out;
}

std::vector<const Statement*> KnowledgeBase::by_property(PropertyId property) const {
    auto lo = std::partition_point(by_ps_.begin(), by_ps_.end(),
                                   [&](std::uint32_t i) { return statements_[i].property < property; });
    std::vector<const Statement*> out;
    for (auto it = lo; it != by_ps_.end() && statements_[*it].property == property; ++it)
        out.push_back(&statements_[*it]);
    std::sort(out.begin(), out.end(), [](auto* a, auto* b) { return a->key < b->key; });
    return out;
}

bool KnowledgeBase::contains_item(EntityId id) const {
    return std::binary_search(items_.begin(), items_.end(), id);
}

void KnowledgeBase::for_each_group(
    PropertyId property, const std::function<void(EntityId, std::span<const Statement* const>)>& fn) const {
    auto it = std::partition_point(by_ps_.begin(), by_ps_.end(),
                                   [&](std::uint32_t i) { return statements_[i].property < property; });
    std::vector<const Statement*> group;
    while (it != by_ps_.end() && statements_[*it].property == property) {
        EntityId subject = statements_[*it].subject;
        group.clear();
        for (; it != by_ps_.end() && statements_[*it].property == property &&
               statements_[*it].subject == subject;
             ++it)
            group.push_back(&statements_[*it]);
        fn(subject, group);
    }
}

std::vector<const Statement*> truthy_select(std::span<const Statement* const> group) {
    bool any_preferred = std::any_of(group.begin(), group.end(),
                                     [](const Statement* s) { return s->rank == Rank::preferred; });
    Rank wanted = any_preferred ? Rank::preferred : Rank::normal;
    std::vector<const Statement*> out;
    for (const Statement* s : group)
        if (s->rank == wanted) out.push_back(s);
    return out;
}

std::vector<const Statement*> truthy_statements(const KnowledgeBase& kb, EntityId subject,
                                                PropertyId property) {
    return truthy_select(kb.by_subject_property(subject, property));
}

}  // namespace axiscope
