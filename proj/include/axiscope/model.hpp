#pragma once
// Core identifiers, values and statements shared by every analysis.
//
// A KnowledgeBase is filled by a single writer (KnowledgeBaseBuilder) and
// frozen on construction; afterwards it is read-only and safe to share.

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace axiscope {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MalformedId : public Error {
public:
    using Error::Error;
};

/// Item identifier, rendered as "Q" + digits.
struct EntityId {
    std::uint64_t value = 0;

    constexpr EntityId() = default;
    constexpr explicit EntityId(std::uint64_t v) : value(v) {}

    friend constexpr auto operator<=>(EntityId, EntityId) = default;
};

/// Property identifier, rendered as "P" + digits.
struct PropertyId {
    std::uint32_t value = 0;

    constexpr PropertyId() = default;
    constexpr explicit PropertyId(std::uint32_t v) : value(v) {}

    friend constexpr auto operator<=>(PropertyId, PropertyId) = default;
};

EntityId parse_entity_id(std::string_view text);
PropertyId parse_property_id(std::string_view text);
std::optional<EntityId> try_parse_entity_id(std::string_view text) noexcept;
std::optional<PropertyId> try_parse_property_id(std::string_view text) noexcept;
std::string to_string(EntityId id);
std::string to_string(PropertyId id);

namespace props {
inline constexpr PropertyId instance_of{31};
inline constexpr PropertyId subclass_of{279};
inline constexpr PropertyId union_of{2737};
inline constexpr PropertyId disjoint_union_of{2738};
}  // namespace props

namespace items {
inline constexpr EntityId entity{35120};
inline constexpr EntityId list_of_values_as_qualifiers{23766486};
}  // namespace items

struct NoValue {
    friend constexpr bool operator==(NoValue, NoValue) = default;
    friend constexpr auto operator<=>(NoValue, NoValue) = default;
};
struct SomeValue {
    friend constexpr bool operator==(SomeValue, SomeValue) = default;
    friend constexpr auto operator<=>(SomeValue, SomeValue) = default;
};

/// entity | text | novalue | somevalue. Times, quantities and other
/// datatypes are carried as opaque text.
class Value {
public:
    Value() : v_(NoValue{}) {}
    Value(EntityId id) : v_(id) {}  // NOLINT(implicit)
    static Value text(std::string s) { return Value(Storage(std::move(s))); }
    static Value novalue() { return Value(Storage(NoValue{})); }
    static Value somevalue() { return Value(Storage(SomeValue{})); }

    bool is_entity() const { return std::holds_alternative<EntityId>(v_); }
    bool is_text() const { return std::holds_alternative<std::string>(v_); }
    bool is_novalue() const { return std::holds_alternative<NoValue>(v_); }
    bool is_somevalue() const { return std::holds_alternative<SomeValue>(v_); }

    EntityId entity() const { return std::get<EntityId>(v_); }
    const std::string& text() const { return std::get<std::string>(v_); }
    std::optional<EntityId> as_entity() const {
        if (auto* e = std::get_if<EntityId>(&v_)) return *e;
        return std::nullopt;
    }

    friend bool operator==(const Value&, const Value&) = default;
    friend auto operator<=>(const Value& a, const Value& b) { return a.v_ <=> b.v_; }

private:
    using Storage = std::variant<EntityId, std::string, NoValue, SomeValue>;
    explicit Value(Storage s) : v_(std::move(s)) {}
    Storage v_;
};

enum class Rank : std::uint8_t { deprecated = 0, normal = 1, preferred = 2 };

std::string_view to_string(Rank r);
std::optional<Rank> parse_rank(std::string_view s) noexcept;

struct Qualifier {
    PropertyId property;
    Value value;

    friend bool operator==(const Qualifier&, const Qualifier&) = default;
    friend auto operator<=>(const Qualifier&, const Qualifier&) = default;
};

/// Opaque, unique within one KnowledgeBase; assigned in ingestion order.
struct StatementKey {
    std::uint64_t value = 0;
    friend constexpr auto operator<=>(StatementKey, StatementKey) = default;
};

struct Statement {
    EntityId subject;
    PropertyId property;
    Value value;
    Rank rank = Rank::normal;
    std::vector<Qualifier> qualifiers;
    /// Opaque reference blobs (serialized JSON), carried through unchanged.
    std::vector<std::string> references;
    StatementKey key;
};

/// Statement content without its key; used for multiset comparisons.
bool same_content(const Statement& a, const Statement& b);
std::strong_ordering compare_content(const Statement& a, const Statement& b);

class KnowledgeBase;

/// Single-writer accumulator. `freeze()` consumes the builder.
class KnowledgeBaseBuilder {
public:
    void reserve(std::size_t n) { statements_.reserve(n); }
    /// Assigns the next StatementKey and stores the statement.
    StatementKey add(EntityId subject, PropertyId property, Value value,
                     Rank rank = Rank::normal, std::vector<Qualifier> qualifiers = {},
                     std::vector<std::string> references = {});
    std::size_t size() const { return statements_.size(); }
    KnowledgeBase freeze() &&;

private:
    std::vector<Statement> statements_;
};

/// Immutable indexed statement store.
class KnowledgeBase {
public:
    KnowledgeBase() = default;

    std::span<const Statement> statements() const { return statements_; }
    std::size_t size() const { return statements_.size(); }

    /// All statements with this subject, in key order.
    std::vector<const Statement*> by_subject(EntityId subject) const;
    /// All statements for (subject, property), in key order.
    std::vector<const Statement*> by_subject_property(EntityId subject, PropertyId property) const;
    /// Statements with the given property whose value is the given entity, in key order.
    std::vector<const Statement*> by_property_value(PropertyId property, EntityId value) const;
    /// Every statement with the given property, in key order.
    std::vector<const Statement*> by_property(PropertyId property) const;

    /// Sorted, distinct ids appearing as subject or entity value.
    std::span<const EntityId> items() const { return items_; }
    bool contains_item(EntityId id) const;

    /// Calls fn(subject, property, statements) once per distinct (subject,
    /// property) group among statements with `property`, in subject order.
    void for_each_group(PropertyId property,
                        const std::function<void(EntityId, std::span<const Statement* const>)>& fn) const;

private:
    friend class KnowledgeBaseBuilder;

    std::vector<Statement> statements_;  // key order
    std::vector<std::uint32_t> by_sp_;   // indices sorted by (subject, property, key)
    std::vector<std::uint32_t> by_pv_;   // entity-valued, sorted by (property, value, key)
    std::vector<std::uint32_t> by_ps_;   // indices sorted by (property, subject, key)
    std::vector<EntityId> items_;
};

/// Truthy view of (subject, property): preferred statements if any exist,
/// otherwise normal ones. Deprecated statements are never returned.
std::vector<const Statement*> truthy_statements(const KnowledgeBase& kb, EntityId subject,
                                                PropertyId property);

/// Same selection applied to an already grouped (subject, property) run.
std::vector<const Statement*> truthy_select(std::span<const Statement* const> group);

}  // namespace axiscope

template <>
struct std::hash<axiscope::EntityId> {
    std::size_t operator()(axiscope::EntityId id) const noexcept {
        return std::hash<std::uint64_t>{}(id.value);
    }
};
