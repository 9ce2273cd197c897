#include <doctest.h>

#include <random>

#include "axiscope/model.hpp"

using namespace axiscope;

TEST_CASE("entity ids round-trip through text") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::uint64_t> dist(1, std::numeric_limits<std::uint64_t>::max());
    for (int i = 0; i < 2000; ++i) {
        EntityId id{dist(rng)};
        CHECK(parse_entity_id(to_string(id)) == id);
    }
    CHECK(to_string(EntityId{35120}) == "Q35120");
    CHECK(to_string(PropertyId{279}) == "P279");
    CHECK(parse_property_id("P2738") == props::disjoint_union_of);
}

TEST_CASE("malformed ids are rejected") {
    for (const char* bad : {"", "Q", "Q0", "Q012", "P5", "q5", "Q5x", "Q-3", " Q5", "Q99999999999999999999999"})
        CHECK_THROWS_AS(parse_entity_id(bad), MalformedId);
    CHECK_FALSE(try_parse_property_id("Q5"));
    CHECK_FALSE(try_parse_property_id("P0"));
    CHECK(try_parse_entity_id("Q5") == EntityId{5});
}

TEST_CASE("ranks parse and order") {
    CHECK(parse_rank("preferred") == Rank::preferred);
    CHECK(parse_rank("deprecated") == Rank::deprecated);
    CHECK_FALSE(parse_rank("bogus"));
    CHECK(Rank::deprecated < Rank::normal);
    CHECK(Rank::normal < Rank::preferred);
}

namespace {

KnowledgeBase ranks_kb(std::initializer_list<Rank> ranks) {
    KnowledgeBaseBuilder b;
    std::uint64_t v = 100;
    for (Rank r : ranks) b.add(EntityId{1}, props::subclass_of, EntityId{v++}, r);
    return std::move(b).freeze();
}

std::vector<std::uint64_t> truthy_values(const KnowledgeBase& kb) {
    std::vector<std::uint64_t> out;
    for (auto* s : truthy_statements(kb, EntityId{1}, props::subclass_of)) out.push_back(s->value.entity().value);
    return out;
}

}  // namespace

TEST_CASE("truthy selection") {
    CHECK(truthy_values(ranks_kb({Rank::normal, Rank::deprecated, Rank::normal})) == std::vector<std::uint64_t>{100, 102});
    CHECK(truthy_values(ranks_kb({Rank::normal, Rank::preferred, Rank::deprecated})) == std::vector<std::uint64_t>{101});
    CHECK(truthy_values(ranks_kb({Rank::deprecated})).empty());
    CHECK(truthy_values(ranks_kb({})).empty());
}

TEST_CASE("knowledge base indexes") {
    KnowledgeBaseBuilder b;
    b.add(EntityId{2}, props::instance_of, EntityId{5});
    b.add(EntityId{1}, props::instance_of, EntityId{5});
    b.add(EntityId{1}, props::subclass_of, Value::novalue());
    b.add(EntityId{3}, PropertyId{1476}, Value::text("title"));
    auto kb = std::move(b).freeze();
    CHECK(kb.size() == 4);
    CHECK(kb.by_subject(EntityId{1}).size() == 2);
    auto pv = kb.by_property_value(props::instance_of, EntityId{5});
    REQUIRE(pv.size() == 2);
    CHECK(pv[0]->subject == EntityId{2});  // key order within a group
    CHECK(kb.by_property(props::instance_of).size() == 2);
    CHECK(kb.contains_item(EntityId{5}));
    CHECK(kb.contains_item(EntityId{3}));
    CHECK_FALSE(kb.contains_item(EntityId{4}));

    std::vector<std::uint64_t> groups;
    kb.for_each_group(props::instance_of, [&](EntityId s, auto span) {
        groups.push_back(s.value);
        CHECK(span.size() == 1);
    });
    CHECK(groups == std::vector<std::uint64_t>{1, 2});
}

TEST_CASE("content equality ignores the key") {
    Statement a{EntityId{1}, props::subclass_of, EntityId{2}, Rank::normal, {}, {}, StatementKey{0}};
    Statement b = a;
    b.key = StatementKey{9};
    CHECK(same_content(a, b));
    b.rank = Rank::preferred;
    CHECK_FALSE(same_content(a, b));
    CHECK(compare_content(a, b) == std::strong_ordering::less);
}

TEST_CASE("truthy selection invariants on random groups") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> size(0, 6), rank(0, 2);
    for (int round = 0; round < 500; ++round) {
        KnowledgeBaseBuilder b;
        int n = size(rng);
        bool live = false;
        for (int i = 0; i < n; ++i) {
            Rank r = static_cast<Rank>(rank(rng));
            live = live || r != Rank::deprecated;
            b.add(EntityId{1}, props::subclass_of, EntityId{static_cast<std::uint64_t>(10 + i)}, r);
        }
        auto kb = std::move(b).freeze();
        auto t = truthy_statements(kb, EntityId{1}, props::subclass_of);
        for (auto* s : t) CHECK(s->rank != Rank::deprecated);
        CHECK(t.size() <= kb.size());
        CHECK(t.empty() == !live);
    }
}

TEST_CASE("entity id parsing examples") {
    CHECK(parse_entity_id("Q35120") == items::entity);
    CHECK_THROWS_AS(parse_entity_id("Q0"), MalformedId);
    CHECK_THROWS_AS(parse_entity_id("P279"), MalformedId);
}
