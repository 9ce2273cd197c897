#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "axiscope/fixtures.hpp"
#include "axiscope/graph.hpp"
#include "support.hpp"

using namespace axiscope;
using testing::as_oracle;
using testing::sorted;

namespace {

const char* const fixtures[] = {"ent", "triangle", "faults", "beyond_root"};

std::pair<RankPolicy, oracle::Policy> policies[] = {
    {RankPolicy::truthy, oracle::Policy::truthy},
    {RankPolicy::include_deprecated, oracle::Policy::include_deprecated},
    {RankPolicy::all_ranks, oracle::Policy::all},
};

std::vector<std::string> names(const std::vector<EntityId>& ids) {
    std::vector<std::string> out;
    for (auto id : ids) out.push_back(to_string(id));
    return out;
}

/// Random graph that may contain cycles: forward edges from a random DAG
/// plus a few back edges.
std::string cyclic_graph(std::mt19937_64& rng, std::size_t nodes, std::size_t back_edges) {
    auto o = testing::random_ontology(rng, nodes, nodes * 2, 0);
    std::uniform_int_distribution<std::uint64_t> pick(1, nodes);
    for (std::size_t i = 0; i < back_edges; ++i) {
        auto a = pick(rng), b = pick(rng);
        if (a > b) std::swap(a, b);
        o.jsonl += testing::sub(a, b);
    }
    return o.jsonl;
}

}  // namespace

TEST_CASE("fixture graphs match the manifest") {
    for (const char* name : fixtures) {
        auto fx = load_fixture(name);
        auto kb = fx.load();
        for (auto [policy, _] : policies) {
            CAPTURE(name);
            CAPTURE(to_string(policy));
            std::string sfx = "." + std::string(policy == RankPolicy::all_ranks ? "all" : to_string(policy));
            if (sfx == ".include-deprecated") sfx = ".include_deprecated";
            auto g = build_class_graph(kb, policy);
            CHECK(g.class_count() == fx.expected("class_count" + sfx).get<std::size_t>());
            CHECK(g.edge_count() == fx.expected("edge_count" + sfx).get<std::size_t>());
            CHECK(subclasses_of(g, items::entity).size() == fx.expected("subclasses_of_root" + sfx).get<std::size_t>());
            CHECK(names(unconnected_classes(g, items::entity)) ==
                  fx.expected("unconnected" + sfx).get<std::vector<std::string>>());
            std::vector<std::vector<std::string>> cyc;
            for (auto& c : find_cycles(g).cycles) cyc.push_back(names(c));
            CHECK(cyc == fx.expected("cycles" + sfx).get<std::vector<std::vector<std::string>>>());
        }
    }
}

TEST_CASE("ENT structure") {
    auto g = build_class_graph(fixture_ent().load(), RankPolicy::truthy);
    CHECK(g.class_count() == 12);
    CHECK(g.edge_count() == 13);
    REQUIRE(g.root_candidates().size() == 1);
    CHECK(g.root_candidates()[0] == items::entity);
    CHECK(is_subclass_of(g, EntityId{5}, items::entity));
    CHECK(is_subclass_of(g, EntityId{5}, EntityId{5}));
    CHECK_FALSE(is_subclass_of(g, items::entity, EntityId{5}));
    CHECK(is_subclass_of(g, EntityId{424242}, EntityId{424242}));
    CHECK_FALSE(is_subclass_of(g, EntityId{424242}, items::entity));
    // deprecated painting ⊂ concrete only counts when deprecated ranks are kept
    CHECK_FALSE(is_subclass_of(g, EntityId{3305213}, EntityId{8205328}));
    auto gd = build_class_graph(fixture_ent().load(), RankPolicy::include_deprecated);
    CHECK(is_subclass_of(gd, EntityId{3305213}, EntityId{8205328}));
}

TEST_CASE("non-class parents are nodes but not classes") {
    auto g = build_class_graph(fixture_faults().load(), RankPolicy::truthy);
    auto z = fx::id(205);
    CHECK(g.index_of(z).has_value());
    CHECK_FALSE(g.is_class(z));
    CHECK(g.is_class(fx::id(204)));
}

TEST_CASE("reachability matches a per-pair DFS on random graphs") {
    std::mt19937_64 rng(2024);
    for (int round = 0; round < 30; ++round) {
        auto text = cyclic_graph(rng, 40, round % 3 == 0 ? 4 : 0);
        auto g = build_class_graph(testing::kb_from(text), RankPolicy::truthy);
        auto og = oracle::build_graph(testing::oracle_from(text), oracle::Policy::truthy);
        for (std::uint64_t a = 1; a <= 40; ++a)
            for (std::uint64_t b = 1; b <= 40; ++b)
                REQUIRE(is_subclass_of(g, EntityId{a}, EntityId{b}) ==
                        og.reaches(static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)));
        for (std::uint64_t r = 1; r <= 40; r += 7)
            CHECK(as_oracle(subclasses_of(g, EntityId{r})) == sorted(og.subclasses_of(r)));
    }
}

TEST_CASE("cycles match mutual reachability") {
    std::mt19937_64 rng(99);
    for (int round = 0; round < 40; ++round) {
        auto text = cyclic_graph(rng, 30, round % 6);
        auto g = build_class_graph(testing::kb_from(text), RankPolicy::all_ranks);
        auto og = oracle::build_graph(testing::oracle_from(text), oracle::Policy::all);
        std::vector<std::vector<std::int64_t>> got;
        for (auto& c : find_cycles(g).cycles) got.push_back(as_oracle(c));
        CHECK(got == og.cycles());
    }
}

TEST_CASE("self loops form a cycle") {
    auto g = build_class_graph(testing::kb_from(testing::sub(3, 3) + testing::sub(4, 3)), RankPolicy::truthy);
    auto r = find_cycles(g);
    REQUIRE(r.cycles.size() == 1);
    CHECK(r.cycles[0] == std::vector<EntityId>{EntityId{3}});
}

TEST_CASE("adding an edge never shrinks a closure") {
    std::mt19937_64 rng(5);
    for (int round = 0; round < 20; ++round) {
        auto o = testing::random_ontology(rng, 50, 70, 0);
        auto before = build_class_graph(testing::kb_from(o.jsonl), RankPolicy::truthy);
        std::uniform_int_distribution<std::uint64_t> pick(1, 50);
        auto extra = o.jsonl + testing::sub(pick(rng), pick(rng));
        auto after = build_class_graph(testing::kb_from(extra), RankPolicy::truthy);
        for (std::uint64_t r = 1; r <= 50; ++r) {
            auto a = subclasses_of(before, EntityId{r});
            auto b = subclasses_of(after, EntityId{r});
            CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
        }
    }
}

TEST_CASE("snapshot round-trip") {
    for (const char* name : fixtures) {
        auto g = build_class_graph(load_fixture(name).load(), RankPolicy::include_deprecated);
        std::stringstream buf;
        save_snapshot(g, buf);
        auto back = load_snapshot(buf);
        CHECK(back == g);
        CHECK(back.policy() == RankPolicy::include_deprecated);
    }
    std::stringstream bad("NOTAGRPH\x01");
    CHECK_THROWS_AS(load_snapshot(bad), SnapshotError);
    auto g = build_class_graph(fixture_ent().load(), RankPolicy::truthy);
    std::stringstream buf;
    save_snapshot(g, buf);
    std::string s = buf.str();
    std::stringstream truncated(s.substr(0, s.size() / 2));
    CHECK_THROWS_AS(load_snapshot(truncated), SnapshotError);
}

TEST_CASE("rank policy names") {
    CHECK(parse_rank_policy("truthy") == RankPolicy::truthy);
    CHECK(parse_rank_policy("include-deprecated") == RankPolicy::include_deprecated);
    CHECK(parse_rank_policy("all") == RankPolicy::all_ranks);
    CHECK(parse_rank_policy("all-ranks") == RankPolicy::all_ranks);
    CHECK_FALSE(parse_rank_policy("some"));
}

TEST_CASE("small graph examples") {
    auto only_p31 = testing::kb_from("{\"s\":\"Q1\",\"p\":\"P31\",\"o\":\"Q5\"}\n");
    CHECK(build_class_graph(only_p31, RankPolicy::truthy).class_count() == 0);

    auto root_only = testing::kb_from("{\"s\":\"Q35120\",\"p\":\"P279\",\"o\":null}\n");
    auto g = build_class_graph(root_only, RankPolicy::truthy);
    CHECK(g.classes() == std::vector<EntityId>{items::entity});
    CHECK(g.edge_count() == 0);

    auto two = build_class_graph(testing::kb_from(testing::sub(7, 8) + testing::sub(8, 7)), RankPolicy::truthy);
    auto c = find_cycles(two);
    REQUIRE(c.cycles.size() == 1);
    CHECK(c.cycles[0] == std::vector<EntityId>{EntityId{7}, EntityId{8}});

    CHECK(subclasses_of(g, EntityId{999}) == std::vector<EntityId>{EntityId{999}});
}

TEST_CASE("ENT plus an orphan chain") {
    auto fx = fixture_ent();
    std::ifstream in(fx.statements);
    std::stringstream text;
    text << in.rdbuf();
    auto kb = testing::kb_from(text.str() + testing::sub(77, 78) + testing::sub(78, 79, "normal") +
                               "{\"s\":\"Q79\",\"p\":\"P279\",\"o\":null}\n");
    auto g = build_class_graph(kb, RankPolicy::truthy);
    CHECK(unconnected_classes(g, items::entity) == std::vector<EntityId>{EntityId{77}, EntityId{78}, EntityId{79}});
    auto concrete = subclasses_of(build_class_graph(fx.load(), RankPolicy::truthy), EntityId{8205328});
    CHECK(names(concrete) == fx.expected("subclasses_of.Q8205328").get<std::vector<std::string>>());
}
