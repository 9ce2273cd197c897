#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "axiscope/fixtures.hpp"
#include "axiscope/infer.hpp"

using namespace axiscope;

namespace {

std::vector<std::string> names(const std::vector<EntityId>& ids) {
    std::vector<std::string> out;
    for (auto id : ids) out.push_back(to_string(id));
    return out;
}

std::vector<InferenceRule> ent_rules() {
    auto fx = fixture_ent();
    std::ifstream in(*fx.rules);
    return load_rules(in);
}

}  // namespace

TEST_CASE("rule parsing") {
    auto rules = ent_rules();
    REQUIRE(rules.size() == 3);
    CHECK(rules[0].condition_class == EntityId{5});
    CHECK_FALSE(rules[1].condition_class);
    CHECK(rules[1].property == PropertyId{462});

    std::istringstream bad("{\"p\":\"P1\",\"v\":\"Q1\",\"then\":\"Q2\"}\n\n{\"p\":\"P1\",\"v\":\"Q1\"}\n");
    try {
        load_rules(bad);
        FAIL("expected MalformedRule");
    } catch (const MalformedRule& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("inference matches the manifest") {
    auto fx = fixture_ent();
    auto kb = fx.load();
    auto g = build_class_graph(kb, RankPolicy::truthy);
    auto rules = ent_rules();
    auto per_rule = fx.expected("infer.instances_per_rule");
    for (std::size_t i = 0; i < rules.size(); ++i)
        CHECK(names(infer_instances(kb, g, rules[i])) == per_rule[i].get<std::vector<std::string>>());

    auto per_item = fx.expected("infer.classes_per_item");
    for (EntityId item : kb.items()) {
        auto r = infer_classes(kb, g, item, rules);
        auto key = to_string(item);
        if (per_item.contains(key)) CHECK(names(r.inferred) == per_item[key].get<std::vector<std::string>>());
        else CHECK(r.inferred.empty());
    }
}

TEST_CASE("deprecated values and unmet conditions do not fire") {
    auto kb = fixture_ent().load();
    auto g = build_class_graph(kb, RankPolicy::truthy);
    auto rules = ent_rules();
    CHECK(infer_classes(kb, g, fx::id(30), rules).inferred.empty());  // red only at deprecated rank
    CHECK(infer_classes(kb, g, fx::id(29), rules).inferred.empty());  // plumber robot, not human
    auto r = infer_classes(kb, g, fx::id(27), rules);
    CHECK(r.fired_rules == std::vector<std::size_t>{0});
}

TEST_CASE("the two query directions agree and nothing is stored") {
    for (const char* name : {"ent", "triangle", "faults", "beyond_root"}) {
        auto kb = load_fixture(name).load();
        auto g = build_class_graph(kb, RankPolicy::truthy);
        auto rules = ent_rules();
        auto before = kb.size();
        for (std::size_t i = 0; i < rules.size(); ++i) {
            auto inst = infer_instances(kb, g, rules[i]);
            for (EntityId item : kb.items()) {
                auto r = infer_classes(kb, g, item, {rules[i]});
                bool listed = std::binary_search(inst.begin(), inst.end(), item);
                CHECK(listed == !r.inferred.empty());
            }
        }
        CHECK(kb.size() == before);
    }
}

TEST_CASE("adding rules only adds inferences") {
    auto kb = fixture_ent().load();
    auto g = build_class_graph(kb, RankPolicy::truthy);
    auto rules = ent_rules();
    for (EntityId item : kb.items()) {
        std::vector<InferenceRule> prefix;
        std::vector<EntityId> last;
        for (auto& r : rules) {
            prefix.push_back(r);
            auto now = infer_classes(kb, g, item, prefix).inferred;
            CHECK(std::includes(now.begin(), now.end(), last.begin(), last.end()));
            last = now;
        }
    }
}

TEST_CASE("rule file and query edge cases") {
    std::istringstream empty("");
    CHECK(load_rules(empty).empty());
    auto kb = fixture_ent().load();
    auto g = build_class_graph(kb, RankPolicy::truthy);
    InferenceRule nowhere{std::nullopt, PropertyId{462}, EntityId{424242}, EntityId{1}};
    CHECK(infer_instances(kb, g, nowhere).empty());
    // red pencil is inferred to be a red object
    auto r = infer_classes(kb, g, fx::id(22), ent_rules());
    CHECK(r.inferred == std::vector<EntityId>{fx::id(11)});
    // no rule matches the root
    CHECK(infer_classes(kb, g, items::entity, ent_rules()).inferred.empty());
}
