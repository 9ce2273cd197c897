#include "axiscope/infer.hpp"

#include <algorithm>
#include <string>

#include <json.hpp>

namespace axiscope {

namespace {

EntityId rule_entity(const nlohmann::json& j, const char* key, std::size_t line) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string()) throw MalformedRule(line, std::string("missing string \"") + key + "\"");
    auto id = try_parse_entity_id(it->get_ref<const std::string&>());
    if (!id) throw MalformedRule(line, std::string("malformed entity id in \"") + key + "\"");
    return *id;
}

bool has_truthy_value(const KnowledgeBase& kb, EntityId item, PropertyId p, EntityId v) {
    for (const Statement* s : truthy_statements(kb, item, p))
        if (s->value.as_entity() == v) return true;
    return false;
}

bool meets_condition(const KnowledgeBase& kb, const ClassGraph& g, EntityId item, const InferenceRule& rule) {
    if (!rule.condition_class) return true;
    for (const Statement* s : truthy_statements(kb, item, props::instance_of)) {
        auto cls = s->value.as_entity();
        if (cls && is_subclass_of(g, *cls, *rule.condition_class)) return true;
    }
    return false;
}

}  // namespace

std::vector<InferenceRule> load_rules(std::istream& in) {
    std::vector<InferenceRule> rules;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) throw MalformedRule(lineno, "not a JSON object");

        InferenceRule r;
        if (auto c = j.find("if_class"); c != j.end() && !c->is_null()) r.condition_class = rule_entity(j, "if_class", lineno);
        auto p = j.find("p");
        if (p == j.end() || !p->is_string()) throw MalformedRule(lineno, "missing string \"p\"");
        auto pid = try_parse_property_id(p->get_ref<const std::string&>());
        if (!pid) throw MalformedRule(lineno, "malformed property id in \"p\"");
        r.property = *pid;
        r.value = rule_entity(j, "v", lineno);
        r.inferred_class = rule_entity(j, "then", lineno);
        rules.push_back(r);
    }
    if (in.bad()) throw Error("read failure in rule file");
    return rules;
}

InferenceResult infer_classes(const KnowledgeBase& kb, const ClassGraph& g, EntityId item,
                              const std::vector<InferenceRule>& rules) {
    InferenceResult r;
    r.item = item;
    for (std::size_t i = 0; i < rules.size(); ++i) {
        const auto& rule = rules[i];
        if (has_truthy_value(kb, item, rule.property, rule.value) && meets_condition(kb, g, item, rule)) {
            r.fired_rules.push_back(i);
            r.inferred.push_back(rule.inferred_class);
        }
    }
    std::sort(r.inferred.begin(), r.inferred.end());
    r.inferred.erase(std::unique(r.inferred.begin(), r.inferred.end()), r.inferred.end());
    return r;
}

std::vector<EntityId> infer_instances(const KnowledgeBase& kb, const ClassGraph& g, const InferenceRule& rule) {
    std::vector<EntityId> candidates;
    for (const Statement* s : kb.by_property_value(rule.property, rule.value)) candidates.push_back(s->subject);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::optional<NodeMask> under_condition;
    if (rule.condition_class) under_condition = g.descendants_mask(*rule.condition_class);

    std::vector<EntityId> out;
    for (EntityId item : candidates) {
        if (!has_truthy_value(kb, item, rule.property, rule.value)) continue;
        if (under_condition) {
            bool ok = false;
            for (const Statement* s : truthy_statements(kb, item, props::instance_of)) {
                auto cls = s->value.as_entity();
                if (!cls) continue;
                if (*cls == *rule.condition_class) ok = true;
                else if (auto idx = g.index_of(*cls)) ok = (*under_condition)[*idx] != 0;
                if (ok) break;
            }
            if (!ok) continue;
        }
        out.push_back(item);
    }
    return out;
}

}  // namespace axiscope
