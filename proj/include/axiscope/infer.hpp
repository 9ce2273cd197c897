#pragma once
// Query-time feature-to-class inference.
//
// A rule {if_class C, p P, v V, then K} fires for an item when the item has
// a truthy statement (item, P, V) and, if C is given, a truthy P31 value that
// is a subclass of C. Nothing is written back into the knowledge base and
// inferred classes never trigger further rules.
//
// Rule file: JSONL, one rule per line:
//   {"if_class":"Q5","p":"P106","v":"Q…","then":"Q…"}

#include <cstddef>
#include <istream>
#include <optional>
#include <vector>

#include "axiscope/graph.hpp"
#include "axiscope/model.hpp"

namespace axiscope {

struct InferenceRule {
    std::optional<EntityId> condition_class;
    PropertyId property;
    EntityId value;
    EntityId inferred_class;

    friend bool operator==(const InferenceRule&, const InferenceRule&) = default;
};

struct InferenceResult {
    EntityId item;
    std::vector<EntityId> inferred;    // ascending, distinct
    std::vector<std::size_t> fired_rules;  // ascending rule indices
};

class MalformedRule : public Error {
public:
    MalformedRule(std::size_t line, const std::string& msg)
        : Error("rule line " + std::to_string(line) + ": " + msg), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

std::vector<InferenceRule> load_rules(std::istream& in);

InferenceResult infer_classes(const KnowledgeBase& kb, const ClassGraph& g, EntityId item,
                              const std::vector<InferenceRule>& rules);

/// Items the rule fires for, ascending. Scans the (property, value) index.
std::vector<EntityId> infer_instances(const KnowledgeBase& kb, const ClassGraph& g, const InferenceRule& rule);

}  // namespace axiscope
