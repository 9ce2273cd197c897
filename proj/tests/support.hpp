#pragma once
// Shared helpers for the unit tests: random ontologies rendered as JSONL so
// that the library and the naive oracle read byte-identical input.

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "axiscope/axes.hpp"
#include "axiscope/graph.hpp"
#include "axiscope/ingest.hpp"
#include "naive.hpp"

namespace testing {

inline axiscope::KnowledgeBase kb_from(const std::string& jsonl) {
    std::istringstream in(jsonl);
    return axiscope::ingest_jsonl(in).first;
}

inline std::vector<oracle::Stmt> oracle_from(const std::string& jsonl) {
    std::istringstream in(jsonl);
    return oracle::read_statements(in);
}

inline std::string q(std::uint64_t n) { return "\"Q" + std::to_string(n) + "\""; }

inline std::string sub(std::uint64_t c, std::uint64_t p, const char* rank = "normal") {
    return "{\"s\":" + q(c) + ",\"p\":\"P279\",\"o\":" + q(p) + ",\"rank\":\"" + rank + "\"}\n";
}

inline std::string axis_line(std::uint64_t s, const std::vector<std::uint64_t>& branches, bool disjoint = true,
                             const char* rank = "normal") {
    std::string out = "{\"s\":" + q(s) + ",\"p\":\"" + (disjoint ? "P2738" : "P2737") +
                      "\",\"o\":\"Q23766486\",\"rank\":\"" + rank + "\",\"q\":[";
    for (std::size_t i = 0; i < branches.size(); ++i) out += (i ? "," : "") + std::string("[\"P11260\",") + q(branches[i]) + "]";
    return out + "]}\n";
}

struct RandomOntology {
    std::string jsonl;
    std::vector<std::uint64_t> ids;  // ids[0] is the root
};

/// A random DAG over ids 1..nodes (root 1), edges only from higher to lower
/// index so it stays acyclic, some deprecated edges, and a few random axes.
inline RandomOntology random_ontology(std::mt19937_64& rng, std::size_t nodes, std::size_t edges, std::size_t axes) {
    RandomOntology o;
    for (std::size_t i = 1; i <= nodes; ++i) o.ids.push_back(i);
    std::uniform_int_distribution<std::size_t> pick(0, nodes - 1);
    std::bernoulli_distribution deprecated(0.1), unparented(0.05);
    o.jsonl += "{\"s\":\"Q1\",\"p\":\"P279\",\"o\":null}\n";
    std::size_t made = 0;
    for (std::size_t i = 1; i < nodes && made < edges; ++i) {
        if (unparented(rng)) continue;  // may become an orphan
        std::uniform_int_distribution<std::size_t> lower(0, i - 1);
        o.jsonl += sub(o.ids[i], o.ids[lower(rng)]);
        ++made;
    }
    while (made < edges) {
        std::size_t a = pick(rng), b = pick(rng);
        if (a == b) continue;
        if (a < b) std::swap(a, b);
        o.jsonl += sub(o.ids[a], o.ids[b], deprecated(rng) ? "deprecated" : "normal");
        ++made;
    }
    std::uniform_int_distribution<std::size_t> width(2, 4);
    for (std::size_t k = 0; k < axes; ++k) {
        std::vector<std::uint64_t> br;
        std::size_t w = width(rng);
        while (br.size() < w) {
            auto b = o.ids[pick(rng)];
            if (std::find(br.begin(), br.end(), b) == br.end()) br.push_back(b);
        }
        o.jsonl += axis_line(o.ids[pick(rng) % std::max<std::size_t>(1, nodes / 4)], br, k % 3 != 2);
    }
    return o;
}

inline std::vector<std::int64_t> as_oracle(const std::vector<axiscope::EntityId>& v) {
    std::vector<std::int64_t> out;
    for (auto id : v) out.push_back(static_cast<std::int64_t>(id.value));
    return out;
}

template <class C>
std::vector<std::int64_t> sorted(const C& c) {
    std::vector<std::int64_t> out(c.begin(), c.end());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace testing
