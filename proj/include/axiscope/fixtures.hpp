#pragma once
// Bundled test ontologies. Each fixture is a Statement-JSONL file plus a
// manifest of expected values, regenerated by the brute-force oracle in
// tests/oracle. Fixture-only items use ids from Q990000000 upward; items
// that exist in Wikidata under a known id keep that id.
//
// The fixture directory is $AXISCOPE_FIXTURE_DIR when set, else the
// directory baked in at build time.

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "axiscope/ingest.hpp"
#include "axiscope/lattice.hpp"
#include "axiscope/model.hpp"

namespace axiscope {

struct Fixture {
    std::string name;
    std::filesystem::path statements;
    std::optional<std::filesystem::path> rules;
    std::filesystem::path labels;
    std::filesystem::path manifest_path;
    /// metric name → {"value": …, "source": "oracle" | "planted" | "published"}
    nlohmann::json manifest;

    const nlohmann::json& expected(const std::string& metric) const;
    KnowledgeBase load() const;
    LabelTable load_labels() const;
};

std::filesystem::path fixture_dir();

/// Root entity (Q35120) with seven axes (three deprecated) and the human /
/// painting case-study classes.
Fixture fixture_ent();
/// Triangle with two substantive axes and three redundant reformulations.
Fixture fixture_triangle();
/// One P279 cycle, one disjointness violator, one orphan chain.
Fixture fixture_faults();
/// Axes below the root: object, vehicle, dictionary.
Fixture fixture_beyond_root();

Fixture load_fixture(const std::string& name);

/// Reserved fixture ids.
namespace fx {
inline constexpr EntityId id(std::uint64_t n) { return EntityId{990'000'000 + n}; }
}  // namespace fx

}  // namespace axiscope
