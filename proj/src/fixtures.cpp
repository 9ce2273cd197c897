#include "axiscope/fixtures.hpp"

#include <cstdlib>
#include <fstream>

#include "axiscope/report.hpp"

#ifndef AXISCOPE_FIXTURE_DIR
#define AXISCOPE_FIXTURE_DIR "fixtures"
#endif

namespace axiscope {

std::filesystem::path fixture_dir() {
    if (const char* env = std::getenv("AXISCOPE_FIXTURE_DIR"); env && *env) return env;
    return AXISCOPE_FIXTURE_DIR;
}

const nlohmann::json& Fixture::expected(const std::string& metric) const {
    auto it = manifest.find(metric);
    if (it == manifest.end()) throw Error("fixture " + name + " has no manifest entry '" + metric + "'");
    return (*it)["value"];
}

KnowledgeBase Fixture::load() const {
    std::ifstream in(statements);
    if (!in) throw IoError("cannot open fixture " + statements.string());
    return ingest_jsonl(in).first;
}

LabelTable Fixture::load_labels() const {
    std::ifstream in(labels);
    if (!in) throw IoError("cannot open fixture labels " + labels.string());
    return axiscope::load_labels(in);
}

Fixture load_fixture(const std::string& name) {
    auto dir = fixture_dir();
    Fixture f;
    f.name = name;
    f.statements = dir / (name + ".jsonl");
    f.labels = dir / (name + ".labels.tsv");
    f.manifest_path = dir / (name + ".manifest.json");
    if (auto rules = dir / (name + ".rules.jsonl"); std::filesystem::exists(rules)) f.rules = rules;
    if (!std::filesystem::exists(f.statements)) throw IoError("no fixture named '" + name + "' in " + dir.string());

    if (std::ifstream m(f.manifest_path); m) {
        f.manifest = nlohmann::json::parse(m, nullptr, false);
        if (f.manifest.is_discarded()) throw Error("unreadable manifest " + f.manifest_path.string());
    } else {
        f.manifest = nlohmann::json::object();
    }
    return f;
}

Fixture fixture_ent() { return load_fixture("ent"); }
Fixture fixture_triangle() { return load_fixture("triangle"); }
Fixture fixture_faults() { return load_fixture("faults"); }
Fixture fixture_beyond_root() { return load_fixture("beyond_root"); }

}  // namespace axiscope
