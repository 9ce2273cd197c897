#pragma once
// JSON and plain-text renderings of analysis results. Every document
// carries the tool version and the rank policies that produced it; the text
// tables print the same integers as the JSON.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "axiscope/axes.hpp"
#include "axiscope/graph.hpp"
#include "axiscope/infer.hpp"
#include "axiscope/ingest.hpp"
#include "axiscope/lattice.hpp"
#include "axiscope/metrics.hpp"
#include "axiscope/ortho.hpp"

namespace axiscope {

using ojson = nlohmann::ordered_json;

std::string_view version();

/// {"tool","version","command","rank_policy",["axis_rank_policy"]}
ojson report_header(std::string_view command, RankPolicy policy, std::optional<RankPolicy> axis_policy = {});

/// Loads "Q123<TAB>label" lines; blank lines and '#' comments skipped.
LabelTable load_labels(std::istream& in);
std::string display(EntityId id, const LabelTable* labels);

ojson to_json(const IngestReport& r);
ojson to_json(const Axis& a);
ojson to_json(const CoverageReport& r);
ojson to_json(const Histogram& h);
ojson to_json(const JointTable& t);
ojson to_json(const MIReport& r);
ojson to_json(const Lattice& l);
ojson to_json(const CycleReport& r);
ojson to_json(const InferenceRule& r);
ojson to_json(const InferenceResult& r);

/// A simple aligned text table.
class TextTable {
public:
    explicit TextTable(std::vector<std::string> header) : header_(std::move(header)) {}
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
    std::string render() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

std::string format_ratio(double v);

std::string text_axes(const std::vector<Axis>& axes, const LabelTable* labels);
std::string text_multi_union(const std::vector<std::pair<EntityId, std::size_t>>& rows, const LabelTable* labels);
std::string text_coverage(const CoverageReport& r, const LabelTable* labels);
std::string text_histogram(const Histogram& h, const std::vector<Axis>& axes);
std::string text_mi(const MIReport& r, const LabelTable* labels);
std::string text_lattice(const Lattice& l, const LabelTable* labels);
std::string text_inference(const InferenceResult& r, const LabelTable* labels);

}  // namespace axiscope
