#pragma once
// Classification axes declared by qualified union statements:
//
//   subject  P2738 (disjoint union of) | P2737 (union of)  Q23766486
//            qualifiers: the branch classes
//
// Which qualifier property carries the branches is not fixed in the source
// data, so by default every entity-valued qualifier is a branch. Pass a
// qualifier allowlist to restrict that.

#include <cstddef>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "axiscope/graph.hpp"
#include "axiscope/model.hpp"

namespace axiscope {

enum class AxisMode : std::uint8_t { disjoint, overlapping };

std::string_view to_string(AxisMode m);

struct Axis {
    EntityId subject;
    AxisMode mode = AxisMode::disjoint;
    std::vector<EntityId> branches;  // ≥ 2, distinct, qualifier order
    Rank rank = Rank::normal;
    StatementKey statement_key;
    std::vector<std::string> references;
    /// 1-based position among the axes of `subject`, in statement order.
    std::size_t ordinal = 1;

    std::string address() const;  // "Q35120/3"

    friend bool operator==(const Axis&, const Axis&) = default;
};

struct AxisExtractionOptions {
    RankPolicy rank_policy = RankPolicy::include_deprecated;
    std::optional<std::set<PropertyId>> qualifier_allowlist;
};

struct AxisExtraction {
    std::vector<Axis> axes;          // statement order
    std::size_t skipped_too_few = 0;  // union statements with < 2 distinct branches
    std::size_t duplicate_branches = 0;  // repeated branch values collapsed
};

AxisExtraction extract_axes(const KnowledgeBase& kb, const AxisExtractionOptions& opts = {});

/// Items with more than one axis, by count descending then id ascending.
std::vector<std::pair<EntityId, std::size_t>> multi_union_items(const KnowledgeBase& kb,
                                                                const AxisExtractionOptions& opts = {});
/// Same grouping over an already extracted axis list.
std::vector<std::pair<EntityId, std::size_t>> multi_union_items(const std::vector<Axis>& axes);

class AxisLookupError : public Error {
public:
    using Error::Error;
};

/// Resolves "Q123" (only when Q123 carries exactly one axis) or "Q123/2".
const Axis& find_axis(const std::vector<Axis>& axes, std::string_view address);

/// {"subject":"Q35120","mode":"disjoint","branches":["Q…","Q…"],"rank":"deprecated"}
std::string axis_to_jsonl(const Axis& axis);
void export_axes_jsonl(const std::vector<Axis>& axes, std::ostream& out);

}  // namespace axiscope
