#include "axiscope/report.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <sstream>

#ifndef AXISCOPE_VERSION
#define AXISCOPE_VERSION "0.0.0"
#endif

namespace axiscope {

std::string_view version() { return AXISCOPE_VERSION; }

ojson report_header(std::string_view command, RankPolicy policy, std::optional<RankPolicy> axis_policy) {
    ojson j;
    j["tool"] = "axiscope";
    j["version"] = std::string(version());
    j["command"] = std::string(command);
    j["rank_policy"] = std::string(to_string(policy));
    if (axis_policy) j["axis_rank_policy"] = std::string(to_string(*axis_policy));
    return j;
}

LabelTable load_labels(std::istream& in) {
    LabelTable labels;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        auto id = try_parse_entity_id(std::string_view(line).substr(0, tab));
        if (tab == std::string::npos || !id)
            throw Error("labels line " + std::to_string(lineno) + ": expected 'Q<digits><TAB>label'");
        labels[*id] = line.substr(tab + 1);
    }
    return labels;
}

std::string display(EntityId id, const LabelTable* labels) {
    if (labels) {
        if (auto it = labels->find(id); it != labels->end()) return to_string(id) + " (" + it->second + ")";
    }
    return to_string(id);
}

namespace {

ojson ids(const std::vector<EntityId>& v) {
    ojson a = ojson::array();
    for (EntityId id : v) a.push_back(to_string(id));
    return a;
}

}  // namespace

ojson to_json(const IngestReport& r) {
    ojson j;
    j["lines_read"] = r.lines_read;
    j["statements_kept"] = r.statements_kept;
    j["statements_dropped"] = r.statements_dropped;
    j["malformed_lines"] = r.malformed_lines;
    if (r.first_error) j["first_error"] = {{"line", r.first_error->line}, {"message", r.first_error->message}};
    return j;
}

ojson to_json(const Axis& a) {
    ojson j;
    j["address"] = a.address();
    j["subject"] = to_string(a.subject);
    j["mode"] = std::string(to_string(a.mode));
    j["branches"] = ids(a.branches);
    j["rank"] = std::string(to_string(a.rank));
    j["references"] = a.references.size();
    return j;
}

ojson to_json(const CoverageReport& r) {
    ojson j;
    j["axis"] = to_json(r.axis);
    j["eligible_count"] = r.eligible_count;
    j["covered_count"] = r.covered_count;
    j["coverage_ratio"] = r.coverage_ratio;
    ojson per = ojson::array();
    for (std::size_t b = 0; b < r.per_branch.size(); ++b)
        per.push_back({{"branch", to_string(r.axis.branches[b])}, {"count", r.per_branch[b]}});
    j["per_branch"] = std::move(per);
    j["violation_count"] = r.violations.size();
    j["violations"] = ids(r.violations);
    return j;
}

ojson to_json(const Histogram& h) {
    ojson a = ojson::array();
    for (auto [k, n] : h) a.push_back({{"axes", k}, {"classes", n}});
    return a;
}

ojson to_json(const JointTable& t) {
    ojson j;
    j["axis_a"] = to_json(t.axis_a);
    j["axis_b"] = to_json(t.axis_b);
    ojson cells = ojson::array();
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t k = 0; k < t.cols(); ++k)
            cells.push_back({{"a", to_string(t.axis_a.branches[i])}, {"b", to_string(t.axis_b.branches[k])},
                             {"count", t.at(i, k)}});
    j["cells"] = std::move(cells);
    j["n"] = t.n;
    j["excluded_ambiguous"] = t.excluded_ambiguous;
    j["excluded_uncovered"] = t.excluded_uncovered;
    return j;
}

ojson to_json(const MIReport& r) {
    ojson j;
    j["table"] = to_json(r.table);
    j["h_a_bits"] = r.h_a;
    j["h_b_bits"] = r.h_b;
    j["mi_bits"] = r.mi_bits;
    j["nmi"] = r.nmi ? ojson(*r.nmi) : ojson(nullptr);
    return j;
}

ojson to_json(const Lattice& l) {
    ojson j;
    ojson axes = ojson::array();
    for (const Axis& a : l.axes()) axes.push_back(to_json(a));
    j["axes"] = std::move(axes);
    j["node_count"] = l.node_count();
    ojson nodes = ojson::array();
    for (std::size_t i = 0; i < l.node_count(); ++i) {
        auto n = l.node(i);
        std::vector<EntityId> tuple;
        for (std::size_t d = 0; d < n.size(); ++d) tuple.push_back(l.axes()[d].branches[n[d]]);
        nodes.push_back({{"branches", ids(tuple)}, {"occupancy", l.occupancy(i)}});
    }
    j["nodes"] = std::move(nodes);
    j["tabulated"] = l.tabulated();
    j["ambiguous_count"] = l.ambiguous_count();
    j["uncovered_count"] = l.uncovered_count();
    ojson missing = ojson::array();
    for (const LatticeNode& n : missing_combinations(l)) {
        std::vector<EntityId> tuple;
        for (std::size_t d = 0; d < n.size(); ++d) tuple.push_back(l.axes()[d].branches[n[d]]);
        missing.push_back(ids(tuple));
    }
    j["missing_count"] = missing.size();
    j["missing"] = std::move(missing);
    return j;
}

ojson to_json(const CycleReport& r) {
    ojson a = ojson::array();
    for (const auto& c : r.cycles) a.push_back(ids(c));
    return a;
}

ojson to_json(const InferenceRule& r) {
    ojson j;
    j["if_class"] = r.condition_class ? ojson(to_string(*r.condition_class)) : ojson(nullptr);
    j["p"] = to_string(r.property);
    j["v"] = to_string(r.value);
    j["then"] = to_string(r.inferred_class);
    return j;
}

ojson to_json(const InferenceResult& r) {
    ojson j;
    j["item"] = to_string(r.item);
    j["inferred"] = ids(r.inferred);
    j["fired_rules"] = r.fired_rules;
    return j;
}

std::string TextTable::render() const {
    std::vector<std::size_t> width(header_.size(), 0);
    auto widen = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
    };
    widen(header_);
    for (const auto& r : rows_) widen(r);

    std::ostringstream out;
    auto line = [&](const std::vector<std::string>& row) {
        std::string s;
        for (std::size_t i = 0; i < width.size(); ++i) {
            std::string cell = i < row.size() ? row[i] : "";
            s += cell;
            if (i + 1 < width.size()) s += std::string(width[i] - cell.size() + 2, ' ');
        }
        while (!s.empty() && s.back() == ' ') s.pop_back();
        out << s << '\n';
    };
    line(header_);
    std::vector<std::string> rule;
    for (auto w : width) rule.emplace_back(w, '-');
    line(rule);
    for (const auto& r : rows_) line(r);
    return out.str();
}

std::string format_ratio(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string text_axes(const std::vector<Axis>& axes, const LabelTable* labels) {
    TextTable t({"axis", "mode", "rank", "branches"});
    for (const Axis& a : axes) {
        std::string branches;
        for (EntityId b : a.branches) branches += (branches.empty() ? "" : ", ") + display(b, labels);
        t.add({a.address(), std::string(to_string(a.mode)), std::string(to_string(a.rank)), branches});
    }
    return t.render();
}

std::string text_multi_union(const std::vector<std::pair<EntityId, std::size_t>>& rows, const LabelTable* labels) {
    TextTable t({"item", "unions"});
    for (auto [id, n] : rows) t.add({display(id, labels), std::to_string(n)});
    return t.render();
}

std::string text_coverage(const CoverageReport& r, const LabelTable* labels) {
    std::ostringstream out;
    out << "axis " << r.axis.address() << " (" << to_string(r.axis.mode) << ", " << to_string(r.axis.rank)
        << ") under " << display(r.axis.subject, labels) << '\n';
    out << "eligible: " << r.eligible_count << '\n';
    out << "covered: " << r.covered_count << '\n';
    out << "coverage_ratio: " << format_ratio(r.coverage_ratio) << '\n';
    TextTable t({"branch", "classes"});
    for (std::size_t b = 0; b < r.per_branch.size(); ++b)
        t.add({display(r.axis.branches[b], labels), std::to_string(r.per_branch[b])});
    out << t.render();
    out << "violations: " << r.violations.size() << '\n';
    for (EntityId v : r.violations) out << "  " << display(v, labels) << '\n';
    return out.str();
}

std::string text_histogram(const Histogram& h, const std::vector<Axis>& axes) {
    std::ostringstream out;
    out << "axes:";
    for (const Axis& a : axes) out << ' ' << a.address();
    out << '\n';
    TextTable t({"axes", "classes"});
    for (auto [k, n] : h) t.add({std::to_string(k), std::to_string(n)});
    out << t.render();
    return out.str();
}

std::string text_mi(const MIReport& r, const LabelTable* labels) {
    const JointTable& t = r.table;
    std::ostringstream out;
    out << "axis_a: " << t.axis_a.address() << '\n' << "axis_b: " << t.axis_b.address() << '\n';
    std::vector<std::string> header{""};
    for (EntityId b : t.axis_b.branches) header.push_back(display(b, labels));
    TextTable tab(header);
    for (std::size_t i = 0; i < t.rows(); ++i) {
        std::vector<std::string> row{display(t.axis_a.branches[i], labels)};
        for (std::size_t k = 0; k < t.cols(); ++k) row.push_back(std::to_string(t.at(i, k)));
        tab.add(row);
    }
    out << tab.render();
    out << "n: " << t.n << '\n';
    out << "excluded_ambiguous: " << t.excluded_ambiguous << '\n';
    out << "excluded_uncovered: " << t.excluded_uncovered << '\n';
    out << "h_a_bits: " << format_ratio(r.h_a) << '\n';
    out << "h_b_bits: " << format_ratio(r.h_b) << '\n';
    out << "mi_bits: " << format_ratio(r.mi_bits) << '\n';
    out << "nmi: " << (r.nmi ? format_ratio(*r.nmi) : std::string("undefined")) << '\n';
    return out.str();
}

std::string text_lattice(const Lattice& l, const LabelTable* labels) {
    std::ostringstream out;
    out << "node_count: " << l.node_count() << '\n';
    std::vector<std::string> header;
    for (const Axis& a : l.axes()) header.push_back(a.address());
    header.push_back("occupancy");
    TextTable t(header);
    for (std::size_t i = 0; i < l.node_count(); ++i) {
        auto n = l.node(i);
        std::vector<std::string> row;
        for (std::size_t d = 0; d < n.size(); ++d) row.push_back(display(l.axes()[d].branches[n[d]], labels));
        row.push_back(std::to_string(l.occupancy(i)));
        t.add(row);
    }
    out << t.render();
    out << "tabulated: " << l.tabulated() << '\n';
    out << "ambiguous: " << l.ambiguous_count() << '\n';
    out << "uncovered: " << l.uncovered_count() << '\n';
    out << "missing: " << missing_combinations(l).size() << '\n';
    return out.str();
}

std::string text_inference(const InferenceResult& r, const LabelTable* labels) {
    std::ostringstream out;
    out << "item: " << display(r.item, labels) << '\n';
    out << "inferred: " << r.inferred.size() << '\n';
    for (EntityId c : r.inferred) out << "  " << display(c, labels) << '\n';
    out << "fired_rules:";
    for (std::size_t i : r.fired_rules) out << ' ' << i;
    out << '\n';
    return out.str();
}

}  // namespace axiscope
