// axiscope command-line front end.
//
// Exit codes: 0 success or clean, 1 operational error, 2 validation findings.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "axiscope/axes.hpp"
#include "axiscope/graph.hpp"
#include "axiscope/infer.hpp"
#include "axiscope/ingest.hpp"
#include "axiscope/io.hpp"
#include "axiscope/lattice.hpp"
#include "axiscope/metrics.hpp"
#include "axiscope/ortho.hpp"
#include "axiscope/report.hpp"

using namespace axiscope;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_findings = 2;

struct Globals {
    std::vector<std::string> inputs;
    std::string format = "jsonl";
    std::optional<std::string> ranks;
    std::optional<std::string> axis_ranks;
    std::string output = "text";
    std::string root = "Q35120";
    std::optional<std::string> labels_path;
    std::string on_malformed = "fail";
    std::vector<std::string> branch_qualifiers;
    std::string entity_prefix = "http://www.wikidata.org/entity/";
    std::string property_prefix = "http://www.wikidata.org/prop/direct/";
};

// Which regime a command's --ranks applies to when not given.
enum class Regime { axes, graph };

struct Session {
    const Globals& g;
    KnowledgeBase kb;
    IngestReport ingest;
    LabelTable labels;
    bool has_labels = false;
    RankPolicy graph_policy = RankPolicy::truthy;
    AxisExtractionOptions axis_opts;
    EntityId root;

    const LabelTable* label_ptr() const { return has_labels ? &labels : nullptr; }
    bool json() const { return g.output == "json"; }
};

RankPolicy policy_arg(const std::string& s) {
    auto p = parse_rank_policy(s);
    if (!p) throw Error("unknown rank policy '" + s + "'");
    return *p;
}

Session open_session(const Globals& g, Regime regime) {
    Session s{g, {}, {}, {}, false, RankPolicy::truthy, {}, parse_entity_id(g.root)};
    if (g.inputs.empty()) throw Error("no --input given");

    IngestOptions opts;
    opts.format = g.format == "ntriples" ? DumpFormat::ntriples : DumpFormat::jsonl;
    opts.on_malformed = g.on_malformed == "skip" ? OnMalformed::skip : OnMalformed::fail;
    opts.entity_prefix = g.entity_prefix;
    opts.property_prefix = g.property_prefix;
    KnowledgeBaseBuilder builder;
    for (const auto& path : g.inputs) {
        auto in = open_input(path);
        try {
            s.ingest += ingest_into(builder, *in, opts);
        } catch (const MalformedRecord& e) {
            throw Error(path + ": " + e.what());
        }
    }
    s.kb = std::move(builder).freeze();

    if (g.labels_path) {
        auto in = open_input(*g.labels_path);
        s.labels = load_labels(*in);
        s.has_labels = true;
    }

    if (regime == Regime::axes) {
        s.axis_opts.rank_policy = g.ranks ? policy_arg(*g.ranks) : RankPolicy::include_deprecated;
        s.graph_policy = RankPolicy::truthy;
    } else {
        s.graph_policy = g.ranks ? policy_arg(*g.ranks) : RankPolicy::truthy;
        s.axis_opts.rank_policy = RankPolicy::include_deprecated;
    }
    if (g.axis_ranks) s.axis_opts.rank_policy = policy_arg(*g.axis_ranks);
    if (!g.branch_qualifiers.empty()) {
        std::set<PropertyId> allow;
        for (const auto& p : g.branch_qualifiers) allow.insert(parse_property_id(p));
        s.axis_opts.qualifier_allowlist = std::move(allow);
    }
    return s;
}

ojson header(const Session& s, std::string_view command, Regime regime) {
    ojson j = regime == Regime::axes ? report_header(command, s.axis_opts.rank_policy)
                                     : report_header(command, s.graph_policy, s.axis_opts.rank_policy);
    j["root"] = to_string(s.root);
    j["ingest"] = to_json(s.ingest);
    return j;
}

void emit(const ojson& j) { std::cout << j.dump(2) << '\n'; }

std::vector<std::string> split_list(const std::vector<std::string>& raw) {
    std::vector<std::string> out;
    for (const auto& r : raw) {
        std::stringstream ss(r);
        for (std::string item; std::getline(ss, item, ',');)
            if (!item.empty()) out.push_back(item);
    }
    return out;
}

ojson id_list(const std::vector<EntityId>& v) {
    ojson a = ojson::array();
    for (EntityId id : v) a.push_back(to_string(id));
    return a;
}

// ---------------------------------------------------------------- commands

int cmd_validate(const Globals& g) {
    Session s = open_session(g, Regime::graph);
    ClassGraph graph = build_class_graph(s.kb, s.graph_policy);
    CycleReport cycles = find_cycles(graph);
    auto unconnected = unconnected_classes(graph, s.root);
    auto axes = extract_axes(s.kb, s.axis_opts).axes;

    std::size_t total_violations = 0;
    ojson per_axis = ojson::array();
    std::vector<std::pair<const Axis*, std::vector<EntityId>>> found;
    for (const Axis& a : axes) {
        if (a.mode != AxisMode::disjoint) continue;
        auto v = disjointness_violations(graph, a);
        total_violations += v.size();
        per_axis.push_back({{"axis", a.address()}, {"violation_count", v.size()}, {"violations", id_list(v)}});
        found.emplace_back(&a, std::move(v));
    }
    bool clean = cycles.empty() && unconnected.empty() && total_violations == 0;

    if (s.json()) {
        ojson j = header(s, "validate", Regime::graph);
        j["class_count"] = graph.class_count();
        j["edge_count"] = graph.edge_count();
        j["cycle_count"] = cycles.cycles.size();
        j["cycles"] = to_json(cycles);
        j["unconnected_count"] = unconnected.size();
        j["unconnected"] = id_list(unconnected);
        j["violation_count"] = total_violations;
        j["axes"] = std::move(per_axis);
        j["clean"] = clean;
        emit(j);
    } else {
        std::cout << "classes: " << graph.class_count() << '\n';
        std::cout << "edges: " << graph.edge_count() << '\n';
        std::cout << "cycles: " << cycles.cycles.size() << '\n';
        for (const auto& c : cycles.cycles) {
            std::cout << " ";
            for (EntityId id : c) std::cout << ' ' << display(id, s.label_ptr());
            std::cout << '\n';
        }
        std::cout << "unconnected: " << unconnected.size() << '\n';
        for (EntityId id : unconnected) std::cout << "  " << display(id, s.label_ptr()) << '\n';
        std::cout << "violations: " << total_violations << '\n';
        TextTable t({"axis", "violations"});
        for (auto& [a, v] : found) t.add({a->address(), std::to_string(v.size())});
        std::cout << t.render();
        for (auto& [a, v] : found)
            for (EntityId id : v) std::cout << "  " << a->address() << ": " << display(id, s.label_ptr()) << '\n';
        std::cout << (clean ? "clean" : "findings") << '\n';
    }
    return clean ? exit_ok : exit_findings;
}

int cmd_axes(const Globals& g, const std::optional<std::string>& export_path) {
    Session s = open_session(g, Regime::axes);
    AxisExtraction ex = extract_axes(s.kb, s.axis_opts);
    if (export_path) {
        std::ofstream out(*export_path);
        if (!out) throw IoError("cannot write " + *export_path);
        export_axes_jsonl(ex.axes, out);
    }
    if (s.json()) {
        ojson j = header(s, "axes", Regime::axes);
        j["axis_count"] = ex.axes.size();
        ojson list = ojson::array();
        for (const Axis& a : ex.axes) list.push_back(to_json(a));
        j["axes"] = std::move(list);
        j["skipped_too_few"] = ex.skipped_too_few;
        j["duplicate_branches"] = ex.duplicate_branches;
        emit(j);
    } else {
        std::cout << text_axes(ex.axes, s.label_ptr());
        std::cout << "axis_count: " << ex.axes.size() << '\n';
        std::cout << "skipped_too_few: " << ex.skipped_too_few << '\n';
        std::cout << "duplicate_branches: " << ex.duplicate_branches << '\n';
    }
    return exit_ok;
}

int cmd_multiunion(const Globals& g) {
    Session s = open_session(g, Regime::axes);
    auto rows = multi_union_items(extract_axes(s.kb, s.axis_opts).axes);
    if (s.json()) {
        ojson j = header(s, "multiunion", Regime::axes);
        ojson list = ojson::array();
        for (auto [id, n] : rows) list.push_back({{"item", to_string(id)}, {"count", n}});
        j["items"] = std::move(list);
        emit(j);
    } else {
        std::cout << text_multi_union(rows, s.label_ptr());
    }
    return exit_ok;
}

int cmd_coverage(const Globals& g, const std::vector<std::string>& addresses, bool all) {
    Session s = open_session(g, Regime::graph);
    auto axes = extract_axes(s.kb, s.axis_opts).axes;
    std::vector<Axis> chosen;
    if (all) chosen = axes;
    for (const auto& a : split_list(addresses)) chosen.push_back(find_axis(axes, a));
    if (chosen.empty()) throw Error("coverage needs --axis or --all");

    ClassGraph graph = build_class_graph(s.kb, s.graph_policy);
    std::vector<CoverageReport> reports;
    for (const Axis& a : chosen) reports.push_back(axis_coverage(graph, a));
    if (s.json()) {
        ojson j = header(s, "coverage", Regime::graph);
        ojson list = ojson::array();
        for (const auto& r : reports) list.push_back(to_json(r));
        j["reports"] = std::move(list);
        emit(j);
    } else {
        for (std::size_t i = 0; i < reports.size(); ++i) {
            if (i) std::cout << '\n';
            std::cout << text_coverage(reports[i], s.label_ptr());
        }
    }
    return exit_ok;
}

int cmd_histogram(const Globals& g, const std::vector<std::string>& addresses, bool autoselect,
                  const std::vector<std::string>& exclude) {
    Session s = open_session(g, Regime::graph);
    auto axes = extract_axes(s.kb, s.axis_opts).axes;
    std::vector<Axis> chosen;
    if (autoselect)
        for (const Axis& a : axes)
            if (a.subject == s.root) chosen.push_back(a);
    for (const auto& a : split_list(addresses)) chosen.push_back(find_axis(axes, a));
    for (const auto& x : split_list(exclude)) {
        const Axis& drop = find_axis(axes, x);
        std::erase_if(chosen, [&](const Axis& a) { return a.address() == drop.address(); });
    }
    if (chosen.empty()) throw Error("histogram needs at least one axis (--axes or --auto)");

    ClassGraph graph = build_class_graph(s.kb, s.graph_policy);
    Histogram h = multiaxial_histogram(graph, chosen);
    if (s.json()) {
        ojson j = header(s, "histogram", Regime::graph);
        ojson list = ojson::array();
        for (const Axis& a : chosen) list.push_back(a.address());
        j["axes"] = std::move(list);
        j["histogram"] = to_json(h);
        emit(j);
    } else {
        std::cout << text_histogram(h, chosen);
    }
    return exit_ok;
}

int cmd_mi(const Globals& g, const std::string& a, const std::string& b) {
    Session s = open_session(g, Regime::graph);
    auto axes = extract_axes(s.kb, s.axis_opts).axes;
    const Axis& axis_a = find_axis(axes, a);
    const Axis& axis_b = find_axis(axes, b);
    ClassGraph graph = build_class_graph(s.kb, s.graph_policy);
    MIReport r = mutual_information(joint_table(graph, axis_a, axis_b));
    if (s.json()) {
        ojson j = header(s, "mi", Regime::graph);
        j["result"] = to_json(r);
        emit(j);
    } else {
        std::cout << text_mi(r, s.label_ptr());
    }
    return exit_ok;
}

int cmd_lattice(const Globals& g, const std::vector<std::string>& addresses, const std::optional<std::string>& dot,
                std::size_t cap) {
    Session s = open_session(g, Regime::graph);
    auto axes = extract_axes(s.kb, s.axis_opts).axes;
    std::vector<Axis> chosen;
    for (const auto& a : split_list(addresses)) chosen.push_back(find_axis(axes, a));
    if (chosen.empty()) throw Error("lattice needs --axes");

    ClassGraph graph = build_class_graph(s.kb, s.graph_policy);
    Lattice l = build_lattice(graph, chosen, cap);
    if (dot) {
        std::ofstream out(*dot, std::ios::binary);
        if (!out) throw IoError("cannot write " + *dot);
        out << emit_dot(l, s.label_ptr());
    }
    if (s.json()) {
        ojson j = header(s, "lattice", Regime::graph);
        j["lattice"] = to_json(l);
        emit(j);
    } else {
        std::cout << text_lattice(l, s.label_ptr());
    }
    return exit_ok;
}

int cmd_infer(const Globals& g, const std::string& rules_path, const std::optional<std::string>& item,
              const std::optional<std::size_t>& rule_index) {
    Session s = open_session(g, Regime::graph);
    auto in = open_input(rules_path);
    auto rules = load_rules(*in);
    ClassGraph graph = build_class_graph(s.kb, s.graph_policy);

    if (item) {
        InferenceResult r = infer_classes(s.kb, graph, parse_entity_id(*item), rules);
        if (s.json()) {
            ojson j = header(s, "infer", Regime::graph);
            j["result"] = to_json(r);
            emit(j);
        } else {
            std::cout << text_inference(r, s.label_ptr());
        }
        return exit_ok;
    }

    std::vector<std::size_t> which;
    if (rule_index) {
        if (*rule_index >= rules.size())
            throw Error("rule index " + std::to_string(*rule_index) + " out of range (" + std::to_string(rules.size()) +
                        " rules)");
        which.push_back(*rule_index);
    } else {
        for (std::size_t i = 0; i < rules.size(); ++i) which.push_back(i);
    }

    ojson list = ojson::array();
    std::ostringstream text;
    for (std::size_t i : which) {
        auto inst = infer_instances(s.kb, graph, rules[i]);
        ojson r;
        r["rule_index"] = i;
        r["rule"] = to_json(rules[i]);
        r["instance_count"] = inst.size();
        r["instances"] = id_list(inst);
        list.push_back(std::move(r));
        text << "rule " << i << ": " << display(rules[i].inferred_class, s.label_ptr()) << '\n';
        text << "instances: " << inst.size() << '\n';
        for (EntityId id : inst) text << "  " << display(id, s.label_ptr()) << '\n';
    }
    if (s.json()) {
        ojson j = header(s, "infer", Regime::graph);
        j["rules"] = std::move(list);
        emit(j);
    } else {
        std::cout << text.str();
    }
    return exit_ok;
}

int cmd_export(const Globals& g, const std::optional<std::string>& out_path) {
    Session s = open_session(g, Regime::graph);
    if (out_path) {
        std::ofstream out(*out_path, std::ios::binary);
        if (!out) throw IoError("cannot write " + *out_path);
        export_jsonl(s.kb, out);
    } else {
        export_jsonl(s.kb, std::cout);
    }
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-axial structure analysis for polyhierarchical knowledge graphs", "axiscope"};
    app.set_version_flag("--version", std::string(version()));
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("-i,--input", g.inputs, "Statement file (JSONL or N-Triples, optionally gzip); repeatable")
        ->check(CLI::ExistingFile);
    app.add_option("--format", g.format, "Input format")->check(CLI::IsMember({"jsonl", "ntriples"}));
    app.add_option("--ranks", g.ranks, "Rank policy for the command's primary view")
        ->check(CLI::IsMember({"truthy", "include-deprecated", "all", "all-ranks"}));
    app.add_option("--axis-ranks", g.axis_ranks, "Rank policy for axis extraction in graph commands")
        ->check(CLI::IsMember({"truthy", "include-deprecated", "all", "all-ranks"}));
    app.add_option("--output", g.output, "Report format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--root", g.root, "Root class");
    app.add_option("--labels", g.labels_path, "TSV of id<TAB>label for display")->check(CLI::ExistingFile);
    app.add_option("--on-malformed", g.on_malformed, "Malformed input lines")->check(CLI::IsMember({"fail", "skip"}));
    app.add_option("--branch-qualifier", g.branch_qualifiers, "Only these qualifier properties name branches");
    app.add_option("--entity-prefix", g.entity_prefix, "Entity IRI prefix for N-Triples");
    app.add_option("--property-prefix", g.property_prefix, "Truthy property IRI prefix for N-Triples");

    auto* validate = app.add_subcommand("validate", "Cycles, unconnected classes, disjointness violations");

    auto* axes = app.add_subcommand("axes", "List classification axes");
    std::optional<std::string> axes_export;
    axes->add_option("--export", axes_export, "Write axes as JSONL");

    auto* multiunion = app.add_subcommand("multiunion", "Items carrying more than one axis");

    auto* coverage = app.add_subcommand("coverage", "Axis coverage and violations");
    std::vector<std::string> cov_axes;
    bool cov_all = false;
    coverage->add_option("--axis", cov_axes, "Axis address (Q… or Q…/N); repeatable");
    coverage->add_flag("--all", cov_all, "Every axis");

    auto* histogram = app.add_subcommand("histogram", "Multi-axial typing histogram");
    std::vector<std::string> hist_axes, hist_exclude;
    bool hist_auto = false;
    histogram->add_option("--axes", hist_axes, "Comma-separated axis addresses");
    histogram->add_flag("--auto", hist_auto, "All axes whose subject is the root");
    histogram->add_option("--exclude", hist_exclude, "Comma-separated axis addresses to drop");

    auto* mi = app.add_subcommand("mi", "Mutual information between two axes");
    std::string mi_a, mi_b;
    mi->add_option("--axis-a", mi_a, "First axis")->required();
    mi->add_option("--axis-b", mi_b, "Second axis")->required();

    auto* lattice = app.add_subcommand("lattice", "Product lattice of several axes");
    std::vector<std::string> lat_axes;
    std::optional<std::string> lat_dot;
    std::size_t lat_cap = default_lattice_cap;
    lattice->add_option("--axes", lat_axes, "Comma-separated axis addresses")->required();
    lattice->add_option("--dot", lat_dot, "Write Graphviz DOT");
    lattice->add_option("--max-nodes", lat_cap, "Refuse lattices larger than this")->check(CLI::PositiveNumber);

    auto* infer = app.add_subcommand("infer", "Query-time class inference");
    std::string infer_rules;
    std::optional<std::string> infer_item;
    std::optional<std::size_t> infer_rule;
    infer->add_option("--rules", infer_rules, "Rule JSONL")->required();
    auto* item_opt = infer->add_option("--item", infer_item, "Infer classes of one item");
    infer->add_option("--rule-index", infer_rule, "List instances of one rule")->excludes(item_opt);

    auto* exporter = app.add_subcommand("export", "Dump the loaded statements as JSONL");
    std::optional<std::string> export_out;
    exporter->add_option("--out", export_out, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_error;
    }

    try {
        if (*validate) return cmd_validate(g);
        if (*axes) return cmd_axes(g, axes_export);
        if (*multiunion) return cmd_multiunion(g);
        if (*coverage) return cmd_coverage(g, cov_axes, cov_all);
        if (*histogram) return cmd_histogram(g, hist_axes, hist_auto, hist_exclude);
        if (*mi) return cmd_mi(g, mi_a, mi_b);
        if (*lattice) return cmd_lattice(g, lat_axes, lat_dot, lat_cap);
        if (*infer) return cmd_infer(g, infer_rules, infer_item, infer_rule);
        if (*exporter) return cmd_export(g, export_out);
    } catch (const LatticeTooLarge& e) {
        std::cerr << "axiscope: " << e.what() << '\n';
        return exit_error;
    } catch (const std::exception& e) {
        std::cerr << "axiscope: " << e.what() << '\n';
        return exit_error;
    }
    return exit_error;
}
