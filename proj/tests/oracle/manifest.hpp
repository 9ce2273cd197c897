#pragma once
// Expected-value manifests for the bundled fixtures, computed entirely by the
// naive oracle. Entropies use 50-digit decimal arithmetic.

#include <cmath>
#include <string>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <json.hpp>

#include "naive.hpp"

namespace oracle {

using ojson = nlohmann::ordered_json;
using big = boost::multiprecision::cpp_dec_float_50;

inline std::string qid(Id id) { return "Q" + std::to_string(id); }

inline ojson ids(const std::set<Id>& s) {
    ojson out = ojson::array();
    for (Id id : s) out.push_back(qid(id));
    return out;
}

inline ojson ids(const std::vector<Id>& s) {
    ojson out = ojson::array();
    for (Id id : s) out.push_back(qid(id));
    return out;
}

struct MI {
    big h_a, h_b, mi;
};

inline big entropy(const std::vector<std::size_t>& marg, std::size_t n) {
    big h = 0;
    for (std::size_t c : marg)
        if (c) {
            big p = big(c) / big(n);
            h -= p * log(p) / log(big(2));
        }
    return h;
}

inline MI mutual_information(const std::vector<std::size_t>& counts, std::size_t rows, std::size_t cols) {
    std::size_t n = 0;
    std::vector<std::size_t> r(rows, 0), c(cols, 0);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            n += counts[i * cols + j];
            r[i] += counts[i * cols + j];
            c[j] += counts[i * cols + j];
        }
    MI out;
    if (n == 0) return out;
    out.h_a = entropy(r, n);
    out.h_b = entropy(c, n);
    // Independent formulation: H(A) + H(B) - H(A,B).
    out.mi = out.h_a + out.h_b - entropy(counts, n);
    return out;
}

class ManifestBuilder {
public:
    ojson doc = ojson::object();

    void put(const std::string& metric, ojson value, const std::string& source = "oracle") {
        doc[metric] = ojson{{"value", std::move(value)}, {"source", source}};
    }
};

inline std::vector<std::string> addresses(const std::vector<NaiveAxis>& axes) {
    std::map<Id, int> ord;
    std::vector<std::string> out;
    for (auto& a : axes) out.push_back(qid(a.subject) + "/" + std::to_string(++ord[a.subject]));
    return out;
}

inline ojson coverage_json(const Graph& g, const NaiveAxis& a) {
    auto c = coverage(g, a);
    ojson per = ojson::array();
    for (auto v : c.per_branch) per.push_back(v);
    return ojson{{"eligible", c.eligible}, {"covered", c.covered}, {"per_branch", per}, {"violations", ids(c.violations)}};
}

inline ojson histogram_json(const std::map<std::size_t, std::size_t>& h) {
    ojson out = ojson::object();
    for (auto [k, v] : h) out[std::to_string(k)] = v;
    return out;
}

inline ojson multi_union_json(const std::vector<NaiveAxis>& axes) {
    std::map<Id, std::size_t> count;
    for (auto& a : axes) ++count[a.subject];
    std::vector<std::pair<Id, std::size_t>> rows;
    for (auto [id, n] : count)
        if (n > 1) rows.emplace_back(id, n);
    std::stable_sort(rows.begin(), rows.end(), [](auto& x, auto& y) { return x.second > y.second; });
    ojson out = ojson::array();
    for (auto [id, n] : rows) out.push_back(ojson::array({qid(id), n}));
    return out;
}

inline void common_metrics(ManifestBuilder& m, const std::vector<Stmt>& st, Id root) {
    for (auto [pol, tag] : {std::pair{Policy::truthy, "truthy"}, std::pair{Policy::include_deprecated, "include_deprecated"},
                            std::pair{Policy::all, "all"}}) {
        Graph g = build_graph(st, pol);
        std::string sfx = std::string(".") + tag;
        m.put("class_count" + sfx, g.classes.size());
        m.put("edge_count" + sfx, g.edge_count());
        m.put("subclasses_of_root" + sfx, g.subclasses_of(root).size());
        m.put("unconnected" + sfx, ids(g.unconnected(root)));
        ojson cyc = ojson::array();
        for (auto& c : g.cycles()) cyc.push_back(ids(c));
        m.put("cycles" + sfx, cyc);
    }
    Graph g = build_graph(st, Policy::truthy);
    auto axes = extract_axes(st, Policy::include_deprecated);
    auto addr = addresses(axes);
    ojson list = ojson::array();
    for (std::size_t i = 0; i < axes.size(); ++i)
        list.push_back(ojson{{"address", addr[i]}, {"mode", axes[i].disjoint ? "disjoint" : "overlapping"},
                             {"branches", ids(axes[i].branches)}, {"rank", axes[i].rank}});
    m.put("axes", list);
    m.put("axes_truthy_count", extract_axes(st, Policy::truthy).size());
    for (std::size_t i = 0; i < axes.size(); ++i) m.put("coverage." + addr[i], coverage_json(g, axes[i]));
    m.put("histogram.all_axes", histogram_json(histogram(g, axes)));
}

inline ojson build_manifest(const std::string& dir, const std::string& name) {
    auto st = read_statements(dir + "/" + name + ".jsonl");
    const Id entity = 35120;
    ManifestBuilder m;
    common_metrics(m, st, entity);
    auto axes = extract_axes(st, Policy::include_deprecated);
    Graph g = build_graph(st, Policy::truthy);

    if (name == "ent") {
        std::size_t on_root = 0, deprecated = 0;
        for (auto& a : axes)
            if (a.subject == entity) {
                ++on_root;
                deprecated += a.rank == "deprecated";
            }
        m.put("multi_union", multi_union_json(axes), "published");
        m.put("root_axis_count", on_root, "published");
        m.put("root_deprecated_axis_count", deprecated, "published");
        m.put("subclasses_of.Q8205328", ids(g.subclasses_of(8205328)));
        std::vector<NaiveAxis> clean;
        for (auto& a : axes)
            if (a.rank != "deprecated") clean.push_back(a);
        m.put("histogram.non_deprecated", histogram_json(histogram(g, clean)));
        m.put("histogram.first_two", histogram_json(histogram(g, {axes[0], axes[1]})));

        auto rules = read_rules(dir + "/" + name + ".rules.jsonl");
        auto universe = items(st);
        ojson per_rule = ojson::array();
        for (auto& r : rules) {
            std::vector<Id> hit;
            for (Id it : universe)
                if (fires(st, g, r, it)) hit.push_back(it);
            per_rule.push_back(ids(hit));
        }
        m.put("infer.instances_per_rule", per_rule);
        ojson per_item = ojson::object();
        for (Id it : universe) {
            std::set<Id> inferred;
            for (auto& r : rules)
                if (fires(st, g, r, it)) inferred.insert(r.then);
            if (!inferred.empty()) per_item[qid(it)] = ids(inferred);
        }
        m.put("infer.classes_per_item", per_item);
        m.put("statement_count", st.size());
    } else if (name == "triangle") {
        m.put("axes_on_item", axes.size(), "published");
        auto t = joint(g, {axes[0], axes[1]});
        ojson counts = ojson::array();
        for (auto c : t.counts) counts.push_back(c);
        m.put("joint.1x2", ojson{{"rows", axes[0].branches.size()},
                                 {"cols", axes[1].branches.size()},
                                 {"counts", counts},
                                 {"n", t.n},
                                 {"excluded_ambiguous", t.ambiguous},
                                 {"excluded_uncovered", t.uncovered}});
        // (equilateral, right) and (equilateral, obtuse)
        m.put("joint.1x2.impossible_mass", t.counts[0] + t.counts[2], "published");
        auto mi = mutual_information(t.counts, axes[0].branches.size(), axes[1].branches.size());
        m.put("mi.1x2", ojson{{"h_a", mi.h_a.convert_to<double>()},
                              {"h_b", mi.h_b.convert_to<double>()},
                              {"mi_bits", mi.mi.convert_to<double>()},
                              {"nmi", (mi.mi / (mi.h_a < mi.h_b ? mi.h_a : mi.h_b)).convert_to<double>()}});
        auto occ = joint(g, {axes[0], axes[1]});
        m.put("lattice.1x2.missing", std::count(occ.counts.begin(), occ.counts.end(), 0));
    } else if (name == "faults") {
        m.put("planted.cycle_count", g.cycles().size(), "planted");
        std::size_t v = 0;
        for (auto& a : axes)
            if (a.disjoint) v += violations(g, a).size();
        m.put("planted.violation_count", v, "planted");
        m.put("planted.orphans", ids(g.unconnected(entity)), "planted");
    } else if (name == "beyond_root") {
        m.put("multi_union", multi_union_json(axes));
        for (Id s : {488383, 990000310, 990000320}) {
            ojson h = ojson::object();
            std::vector<NaiveAxis> own;
            for (auto& a : axes)
                if (a.subject == s) own.push_back(a);
            m.put("histogram." + qid(s), histogram_json(histogram(g, own)));
        }
    }
    return m.doc;
}

}  // namespace oracle
