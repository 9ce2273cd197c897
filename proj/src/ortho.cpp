#include "axiscope/ortho.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "axiscope/metrics.hpp"
#include "axiscope/parallel.hpp"

namespace axiscope {

namespace {

Axis placeholder_axis(std::size_t branches) {
    Axis a;
    for (std::size_t i = 0; i < branches; ++i) a.branches.push_back(EntityId{i + 1});
    return a;
}

double entropy_bits(const std::vector<std::size_t>& marginal, double n) {
    double h = 0.0;
    for (std::size_t c : marginal) {
        if (c == 0) continue;
        double p = static_cast<double>(c) / n;
        h -= p * std::log2(p);
    }
    return h;
}

}  // namespace

JointTable make_table(std::size_t rows, std::size_t cols, std::vector<std::size_t> counts) {
    if (counts.size() != rows * cols) throw std::invalid_argument("contingency table size mismatch");
    JointTable t;
    t.axis_a = placeholder_axis(rows);
    t.axis_b = placeholder_axis(cols);
    t.counts = std::move(counts);
    for (std::size_t c : t.counts) t.n += c;
    return t;
}

JointTable transpose(const JointTable& t) {
    JointTable out = t;
    std::swap(out.axis_a, out.axis_b);
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t j = 0; j < t.cols(); ++j) out.counts[j * t.rows() + i] = t.at(i, j);
    return out;
}

JointTable joint_table(const ClassGraph& g, const Axis& a, const Axis& b) {
    JointTable t;
    t.axis_a = a;
    t.axis_b = b;
    t.counts.assign(a.branches.size() * b.branches.size(), 0);

    // Sweeps: eligibility of a, of b, then every branch of a, then of b.
    std::vector<EntityId> roots{a.subject, b.subject};
    roots.insert(roots.end(), a.branches.begin(), a.branches.end());
    roots.insert(roots.end(), b.branches.begin(), b.branches.end());
    std::vector<NodeMask> masks(roots.size());
    parallel_for(roots.size(), [&](std::size_t i) { masks[i] = g.descendants_mask(roots[i]); });
    const std::size_t a0 = 2, b0 = 2 + a.branches.size();

    for (ClassGraph::Index v = 0; v < g.node_count(); ++v) {
        if (!masks[0][v] || !masks[1][v]) continue;
        EntityId id = g.id_at(v);
        if (!g.is_class_index(v) && id != a.subject && id != b.subject) continue;

        std::size_t hits_a = 0, hits_b = 0, ia = 0, ib = 0;
        for (std::size_t i = 0; i < a.branches.size(); ++i)
            if (masks[a0 + i][v]) ++hits_a, ia = i;
        for (std::size_t j = 0; j < b.branches.size(); ++j)
            if (masks[b0 + j][v]) ++hits_b, ib = j;

        if (hits_a >= 2 || hits_b >= 2) ++t.excluded_ambiguous;
        else if (hits_a == 0 || hits_b == 0) ++t.excluded_uncovered;
        else {
            ++t.counts[ia * b.branches.size() + ib];
            ++t.n;
        }
    }
    return t;
}

MIReport mutual_information(const JointTable& t) {
    MIReport r;
    r.table = t;
    if (t.n == 0) return r;

    const double n = static_cast<double>(t.n);
    std::vector<std::size_t> row(t.rows(), 0), col(t.cols(), 0);
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t j = 0; j < t.cols(); ++j) {
            row[i] += t.at(i, j);
            col[j] += t.at(i, j);
        }
    r.h_a = entropy_bits(row, n);
    r.h_b = entropy_bits(col, n);

    double mi = 0.0;
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t j = 0; j < t.cols(); ++j) {
            std::size_t c = t.at(i, j);
            if (c == 0) continue;
            // p(i,j) / (p_i p_j) = c·n / (row_i · col_j)
            double ratio = (static_cast<double>(c) * n) / (static_cast<double>(row[i]) * static_cast<double>(col[j]));
            mi += (static_cast<double>(c) / n) * std::log2(ratio);
        }
    r.mi_bits = std::max(0.0, mi);

    double h_min = std::min(r.h_a, r.h_b);
    if (h_min > 0.0) r.nmi = std::clamp(r.mi_bits / h_min, 0.0, 1.0);
    return r;
}

}  // namespace axiscope
