#include "streamcmp/partition_compare.hpp"

#include <algorithm>
#include <stdexcept>

namespace streamcmp {

namespace {

double choose2(std::size_t n) { return 0.5 * static_cast<double>(n) * static_cast<double>(n == 0 ? 0 : n - 1); }

int label_count(const std::vector<int>& v) { return v.empty() ? 0 : *std::max_element(v.begin(), v.end()) + 1; }

// Same blocks up to relabeling.
bool same_partition(const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> pq(label_count(p), -1), qp(label_count(q), -1);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (pq[p[i]] < 0) pq[p[i]] = q[i];
        if (qp[q[i]] < 0) qp[q[i]] = p[i];
        if (pq[p[i]] != q[i] || qp[q[i]] != p[i]) return false;
    }
    return true;
}

}  // namespace

Contingency contingency(const std::vector<int>& p, const std::vector<int>& q) {
    if (p.size() != q.size()) throw std::invalid_argument("contingency: labelings differ in length");
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] < 0 || q[i] < 0) throw std::invalid_argument("contingency: negative label");
    Contingency c;
    c.n = p.size();
    const int rows = label_count(p), cols = label_count(q);
    c.row_sums.assign(rows, 0);
    c.col_sums.assign(cols, 0);
    std::vector<std::pair<int, int>> keys(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        keys[i] = {p[i], q[i]};
        ++c.row_sums[p[i]];
        ++c.col_sums[q[i]];
    }
    std::sort(keys.begin(), keys.end());
    for (const auto& k : keys) {
        if (!c.cells.empty() && c.cells.back().row == k.first && c.cells.back().col == k.second)
            ++c.cells.back().count;
        else
            c.cells.push_back({k.first, k.second, 1});
    }
    return c;
}

std::optional<double> rand_index(const std::vector<int>& p, const std::vector<int>& q) {
    if (p.size() < 2) return std::nullopt;
    const auto c = contingency(p, q);
    double both = 0.0, in_p = 0.0, in_q = 0.0;
    for (const auto& cell : c.cells) both += choose2(cell.count);
    for (auto a : c.row_sums) in_p += choose2(a);
    for (auto b : c.col_sums) in_q += choose2(b);
    const double pairs = choose2(c.n);
    const double separated = pairs - in_p - in_q + both;
    return (both + separated) / pairs;
}

std::optional<double> adjusted_rand_index(const std::vector<int>& p, const std::vector<int>& q) {
    if (p.size() < 2) return std::nullopt;
    const auto c = contingency(p, q);
    double index = 0.0, sum_a = 0.0, sum_b = 0.0;
    for (const auto& cell : c.cells) index += choose2(cell.count);
    for (auto a : c.row_sums) sum_a += choose2(a);
    for (auto b : c.col_sums) sum_b += choose2(b);
    const double expected = sum_a * sum_b / choose2(c.n);
    const double max_index = 0.5 * (sum_a + sum_b);
    const double denom = max_index - expected;
    if (denom == 0.0) {
        if (same_partition(p, q)) return 1.0;
        return std::nullopt;
    }
    return (index - expected) / denom;
}

std::pair<std::vector<int>, std::vector<int>> restrict_to_common(const Partition& p, const Partition& q) {
    std::vector<int> lp, lq;
    // Both node lists are sorted; walk them together.
    std::size_t i = 0, j = 0;
    while (i < p.nodes.size() && j < q.nodes.size()) {
        if (p.nodes[i] < q.nodes[j])
            ++i;
        else if (q.nodes[j] < p.nodes[i])
            ++j;
        else {
            lp.push_back(p.cluster[i++]);
            lq.push_back(q.cluster[j++]);
        }
    }
    auto dense = [](std::vector<int>& v) {
        std::vector<int> map;
        int next = 0;
        for (int& x : v) {
            if (static_cast<std::size_t>(x) >= map.size()) map.resize(x + 1, -1);
            if (map[x] < 0) map[x] = next++;
            x = map[x];
        }
    };
    dense(lp);
    dense(lq);
    return {std::move(lp), std::move(lq)};
}

PairScore rand_index(const Partition& p, const Partition& q) {
    auto [lp, lq] = restrict_to_common(p, q);
    return {rand_index(lp, lq), lp.size()};
}

PairScore adjusted_rand_index(const Partition& p, const Partition& q) {
    auto [lp, lq] = restrict_to_common(p, q);
    return {adjusted_rand_index(lp, lq), lp.size()};
}

std::vector<std::size_t> top_cluster_sizes(const Partition& p, std::size_t limit) {
    if (limit == 0) throw std::invalid_argument("top_cluster_sizes: limit must be >= 1");
    std::vector<std::size_t> sizes(static_cast<std::size_t>(p.cluster_count()), 0);
    for (int c : p.cluster) ++sizes[static_cast<std::size_t>(c)];
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    if (sizes.size() > limit) sizes.resize(limit);
    return sizes;
}

PartitionComparison compare_partitions(const Partition& a, const Partition& b, std::size_t size_limit) {
    PartitionComparison out;
    auto [lp, lq] = restrict_to_common(a, b);
    out.common_node_count = lp.size();
    out.rand_index = rand_index(lp, lq);
    out.ari = adjusted_rand_index(lp, lq);
    out.top_sizes_a = top_cluster_sizes(a, size_limit);
    out.top_sizes_b = top_cluster_sizes(b, size_limit);
    return out;
}

}  // namespace streamcmp
