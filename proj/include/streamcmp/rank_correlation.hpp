#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace streamcmp {

/// 1-based fractional ranks; tied values share the mean of their positions.
template <typename Derived>
Eigen::VectorXd midranks(const Eigen::DenseBase<Derived>& x) {
    const Eigen::Index n = x.size();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return x(a) < x(b); });
    Eigen::VectorXd ranks(n);
    for (Eigen::Index i = 0; i < n;) {
        Eigen::Index j = i;
        while (j + 1 < n && x(order[j + 1]) == x(order[i])) ++j;
        const double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (Eigen::Index t = i; t <= j; ++t) ranks(order[t]) = r;
        i = j + 1;
    }
    return ranks;
}

/// Kendall tau-b in O(n log n) (Knight's merge-sort count). Returns nullopt
/// when either sequence is constant or shorter than 2.
template <typename DerivedA, typename DerivedB>
std::optional<double> kendall_tau_b(const Eigen::DenseBase<DerivedA>& x, const Eigen::DenseBase<DerivedB>& y) {
    const auto n = static_cast<std::size_t>(x.size());
    if (n != static_cast<std::size_t>(y.size()) || n < 2) return std::nullopt;

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (x(a) != x(b)) return x(a) < x(b);
        return y(a) < y(b);
    });

    auto tie_pairs = [&](auto equal) {
        std::int64_t total = 0, run = 1;
        for (std::size_t i = 1; i < n; ++i) {
            if (equal(idx[i - 1], idx[i])) {
                ++run;
            } else {
                total += run * (run - 1) / 2;
                run = 1;
            }
        }
        return total + run * (run - 1) / 2;
    };
    const std::int64_t x_ties = tie_pairs([&](std::size_t a, std::size_t b) { return x(a) == x(b); });
    const std::int64_t joint_ties =
        tie_pairs([&](std::size_t a, std::size_t b) { return x(a) == x(b) && y(a) == y(b); });

    // Bottom-up merge sort by y, counting the exchanges (discordant pairs).
    std::int64_t swaps = 0;
    std::vector<std::size_t> buf(n);
    for (std::size_t width = 1; width < n; width *= 2) {
        for (std::size_t lo = 0; lo < n; lo += 2 * width) {
            const std::size_t mid = std::min(lo + width, n), hi = std::min(lo + 2 * width, n);
            std::size_t i = lo, j = mid, k = lo;
            while (i < mid && j < hi) {
                if (y(idx[j]) < y(idx[i])) {
                    swaps += static_cast<std::int64_t>(mid - i);
                    buf[k++] = idx[j++];
                } else {
                    buf[k++] = idx[i++];
                }
            }
            while (i < mid) buf[k++] = idx[i++];
            while (j < hi) buf[k++] = idx[j++];
        }
        std::swap(idx, buf);
    }
    const std::int64_t y_ties = tie_pairs([&](std::size_t a, std::size_t b) { return y(a) == y(b); });

    const std::int64_t total = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
    const double denom = std::sqrt(static_cast<double>(total - x_ties) * static_cast<double>(total - y_ties));
    if (denom == 0.0) return std::nullopt;
    const std::int64_t s = total - x_ties - y_ties + joint_ties - 2 * swaps;
    return std::clamp(static_cast<double>(s) / denom, -1.0, 1.0);
}

/// Spearman rho as the Pearson correlation of midranks.
template <typename DerivedA, typename DerivedB>
std::optional<double> spearman_rho(const Eigen::DenseBase<DerivedA>& x, const Eigen::DenseBase<DerivedB>& y) {
    if (x.size() != y.size() || x.size() < 2) return std::nullopt;
    Eigen::VectorXd rx = midranks(x);
    Eigen::VectorXd ry = midranks(y);
    rx.array() -= rx.mean();
    ry.array() -= ry.mean();
    const double denom = std::sqrt(rx.squaredNorm() * ry.squaredNorm());
    if (denom == 0.0) return std::nullopt;
    return std::clamp(rx.dot(ry) / denom, -1.0, 1.0);
}

/// Correlation strength labels, applied to |r|.
enum class StrengthBand { uncorrelated, weak, moderate, strong, perfect };

inline StrengthBand strength_band(double r) {
    const double a = std::abs(r);
    if (a <= 0.10) return StrengthBand::uncorrelated;
    if (a <= 0.40) return StrengthBand::weak;
    if (a <= 0.70) return StrengthBand::moderate;
    if (a <= 0.90) return StrengthBand::strong;
    return StrengthBand::perfect;
}

inline std::string_view to_string(StrengthBand b) {
    switch (b) {
        case StrengthBand::uncorrelated: return "uncorrelated";
        case StrengthBand::weak: return "weak";
        case StrengthBand::moderate: return "moderate";
        case StrengthBand::strong: return "strong";
        case StrengthBand::perfect: return "perfect";
    }
    return "?";
}

}  // namespace streamcmp
