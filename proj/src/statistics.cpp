#include "bcva/statistics.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "bcva/errors.hpp"

namespace bcva {

namespace {

// Sorts v and returns the number of inversions it contained.
std::uint64_t sort_counting_inversions(std::vector<double>& v, std::vector<double>& scratch,
                                       std::size_t lo, std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::uint64_t inversions = sort_counting_inversions(v, scratch, lo, mid) +
                               sort_counting_inversions(v, scratch, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (v[j] < v[i]) {
            inversions += mid - i;
            scratch[k++] = v[j++];
        } else {
            scratch[k++] = v[i++];
        }
    }
    while (i < mid) scratch[k++] = v[i++];
    while (j < hi) scratch[k++] = v[j++];
    std::copy(scratch.begin() + lo, scratch.begin() + hi, v.begin() + lo);
    return inversions;
}

}  // namespace

double empirical_kendall_tau(std::span<const double> x, std::span<const double> y) {
    detail::require(x.size() == y.size() && x.size() >= 2, "kendall tau needs two equal samples");
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranked(n);
    for (std::size_t i = 0; i < n; ++i) ranked[i] = y[order[i]];
    std::vector<double> scratch(n);
    const std::uint64_t discordant = sort_counting_inversions(ranked, scratch, 0, n);
    const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    return 1.0 - 2.0 * static_cast<double>(discordant) / pairs;
}

}  // namespace bcva
