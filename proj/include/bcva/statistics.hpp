#pragma once

#include <span>

namespace bcva {

/// Kendall's rank correlation of paired samples without ties, O(n log n) (Knight's algorithm).
double empirical_kendall_tau(std::span<const double> x, std::span<const double> y);

}  // namespace bcva
