#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace lunarbeam {

/// Pairwise (tree) sum in a fixed association order. Overwrites `values`.
/// The order depends only on the length, so results are reproducible
/// regardless of how the caller partitioned the work that produced them.
double pairwise_sum_inplace(std::span<double> values);

double pairwise_sum(std::span<const double> values);

std::complex<double> pairwise_sum(std::span<const std::complex<double>> values);

}  // namespace lunarbeam
