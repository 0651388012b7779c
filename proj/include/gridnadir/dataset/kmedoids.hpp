#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "gridnadir/aggregation.hpp"

namespace gridnadir::dataset {

/// PAM k-medoids on the rows of `points`: greedy BUILD initialization, then
/// SWAP passes until no improving exchange remains. Distances are Euclidean
/// on per-column z-scores (the coordinates differ by orders of magnitude).
/// Fully deterministic; ties break on the lowest index.
std::vector<int> kmedoids(const Eigen::MatrixXd& points, int k, std::uint64_t seed);

/// Convenience overload clustering (H, D_fast, D_slow) triples.
std::vector<int> kmedoids(const std::vector<EquivalentParams>& points, int k, std::uint64_t seed);

}  // namespace gridnadir::dataset
