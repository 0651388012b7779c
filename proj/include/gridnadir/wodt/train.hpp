#pragma once

#include "gridnadir/dataset/dataset.hpp"
#include "gridnadir/wodt/tree.hpp"

namespace gridnadir::wodt {

/// Z-score statistics over the dataset rows (>= 2 rows). Constant features
/// get stddev 1 (they standardize to 0 and stay recoverable).
Standardization standardize(const dataset::Dataset& ds);

/// Dataset rows as a standardized matrix plus the 0/1 label vector.
void to_matrix(const dataset::Dataset& ds, const Standardization& stats, Eigen::MatrixXd& X,
               Eigen::VectorXi& y);

struct SplitResult {
    Vector7d a = Vector7d::Zero();
    double objective = 0.0;
    bool warning = false;  // no start produced a descent step
};

/// Exact best single-feature threshold under hard mass-weighted entropy.
/// feature == -1 when no boundary exists (all rows identical).
struct AxisSplit {
    int feature = -1;
    double threshold = 0.0;
    double entropy = 0.0;  // total child entropy, bits
};

AxisSplit best_axis_split(const Eigen::MatrixXd& X, const Eigen::VectorXi& y);

/// Multi-start quasi-Newton minimization of the weighted-entropy objective.
/// Starts: the best axis-aligned information-gain threshold (as a hyperplane
/// at a few sharpness scales), a logistic-regression direction, and
/// config.random_starts random directions. Returns the best final point.
SplitResult optimize_split(const Eigen::MatrixXd& X, const Eigen::VectorXi& y,
                           const TrainConfig& config, std::uint64_t node_seed);

/// Recursive hard-partition training: rows descend by sign(a^T [z; 1]);
/// recursion stops at max_depth, purity_stop, or min_samples; an empty child
/// rejects the split and the node becomes a leaf.
ObliqueTree fit(const dataset::Dataset& ds, const TrainConfig& config);

Label predict(const ObliqueTree& tree, const FeatureVector& x);

/// Training-set accuracy of a fitted tree.
double accuracy(const ObliqueTree& tree, const dataset::Dataset& ds);

}  // namespace gridnadir::wodt
