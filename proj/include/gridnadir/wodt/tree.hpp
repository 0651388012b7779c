#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "gridnadir/dataset/dataset.hpp"

namespace gridnadir::wodt {

using Vector7d = Eigen::Matrix<double, 7, 1>;  // 6 feature weights + bias

using dataset::Label;

/// Per-feature z-score statistics; constant features keep stddev 1 so the
/// transform stays invertible.
struct Standardization {
    Vector6d mean = Vector6d::Zero();
    Vector6d stddev = Vector6d::Ones();

    Vector6d apply(const Vector6d& x) const { return (x - mean).cwiseQuotient(stddev); }
    Vector6d invert(const Vector6d& z) const { return z.cwiseProduct(stddev) + mean; }
};

/// Flat node pool; index 0 is the root. Split nodes route standardized,
/// bias-augmented features by sign: a^T [z; 1] >= 0 goes right.
struct Node {
    bool is_leaf = true;
    Vector7d coeffs = Vector7d::Zero();  // split nodes
    int left = -1;
    int right = -1;
    Label label = Label::secure;  // leaves
    double purity = 1.0;
    std::int64_t sample_count = 0;
};

struct TrainConfig {
    int max_depth = 3;
    double purity_stop = 0.995;
    int min_samples = 20;
    int random_starts = 8;
    int bfgs_max_iter = 200;
    double grad_tol = 1e-6;
    std::uint64_t seed = 0;
    int jobs = 1;
};

struct ObliqueTree {
    std::vector<Node> nodes;
    Standardization stats;
    TrainConfig config;
    int depth = 0;
    bool split_warning = false;  // some node kept a non-descended split point

    const Node& root() const { return nodes.front(); }
};

/// A secure leaf's polytope in ORIGINAL feature units: the intersection of
/// the path half-spaces, expressed as A x + b >= 0 elementwise. Row count
/// equals the leaf depth.
struct SecureRegion {
    Eigen::Matrix<double, Eigen::Dynamic, 6> A;
    Eigen::VectorXd b;
    int leaf_id = -1;

    bool contains(const Vector6d& x) const {
        return ((A * x + b).array() >= 0.0).all();
    }
};

}  // namespace gridnadir::wodt
