#pragma once

#include <Eigen/Dense>

#include "gridnadir/wodt/tree.hpp"

namespace gridnadir::wodt {

/// Sigmoid-weighted split objective: every row joins the right child with
/// weight sigma(a^T [x; 1]) and the left child with the complement; the
/// objective is the weight-mass-scaled entropy sum W_L E_L + W_R E_R
/// (entropies in bits, 0 log 0 == 0). Continuous and differentiable in a.
struct SplitObjective {
    double value = 0.0;
    Vector7d gradient = Vector7d::Zero();
};

/// X holds standardized rows (n x 6); y holds 0/1 labels.
SplitObjective split_objective(const Eigen::MatrixXd& X, const Eigen::VectorXi& y,
                               const Vector7d& a);

/// Objective value only (cheaper inner loop for line searches).
double split_objective_value(const Eigen::MatrixXd& X, const Eigen::VectorXi& y,
                             const Vector7d& a);

}  // namespace gridnadir::wodt
