#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gridnadir/sfr/units.hpp"

namespace gridnadir::sfr {

/// Strictly proper SISO transfer function b(s)/a(s), coefficients ascending
/// in s, a monic after normalize(). Gains carry MW per p.u. frequency.
struct TransferFunction {
    Eigen::VectorXd num;  // b_0 .. b_m
    Eigen::VectorXd den;  // a_0 .. a_n (a_n == 1 after normalize)

    void normalize();
    int order() const { return static_cast<int>(den.size()) - 1; }
    double dc_gain() const { return num(0) / den(0); }
};

TransferFunction thermal_tf(const ThermalUnitDyn& u);
TransferFunction hydro_tf(const HydroUnitDyn& u);
TransferFunction storage_tf(const StorageUnitDyn& u);

/// Closed-loop realization of one area: frequency state x(0) plus one
/// controllable-canonical block per responding unit, all driven by the swing
/// integrator.  x' = A x + B * p(t), delta_f_pu = x(0).
struct AreaStateSpace {
    Eigen::MatrixXd A;
    Eigen::VectorXd B;
    double inertia_mws = 0.0;  // 2 H_a
};

/// Builds the coupled state-space form. Offline thermal units contribute no
/// block (u_k = 0 removes both governor and inertia).
AreaStateSpace make_state_space(const AreaDynamicModel& model);

/// Polynomial product, ascending coefficients.
Eigen::VectorXd poly_mul(const Eigen::VectorXd& p, const Eigen::VectorXd& q);

}  // namespace gridnadir::sfr
