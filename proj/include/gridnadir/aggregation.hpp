#pragma once

#include <Eigen/Dense>
#include <array>
#include <span>
#include <string>
#include <vector>

#include "gridnadir/sfr/units.hpp"

namespace gridnadir {

using Vector6d = Eigen::Matrix<double, 6, 1>;

/// The three equivalent aggregated parameters summarizing an area's
/// frequency-support capability: inertia, fast-acting droop (load damping,
/// HP turbine stages, hydro, storage) and slow-acting droop (LP stages).
struct EquivalentParams {
    double inertia = 0.0;  // H_a, MW*s
    double d_fast = 0.0;   // MW / p.u.
    double d_slow = 0.0;   // MW / p.u.
};

/// The fixed-order learning/embedding feature vector
///   [H_a, D_fast_a, D_slow_a, dP_EPC_a, dP_DLC_a, dP_D_a].
/// The order is frozen; dataset files record it in their header.
struct FeatureVector {
    Vector6d x = Vector6d::Zero();

    double& inertia() { return x(0); }
    double& d_fast() { return x(1); }
    double& d_slow() { return x(2); }
    double& dp_epc() { return x(3); }
    double& dp_dlc() { return x(4); }
    double& dp_d() { return x(5); }
    double inertia() const { return x(0); }
    double d_fast() const { return x(1); }
    double d_slow() const { return x(2); }
    double dp_epc() const { return x(3); }
    double dp_dlc() const { return x(4); }
    double dp_d() const { return x(5); }
};

inline constexpr std::array<const char*, 6> kFeatureNames = {"h",      "d_fast", "d_slow",
                                                             "dp_epc", "dp_dlc", "dp_d"};

std::string feature_order_string();

using Commitments = std::vector<bool>;

/// Equivalent aggregated parameters for one area. A non-empty `commitments`
/// overrides the per-unit committed flags of the thermal fleet (u_k); hydro
/// and storage are always responding.
EquivalentParams equivalent_params(std::span<const sfr::ThermalUnitDyn> thermal,
                                   std::span<const sfr::HydroUnitDyn> hydro,
                                   std::span<const sfr::StorageUnitDyn> storage,
                                   double load_damping,
                                   const Commitments& commitments);

/// Same, using the committed flags embedded in the model.
EquivalentParams equivalent_params(const sfr::AreaDynamicModel& model);

FeatureVector feature_vector(const EquivalentParams& eq, const sfr::EfcAction& efc,
                             double imbalance);

}  // namespace gridnadir
