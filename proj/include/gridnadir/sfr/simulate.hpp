#pragma once

#include <Eigen/Dense>
#include <utility>

#include "gridnadir/sfr/state_space.hpp"
#include "gridnadir/sfr/units.hpp"

namespace gridnadir::sfr {

inline constexpr double kDefaultDt = 1e-3;       // s
inline constexpr double kDefaultHorizon = 30.0;  // s

/// Integrates the closed-loop response to
///   p(t) = dP_D u(t) + dP_DLC u(t - tau_DLC) + dP_EPC u(t - tau_EPC).
/// Positive imbalance means surplus (over-frequency); pass a shortage as a
/// negative initial_imbalance. Delayed steps switch at the sample boundary
/// nearest their delay. Fixed-step RK4.
FrequencyTrace simulate(const AreaDynamicModel& model,
                        double initial_imbalance,
                        const EfcAction& efc,
                        double dt = kDefaultDt,
                        double horizon = kDefaultHorizon);

/// Largest |deviation| over the trace and the earliest time it is reached.
std::pair<double, double> nadir(const FrequencyTrace& trace);

/// DC-gain frequency offset for a sustained total imbalance, in Hz:
///   dP / (D_load + sum of unit droop gains), converted by base frequency.
double quasi_steady_state(const AreaDynamicModel& model, double total_imbalance);

/// Response to a unit 1 MW step at t = 0, in p.u. deviation. The model is
/// LTI, so any delayed-step input is a scaled/shifted combination of this
/// one trace; dataset sweeps lean on that instead of re-integrating.
struct StepResponse {
    double dt = 0.0;
    double base_frequency = 60.0;
    Eigen::ArrayXd g;  // g(i) = delta_f_pu at t = i*dt for a +1 MW step

    /// Nadir in Hz over the superposed response, with the earliest index.
    std::pair<double, std::size_t> superposed_nadir(double dp_d,
                                                    double dp_dlc, std::size_t dlc_shift,
                                                    double dp_epc, std::size_t epc_shift) const;
};

StepResponse unit_step_response(const AreaDynamicModel& model, double dt, double horizon);

/// Sample index of a delay under nearest-boundary scheduling.
inline std::size_t delay_index(double delay, double dt) {
    return static_cast<std::size_t>(std::llround(delay / dt));
}

}  // namespace gridnadir::sfr
