#pragma once

#include <string>
#include <vector>

#include "gridnadir/common/error.hpp"

namespace gridnadir::sfr {

/// Reheat steam turbine-governor block. Gains are per-unit on the machine
/// rating p_max; inertia_const is the per-unit H in seconds.
struct ThermalUnitDyn {
    std::string id;
    double inertia_const = 0.0;  // H_k, s
    double p_max = 0.0;          // MW
    double droop = 0.0;          // R_k, p.u.
    double gov_tc = 0.0;         // T_G,k, s
    double chest_tc = 0.0;       // T_C,k, s
    double reheat_tc = 0.0;      // T_R,k, s
    double hp_fraction = 0.0;    // F_H,k in [0,1]
    bool committed = true;       // u_k
};

/// Hydro turbine-governor block with water-hammer (non-minimum-phase) zero.
struct HydroUnitDyn {
    std::string id;
    double inertia_const = 0.0;  // H_k, s
    double p_max = 0.0;          // MW
    double perm_droop = 0.0;     // R_P,k, p.u.
    double temp_droop = 0.0;     // R_T,k, p.u.
    double gov_tc = 0.0;         // T_G,k, s
    double reset_tc = 0.0;       // T_R,k, s
    double water_tc = 0.0;       // T_W,k, s
};

/// Converter-interfaced storage on droop control.
struct StorageUnitDyn {
    std::string id;
    double p_max = 0.0;     // MW
    double droop = 0.0;     // R_E,k, p.u.
    double delay_tc = 0.0;  // T_E,k, s
};

/// One asynchronous area: swing equation plus the unit blocks hanging off it.
/// load_damping is in MW per p.u. frequency; frequency deviations are carried
/// internally in p.u. on base_frequency.
struct AreaDynamicModel {
    std::vector<ThermalUnitDyn> thermal;
    std::vector<HydroUnitDyn> hydro;
    std::vector<StorageUnitDyn> storage;
    double load_damping = 0.0;     // D_load,a, MW / p.u.
    double base_frequency = 60.0;  // f0, Hz
};

/// Event-driven emergency control: two delayed steps superposed on the
/// initial imbalance. epc_power is the signed net area injection.
struct EfcAction {
    double epc_power = 0.0;  // MW, signed
    double epc_delay = 0.0;  // s
    double dlc_power = 0.0;  // MW, >= 0
    double dlc_delay = 0.0;  // s

    static EfcAction none() { return {}; }
};

/// Sampled frequency deviation trajectory, samples in Hz, samples[0] == 0.
struct FrequencyTrace {
    double dt = 0.0;
    double horizon = 0.0;
    std::vector<double> samples;

    double time_at(std::size_t i) const { return static_cast<double>(i) * dt; }
};

void validate_thermal(const ThermalUnitDyn& u);
void validate_hydro(const HydroUnitDyn& u);
void validate_storage(const StorageUnitDyn& u);
void validate_efc(const EfcAction& efc);

/// Total synchronous inertia 2H_a in MW*s. Offline thermal units drop out;
/// hydro units always count.
double total_inertia_mws(const AreaDynamicModel& m);

/// Validating constructor: checks unit invariants and rejects a model with
/// no inertia source (degenerate swing equation).
AreaDynamicModel build_area_model(std::vector<ThermalUnitDyn> thermal,
                                  std::vector<HydroUnitDyn> hydro,
                                  std::vector<StorageUnitDyn> storage,
                                  double load_damping,
                                  double base_frequency);

}  // namespace gridnadir::sfr
