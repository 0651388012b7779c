#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "gridnadir/efc/efc.hpp"
#include "gridnadir/sfr/units.hpp"

namespace gridnadir::planner {

struct Bus {
    std::string id;
    std::string area;
};

struct AcLine {
    std::string id;
    std::string from_bus, to_bus;
    double susceptance = 0.0;  // MW per rad
    double limit_mw = 0.0;
};

struct ExistingHvdc {
    std::string id;
    std::string from_bus, to_bus;
    double capacity = 0.0;
};

struct CostSegment {
    double up_to_mw = 0.0;        // cumulative breakpoint
    double marginal_cost = 0.0;   // $/MWh
};

struct ThermalUnit {
    std::string id;
    std::string bus;
    sfr::ThermalUnitDyn dyn;  // dyn.p_max is the unit rating
    double p_min = 0.0;
    double ramp_up = 0.0, ramp_down = 0.0;  // MW per period
    int min_on = 1, min_off = 1;            // periods
    double startup_cost = 0.0, shutdown_cost = 0.0;
    double no_load_cost = 0.0;  // $/h while committed
    std::vector<CostSegment> segments;  // ascending, convex marginal costs
    int initial_on = 1;        // >0: periods already on; <0: periods already off
    double initial_power = 0.0;
};

struct HydroUnit {
    std::string id;
    std::string bus;
    sfr::HydroUnitDyn dyn;
    double p_dispatch_max = 0.0;  // MW, zero-cost dispatchable band
};

struct RenewableUnit {
    std::string id;
    std::string bus;
};

struct CandidateHvdc {
    std::string id;
    std::string from_bus, to_bus;
    double length_km = 0.0;
    double fixed_cost = 0.0;     // $ (annualized in the bundled data)
    double capacity_cost = 0.0;  // $/MW
    double p_cap_min = 0.0, p_cap_max = 0.0;
    double cap_increment = 0.0;
};

struct CandidateEss {
    std::string id;
    std::string bus;
    double p_charge_max = 0.0, p_discharge_max = 0.0;  // MW
    double e_min = 0.0, e_max = 0.0;                   // MWh
    double eta_c = 1.0, eta_d = 1.0;
    double annualized_cost = 0.0;  // $
    sfr::StorageUnitDyn dyn;
};

struct ScenarioPeriod {
    std::map<std::string, double> bus_load;      // MW by bus
    std::map<std::string, double> renew_avail;   // MW by renewable unit
};

struct Scenario {
    std::string id;
    double weight_days = 0.0;   // day-equivalents per year
    double period_hours = 1.0;  // duration of one period
    std::vector<ScenarioPeriod> periods;
};

struct EmergencySpec {
    double probability = 1e-4;           // per line per period
    std::vector<std::string> lines;      // empty means every HVDC line
};

struct Settings {
    double base_frequency = 60.0;
    double damping_coeff = 1.0;     // D_load = coeff * area load
    double nadir_bound_hz = 0.5;
    double dlc_fraction = 0.02;     // of area load
    double c_dlc = 1000.0;          // $/MW
    double c_epc = 100.0;           // $/MW
    double tau_epc = 0.2;           // s
    double tau_dlc = 0.6;           // s
    double discount_rate = 0.0;
    int lifespan_years = 1;
};

struct PlanningSystem {
    std::vector<Bus> buses;
    std::vector<AcLine> ac_lines;
    std::vector<ExistingHvdc> hvdc_existing;
    std::vector<ThermalUnit> thermal;
    std::vector<HydroUnit> hydro;
    std::vector<RenewableUnit> renewables;
    std::vector<CandidateHvdc> candidates;
    std::vector<CandidateEss> ess_candidates;
    std::vector<Scenario> scenarios;
    EmergencySpec emergencies;
    Settings settings;

    std::vector<std::string> areas;  // sorted unique area ids
    const std::string& area_of(const std::string& bus) const;
    double area_load(const Scenario& s, std::size_t t, const std::string& area) const;
    std::vector<const ThermalUnit*> thermal_in(const std::string& area) const;
    std::vector<const HydroUnit*> hydro_in(const std::string& area) const;
    std::vector<const CandidateEss*> ess_in(const std::string& area) const;

    /// All faultable HVDC line ids honoring the emergency spec (existing plus
    /// candidates).
    std::vector<std::string> faultable_lines() const;

    void validate() const;  // reference resolution, area topology, positivity

    /// Recomputes the area list and validates; call after building a system
    /// in memory (load_system does it automatically).
    void finalize();
};

/// Loads buses.json, lines.json, units.json, candidates.json, scenarios.json,
/// emergencies.json (and optional settings.json) from a directory.
PlanningSystem load_system(const std::filesystem::path& dir);

/// Annuity factor r / (1 - (1+r)^-N); the r -> 0 limit is 1/N.
double annuity_factor(double rate, int years);

}  // namespace gridnadir::planner
