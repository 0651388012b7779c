#pragma once

#include "gridnadir/milp/solver.hpp"
#include "gridnadir/planner/model.hpp"

namespace gridnadir::planner {

struct PeriodDispatch {
    std::map<std::string, bool> committed;       // thermal units
    std::map<std::string, double> thermal_p;     // MW
    std::map<std::string, double> hydro_p;
    std::map<std::string, double> renew_p;
    std::map<std::string, double> ess_charge;
    std::map<std::string, double> ess_discharge;
    std::map<std::string, double> dc_flow;       // by HVDC line (existing + candidates)
};

struct EmergencyOutcome {
    std::size_t scenario = 0, period = 0;
    std::string faulted_line;
    std::map<std::string, double> epc_by_line;  // empty in fc/nonfc
    std::map<std::string, double> dlc_by_area;
    double cost = 0.0;  // un-weighted control cost of this event
};

struct PlanResult {
    std::string mode;
    int emergency_stride = 1;
    double cost_total = 0.0;
    double cost_investment = 0.0;
    double cost_operation = 0.0;
    double cost_emergency = 0.0;
    std::map<std::string, double> hvdc_capacity;  // per candidate (0 when skipped)
    std::map<std::string, int> hvdc_steps;
    std::map<std::string, bool> ess_installed;
    std::vector<std::vector<PeriodDispatch>> dispatch;  // [scenario][period]
    std::vector<EmergencyOutcome> emergencies;
};

/// Pulls installation, dispatch and per-emergency schedules out of a solved
/// model and recomputes the three cost components (their sum is checked
/// against the solver objective).
PlanResult extract_result(const PlanningSystem& sys, const PlanModel& pm,
                          const milp::Solution& sol);

void save_plan(const PlanResult& result, const std::filesystem::path& file);
PlanResult load_plan(const std::filesystem::path& file);

/// CSV artifacts next to the plan: installations, cost breakdown, dispatch,
/// and per-emergency responses.
void write_plan_tables(const PlanResult& result, const std::filesystem::path& dir);

/// Side-by-side cost table for several plans (the three-mode comparison).
void write_comparison(const std::vector<PlanResult>& plans,
                      const std::map<std::string, double>& worst_nadir_by_plan_mode,
                      const std::filesystem::path& file);

}  // namespace gridnadir::planner
