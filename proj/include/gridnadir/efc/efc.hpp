#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gridnadir/aggregation.hpp"
#include "gridnadir/milp/embed.hpp"
#include "gridnadir/milp/solver.hpp"
#include "gridnadir/sfr/simulate.hpp"
#include "gridnadir/wodt/regions.hpp"

namespace gridnadir::efc {

/// Inter-area HVDC link; flow is signed positive from -> to.
struct HvdcLine {
    std::string id;
    std::string from_area;
    std::string to_area;
    double capacity = 0.0;       // MW
    double prefault_flow = 0.0;  // MW, signed

    /// Connection indicator: -1 at the origin, +1 at the destination.
    int incidence(const std::string& area) const {
        if (area == from_area) return -1;
        if (area == to_area) return 1;
        return 0;
    }
};

/// One HVDC fault: the lost line dumps its pre-fault flow as a surplus at
/// the sending end and a shortage at the receiving end.
struct EmergencyScenario {
    std::string faulted_line;
    std::map<std::string, double> imbalance;  // MW per area; absent areas are 0
    double probability = 1e-4;

    double imbalance_of(const std::string& area) const {
        auto it = imbalance.find(area);
        return it == imbalance.end() ? 0.0 : it->second;
    }
};

EmergencyScenario scenario_for_fault(const std::vector<HvdcLine>& lines,
                                     const std::string& faulted_id, double probability = 1e-4);

/// Everything the coordinator needs to know about one area.
struct AreaEfcSpec {
    std::string id;
    sfr::AreaDynamicModel model;
    std::vector<wodt::SecureRegion> rules;
    double dlc_max = 0.0;  // MW
};

struct EfcCosts {
    double c_dlc = 1000.0;  // $/MW
    double c_epc = 100.0;   // $/MW
};

struct EfcProblem {
    milp::MilpModel model;
    std::vector<std::string> surviving_lines;
    std::vector<std::string> area_ids;
    EmergencyScenario scenario;
};

/// Builds the cost-minimal resource allocation MILP: signed EPC per surviving
/// line (magnitude-costed and magnitude-bounded), DLC per area, net area EPC
/// through the line incidence, per-area frequency rules embedded as secure
/// regions, and post-fault flow kept within line capacity.
EfcProblem build_efc_problem(const std::vector<AreaEfcSpec>& areas,
                             const std::vector<HvdcLine>& lines,
                             const EmergencyScenario& scenario, const EfcCosts& costs,
                             const std::map<std::string, double>* epc_max_override = nullptr);

struct EfcSchedule {
    std::map<std::string, double> epc_by_line;  // MW, signed
    std::map<std::string, double> dlc_by_area;  // MW
    double cost = 0.0;
};

/// Solves the problem; an infeasible model is reported as "no secure EFC
/// exists" (distinct from solver failures, which surface as environment
/// errors).
EfcSchedule solve_efc(const EfcProblem& problem, const milp::SolverConfig& solver);

struct VerifiedNadir {
    double nadir_hz = 0.0;
    double time_s = 0.0;
    bool violates = false;
};

struct VerifyConfig {
    double bound_hz = 0.5;
    double tau_epc = 0.2;
    double tau_dlc = 0.6;
    double dt = 1e-3;
    double horizon = 20.0;
};

/// Re-simulates every area under the schedule and reports the per-area
/// nadir; areas above the bound are flagged (possible when the tree
/// misclassifies near the boundary).
std::map<std::string, VerifiedNadir> verify_schedule(const EfcSchedule& schedule,
                                                     const std::vector<AreaEfcSpec>& areas,
                                                     const std::vector<HvdcLine>& lines,
                                                     const EmergencyScenario& scenario,
                                                     const VerifyConfig& config);

/// Net EPC injection per area implied by a schedule.
std::map<std::string, double> net_epc_by_area(const EfcSchedule& schedule,
                                              const std::vector<HvdcLine>& lines,
                                              const std::vector<AreaEfcSpec>& areas);

}  // namespace gridnadir::efc
