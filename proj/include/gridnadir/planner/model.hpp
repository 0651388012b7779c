#pragma once

#include <map>

#include "gridnadir/planner/system.hpp"
#include "gridnadir/wodt/regions.hpp"

namespace gridnadir::planner {

/// nonfc: pure investment + operation. fc: frequency rules enforced with
/// local primary response only (EFC pinned to zero). fcec: rules plus
/// coordinated EFC recourse with its expected cost.
enum class PlanMode { nonfc, fc, fcec };

std::string to_string(PlanMode mode);
PlanMode plan_mode_from(const std::string& text);

using RuleSets = std::map<std::string, std::vector<wodt::SecureRegion>>;

struct PlanModel {
    milp::MilpModel model;
    PlanMode mode = PlanMode::nonfc;
    int emergency_stride = 1;
    double annuity = 1.0;
};

/// Variable-name scheme shared by the builder and the result extractor.
namespace vn {
std::string st(std::size_t s, std::size_t t);
inline std::string z_dc(const std::string& id) { return "zdc_" + id; }
inline std::string n_dc(const std::string& id) { return "ndc_" + id; }
inline std::string p_cap(const std::string& id) { return "pcap_" + id; }
inline std::string z_ess(const std::string& id) { return "zess_" + id; }
std::string commit(const std::string& unit, std::size_t s, std::size_t t);
std::string startup(const std::string& unit, std::size_t s, std::size_t t);
std::string shutdown(const std::string& unit, std::size_t s, std::size_t t);
std::string power(const std::string& unit, std::size_t s, std::size_t t);
std::string seg(const std::string& unit, std::size_t s, std::size_t t, std::size_t k);
std::string hydro(const std::string& unit, std::size_t s, std::size_t t);
std::string renew(const std::string& unit, std::size_t s, std::size_t t);
std::string charge(const std::string& unit, std::size_t s, std::size_t t);
std::string discharge(const std::string& unit, std::size_t s, std::size_t t);
std::string charging(const std::string& unit, std::size_t s, std::size_t t);
std::string discharging(const std::string& unit, std::size_t s, std::size_t t);
std::string energy(const std::string& unit, std::size_t s, std::size_t t);
std::string angle(const std::string& bus, std::size_t s, std::size_t t);
std::string flow(const std::string& line, std::size_t s, std::size_t t);
std::string epc(const std::string& line, std::size_t s, std::size_t t, const std::string& fault);
std::string dlc(const std::string& area, std::size_t s, std::size_t t, const std::string& fault);
}  // namespace vn

/// Builds the tri-layer stochastic planning MILP: discrete HVDC sizing and
/// ESS installation, scenario unit commitment on a DC network with HVDC
/// injections, and (fc/fcec) one frequency-rule block per area for every
/// (scenario, period, HVDC-fault) emergency, with the feature entries
/// expressed as affine functions of the commitment and installation
/// variables. emergency_stride > 1 thins the emergency periods and rescales
/// their probability weight to stay unbiased.
PlanModel build_planning_model(const PlanningSystem& sys, PlanMode mode, const RuleSets& rules,
                               int emergency_stride = 1);

}  // namespace gridnadir::planner
