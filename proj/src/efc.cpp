#include "gridnadir/efc/efc.hpp"

#include <algorithm>
#include <cmath>

#include "gridnadir/common/num_format.hpp"

namespace gridnadir::efc {

using milp::LinExpr;
using milp::ObjSense;
using milp::Sense;
using milp::VarId;

EmergencyScenario scenario_for_fault(const std::vector<HvdcLine>& lines,
                                     const std::string& faulted_id, double probability) {
    const auto it = std::find_if(lines.begin(), lines.end(),
                                 [&](const HvdcLine& l) { return l.id == faulted_id; });
    if (it == lines.end()) throw DomainError("unknown faulted line '" + faulted_id + "'");
    EmergencyScenario s;
    s.faulted_line = faulted_id;
    s.probability = probability;
    // the sender keeps producing what it exported (surplus), the receiver
    // loses what it imported (shortage); both sum to zero
    s.imbalance[it->from_area] = it->prefault_flow;
    s.imbalance[it->to_area] = -it->prefault_flow;
    return s;
}

EfcProblem build_efc_problem(const std::vector<AreaEfcSpec>& areas,
                             const std::vector<HvdcLine>& lines,
                             const EmergencyScenario& scenario, const EfcCosts& costs,
                             const std::map<std::string, double>* epc_max_override) {
    for (const auto& a : areas)
        if (a.rules.empty())
            throw DomainError("no frequency rule set for area '" + a.id + "'");
    for (const auto& l : lines)
        if (std::abs(l.prefault_flow) > l.capacity + 1e-9)
            throw DomainError("line '" + l.id + "' pre-fault flow exceeds its capacity");

    EfcProblem p;
    p.scenario = scenario;
    auto& m = p.model;

    LinExpr objective;
    std::map<std::string, VarId> epc_vars;
    for (const auto& l : lines) {
        if (l.id == scenario.faulted_line) continue;  // the faulted line carries no EPC
        double headroom = l.capacity - std::abs(l.prefault_flow);
        if (epc_max_override) {
            auto it = epc_max_override->find(l.id);
            if (it != epc_max_override->end()) headroom = it->second;
        }
        if (headroom < 0.0)
            throw DomainError("line '" + l.id + "' declares negative EPC headroom");
        const VarId epc = m.add_continuous("epc_" + l.id, -headroom, headroom);
        epc_vars.emplace(l.id, epc);
        p.surviving_lines.push_back(l.id);

        // post-disturbance flow stays within the line rating
        m.add_constraint("dcpf_lo_" + l.id, LinExpr(epc), Sense::ge,
                         -l.capacity - l.prefault_flow);
        m.add_constraint("dcpf_hi_" + l.id, LinExpr(epc), Sense::le,
                         l.capacity - l.prefault_flow);

        auto [pos, neg] = milp::add_abs_linearization(m, LinExpr(epc), "epcabs_" + l.id);
        objective += costs.c_epc * (LinExpr(pos) + LinExpr(neg));
    }

    for (const auto& a : areas) {
        const VarId dlc = m.add_continuous("dlc_" + a.id, 0.0, a.dlc_max);
        objective += costs.c_dlc * LinExpr(dlc);
        p.area_ids.push_back(a.id);

        LinExpr net_epc;
        for (const auto& l : lines) {
            const int inc = l.incidence(a.id);
            if (inc == 0 || !epc_vars.count(l.id)) continue;
            net_epc.add(epc_vars.at(l.id), static_cast<double>(inc));
        }

        const EquivalentParams eq = equivalent_params(a.model);
        std::array<LinExpr, 6> x = {LinExpr(eq.inertia),  LinExpr(eq.d_fast),
                                    LinExpr(eq.d_slow),   net_epc,
                                    LinExpr(dlc),         LinExpr(scenario.imbalance_of(a.id))};
        milp::embed_secure_regions(m, x, a.rules, "freq_" + a.id);
    }

    m.set_objective(ObjSense::minimize, objective);
    return p;
}

EfcSchedule solve_efc(const EfcProblem& problem, const milp::SolverConfig& solver) {
    const milp::Solution sol = milp::solve(problem.model, solver);
    if (sol.status == milp::SolveStatus::infeasible)
        throw DomainError("no secure EFC exists for this emergency (faulted line '" +
                          problem.scenario.faulted_line + "')");
    if (sol.status != milp::SolveStatus::optimal && sol.status != milp::SolveStatus::limit)
        throw DomainError("EFC solve ended without a usable solution");

    EfcSchedule schedule;
    schedule.cost = sol.objective;
    for (const auto& id : problem.surviving_lines)
        schedule.epc_by_line[id] = sol.value("epc_" + id);
    for (const auto& id : problem.area_ids) schedule.dlc_by_area[id] = sol.value("dlc_" + id);
    return schedule;
}

std::map<std::string, double> net_epc_by_area(const EfcSchedule& schedule,
                                              const std::vector<HvdcLine>& lines,
                                              const std::vector<AreaEfcSpec>& areas) {
    std::map<std::string, double> net;
    for (const auto& a : areas) net[a.id] = 0.0;
    for (const auto& l : lines) {
        auto it = schedule.epc_by_line.find(l.id);
        if (it == schedule.epc_by_line.end()) continue;
        if (net.count(l.from_area)) net[l.from_area] -= it->second;
        if (net.count(l.to_area)) net[l.to_area] += it->second;
    }
    return net;
}

std::map<std::string, VerifiedNadir> verify_schedule(const EfcSchedule& schedule,
                                                     const std::vector<AreaEfcSpec>& areas,
                                                     const std::vector<HvdcLine>& lines,
                                                     const EmergencyScenario& scenario,
                                                     const VerifyConfig& config) {
    for (const auto& a : areas) {
        auto it = schedule.dlc_by_area.find(a.id);
        if (it != schedule.dlc_by_area.end() && it->second > a.dlc_max + 1e-6)
            throw DomainError("schedule DLC for area '" + a.id + "' exceeds its declared bound");
    }

    const auto net = net_epc_by_area(schedule, lines, areas);
    std::map<std::string, VerifiedNadir> out;
    for (const auto& a : areas) {
        sfr::EfcAction efc;
        efc.epc_power = net.at(a.id);
        efc.epc_delay = config.tau_epc;
        efc.dlc_power = std::max(0.0, schedule.dlc_by_area.count(a.id)
                                          ? schedule.dlc_by_area.at(a.id)
                                          : 0.0);
        efc.dlc_delay = config.tau_dlc;
        const auto trace = sfr::simulate(a.model, scenario.imbalance_of(a.id), efc, config.dt,
                                         config.horizon);
        const auto [nad, at] = sfr::nadir(trace);
        out[a.id] = {nad, at, nad > config.bound_hz};
    }
    return out;
}

}  // namespace gridnadir::efc
