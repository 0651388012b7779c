#include "gridnadir/planner/validate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "gridnadir/common/num_format.hpp"
#include "gridnadir/common/parallel.hpp"

namespace gridnadir::planner {

double ValidationReport::worst_nadir() const {
    double worst = 0.0;
    for (const auto& [area, v] : worst_by_area) worst = std::max(worst, v);
    return worst;
}

namespace {

struct FaultRef {
    std::string id;
    std::string from_area, to_area;
};

sfr::AreaDynamicModel area_model_at(const PlanningSystem& sys, const PlanResult& result,
                                    std::size_t s, std::size_t t, const std::string& area) {
    sfr::AreaDynamicModel m;
    m.base_frequency = sys.settings.base_frequency;
    m.load_damping = sys.settings.damping_coeff * sys.area_load(sys.scenarios[s], t, area);
    for (const auto* u : sys.thermal_in(area)) {
        auto dyn = u->dyn;
        dyn.committed = result.dispatch[s][t].committed.at(u->id);
        m.thermal.push_back(dyn);
    }
    for (const auto* u : sys.hydro_in(area)) m.hydro.push_back(u->dyn);
    for (const auto* e : sys.ess_in(area))
        if (result.ess_installed.count(e->id) && result.ess_installed.at(e->id))
            m.storage.push_back(e->dyn);
    return m;
}

}  // namespace

ValidationReport validate_plan(const PlanResult& result, const PlanningSystem& sys, int jobs) {
    ValidationReport report;
    report.bound_hz = sys.settings.nadir_bound_hz;
    const double dt = 1e-3;
    const double horizon = 20.0;
    const std::size_t epc_shift = sfr::delay_index(sys.settings.tau_epc, dt);
    const std::size_t dlc_shift = sfr::delay_index(sys.settings.tau_dlc, dt);
    const std::size_t stride = static_cast<std::size_t>(std::max(1, result.emergency_stride));

    // faultable lines that can actually carry flow in this plan
    std::vector<FaultRef> faults;
    for (const auto& id : sys.faultable_lines()) {
        const auto ex = std::find_if(sys.hvdc_existing.begin(), sys.hvdc_existing.end(),
                                     [&](const ExistingHvdc& l) { return l.id == id; });
        if (ex != sys.hvdc_existing.end()) {
            faults.push_back({id, sys.area_of(ex->from_bus), sys.area_of(ex->to_bus)});
            continue;
        }
        const auto cand = std::find_if(sys.candidates.begin(), sys.candidates.end(),
                                       [&](const CandidateHvdc& c) { return c.id == id; });
        if (cand != sys.candidates.end() && result.hvdc_capacity.count(id) &&
            result.hvdc_capacity.at(id) > 0.0)
            faults.push_back({id, sys.area_of(cand->from_bus), sys.area_of(cand->to_bus)});
    }
    if (faults.empty()) return report;

    // lookup for fcec schedules
    std::map<std::tuple<std::size_t, std::size_t, std::string>, const EmergencyOutcome*> schedules;
    for (const auto& e : result.emergencies)
        schedules[{e.scenario, e.period, e.faulted_line}] = &e;

    struct Job {
        std::size_t s, t;
        std::string area;
    };
    std::vector<Job> jobs_list;
    for (std::size_t s = 0; s < sys.scenarios.size(); ++s)
        for (std::size_t t = 0; t < sys.scenarios[s].periods.size(); t += stride)
            for (const auto& area : sys.areas) jobs_list.push_back({s, t, area});

    std::vector<std::vector<ValidationEntry>> per_job(jobs_list.size());
    parallel_for(jobs_list.size(), jobs, [&](std::size_t ji) {
        const auto& job = jobs_list[ji];
        const auto model = area_model_at(sys, result, job.s, job.t, job.area);
        const auto sr = sfr::unit_step_response(model, dt, horizon);
        for (const auto& fault : faults) {
            const double flow = result.dispatch[job.s][job.t].dc_flow.count(fault.id)
                                    ? result.dispatch[job.s][job.t].dc_flow.at(fault.id)
                                    : 0.0;
            double imbalance = 0.0;
            if (fault.from_area == job.area) imbalance = flow;
            if (fault.to_area == job.area) imbalance = -flow;

            double epc = 0.0, dlc = 0.0;
            const auto sched = schedules.find({job.s, job.t, fault.id});
            if (sched != schedules.end()) {
                for (const auto& [line_id, v] : sched->second->epc_by_line) {
                    const auto lf = std::find_if(faults.begin(), faults.end(),
                                                 [&](const FaultRef& f) { return f.id == line_id; });
                    std::string from, to;
                    if (lf != faults.end()) {
                        from = lf->from_area;
                        to = lf->to_area;
                    } else {
                        const auto ex =
                            std::find_if(sys.hvdc_existing.begin(), sys.hvdc_existing.end(),
                                         [&](const ExistingHvdc& l) { return l.id == line_id; });
                        if (ex != sys.hvdc_existing.end()) {
                            from = sys.area_of(ex->from_bus);
                            to = sys.area_of(ex->to_bus);
                        } else {
                            const auto cd =
                                std::find_if(sys.candidates.begin(), sys.candidates.end(),
                                             [&](const CandidateHvdc& c) { return c.id == line_id; });
                            if (cd == sys.candidates.end()) continue;
                            from = sys.area_of(cd->from_bus);
                            to = sys.area_of(cd->to_bus);
                        }
                    }
                    if (from == job.area) epc -= v;
                    if (to == job.area) epc += v;
                }
                const auto dl = sched->second->dlc_by_area.find(job.area);
                if (dl != sched->second->dlc_by_area.end()) dlc = dl->second;
            }

            ValidationEntry entry;
            entry.scenario = job.s;
            entry.period = job.t;
            entry.faulted_line = fault.id;
            entry.area = job.area;
            if (std::abs(imbalance) + std::abs(epc) + dlc > 1e-9)
                entry.nadir_hz = sr.superposed_nadir(imbalance, dlc, dlc_shift, epc, epc_shift).first;
            entry.violates = entry.nadir_hz > report.bound_hz;
            per_job[ji].push_back(std::move(entry));
        }
    });

    for (auto& entries : per_job)
        for (auto& e : entries) {
            auto& worst = report.worst_by_area[e.area];
            worst = std::max(worst, e.nadir_hz);
            if (e.violates) ++report.violations;
            report.entries.push_back(std::move(e));
        }
    return report;
}

void write_validation_csv(const ValidationReport& report, const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw EnvironmentError("cannot write validation file " + file.string());
    out << "scenario,period,faulted_line,area,nadir_hz,violates\n";
    for (const auto& e : report.entries)
        out << e.scenario << ',' << e.period << ',' << e.faulted_line << ',' << e.area << ','
            << format_double(e.nadir_hz) << ',' << (e.violates ? 1 : 0) << '\n';
}

}  // namespace gridnadir::planner
