#include "gridnadir/planner/result.hpp"

#include <cmath>
#include <fstream>

#include "gridnadir/common/num_format.hpp"
#include "json.hpp"

namespace gridnadir::planner {

using nlohmann::json;
using nlohmann::ordered_json;

PlanResult extract_result(const PlanningSystem& sys, const PlanModel& pm,
                          const milp::Solution& sol) {
    if (sol.status != milp::SolveStatus::optimal && sol.status != milp::SolveStatus::limit)
        throw DomainError("cannot extract a plan from an unsolved model");

    PlanResult r;
    r.mode = to_string(pm.mode);
    r.emergency_stride = pm.emergency_stride;
    r.cost_total = sol.objective;

    for (const auto& c : sys.candidates) {
        const bool z = sol.value(vn::z_dc(c.id)) > 0.5;
        r.hvdc_capacity[c.id] = z ? sol.value(vn::p_cap(c.id)) : 0.0;
        r.hvdc_steps[c.id] = z ? static_cast<int>(std::lround(sol.value(vn::n_dc(c.id)))) : 0;
        r.cost_investment +=
            pm.annuity * (z ? c.fixed_cost + r.hvdc_capacity[c.id] * c.capacity_cost : 0.0);
    }
    for (const auto& e : sys.ess_candidates) {
        const bool z = sol.value(vn::z_ess(e.id)) > 0.5;
        r.ess_installed[e.id] = z;
        r.cost_investment += pm.annuity * (z ? e.annualized_cost : 0.0);
    }

    r.dispatch.resize(sys.scenarios.size());
    for (std::size_t s = 0; s < sys.scenarios.size(); ++s) {
        const Scenario& sc = sys.scenarios[s];
        r.dispatch[s].resize(sc.periods.size());
        for (std::size_t t = 0; t < sc.periods.size(); ++t) {
            PeriodDispatch& d = r.dispatch[s][t];
            for (const auto& u : sys.thermal) {
                const bool on = sol.value(vn::commit(u.id, s, t)) > 0.5;
                d.committed[u.id] = on;
                d.thermal_p[u.id] = on ? sol.value(vn::power(u.id, s, t)) : 0.0;
                double seg_cost = 0.0;
                double seg_from = u.p_min;
                for (std::size_t k = 0; k < u.segments.size(); ++k) {
                    seg_cost += u.segments[k].marginal_cost * sol.value(vn::seg(u.id, s, t, k));
                    seg_from = u.segments[k].up_to_mw;
                }
                (void)seg_from;
                r.cost_operation +=
                    sc.weight_days *
                    (sc.period_hours * (u.no_load_cost * (on ? 1.0 : 0.0) + seg_cost) +
                     u.startup_cost * sol.value(vn::startup(u.id, s, t)) +
                     u.shutdown_cost * sol.value(vn::shutdown(u.id, s, t)));
            }
            for (const auto& u : sys.hydro) d.hydro_p[u.id] = sol.value(vn::hydro(u.id, s, t));
            for (const auto& u : sys.renewables) d.renew_p[u.id] = sol.value(vn::renew(u.id, s, t));
            for (const auto& e : sys.ess_candidates) {
                d.ess_charge[e.id] = sol.value(vn::charge(e.id, s, t));
                d.ess_discharge[e.id] = sol.value(vn::discharge(e.id, s, t));
            }
            for (const auto& l : sys.hvdc_existing) d.dc_flow[l.id] = sol.value(vn::flow(l.id, s, t));
            for (const auto& c : sys.candidates) d.dc_flow[c.id] = sol.value(vn::flow(c.id, s, t));
        }
    }

    if (pm.mode != PlanMode::nonfc) {
        const auto faultable = sys.faultable_lines();
        const double pi_e =
            sys.emergencies.probability * static_cast<double>(pm.emergency_stride);
        for (std::size_t s = 0; s < sys.scenarios.size(); ++s) {
            const Scenario& sc = sys.scenarios[s];
            for (std::size_t t = 0; t < sc.periods.size();
                 t += static_cast<std::size_t>(pm.emergency_stride)) {
                for (const auto& fault : faultable) {
                    EmergencyOutcome out;
                    out.scenario = s;
                    out.period = t;
                    out.faulted_line = fault;
                    if (pm.mode == PlanMode::fcec) {
                        for (const auto& l : sys.hvdc_existing) {
                            if (l.id == fault) continue;
                            const double v = sol.value(vn::epc(l.id, s, t, fault));
                            out.epc_by_line[l.id] = v;
                            out.cost += sys.settings.c_epc * std::abs(v);
                        }
                        for (const auto& c : sys.candidates) {
                            if (c.id == fault) continue;
                            const double v = sol.value(vn::epc(c.id, s, t, fault));
                            out.epc_by_line[c.id] = v;
                            out.cost += sys.settings.c_epc * std::abs(v);
                        }
                        for (const auto& area : sys.areas) {
                            const double v = sol.value(vn::dlc(area, s, t, fault));
                            out.dlc_by_area[area] = v;
                            out.cost += sys.settings.c_dlc * v;
                        }
                        r.cost_emergency += sc.weight_days * pi_e * out.cost;
                    }
                    r.emergencies.push_back(std::move(out));
                }
            }
        }
    }
    return r;
}

namespace {

ordered_json map_to_json(const std::map<std::string, double>& m) {
    ordered_json j = ordered_json::object();
    for (const auto& [k, v] : m) j[k] = v;
    return j;
}

std::map<std::string, double> json_to_map(const json& j) {
    std::map<std::string, double> m;
    for (const auto& [k, v] : j.items()) m[k] = v.get<double>();
    return m;
}

}  // namespace

void save_plan(const PlanResult& r, const std::filesystem::path& file) {
    ordered_json j;
    j["format"] = "gridnadir-plan-1";
    j["mode"] = r.mode;
    j["emergency_stride"] = r.emergency_stride;
    j["costs"] = {{"total", r.cost_total},
                  {"investment", r.cost_investment},
                  {"operation", r.cost_operation},
                  {"emergency", r.cost_emergency}};
    j["hvdc_capacity"] = map_to_json(r.hvdc_capacity);
    ordered_json steps = ordered_json::object();
    for (const auto& [k, v] : r.hvdc_steps) steps[k] = v;
    j["hvdc_steps"] = steps;
    ordered_json ess = ordered_json::object();
    for (const auto& [k, v] : r.ess_installed) ess[k] = v;
    j["ess_installed"] = ess;

    j["dispatch"] = ordered_json::array();
    for (const auto& scenario : r.dispatch) {
        ordered_json speriods = ordered_json::array();
        for (const auto& d : scenario) {
            ordered_json dj;
            ordered_json committed = ordered_json::object();
            for (const auto& [k, v] : d.committed) committed[k] = v;
            dj["committed"] = committed;
            dj["thermal_p"] = map_to_json(d.thermal_p);
            dj["hydro_p"] = map_to_json(d.hydro_p);
            dj["renew_p"] = map_to_json(d.renew_p);
            dj["ess_charge"] = map_to_json(d.ess_charge);
            dj["ess_discharge"] = map_to_json(d.ess_discharge);
            dj["dc_flow"] = map_to_json(d.dc_flow);
            speriods.push_back(dj);
        }
        j["dispatch"].push_back(speriods);
    }

    j["emergencies"] = ordered_json::array();
    for (const auto& e : r.emergencies) {
        ordered_json ej;
        ej["scenario"] = e.scenario;
        ej["period"] = e.period;
        ej["faulted_line"] = e.faulted_line;
        ej["epc_by_line"] = map_to_json(e.epc_by_line);
        ej["dlc_by_area"] = map_to_json(e.dlc_by_area);
        ej["cost"] = e.cost;
        j["emergencies"].push_back(ej);
    }

    std::ofstream out(file);
    if (!out) throw EnvironmentError("cannot write plan file " + file.string());
    out << j.dump(2) << '\n';
}

PlanResult load_plan(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw UsageError("cannot open plan file " + file.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw UsageError("bad JSON in " + file.string() + ": " + e.what());
    }
    if (j.value("format", "") != "gridnadir-plan-1")
        throw UsageError(file.string() + " is not a plan file");

    PlanResult r;
    r.mode = j.value("mode", "nonfc");
    r.emergency_stride = j.value("emergency_stride", 1);
    r.cost_total = j["costs"].value("total", 0.0);
    r.cost_investment = j["costs"].value("investment", 0.0);
    r.cost_operation = j["costs"].value("operation", 0.0);
    r.cost_emergency = j["costs"].value("emergency", 0.0);
    r.hvdc_capacity = json_to_map(j.value("hvdc_capacity", json::object()));
    const json steps_j = j.value("hvdc_steps", json::object());
    for (const auto& [k, v] : steps_j.items()) r.hvdc_steps[k] = v.get<int>();
    const json ess_j = j.value("ess_installed", json::object());
    for (const auto& [k, v] : ess_j.items()) r.ess_installed[k] = v.get<bool>();
    for (const auto& sj : j.value("dispatch", json::array())) {
        std::vector<PeriodDispatch> periods;
        for (const auto& dj : sj) {
            PeriodDispatch d;
            const json committed_j = dj.value("committed", json::object());
            for (const auto& [k, v] : committed_j.items()) d.committed[k] = v.get<bool>();
            d.thermal_p = json_to_map(dj.value("thermal_p", json::object()));
            d.hydro_p = json_to_map(dj.value("hydro_p", json::object()));
            d.renew_p = json_to_map(dj.value("renew_p", json::object()));
            d.ess_charge = json_to_map(dj.value("ess_charge", json::object()));
            d.ess_discharge = json_to_map(dj.value("ess_discharge", json::object()));
            d.dc_flow = json_to_map(dj.value("dc_flow", json::object()));
            periods.push_back(std::move(d));
        }
        r.dispatch.push_back(std::move(periods));
    }
    for (const auto& ej : j.value("emergencies", json::array())) {
        EmergencyOutcome e;
        e.scenario = ej.value("scenario", 0);
        e.period = ej.value("period", 0);
        e.faulted_line = ej.value("faulted_line", "");
        e.epc_by_line = json_to_map(ej.value("epc_by_line", json::object()));
        e.dlc_by_area = json_to_map(ej.value("dlc_by_area", json::object()));
        e.cost = ej.value("cost", 0.0);
        r.emergencies.push_back(std::move(e));
    }
    return r;
}

void write_plan_tables(const PlanResult& r, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir / "installations.csv");
        out << "kind,id,installed,capacity_mw,steps\n";
        for (const auto& [id, cap] : r.hvdc_capacity)
            out << "hvdc," << id << ',' << (cap > 0 ? 1 : 0) << ',' << format_double(cap) << ','
                << r.hvdc_steps.at(id) << '\n';
        for (const auto& [id, z] : r.ess_installed)
            out << "ess," << id << ',' << (z ? 1 : 0) << ",," << '\n';
    }
    {
        std::ofstream out(dir / "costs.csv");
        out << "component,annual_cost\n";
        out << "total," << format_double(r.cost_total) << '\n';
        out << "investment," << format_double(r.cost_investment) << '\n';
        out << "operation," << format_double(r.cost_operation) << '\n';
        out << "emergency," << format_double(r.cost_emergency) << '\n';
    }
    {
        std::ofstream out(dir / "dispatch.csv");
        out << "scenario,period,kind,id,value_mw\n";
        for (std::size_t s = 0; s < r.dispatch.size(); ++s)
            for (std::size_t t = 0; t < r.dispatch[s].size(); ++t) {
                const auto& d = r.dispatch[s][t];
                for (const auto& [id, v] : d.thermal_p)
                    out << s << ',' << t << ",thermal," << id << ',' << format_double(v) << '\n';
                for (const auto& [id, v] : d.hydro_p)
                    out << s << ',' << t << ",hydro," << id << ',' << format_double(v) << '\n';
                for (const auto& [id, v] : d.renew_p)
                    out << s << ',' << t << ",renewable," << id << ',' << format_double(v) << '\n';
                for (const auto& [id, v] : d.dc_flow)
                    out << s << ',' << t << ",hvdc_flow," << id << ',' << format_double(v) << '\n';
                for (const auto& [id, v] : d.ess_discharge)
                    out << s << ',' << t << ",ess_discharge," << id << ',' << format_double(v)
                        << '\n';
                for (const auto& [id, v] : d.ess_charge)
                    out << s << ',' << t << ",ess_charge," << id << ',' << format_double(v) << '\n';
            }
    }
    {
        std::ofstream out(dir / "efc_schedules.csv");
        out << "scenario,period,faulted_line,kind,id,response_mw\n";
        for (const auto& e : r.emergencies) {
            for (const auto& [id, v] : e.epc_by_line)
                out << e.scenario << ',' << e.period << ',' << e.faulted_line << ",epc," << id
                    << ',' << format_double(v) << '\n';
            for (const auto& [id, v] : e.dlc_by_area)
                out << e.scenario << ',' << e.period << ',' << e.faulted_line << ",dlc," << id
                    << ',' << format_double(v) << '\n';
        }
    }
}

void write_comparison(const std::vector<PlanResult>& plans,
                      const std::map<std::string, double>& worst_nadir_by_plan_mode,
                      const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw EnvironmentError("cannot write comparison file " + file.string());
    out << "mode,total_cost,investment_cost,operational_cost,emergency_cost,worst_nadir_hz\n";
    for (const auto& p : plans) {
        out << p.mode << ',' << format_double(p.cost_total) << ','
            << format_double(p.cost_investment) << ',' << format_double(p.cost_operation) << ','
            << format_double(p.cost_emergency) << ',';
        auto it = worst_nadir_by_plan_mode.find(p.mode);
        out << (it == worst_nadir_by_plan_mode.end() ? "" : format_double(it->second)) << '\n';
    }
}

}  // namespace gridnadir::planner
