#include "gridnadir/planner/system.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "json.hpp"

namespace gridnadir::planner {

using nlohmann::json;

double annuity_factor(double rate, int years) {
    if (years <= 0) throw DomainError("lifespan must be >= 1 year");
    if (rate < 0.0) throw DomainError("discount rate must be >= 0");
    if (rate == 0.0) return 1.0 / static_cast<double>(years);
    return rate / (1.0 - std::pow(1.0 + rate, -years));
}

const std::string& PlanningSystem::area_of(const std::string& bus) const {
    for (const auto& b : buses)
        if (b.id == bus) return b.area;
    throw DomainError("unknown bus id '" + bus + "'");
}

double PlanningSystem::area_load(const Scenario& s, std::size_t t, const std::string& area) const {
    double load = 0.0;
    for (const auto& [bus, mw] : s.periods.at(t).bus_load)
        if (area_of(bus) == area) load += mw;
    return load;
}

std::vector<const ThermalUnit*> PlanningSystem::thermal_in(const std::string& area) const {
    std::vector<const ThermalUnit*> out;
    for (const auto& u : thermal)
        if (area_of(u.bus) == area) out.push_back(&u);
    return out;
}

std::vector<const HydroUnit*> PlanningSystem::hydro_in(const std::string& area) const {
    std::vector<const HydroUnit*> out;
    for (const auto& u : hydro)
        if (area_of(u.bus) == area) out.push_back(&u);
    return out;
}

std::vector<const CandidateEss*> PlanningSystem::ess_in(const std::string& area) const {
    std::vector<const CandidateEss*> out;
    for (const auto& u : ess_candidates)
        if (area_of(u.bus) == area) out.push_back(&u);
    return out;
}

std::vector<std::string> PlanningSystem::faultable_lines() const {
    std::vector<std::string> ids;
    for (const auto& l : hvdc_existing) ids.push_back(l.id);
    for (const auto& l : candidates) ids.push_back(l.id);
    if (emergencies.lines.empty()) return ids;
    std::vector<std::string> filtered;
    for (const auto& id : ids)
        if (std::find(emergencies.lines.begin(), emergencies.lines.end(), id) !=
            emergencies.lines.end())
            filtered.push_back(id);
    return filtered;
}

void PlanningSystem::validate() const {
    if (buses.empty()) throw DomainError("system has no buses");
    std::set<std::string> bus_ids;
    for (const auto& b : buses) {
        if (!bus_ids.insert(b.id).second) throw DomainError("duplicate bus id '" + b.id + "'");
        if (b.area.empty()) throw DomainError("bus '" + b.id + "' has no area");
    }
    auto need_bus = [&](const std::string& id, const std::string& what) {
        if (!bus_ids.count(id)) throw DomainError(what + " references unknown bus '" + id + "'");
    };

    for (const auto& l : ac_lines) {
        need_bus(l.from_bus, "AC line " + l.id);
        need_bus(l.to_bus, "AC line " + l.id);
        if (area_of(l.from_bus) != area_of(l.to_bus))
            throw DomainError("AC line '" + l.id + "' crosses asynchronous areas");
        if (l.susceptance <= 0 || l.limit_mw <= 0)
            throw DomainError("AC line '" + l.id + "' needs positive susceptance and limit");
    }
    std::set<std::string> dc_ids;
    auto check_dc = [&](const std::string& id, const std::string& from, const std::string& to,
                        double cap) {
        if (!dc_ids.insert(id).second) throw DomainError("duplicate HVDC id '" + id + "'");
        need_bus(from, "HVDC " + id);
        need_bus(to, "HVDC " + id);
        if (area_of(from) == area_of(to))
            throw DomainError("HVDC '" + id + "' must interconnect two different areas");
        if (cap < 0) throw DomainError("HVDC '" + id + "' has negative capacity");
    };
    for (const auto& l : hvdc_existing) check_dc(l.id, l.from_bus, l.to_bus, l.capacity);
    for (const auto& c : candidates) {
        check_dc(c.id, c.from_bus, c.to_bus, c.p_cap_max);
        if (c.p_cap_min > c.p_cap_max || c.cap_increment <= 0 || c.fixed_cost < 0 ||
            c.capacity_cost < 0)
            throw DomainError("candidate HVDC '" + c.id + "' has inconsistent sizing data");
    }
    for (const auto& u : thermal) {
        need_bus(u.bus, "thermal unit " + u.id);
        sfr::validate_thermal(u.dyn);
        if (u.p_min < 0 || u.p_min > u.dyn.p_max)
            throw DomainError("thermal unit '" + u.id + "' has bad power limits");
    }
    for (const auto& u : hydro) {
        need_bus(u.bus, "hydro unit " + u.id);
        sfr::validate_hydro(u.dyn);
        if (u.p_dispatch_max < 0 || u.p_dispatch_max > u.dyn.p_max)
            throw DomainError("hydro unit '" + u.id + "' has bad dispatch limit");
    }
    for (const auto& u : renewables) need_bus(u.bus, "renewable unit " + u.id);
    for (const auto& c : ess_candidates) {
        need_bus(c.bus, "ESS candidate " + c.id);
        sfr::validate_storage(c.dyn);
        if (c.eta_c <= 0 || c.eta_c > 1 || c.eta_d <= 0 || c.eta_d > 1)
            throw DomainError("ESS candidate '" + c.id + "' has bad efficiencies");
        if (c.e_min > c.e_max) throw DomainError("ESS candidate '" + c.id + "' has e_min > e_max");
    }
    if (scenarios.empty()) throw DomainError("system has no scenarios");
    for (const auto& s : scenarios) {
        if (s.periods.empty()) throw DomainError("scenario '" + s.id + "' has no periods");
        if (s.weight_days <= 0 || s.period_hours <= 0)
            throw DomainError("scenario '" + s.id + "' needs positive weight and period length");
        for (const auto& p : s.periods) {
            for (const auto& [bus, mw] : p.bus_load) {
                need_bus(bus, "scenario " + s.id + " load");
                if (mw < 0) throw DomainError("negative load in scenario '" + s.id + "'");
            }
            for (const auto& [unit, mw] : p.renew_avail) {
                if (mw < 0) throw DomainError("negative availability in scenario '" + s.id + "'");
                const bool known = std::any_of(renewables.begin(), renewables.end(),
                                               [&](const RenewableUnit& r) { return r.id == unit; });
                if (!known)
                    throw DomainError("scenario '" + s.id + "' references unknown renewable '" +
                                      unit + "'");
            }
        }
    }
}

namespace {

json read_json(const std::filesystem::path& file, bool required) {
    std::ifstream in(file);
    if (!in) {
        if (required) throw UsageError("missing system file " + file.string());
        return json::object();
    }
    try {
        json j;
        in >> j;
        return j;
    } catch (const json::exception& e) {
        throw UsageError("bad JSON in " + file.string() + ": " + e.what());
    }
}

}  // namespace

PlanningSystem load_system(const std::filesystem::path& dir) {
    PlanningSystem sys;

    for (const auto& b : read_json(dir / "buses.json", true))
        sys.buses.push_back({b.at("id").get<std::string>(), b.at("area").get<std::string>()});

    const json lines = read_json(dir / "lines.json", true);
    for (const auto& l : lines.value("ac", json::array()))
        sys.ac_lines.push_back({l.at("id").get<std::string>(), l.at("from_bus").get<std::string>(),
                                l.at("to_bus").get<std::string>(), l.at("susceptance").get<double>(),
                                l.at("limit_mw").get<double>()});
    for (const auto& l : lines.value("hvdc", json::array()))
        sys.hvdc_existing.push_back({l.at("id").get<std::string>(),
                                     l.at("from_bus").get<std::string>(),
                                     l.at("to_bus").get<std::string>(),
                                     l.at("capacity").get<double>()});

    const json units = read_json(dir / "units.json", true);
    for (const auto& u : units.value("thermal", json::array())) {
        ThermalUnit t;
        t.id = u.at("id").get<std::string>();
        t.bus = u.at("bus").get<std::string>();
        t.dyn.id = t.id;
        t.dyn.p_max = u.at("p_max").get<double>();
        t.dyn.inertia_const = u.at("inertia_const").get<double>();
        t.dyn.droop = u.at("droop").get<double>();
        t.dyn.gov_tc = u.value("gov_tc", 0.5);
        t.dyn.chest_tc = u.value("chest_tc", 0.5);
        t.dyn.reheat_tc = u.value("reheat_tc", 12.0);
        t.dyn.hp_fraction = u.value("hp_fraction", 0.3);
        t.p_min = u.at("p_min").get<double>();
        t.ramp_up = u.value("ramp_up", t.dyn.p_max);
        t.ramp_down = u.value("ramp_down", t.dyn.p_max);
        t.min_on = u.value("min_on", 1);
        t.min_off = u.value("min_off", 1);
        t.startup_cost = u.value("startup_cost", 0.0);
        t.shutdown_cost = u.value("shutdown_cost", 0.0);
        t.no_load_cost = u.value("no_load_cost", 0.0);
        for (const auto& s : u.value("segments", json::array()))
            t.segments.push_back({s.at("up_to_mw").get<double>(),
                                  s.at("marginal_cost").get<double>()});
        if (t.segments.empty())
            t.segments.push_back({t.dyn.p_max, u.value("marginal_cost", 0.0)});
        t.initial_on = u.value("initial_on", 1);
        t.initial_power = u.value("initial_power", t.initial_on > 0 ? t.p_min : 0.0);
        sys.thermal.push_back(std::move(t));
    }
    for (const auto& u : units.value("hydro", json::array())) {
        HydroUnit h;
        h.id = u.at("id").get<std::string>();
        h.bus = u.at("bus").get<std::string>();
        h.dyn.id = h.id;
        h.dyn.p_max = u.at("p_max").get<double>();
        h.dyn.inertia_const = u.at("inertia_const").get<double>();
        h.dyn.perm_droop = u.value("perm_droop", 0.08);
        h.dyn.temp_droop = u.value("temp_droop", 0.3);
        h.dyn.gov_tc = u.value("gov_tc", 0.5);
        h.dyn.reset_tc = u.value("reset_tc", 12.0);
        h.dyn.water_tc = u.value("water_tc", 0.4);
        h.p_dispatch_max = u.value("p_dispatch_max", h.dyn.p_max);
        sys.hydro.push_back(std::move(h));
    }
    for (const auto& u : units.value("renewable", json::array()))
        sys.renewables.push_back({u.at("id").get<std::string>(), u.at("bus").get<std::string>()});

    const json cands = read_json(dir / "candidates.json", true);
    for (const auto& c : cands.value("hvdc", json::array()))
        sys.candidates.push_back(
            {c.at("id").get<std::string>(), c.at("from_bus").get<std::string>(),
             c.at("to_bus").get<std::string>(), c.value("length_km", 0.0),
             c.at("fixed_cost").get<double>(), c.at("capacity_cost").get<double>(),
             c.at("p_cap_min").get<double>(), c.at("p_cap_max").get<double>(),
             c.at("cap_increment").get<double>()});
    for (const auto& c : cands.value("ess", json::array())) {
        CandidateEss e;
        e.id = c.at("id").get<std::string>();
        e.bus = c.at("bus").get<std::string>();
        e.p_charge_max = c.at("p_charge_max").get<double>();
        e.p_discharge_max = c.at("p_discharge_max").get<double>();
        e.e_min = c.value("e_min", 0.0);
        e.e_max = c.at("e_max").get<double>();
        e.eta_c = c.value("eta_c", 0.9);
        e.eta_d = c.value("eta_d", 0.9);
        e.annualized_cost = c.at("annualized_cost").get<double>();
        e.dyn.id = e.id;
        e.dyn.p_max = c.value("droop_p_max", e.p_discharge_max);
        e.dyn.droop = c.value("droop", 0.05);
        e.dyn.delay_tc = c.value("delay_tc", 0.5);
        sys.ess_candidates.push_back(std::move(e));
    }

    for (const auto& s : read_json(dir / "scenarios.json", true)) {
        Scenario sc;
        sc.id = s.at("id").get<std::string>();
        sc.weight_days = s.at("weight_days").get<double>();
        sc.period_hours = s.value("period_hours", 1.0);
        for (const auto& p : s.at("periods")) {
            ScenarioPeriod period;
            const json load_j = p.value("load", json::object());
            for (const auto& [bus, mw] : load_j.items())
                period.bus_load[bus] = mw.get<double>();
            const json renew_j = p.value("renewable", json::object());
            for (const auto& [unit, mw] : renew_j.items())
                period.renew_avail[unit] = mw.get<double>();
            sc.periods.push_back(std::move(period));
        }
        sys.scenarios.push_back(std::move(sc));
    }

    const json em = read_json(dir / "emergencies.json", true);
    sys.emergencies.probability = em.value("probability", 1e-4);
    if (em.contains("lines") && em["lines"].is_array())
        for (const auto& id : em["lines"]) sys.emergencies.lines.push_back(id.get<std::string>());

    const json st = read_json(dir / "settings.json", false);
    sys.settings.base_frequency = st.value("base_frequency", 60.0);
    sys.settings.damping_coeff = st.value("damping_coeff", 1.0);
    sys.settings.nadir_bound_hz = st.value("nadir_bound_hz", 0.5);
    sys.settings.dlc_fraction = st.value("dlc_fraction", 0.02);
    sys.settings.c_dlc = st.value("c_dlc", 1000.0);
    sys.settings.c_epc = st.value("c_epc", 100.0);
    sys.settings.tau_epc = st.value("tau_epc", 0.2);
    sys.settings.tau_dlc = st.value("tau_dlc", 0.6);
    sys.settings.discount_rate = st.value("discount_rate", 0.0);
    sys.settings.lifespan_years = st.value("lifespan_years", 1);

    sys.finalize();
    return sys;
}

void PlanningSystem::finalize() {
    std::set<std::string> area_set;
    for (const auto& b : buses) area_set.insert(b.area);
    areas.assign(area_set.begin(), area_set.end());
    validate();
}

}  // namespace gridnadir::planner
