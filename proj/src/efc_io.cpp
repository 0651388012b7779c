#include "gridnadir/efc/efc_io.hpp"

#include <fstream>
#include <set>

#include "gridnadir/common/num_format.hpp"
#include "json.hpp"

namespace gridnadir::efc {

using nlohmann::json;
using nlohmann::ordered_json;

CaseBundle load_case(const std::filesystem::path& file, const planner::PlanningSystem& sys) {
    std::ifstream in(file);
    if (!in) throw UsageError("cannot open EFC case file " + file.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw UsageError("bad JSON in " + file.string() + ": " + e.what());
    }

    CaseBundle bundle;
    for (const auto& l : j.value("lines", json::array()))
        bundle.lines.push_back({l.at("id").get<std::string>(),
                                l.at("from_area").get<std::string>(),
                                l.at("to_area").get<std::string>(), l.at("capacity").get<double>(),
                                l.at("prefault_flow").get<double>()});
    if (bundle.lines.empty()) throw UsageError("EFC case declares no HVDC lines");

    bundle.costs.c_dlc = j.value("c_dlc", sys.settings.c_dlc);
    bundle.costs.c_epc = j.value("c_epc", sys.settings.c_epc);

    const json areas_j = j.value("areas", json::object());
    for (const auto& area : sys.areas) {
        if (!areas_j.contains(area))
            throw UsageError("EFC case misses the operating point of area '" + area + "'");
        const json& aj = areas_j.at(area);
        const double load = aj.at("total_load").get<double>();
        std::set<std::string> on;
        for (const auto& id : aj.value("on", json::array())) on.insert(id.get<std::string>());

        AreaEfcSpec spec;
        spec.id = area;
        spec.model.base_frequency = sys.settings.base_frequency;
        spec.model.load_damping = sys.settings.damping_coeff * load;
        for (const auto* u : sys.thermal_in(area)) {
            auto dyn = u->dyn;
            dyn.committed = on.count(u->id) > 0;
            if (dyn.committed) on.erase(u->id);
            spec.model.thermal.push_back(dyn);
        }
        for (const auto& id : on)
            throw UsageError("EFC case commits unknown thermal unit '" + id + "' in area '" +
                             area + "'");
        for (const auto* u : sys.hydro_in(area)) spec.model.hydro.push_back(u->dyn);
        spec.dlc_max = aj.value("dlc_max", sys.settings.dlc_fraction * load);
        bundle.areas.push_back(std::move(spec));
    }

    const std::string faulted = j.at("faulted_line").get<std::string>();
    bundle.scenario =
        scenario_for_fault(bundle.lines, faulted, j.value("probability", 1e-4));
    return bundle;
}

void write_schedule(const EfcSchedule& schedule, const CaseBundle& bundle,
                    const std::filesystem::path& file) {
    ordered_json j;
    j["format"] = "gridnadir-efc-schedule-1";
    j["faulted_line"] = bundle.scenario.faulted_line;
    j["cost"] = schedule.cost;
    ordered_json epc = ordered_json::object();
    for (const auto& [id, v] : schedule.epc_by_line) epc[id] = v;
    j["epc_by_line"] = epc;
    ordered_json dlc = ordered_json::object();
    for (const auto& [id, v] : schedule.dlc_by_area) dlc[id] = v;
    j["dlc_by_area"] = dlc;
    ordered_json imbalance = ordered_json::object();
    for (const auto& [id, v] : bundle.scenario.imbalance) imbalance[id] = v;
    j["imbalance_by_area"] = imbalance;

    std::ofstream out(file);
    if (!out) throw EnvironmentError("cannot write schedule file " + file.string());
    out << j.dump(2) << '\n';
}

void write_schedule_csv(const EfcSchedule& schedule, const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw EnvironmentError("cannot write schedule file " + file.string());
    out << "kind,id,response_mw\n";
    for (const auto& [id, v] : schedule.epc_by_line)
        out << "epc," << id << ',' << format_double(v) << '\n';
    for (const auto& [id, v] : schedule.dlc_by_area)
        out << "dlc," << id << ',' << format_double(v) << '\n';
}

void write_verification_csv(const std::map<std::string, VerifiedNadir>& verification,
                            double bound_hz, const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw EnvironmentError("cannot write verification file " + file.string());
    out << "area,nadir_hz,time_s,bound_hz,violates\n";
    for (const auto& [area, v] : verification)
        out << area << ',' << format_double(v.nadir_hz) << ',' << format_double(v.time_s) << ','
            << format_double(bound_hz) << ',' << (v.violates ? 1 : 0) << '\n';
}

}  // namespace gridnadir::efc
