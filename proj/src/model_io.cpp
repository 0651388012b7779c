#include "gridnadir/sfr/model_io.hpp"

#include <fstream>

#include "gridnadir/common/num_format.hpp"

namespace gridnadir::sfr {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

double get_num(const json& j, const char* key, double fallback, bool required) {
    if (!j.contains(key)) {
        if (required) throw UsageError(std::string("missing field '") + key + "'");
        return fallback;
    }
    if (!j.at(key).is_number()) throw UsageError(std::string("field '") + key + "' must be a number");
    return j.at(key).get<double>();
}

}  // namespace

AreaDynamicModel area_model_from_json(const json& j) {
    std::vector<ThermalUnitDyn> thermal;
    std::vector<HydroUnitDyn> hydro;
    std::vector<StorageUnitDyn> storage;

    for (const auto& u : j.value("thermal", json::array())) {
        ThermalUnitDyn t;
        t.id = u.value("id", "");
        t.inertia_const = get_num(u, "inertia_const", 0, true);
        t.p_max = get_num(u, "p_max", 0, true);
        t.droop = get_num(u, "droop", 0, true);
        t.gov_tc = get_num(u, "gov_tc", 0, true);
        t.chest_tc = get_num(u, "chest_tc", 0, true);
        t.reheat_tc = get_num(u, "reheat_tc", 0, true);
        t.hp_fraction = get_num(u, "hp_fraction", 0, true);
        t.committed = u.value("committed", true);
        thermal.push_back(t);
    }
    for (const auto& u : j.value("hydro", json::array())) {
        HydroUnitDyn h;
        h.id = u.value("id", "");
        h.inertia_const = get_num(u, "inertia_const", 0, true);
        h.p_max = get_num(u, "p_max", 0, true);
        h.perm_droop = get_num(u, "perm_droop", 0, true);
        h.temp_droop = get_num(u, "temp_droop", 0, true);
        h.gov_tc = get_num(u, "gov_tc", 0, true);
        h.reset_tc = get_num(u, "reset_tc", 0, true);
        h.water_tc = get_num(u, "water_tc", 0, true);
        hydro.push_back(h);
    }
    for (const auto& u : j.value("storage", json::array())) {
        StorageUnitDyn s;
        s.id = u.value("id", "");
        s.p_max = get_num(u, "p_max", 0, true);
        s.droop = get_num(u, "droop", 0, true);
        s.delay_tc = get_num(u, "delay_tc", 0, true);
        storage.push_back(s);
    }

    return build_area_model(std::move(thermal), std::move(hydro), std::move(storage),
                            get_num(j, "load_damping", 0, true),
                            get_num(j, "base_frequency", 60.0, false));
}

ordered_json area_model_to_json(const AreaDynamicModel& m) {
    ordered_json j;
    j["base_frequency"] = m.base_frequency;
    j["load_damping"] = m.load_damping;
    j["thermal"] = ordered_json::array();
    for (const auto& u : m.thermal)
        j["thermal"].push_back({{"id", u.id},
                                {"inertia_const", u.inertia_const},
                                {"p_max", u.p_max},
                                {"droop", u.droop},
                                {"gov_tc", u.gov_tc},
                                {"chest_tc", u.chest_tc},
                                {"reheat_tc", u.reheat_tc},
                                {"hp_fraction", u.hp_fraction},
                                {"committed", u.committed}});
    j["hydro"] = ordered_json::array();
    for (const auto& u : m.hydro)
        j["hydro"].push_back({{"id", u.id},
                              {"inertia_const", u.inertia_const},
                              {"p_max", u.p_max},
                              {"perm_droop", u.perm_droop},
                              {"temp_droop", u.temp_droop},
                              {"gov_tc", u.gov_tc},
                              {"reset_tc", u.reset_tc},
                              {"water_tc", u.water_tc}});
    j["storage"] = ordered_json::array();
    for (const auto& u : m.storage)
        j["storage"].push_back({{"id", u.id},
                                {"p_max", u.p_max},
                                {"droop", u.droop},
                                {"delay_tc", u.delay_tc}});
    return j;
}

AreaDynamicModel load_area_model(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw UsageError("cannot open area model file " + file.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw UsageError("bad JSON in " + file.string() + ": " + e.what());
    }
    return area_model_from_json(j);
}

void write_trace_csv(const FrequencyTrace& trace, const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw EnvironmentError("cannot write trace file " + file.string());
    out << "time_s,delta_f_hz\n";
    for (std::size_t i = 0; i < trace.samples.size(); ++i)
        out << format_double(trace.time_at(i)) << ',' << format_double(trace.samples[i]) << '\n';
}

}  // namespace gridnadir::sfr
