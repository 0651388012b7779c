#include "gridnadir/sfr/units.hpp"

#include <cmath>
#include <utility>

namespace gridnadir::sfr {

namespace {
void require(bool ok, const std::string& msg) {
    if (!ok) throw DomainError(msg);
}
std::string tag(const std::string& id) { return id.empty() ? "unit" : "unit '" + id + "'"; }
}  // namespace

void validate_thermal(const ThermalUnitDyn& u) {
    require(u.inertia_const > 0, tag(u.id) + ": inertia_const must be > 0");
    require(u.p_max > 0, tag(u.id) + ": p_max must be > 0");
    require(u.droop > 0, tag(u.id) + ": droop must be > 0");
    require(u.gov_tc > 0 && u.chest_tc > 0 && u.reheat_tc > 0,
            tag(u.id) + ": time constants must be > 0");
    require(u.hp_fraction >= 0.0 && u.hp_fraction <= 1.0,
            tag(u.id) + ": hp_fraction must lie in [0,1]");
}

void validate_hydro(const HydroUnitDyn& u) {
    require(u.inertia_const > 0 && u.p_max > 0, tag(u.id) + ": inertia and p_max must be > 0");
    require(u.perm_droop > 0 && u.temp_droop > 0, tag(u.id) + ": droops must be > 0");
    require(u.gov_tc > 0 && u.reset_tc > 0 && u.water_tc > 0,
            tag(u.id) + ": time constants must be > 0");
}

void validate_storage(const StorageUnitDyn& u) {
    require(u.p_max > 0, tag(u.id) + ": p_max must be > 0");
    require(u.droop > 0, tag(u.id) + ": droop must be > 0");
    require(u.delay_tc > 0, tag(u.id) + ": delay_tc must be > 0");
}

void validate_efc(const EfcAction& efc) {
    require(efc.epc_delay >= 0 && efc.dlc_delay >= 0, "EFC delays must be >= 0");
    require(efc.dlc_power >= 0, "DLC power must be >= 0");
    require(std::isfinite(efc.epc_power) && std::isfinite(efc.dlc_power),
            "EFC powers must be finite");
}

double total_inertia_mws(const AreaDynamicModel& m) {
    double h = 0.0;
    for (const auto& u : m.thermal)
        if (u.committed) h += u.inertia_const * u.p_max;
    for (const auto& u : m.hydro) h += u.inertia_const * u.p_max;
    return 2.0 * h;
}

AreaDynamicModel build_area_model(std::vector<ThermalUnitDyn> thermal,
                                  std::vector<HydroUnitDyn> hydro,
                                  std::vector<StorageUnitDyn> storage,
                                  double load_damping,
                                  double base_frequency) {
    for (const auto& u : thermal) validate_thermal(u);
    for (const auto& u : hydro) validate_hydro(u);
    for (const auto& u : storage) validate_storage(u);
    require(load_damping >= 0, "load_damping must be >= 0");
    require(base_frequency > 0, "base_frequency must be > 0");

    AreaDynamicModel m{std::move(thermal), std::move(hydro), std::move(storage), load_damping,
                       base_frequency};
    if (total_inertia_mws(m) <= 0.0)
        throw DomainError(
            "zero total inertia: need at least one committed thermal unit or a hydro unit");
    return m;
}

}  // namespace gridnadir::sfr
