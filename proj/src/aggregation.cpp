#include "gridnadir/aggregation.hpp"

namespace gridnadir {

std::string feature_order_string() {
    std::string s;
    for (std::size_t i = 0; i < kFeatureNames.size(); ++i) {
        if (i) s += ',';
        s += kFeatureNames[i];
    }
    return s;
}

EquivalentParams equivalent_params(std::span<const sfr::ThermalUnitDyn> thermal,
                                   std::span<const sfr::HydroUnitDyn> hydro,
                                   std::span<const sfr::StorageUnitDyn> storage,
                                   double load_damping,
                                   const Commitments& commitments) {
    if (!commitments.empty() && commitments.size() != thermal.size())
        throw DomainError("commitment vector length does not match thermal fleet");

    EquivalentParams eq;
    eq.d_fast = load_damping;
    for (std::size_t k = 0; k < thermal.size(); ++k) {
        const auto& u = thermal[k];
        const bool on = commitments.empty() ? u.committed : commitments[k];
        if (!on) continue;
        eq.inertia += u.inertia_const * u.p_max;
        eq.d_fast += u.hp_fraction * u.p_max / u.droop;
        eq.d_slow += (1.0 - u.hp_fraction) * u.p_max / u.droop;
    }
    for (const auto& u : hydro) {
        eq.inertia += u.inertia_const * u.p_max;
        eq.d_fast += u.p_max / u.perm_droop;
    }
    for (const auto& u : storage) eq.d_fast += u.p_max / u.droop;
    return eq;
}

EquivalentParams equivalent_params(const sfr::AreaDynamicModel& model) {
    return equivalent_params(model.thermal, model.hydro, model.storage, model.load_damping, {});
}

FeatureVector feature_vector(const EquivalentParams& eq, const sfr::EfcAction& efc,
                             double imbalance) {
    FeatureVector f;
    f.x << eq.inertia, eq.d_fast, eq.d_slow, efc.epc_power, efc.dlc_power, imbalance;
    return f;
}

}  // namespace gridnadir
