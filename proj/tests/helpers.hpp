#pragma once

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "gridnadir/common/rng.hpp"
#include "gridnadir/sfr/units.hpp"

namespace gridnadir::testing {

/// Inertia-plus-damping area with no effective governor response. The huge
/// droop turns the thermal governor into a zero-gain block, so the closed
/// loop is the first-order system 2H f' = dP - D f.
inline sfr::AreaDynamicModel inertia_damping_area(double two_h_mws, double d_load,
                                                  double f0 = 60.0) {
    sfr::ThermalUnitDyn t;
    t.id = "inertia-only";
    t.p_max = 100.0;
    t.inertia_const = two_h_mws / (2.0 * t.p_max);
    t.droop = 1e12;
    t.gov_tc = 0.5;
    t.chest_tc = 0.5;
    t.reheat_tc = 12.0;
    t.hp_fraction = 0.3;
    t.committed = true;
    return sfr::build_area_model({t}, {}, {}, d_load, f0);
}

inline sfr::ThermalUnitDyn paper_thermal(const std::string& id, double p_max, double h,
                                         bool committed = true) {
    sfr::ThermalUnitDyn t;
    t.id = id;
    t.p_max = p_max;
    t.inertia_const = h;
    t.droop = 0.06;
    t.gov_tc = 0.5;
    t.chest_tc = 0.5;
    t.reheat_tc = 12.0;
    t.hp_fraction = 0.3;
    t.committed = committed;
    return t;
}

inline sfr::HydroUnitDyn paper_hydro(const std::string& id, double p_max, double h) {
    sfr::HydroUnitDyn u;
    u.id = id;
    u.p_max = p_max;
    u.inertia_const = h;
    u.perm_droop = 0.08;
    u.temp_droop = 0.3;
    u.gov_tc = 0.5;
    u.reset_tc = 12.0;
    u.water_tc = 0.4;
    return u;
}

inline sfr::StorageUnitDyn paper_storage(const std::string& id, double p_max) {
    sfr::StorageUnitDyn s;
    s.id = id;
    s.p_max = p_max;
    s.droop = 0.05;
    s.delay_tc = 0.5;
    return s;
}

/// Desk-scale analogue of the paper's Area-1 experiment: tuned so a 200 MW
/// shortage without EFC produces a nadir around 1.4 Hz.
inline sfr::AreaDynamicModel paper_style_area() {
    return sfr::build_area_model({paper_thermal("g1", 480.0, 4.5), paper_thermal("g2", 320.0, 4.0)},
                                 {paper_hydro("hy1", 100.0, 3.5)},
                                 {paper_storage("e1", 240.0)}, 1600.0, 60.0);
}

/// Random mixed fleet for oracle sweeps (thermal + hydro + storage).
inline sfr::AreaDynamicModel random_fleet(Rng& rng) {
    std::vector<sfr::ThermalUnitDyn> thermal;
    std::vector<sfr::HydroUnitDyn> hydro;
    std::vector<sfr::StorageUnitDyn> storage;
    const int nt = 1 + static_cast<int>(rng.below(3));
    for (int i = 0; i < nt; ++i) {
        auto t = paper_thermal("t" + std::to_string(i), rng.uniform(150.0, 450.0),
                               rng.uniform(3.0, 6.0));
        t.droop = rng.uniform(0.04, 0.09);
        t.hp_fraction = rng.uniform(0.2, 0.4);
        thermal.push_back(t);
    }
    auto h = paper_hydro("h0", rng.uniform(80.0, 200.0), rng.uniform(3.0, 5.0));
    h.perm_droop = rng.uniform(0.06, 0.1);
    hydro.push_back(h);
    if (rng.uniform() < 0.5) storage.push_back(paper_storage("e0", rng.uniform(20.0, 80.0)));
    return sfr::build_area_model(thermal, hydro, storage, rng.uniform(500.0, 1500.0), 60.0);
}

inline std::filesystem::path temp_dir(const std::string& tag) {
    auto p = std::filesystem::temp_directory_path() /
             ("gridnadir_test_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace gridnadir::testing
