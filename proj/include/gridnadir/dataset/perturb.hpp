#pragma once

#include <cstdint>

#include "gridnadir/sfr/units.hpp"

namespace gridnadir::dataset {

/// Multiplicative uniform perturbation of the principal SFR parameters:
/// inertia constants, governor regulation coefficients of every unit type,
/// and the HP turbine fraction of thermal units.
struct PerturbationSpec {
    double relative_width = 0.5;  // draws in [1-w, 1+w]
    std::uint64_t seed = 0;
};

/// Returns a perturbed copy of the fleet. Deterministic given the spec seed;
/// draw order is fixed (thermal H/R/F_H, then hydro H/R_P, then storage R_E).
/// hp_fraction is clamped to [0,1] after scaling.
sfr::AreaDynamicModel perturb(const sfr::AreaDynamicModel& model, const PerturbationSpec& spec);

}  // namespace gridnadir::dataset
