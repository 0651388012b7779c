#include "gridnadir/dataset/perturb.hpp"

#include <algorithm>

#include "gridnadir/common/rng.hpp"

namespace gridnadir::dataset {

sfr::AreaDynamicModel perturb(const sfr::AreaDynamicModel& model, const PerturbationSpec& spec) {
    if (spec.relative_width < 0.0 || spec.relative_width >= 1.0)
        throw DomainError("perturbation width must lie in [0, 1)");

    Rng rng(spec.seed);
    const double w = spec.relative_width;
    auto draw = [&] { return rng.uniform(1.0 - w, 1.0 + w); };

    sfr::AreaDynamicModel out = model;
    for (auto& u : out.thermal) {
        u.inertia_const *= draw();
        u.droop *= draw();
        u.hp_fraction = std::clamp(u.hp_fraction * draw(), 0.0, 1.0);
    }
    for (auto& u : out.hydro) {
        u.inertia_const *= draw();
        u.perm_droop *= draw();
    }
    for (auto& u : out.storage) u.droop *= draw();
    return out;
}

}  // namespace gridnadir::dataset
