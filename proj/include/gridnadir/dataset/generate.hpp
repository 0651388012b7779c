#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gridnadir/dataset/dataset.hpp"
#include "gridnadir/dataset/perturb.hpp"
#include "gridnadir/sfr/simulate.hpp"

namespace gridnadir::dataset {

/// A historical operating point: which thermal units were on and the area
/// load. Load damping is derived from the load (damping_coeff * total_load).
struct OperationSnapshot {
    Commitments commitments;  // aligned with the area's thermal fleet order
    double total_load = 0.0;  // MW
    std::string area_id;
};

/// One simulation case: an imbalance paired with an EFC scheme.
struct SimCase {
    double imbalance = 0.0;  // MW, signed (shortage negative)
    double epc = 0.0;        // MW, signed net area injection
    double dlc = 0.0;        // MW, >= 0
};

/// EPC schemes are counteraction fractions: scheme k holds a draw
/// phi_k ~ U[0, epc_fraction_max]; a case with imbalance dP gets the signed
/// counteraction min(phi_k |dP|, epc_max) opposing dP. DLC schemes are MW
/// draws within the per-snapshot resource pool.
struct CaseGrid {
    std::vector<double> imbalances;  // MW, signed
    int n_epc = 10;
    int n_dlc = 10;
    double epc_fraction_max = 1.15;  // slight overshoot kept for boundary coverage
    double epc_max = 0.0;            // absolute resource cap in MW
    double dlc_max_fraction = 0.02;  // of snapshot load
};

/// Full cross product of the randomized EPC schemes, DLC schemes and the
/// imbalance grid: n_epc * n_dlc * |imbalances| cases, deterministic per seed.
std::vector<SimCase> enumerate_cases(const OperationSnapshot& snapshot, const CaseGrid& grid,
                                     std::uint64_t seed);

struct GenerateConfig {
    double perturb_width = 0.5;
    int reps_per_snapshot = 4;  // perturbed copies per snapshot
    int clusters = 50;          // representative operating points kept
    CaseGrid grid;
    double threshold_hz = 0.5;
    double band_lo = 0.4;
    double band_hi = 0.6;
    double tau_epc = 0.2;  // s
    double tau_dlc = 0.6;  // s
    double dt = 1e-3;
    double horizon = 20.0;
    double damping_coeff = 1.0;  // D_load = coeff * total_load
    std::uint64_t seed = 0;
    int jobs = 1;
};

/// A perturbed operating point that survived the clustering step.
struct Representative {
    sfr::AreaDynamicModel model;
    EquivalentParams eq;
    std::size_t snapshot_idx = 0;
    std::size_t variant_idx = 0;  // index into the perturbed-variant sequence
};

/// Perturbs every snapshot `reps_per_snapshot` times and keeps the k-medoids
/// representatives of the (H, D_fast, D_slow) cloud.
std::vector<Representative> representative_models(const sfr::AreaDynamicModel& fleet,
                                                  const std::vector<OperationSnapshot>& snapshots,
                                                  const GenerateConfig& config);

/// Per-representative case seed, exposed so labels can be re-checked by
/// direct re-simulation.
std::uint64_t case_seed(const GenerateConfig& config, std::size_t variant_idx);

/// Simulation-based dataset generation: perturb each snapshot's dynamic
/// parameters, keep k-medoids representatives of the equivalent aggregated
/// parameters, sweep every case through the SFR engine, band-filter on the
/// nadir and label against the threshold.
Dataset generate(const sfr::AreaDynamicModel& fleet,
                 const std::vector<OperationSnapshot>& snapshots, const GenerateConfig& config);

/// Snapshot file: JSON array of {commitments: {unit_id: bool}, total_load}.
std::vector<OperationSnapshot> load_snapshots(const std::filesystem::path& file,
                                              const sfr::AreaDynamicModel& fleet,
                                              const std::string& area_id);

}  // namespace gridnadir::dataset
