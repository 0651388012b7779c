#include "gridnadir/dataset/generate.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "gridnadir/common/num_format.hpp"
#include "gridnadir/common/parallel.hpp"
#include "gridnadir/common/rng.hpp"
#include "gridnadir/dataset/kmedoids.hpp"
#include "json.hpp"

namespace gridnadir::dataset {

std::vector<SimCase> enumerate_cases(const OperationSnapshot& snapshot, const CaseGrid& grid,
                                     std::uint64_t seed) {
    if (grid.imbalances.empty()) throw DomainError("empty imbalance grid");
    if (grid.n_epc <= 0 || grid.n_dlc <= 0) throw DomainError("EFC scheme counts must be positive");

    Rng rng(seed);
    std::vector<double> epc_fractions(static_cast<std::size_t>(grid.n_epc));
    for (auto& v : epc_fractions) v = rng.uniform(0.0, grid.epc_fraction_max);
    const double dlc_max = grid.dlc_max_fraction * snapshot.total_load;
    std::vector<double> dlc_draws(static_cast<std::size_t>(grid.n_dlc));
    for (auto& v : dlc_draws) v = rng.uniform(0.0, dlc_max);

    std::vector<SimCase> cases;
    cases.reserve(epc_fractions.size() * dlc_draws.size() * grid.imbalances.size());
    for (double phi : epc_fractions)
        for (double dlc : dlc_draws)
            for (double dp : grid.imbalances) {
                const double mag = std::min(phi * std::abs(dp), grid.epc_max);
                cases.push_back({dp, dp >= 0.0 ? -mag : mag, dlc});
            }
    return cases;
}

namespace {

sfr::AreaDynamicModel with_snapshot(const sfr::AreaDynamicModel& fleet,
                                    const OperationSnapshot& snap, double damping_coeff) {
    if (snap.total_load <= 0.0) throw DomainError("snapshot total_load must be > 0");
    if (snap.commitments.size() != fleet.thermal.size())
        throw DomainError("snapshot commitment vector does not match the thermal fleet");
    sfr::AreaDynamicModel m = fleet;
    for (std::size_t k = 0; k < m.thermal.size(); ++k) m.thermal[k].committed = snap.commitments[k];
    m.load_damping = damping_coeff * snap.total_load;
    return m;
}

}  // namespace

std::uint64_t case_seed(const GenerateConfig& config, std::size_t variant_idx) {
    return derive_seed(config.seed, "cases", variant_idx);
}

std::vector<Representative> representative_models(const sfr::AreaDynamicModel& fleet,
                                                  const std::vector<OperationSnapshot>& snapshots,
                                                  const GenerateConfig& config) {
    if (snapshots.empty()) throw DomainError("no operation snapshots supplied");

    std::vector<Representative> variants;
    variants.reserve(snapshots.size() * static_cast<std::size_t>(config.reps_per_snapshot));
    for (std::size_t s = 0; s < snapshots.size(); ++s) {
        const auto base = with_snapshot(fleet, snapshots[s], config.damping_coeff);
        for (int r = 0; r < config.reps_per_snapshot; ++r) {
            PerturbationSpec spec{config.perturb_width,
                                  derive_seed(config.seed, "perturb", variants.size())};
            Representative v;
            v.model = perturb(base, spec);
            v.eq = equivalent_params(v.model);
            v.snapshot_idx = s;
            v.variant_idx = variants.size();
            variants.push_back(std::move(v));
        }
    }

    std::vector<EquivalentParams> eqs;
    eqs.reserve(variants.size());
    for (const auto& v : variants) eqs.push_back(v.eq);
    const int k = std::min<int>(config.clusters, static_cast<int>(variants.size()));
    const std::vector<int> medoids = kmedoids(eqs, k, derive_seed(config.seed, "kmedoids"));

    std::vector<Representative> reps;
    reps.reserve(medoids.size());
    for (int m : medoids) reps.push_back(variants[static_cast<std::size_t>(m)]);
    return reps;
}

Dataset generate(const sfr::AreaDynamicModel& fleet,
                 const std::vector<OperationSnapshot>& snapshots, const GenerateConfig& config) {
    if (!(config.band_lo <= config.threshold_hz && config.threshold_hz <= config.band_hi))
        throw DomainError("threshold must lie inside the band filter");

    const std::vector<Representative> reps = representative_models(fleet, snapshots, config);

    // sweep cases per representative; representatives are independent, so the
    // sweep parallelizes, with output order fixed by the representative index
    const std::size_t dlc_shift = sfr::delay_index(config.tau_dlc, config.dt);
    const std::size_t epc_shift = sfr::delay_index(config.tau_epc, config.dt);
    std::vector<std::vector<LabeledSample>> per_rep(reps.size());

    parallel_for(reps.size(), config.jobs, [&](std::size_t ri) {
        const Representative& v = reps[ri];
        const auto cases = enumerate_cases(snapshots[v.snapshot_idx], config.grid,
                                           case_seed(config, v.variant_idx));
        const auto sr = sfr::unit_step_response(v.model, config.dt, config.horizon);
        auto& rows = per_rep[ri];
        for (const auto& c : cases) {
            double nadir_hz = 0.0;
            try {
                nadir_hz = sr.superposed_nadir(c.imbalance, c.dlc, dlc_shift, c.epc, epc_shift).first;
            } catch (const Error& e) {
                throw DomainError("simulation failed for case (dp=" + format_double(c.imbalance) +
                                  ", epc=" + format_double(c.epc) +
                                  ", dlc=" + format_double(c.dlc) + "): " + e.what());
            }
            if (nadir_hz < config.band_lo || nadir_hz > config.band_hi) continue;
            LabeledSample row;
            row.features = feature_vector(
                v.eq, sfr::EfcAction{c.epc, config.tau_epc, c.dlc, config.tau_dlc}, c.imbalance);
            row.nadir_hz = nadir_hz;
            row.label = nadir_hz > config.threshold_hz ? Label::insecure : Label::secure;
            rows.push_back(row);
        }
    });

    Dataset ds;
    ds.feature_order = feature_order_string();
    ds.threshold_hz = config.threshold_hz;
    ds.band_lo = config.band_lo;
    ds.band_hi = config.band_hi;
    ds.dt = config.dt;
    ds.horizon = config.horizon;
    ds.seed = config.seed;
    for (auto& rows : per_rep)
        ds.rows.insert(ds.rows.end(), rows.begin(), rows.end());
    return ds;
}

std::vector<OperationSnapshot> load_snapshots(const std::filesystem::path& file,
                                              const sfr::AreaDynamicModel& fleet,
                                              const std::string& area_id) {
    std::ifstream in(file);
    if (!in) throw UsageError("cannot open snapshot file " + file.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("bad JSON in " + file.string() + ": " + e.what());
    }
    if (!j.is_array()) throw UsageError("snapshot file must hold a JSON array");

    std::vector<OperationSnapshot> out;
    for (const auto& entry : j) {
        if (entry.contains("area") && entry["area"].get<std::string>() != area_id) continue;
        OperationSnapshot snap;
        snap.area_id = area_id;
        snap.total_load = entry.value("total_load", 0.0);
        std::set<std::string> on;
        for (const auto& id : entry.value("on", nlohmann::json::array()))
            on.insert(id.get<std::string>());
        snap.commitments.resize(fleet.thermal.size());
        std::set<std::string> known;
        for (std::size_t k = 0; k < fleet.thermal.size(); ++k) {
            known.insert(fleet.thermal[k].id);
            snap.commitments[k] = on.count(fleet.thermal[k].id) > 0;
        }
        for (const auto& id : on)
            if (!known.count(id))
                throw UsageError("snapshot references unknown thermal unit '" + id + "'");
        out.push_back(std::move(snap));
    }
    if (out.empty())
        throw UsageError("snapshot file " + file.string() + " has no entries for area '" +
                         area_id + "'");
    return out;
}

}  // namespace gridnadir::dataset
