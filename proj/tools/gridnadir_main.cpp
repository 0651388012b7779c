// gridnadir: simulate multi-area frequency response under HVDC-fault
// emergencies, learn frequency-security rules, and plan HVDC capacity.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "gridnadir/common/manifest.hpp"
#include "gridnadir/common/num_format.hpp"
#include "gridnadir/dataset/generate.hpp"
#include "gridnadir/efc/efc_io.hpp"
#include "gridnadir/milp/solver.hpp"
#include "gridnadir/planner/model.hpp"
#include "gridnadir/planner/result.hpp"
#include "gridnadir/planner/validate.hpp"
#include "gridnadir/sfr/model_io.hpp"
#include "gridnadir/wodt/cart.hpp"
#include "gridnadir/wodt/train.hpp"
#include "gridnadir/wodt/tree_io.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace gridnadir;

namespace {

milp::SolverConfig solver_from_flags(const std::string& solver_path, double gap,
                                     double time_limit) {
    auto cfg = milp::resolve_solver(solver_path);
    if (!cfg)
        throw EnvironmentError(
            "no MILP solver found: pass --solver, set GRIDNADIR_SOLVER, or put highs/cbc on PATH");
    cfg->mip_rel_gap = gap;
    cfg->time_limit_s = time_limit;
    return *cfg;
}

sfr::AreaDynamicModel fleet_for_area(const planner::PlanningSystem& sys, const std::string& area) {
    sfr::AreaDynamicModel fleet;
    fleet.base_frequency = sys.settings.base_frequency;
    bool known = false;
    for (const auto& a : sys.areas) known = known || a == area;
    if (!known) throw UsageError("system has no area '" + area + "'");
    for (const auto* u : sys.thermal_in(area)) fleet.thermal.push_back(u->dyn);
    for (const auto* u : sys.hydro_in(area)) fleet.hydro.push_back(u->dyn);
    return fleet;
}

planner::RuleSets load_rules(const fs::path& trees_dir, const std::vector<std::string>& areas) {
    planner::RuleSets rules;
    for (const auto& area : areas) {
        const fs::path file = trees_dir / ("tree_" + area + ".json");
        if (!fs::exists(file))
            throw UsageError("missing tree file " + file.string() + " for area '" + area + "'");
        auto regions = wodt::extract_secure_regions(wodt::load_tree(file));
        if (regions.empty())
            throw DomainError("tree for area '" + area + "' has no secure leaf");
        // shortage-trained rules gate surplus events through their mirrors
        rules[area] = wodt::with_mirrors(regions);
    }
    return rules;
}

int run_simulate(const std::string& model_file, double imbalance, double epc, double epc_delay,
                 double dlc, double dlc_delay, double dt, double horizon,
                 const std::string& out_file) {
    const auto model = sfr::load_area_model(model_file);
    sfr::EfcAction efc{epc, epc_delay, dlc, dlc_delay};
    const auto trace = sfr::simulate(model, imbalance, efc, dt, horizon);
    sfr::write_trace_csv(trace, out_file);
    const auto [nad, at] = sfr::nadir(trace);
    std::cout << "nadir_hz=" << format_double(nad) << " at_s=" << format_double(at)
              << " qss_hz=" << format_double(sfr::quasi_steady_state(
                                model, imbalance + epc + dlc))
              << "\n";

    RunManifest manifest;
    manifest.command = "simulate";
    manifest.inputs = {model_file};
    manifest.artifacts = {out_file};
    manifest.write(fs::path(out_file).string() + ".manifest.json");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"frequency-constrained HVDC planning toolchain"};
    app.require_subcommand(1);

    // ---- simulate -----------------------------------------------------------
    auto* sim = app.add_subcommand("simulate", "run one SFR simulation and write the trace");
    std::string sim_model, sim_out = "trace.csv";
    double sim_imbalance = 0.0, sim_epc = 0.0, sim_epc_delay = 0.2, sim_dlc = 0.0,
           sim_dlc_delay = 0.6, sim_dt = sfr::kDefaultDt, sim_horizon = sfr::kDefaultHorizon;
    sim->add_option("--model", sim_model, "area model JSON")->required();
    sim->add_option("--imbalance", sim_imbalance, "initial imbalance in MW (shortage < 0)")
        ->required();
    sim->add_option("--epc", sim_epc, "EPC response in MW (signed)");
    sim->add_option("--epc-delay", sim_epc_delay, "EPC delay in s");
    sim->add_option("--dlc", sim_dlc, "DLC response in MW");
    sim->add_option("--dlc-delay", sim_dlc_delay, "DLC delay in s");
    sim->add_option("--dt", sim_dt, "integration step in s");
    sim->add_option("--horizon", sim_horizon, "simulation horizon in s");
    sim->add_option("--out", sim_out, "trace CSV destination");

    // ---- gen-dataset ---------------------------------------------------------
    auto* gen = app.add_subcommand("gen-dataset", "generate the labeled SFR dataset for one area");
    std::string gen_system, gen_area, gen_snapshots, gen_out = "dataset.csv";
    dataset::GenerateConfig gen_cfg;
    double gen_imb_min = -650.0, gen_imb_max = -30.0;
    int gen_imb_steps = 40;
    std::pair<double, double> gen_band{0.4, 0.6};
    gen->add_option("--system", gen_system, "system directory")->required();
    gen->add_option("--area", gen_area, "area id")->required();
    gen->add_option("--snapshots", gen_snapshots,
                    "snapshot JSON (default <system>/snapshots.json)");
    gen->add_option("--out", gen_out, "dataset CSV destination");
    gen->add_option("--clusters", gen_cfg.clusters, "representative operating points");
    gen->add_option("--reps", gen_cfg.reps_per_snapshot, "perturbed copies per snapshot");
    gen->add_option("--perturb", gen_cfg.perturb_width, "relative perturbation width");
    gen->add_option("--imbalance-min", gen_imb_min, "imbalance grid start in MW");
    gen->add_option("--imbalance-max", gen_imb_max, "imbalance grid end in MW");
    gen->add_option("--imbalance-steps", gen_imb_steps, "imbalance grid size");
    gen->add_option("--epc-schemes", gen_cfg.grid.n_epc, "randomized EPC schemes per point");
    gen->add_option("--dlc-schemes", gen_cfg.grid.n_dlc, "randomized DLC schemes per point");
    gen->add_option("--epc-fraction-max", gen_cfg.grid.epc_fraction_max,
                    "EPC scheme draw bound as a counteraction fraction");
    gen->add_option("--epc-max", gen_cfg.grid.epc_max, "EPC resource cap in MW");
    gen->add_option("--dlc-fraction", gen_cfg.grid.dlc_max_fraction, "DLC bound as load fraction");
    gen->add_option("--threshold", gen_cfg.threshold_hz, "security threshold in Hz");
    gen->add_option("--band", gen_band, "nadir band filter lo hi in Hz");
    gen->add_option("--dt", gen_cfg.dt, "integration step in s");
    gen->add_option("--horizon", gen_cfg.horizon, "simulation horizon in s");
    gen->add_option("--tau-epc", gen_cfg.tau_epc, "EPC delay in s");
    gen->add_option("--tau-dlc", gen_cfg.tau_dlc, "DLC delay in s");
    gen->add_option("--seed", gen_cfg.seed, "root seed");
    gen->add_option("--jobs", gen_cfg.jobs, "worker threads");

    // ---- train-wodt -----------------------------------------------------------
    auto* train = app.add_subcommand("train-wodt", "train the oblique tree on a dataset");
    std::string train_dataset, train_out = "tree.json", train_regions;
    bool train_baseline = false;
    wodt::TrainConfig train_cfg;
    train->add_option("--dataset", train_dataset, "dataset CSV")->required();
    train->add_option("--out", train_out, "tree JSON destination");
    train->add_option("--regions", train_regions, "also export secure regions CSV here");
    train->add_option("--max-depth", train_cfg.max_depth, "maximum tree depth");
    train->add_option("--purity", train_cfg.purity_stop, "purity stopping threshold");
    train->add_option("--min-samples", train_cfg.min_samples, "minimum node size");
    train->add_option("--starts", train_cfg.random_starts, "random optimizer starts");
    train->add_option("--seed", train_cfg.seed, "root seed");
    train->add_option("--jobs", train_cfg.jobs, "worker threads");
    train->add_flag("--baseline", train_baseline, "also report an axis-aligned baseline");

    // ---- eval-wodt -------------------------------------------------------------
    auto* eval = app.add_subcommand("eval-wodt", "evaluate a tree on a dataset");
    std::string eval_tree, eval_dataset, eval_out;
    eval->add_option("--tree", eval_tree, "tree JSON")->required();
    eval->add_option("--dataset", eval_dataset, "dataset CSV")->required();
    eval->add_option("--out", eval_out, "write the evaluation report JSON here");

    // ---- efc --------------------------------------------------------------------
    auto* efc_cmd = app.add_subcommand("efc", "solve one coordinated EFC emergency");
    std::string efc_system, efc_case, efc_trees, efc_out = "efc_out";
    std::string efc_solver;
    double efc_gap = 1e-6, efc_time = 600.0;
    efc_cmd->add_option("--system", efc_system, "system directory")->required();
    efc_cmd->add_option("--case", efc_case, "emergency case JSON")->required();
    efc_cmd->add_option("--trees", efc_trees, "directory with tree_<area>.json")->required();
    efc_cmd->add_option("--out", efc_out, "output directory");
    efc_cmd->add_option("--solver", efc_solver, "MILP solver executable");
    efc_cmd->add_option("--gap", efc_gap, "relative MIP gap");
    efc_cmd->add_option("--time-limit", efc_time, "solver time limit in s");

    // ---- plan ---------------------------------------------------------------------
    auto* plan = app.add_subcommand("plan", "solve the HVDC capacity planning problem");
    std::string plan_system, plan_trees, plan_out = "plan_out", plan_mode = "fcec";
    std::string plan_solver;
    double plan_gap = 1e-6, plan_time = 600.0;
    int plan_stride = 1, plan_jobs = 1;
    plan->add_option("--system", plan_system, "system directory")->required();
    plan->add_option("--mode", plan_mode, "nonfc, fc or fcec");
    plan->add_option("--trees", plan_trees, "directory with tree_<area>.json (fc/fcec)");
    plan->add_option("--out", plan_out, "output directory");
    plan->add_option("--solver", plan_solver, "MILP solver executable");
    plan->add_option("--gap", plan_gap, "relative MIP gap");
    plan->add_option("--time-limit", plan_time, "solver time limit in s");
    plan->add_option("--emergency-stride", plan_stride, "thin emergency periods by this factor");
    plan->add_option("--jobs", plan_jobs, "worker threads for validation");

    // ---- report ----------------------------------------------------------------------
    auto* report = app.add_subcommand("report", "compare saved plans");
    std::vector<std::string> report_plans;
    std::string report_system, report_out = "report_out";
    int report_jobs = 1;
    report->add_option("--plans", report_plans, "plan JSON files")->required()->expected(-1);
    report->add_option("--system", report_system,
                       "system directory (enables nadir re-validation)");
    report->add_option("--out", report_out, "output directory");
    report->add_option("--jobs", report_jobs, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // usage error
    }

    try {
        if (sim->parsed())
            return run_simulate(sim_model, sim_imbalance, sim_epc, sim_epc_delay, sim_dlc,
                                sim_dlc_delay, sim_dt, sim_horizon, sim_out);

        if (gen->parsed()) {
            const auto sys = planner::load_system(gen_system);
            const auto fleet = fleet_for_area(sys, gen_area);
            const fs::path snap_file = gen_snapshots.empty()
                                           ? fs::path(gen_system) / "snapshots.json"
                                           : fs::path(gen_snapshots);
            const auto snapshots = dataset::load_snapshots(snap_file, fleet, gen_area);
            gen_cfg.damping_coeff = sys.settings.damping_coeff;
            gen_cfg.band_lo = gen_band.first;
            gen_cfg.band_hi = gen_band.second;
            gen_cfg.grid.imbalances.clear();
            for (int i = 0; i < gen_imb_steps; ++i)
                gen_cfg.grid.imbalances.push_back(
                    gen_imb_min +
                    (gen_imb_max - gen_imb_min) * i / std::max(1, gen_imb_steps - 1));
            const auto ds = dataset::generate(fleet, snapshots, gen_cfg);
            dataset::write_dataset(ds, gen_out);
            std::cout << "rows=" << ds.rows.size()
                      << " secure=" << ds.count(dataset::Label::secure)
                      << " insecure=" << ds.count(dataset::Label::insecure) << "\n";

            RunManifest manifest;
            manifest.command = "gen-dataset";
            manifest.inputs = {gen_system, snap_file.string()};
            manifest.seed = gen_cfg.seed;
            manifest.has_seed = true;
            manifest.artifacts = {gen_out};
            manifest.write(gen_out + ".manifest.json");
            return 0;
        }

        if (train->parsed()) {
            const auto ds = dataset::read_dataset(train_dataset);
            const auto tree = wodt::fit(ds, train_cfg);
            wodt::save_tree(tree, train_out);
            const double acc = wodt::accuracy(tree, ds);
            std::cout << "depth=" << tree.depth << " nodes=" << tree.nodes.size()
                      << " train_accuracy=" << format_double(acc) << "\n";
            if (tree.split_warning)
                std::cerr << "warning: some split kept a non-descended start point\n";

            RunManifest manifest;
            manifest.command = "train-wodt";
            manifest.inputs = {train_dataset};
            manifest.seed = train_cfg.seed;
            manifest.has_seed = true;
            manifest.artifacts = {train_out};
            if (!train_regions.empty()) {
                wodt::write_regions_csv(wodt::extract_secure_regions(tree), train_regions);
                manifest.artifacts.push_back(train_regions);
            }
            if (train_baseline) {
                const auto cart = wodt::fit_axis_aligned(ds, train_cfg);
                std::cout << "baseline_axis_accuracy=" << format_double(wodt::accuracy(cart, ds))
                          << "\n";
            }
            manifest.write(train_out + ".manifest.json");
            return 0;
        }

        if (eval->parsed()) {
            const auto tree = wodt::load_tree(eval_tree);
            const auto ds = dataset::read_dataset(eval_dataset);
            std::size_t tp = 0, tn = 0, fp = 0, fn = 0;
            for (const auto& r : ds.rows) {
                const bool pred_insecure = wodt::predict(tree, r.features) ==
                                           dataset::Label::insecure;
                const bool truth_insecure = r.label == dataset::Label::insecure;
                if (pred_insecure && truth_insecure) ++tp;
                else if (!pred_insecure && !truth_insecure) ++tn;
                else if (pred_insecure) ++fp;
                else ++fn;
            }
            const double acc = ds.rows.empty()
                                   ? 1.0
                                   : static_cast<double>(tp + tn) /
                                         static_cast<double>(ds.rows.size());
            std::cout << "accuracy=" << format_double(acc) << " tp=" << tp << " tn=" << tn
                      << " fp=" << fp << " fn=" << fn << "\n";
            if (!eval_out.empty()) {
                nlohmann::ordered_json j = {{"accuracy", acc},
                                            {"true_insecure", tp},
                                            {"true_secure", tn},
                                            {"false_insecure", fp},
                                            {"false_secure", fn},
                                            {"rows", ds.rows.size()}};
                std::ofstream out(eval_out);
                out << j.dump(2) << '\n';
            }
            return 0;
        }

        if (efc_cmd->parsed()) {
            const auto solver = solver_from_flags(efc_solver, efc_gap, efc_time);
            const auto sys = planner::load_system(efc_system);
            const auto bundle = efc::load_case(efc_case, sys);
            const auto rules = load_rules(efc_trees, sys.areas);
            std::vector<efc::AreaEfcSpec> areas = bundle.areas;
            for (auto& a : areas) a.rules = rules.at(a.id);

            const auto problem =
                efc::build_efc_problem(areas, bundle.lines, bundle.scenario, bundle.costs);
            const auto schedule = efc::solve_efc(problem, solver);
            efc::VerifyConfig vc;
            vc.bound_hz = sys.settings.nadir_bound_hz;
            vc.tau_epc = sys.settings.tau_epc;
            vc.tau_dlc = sys.settings.tau_dlc;
            const auto verification =
                efc::verify_schedule(schedule, areas, bundle.lines, bundle.scenario, vc);

            fs::create_directories(efc_out);
            efc::write_schedule(schedule, bundle, fs::path(efc_out) / "schedule.json");
            efc::write_schedule_csv(schedule, fs::path(efc_out) / "schedule.csv");
            efc::write_verification_csv(verification, vc.bound_hz,
                                        fs::path(efc_out) / "verification.csv");
            std::cout << "cost=" << format_double(schedule.cost) << "\n";
            for (const auto& [area, v] : verification)
                std::cout << area << " nadir_hz=" << format_double(v.nadir_hz)
                          << (v.violates ? " VIOLATES" : "") << "\n";

            RunManifest manifest;
            manifest.command = "efc";
            manifest.inputs = {efc_system, efc_case, efc_trees};
            manifest.artifacts = {fs::path(efc_out) / "schedule.json",
                                  fs::path(efc_out) / "schedule.csv",
                                  fs::path(efc_out) / "verification.csv"};
            manifest.write(fs::path(efc_out) / "manifest.json");
            return 0;
        }

        if (plan->parsed()) {
            const auto solver = solver_from_flags(plan_solver, plan_gap, plan_time);
            const auto sys = planner::load_system(plan_system);
            const auto mode = planner::plan_mode_from(plan_mode);
            planner::RuleSets rules;
            if (mode != planner::PlanMode::nonfc) {
                if (plan_trees.empty())
                    throw UsageError("--trees is required for fc/fcec planning");
                rules = load_rules(plan_trees, sys.areas);
            }
            auto pm = planner::build_planning_model(sys, mode, rules, plan_stride);
            const auto sol = milp::solve(pm.model, solver);
            if (sol.status == milp::SolveStatus::infeasible)
                throw DomainError(
                    "planning model infeasible in mode " + plan_mode +
                    (mode == planner::PlanMode::fc
                         ? " (local primary response cannot secure every emergency)"
                         : ""));
            const auto result = planner::extract_result(sys, pm, sol);
            const auto report_v = planner::validate_plan(result, sys, plan_jobs);

            fs::create_directories(plan_out);
            planner::save_plan(result, fs::path(plan_out) / "plan.json");
            planner::write_plan_tables(result, plan_out);
            planner::write_validation_csv(report_v, fs::path(plan_out) / "validation.csv");
            std::cout << "mode=" << result.mode
                      << " total=" << format_double(result.cost_total)
                      << " investment=" << format_double(result.cost_investment)
                      << " operation=" << format_double(result.cost_operation)
                      << " emergency=" << format_double(result.cost_emergency)
                      << " worst_nadir_hz=" << format_double(report_v.worst_nadir())
                      << " violations=" << report_v.violations << "/"
                      << report_v.entries.size() << "\n";

            RunManifest manifest;
            manifest.command = "plan";
            manifest.inputs = {plan_system, plan_trees};
            manifest.artifacts = {fs::path(plan_out) / "plan.json",
                                  fs::path(plan_out) / "installations.csv",
                                  fs::path(plan_out) / "costs.csv",
                                  fs::path(plan_out) / "dispatch.csv",
                                  fs::path(plan_out) / "efc_schedules.csv",
                                  fs::path(plan_out) / "validation.csv"};
            manifest.write(fs::path(plan_out) / "manifest.json");
            return 0;
        }

        if (report->parsed()) {
            std::vector<planner::PlanResult> plans;
            std::map<std::string, double> worst;
            for (const auto& f : report_plans) plans.push_back(planner::load_plan(f));
            fs::create_directories(report_out);
            if (!report_system.empty()) {
                const auto sys = planner::load_system(report_system);
                for (const auto& p : plans)
                    worst[p.mode] = planner::validate_plan(p, sys, report_jobs).worst_nadir();
            }
            planner::write_comparison(plans, worst, fs::path(report_out) / "comparison.csv");
            for (const auto& p : plans) {
                std::cout << p.mode << " total=" << format_double(p.cost_total);
                if (worst.count(p.mode))
                    std::cout << " worst_nadir_hz=" << format_double(worst.at(p.mode));
                std::cout << "\n";
            }

            RunManifest manifest;
            manifest.command = "report";
            manifest.inputs = report_plans;
            manifest.artifacts = {fs::path(report_out) / "comparison.csv"};
            manifest.write(fs::path(report_out) / "manifest.json");
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
