#include <cmath>

#include "doctest.h"
#include "gridnadir/planner/model.hpp"
#include "gridnadir/planner/result.hpp"
#include "gridnadir/planner/validate.hpp"
#include "helpers.hpp"

using namespace gridnadir;
using namespace gridnadir::planner;

namespace {

milp::SolverConfig test_solver() {
    auto cfg = milp::resolve_solver();
    REQUIRE(cfg.has_value());
    return *cfg;
}

wodt::SecureRegion toy_band_rule(double slack) {
    wodt::SecureRegion r;
    r.leaf_id = 0;
    r.A.resize(2, 6);
    r.b.resize(2);
    r.A.setZero();
    for (int j = 3; j < 6; ++j) {
        r.A(0, j) = 1.0;
        r.A(1, j) = -1.0;
    }
    r.b(0) = slack;
    r.b(1) = slack;
    return r;
}

ThermalUnit toy_thermal(const std::string& id, const std::string& bus, double p_max, double p_min,
                        double marginal) {
    ThermalUnit t;
    t.id = id;
    t.bus = bus;
    t.dyn = gridnadir::testing::paper_thermal(id, p_max, 4.0);
    t.p_min = p_min;
    t.ramp_up = p_max;
    t.ramp_down = p_max;
    t.min_on = 1;
    t.min_off = 1;
    t.no_load_cost = 50.0;
    t.segments = {{p_max, marginal}};
    t.initial_on = 1;
    t.initial_power = p_min;
    return t;
}

/// Two asynchronous single-bus areas; X holds cheap generation plus free
/// renewable, Y is the expensive load center. One candidate HVDC link.
PlanningSystem toy_system() {
    PlanningSystem sys;
    sys.buses = {{"bx", "X"}, {"by", "Y"}};
    sys.thermal = {toy_thermal("gx", "bx", 300.0, 40.0, 20.0),
                   toy_thermal("gy", "by", 260.0, 40.0, 80.0)};
    HydroUnit hx;
    hx.id = "hx";
    hx.bus = "bx";
    hx.dyn = gridnadir::testing::paper_hydro("hx", 80.0, 3.5);
    hx.p_dispatch_max = 80.0;
    HydroUnit hy = hx;
    hy.id = "hy";
    hy.bus = "by";
    hy.dyn.id = "hy";
    sys.hydro = {hx, hy};
    sys.renewables = {{"rx", "bx"}};

    CandidateHvdc c1;
    c1.id = "c1";
    c1.from_bus = "bx";
    c1.to_bus = "by";
    c1.length_km = 100.0;
    c1.fixed_cost = 2.0e5;
    c1.capacity_cost = 1.0e3;
    c1.p_cap_min = 100.0;
    c1.p_cap_max = 150.0;
    c1.cap_increment = 50.0;
    sys.candidates = {c1};

    Scenario sc;
    sc.id = "day";
    sc.weight_days = 365.0;
    sc.period_hours = 12.0;
    ScenarioPeriod p0, p1;
    p0.bus_load = {{"bx", 50.0}, {"by", 200.0}};
    p0.renew_avail = {{"rx", 160.0}};
    p1.bus_load = {{"bx", 60.0}, {"by", 240.0}};
    p1.renew_avail = {{"rx", 120.0}};
    sc.periods = {p0, p1};
    sys.scenarios = {sc};

    sys.emergencies.probability = 1e-4;
    sys.settings.dlc_fraction = 0.25;  // toy-sized DLC pool
    sys.finalize();
    return sys;
}

RuleSets toy_rules(const PlanningSystem& sys, double slack) {
    RuleSets rules;
    for (const auto& a : sys.areas) rules[a] = {toy_band_rule(slack)};
    return rules;
}

}  // namespace

TEST_CASE("annuity factor") {
    CHECK(annuity_factor(0.0, 1) == doctest::Approx(1.0));
    CHECK(annuity_factor(0.0, 5) == doctest::Approx(0.2));
    const double r = 0.08;
    const int n = 25;
    CHECK(annuity_factor(r, n) == doctest::Approx(r / (1.0 - std::pow(1.0 + r, -n))));
    CHECK_THROWS_AS(annuity_factor(-0.1, 10), DomainError);
    CHECK_THROWS_AS(annuity_factor(0.05, 0), DomainError);
}

TEST_CASE("nonfc on a candidate-free system equals pure unit-commitment cost") {
    auto sys = toy_system();
    sys.candidates.clear();
    sys.finalize();
    auto pm = build_planning_model(sys, PlanMode::nonfc, {});
    auto sol = milp::solve(pm.model, test_solver());
    REQUIRE(sol.status == milp::SolveStatus::optimal);
    auto result = extract_result(sys, pm, sol);
    CHECK(result.cost_investment == 0.0);
    CHECK(result.cost_emergency == 0.0);
    CHECK(result.cost_total == doctest::Approx(result.cost_operation).epsilon(1e-6));

    // oracle: serving Y alone needs gy at (load - hydro) with known cost
    // structure; instead of re-deriving, check internal consistency and
    // feasibility of the extracted dispatch
    for (std::size_t t = 0; t < 2; ++t) {
        const auto& d = result.dispatch[0][t];
        const double load_y = sys.scenarios[0].periods[t].bus_load.at("by");
        const double gen_y = d.thermal_p.at("gy") + d.hydro_p.at("hy");
        CHECK(gen_y == doctest::Approx(load_y).epsilon(1e-6));
    }
}

TEST_CASE("discrete sizing arithmetic: z=1, n=3 gives P_CAP = p_min + 3 increments") {
    auto sys = toy_system();
    sys.candidates[0].p_cap_min = 200.0;
    sys.candidates[0].p_cap_max = 400.0;
    sys.candidates[0].cap_increment = 50.0;
    sys.finalize();
    auto pm = build_planning_model(sys, PlanMode::nonfc, {});
    pm.model.add_constraint("pin_z", milp::LinExpr(pm.model.find_var(vn::z_dc("c1"))),
                            milp::Sense::eq, 1.0);
    pm.model.add_constraint("pin_n", milp::LinExpr(pm.model.find_var(vn::n_dc("c1"))),
                            milp::Sense::eq, 3.0);
    auto sol = milp::solve(pm.model, test_solver());
    REQUIRE(sol.status == milp::SolveStatus::optimal);
    CHECK(sol.value(vn::p_cap("c1")) == doctest::Approx(350.0));
}

TEST_CASE("planner brute force: MILP optimum equals exhaustive (z, n) enumeration") {
    auto sys = toy_system();
    auto solver = test_solver();
    solver.mip_rel_gap = 1e-8;

    auto pm = build_planning_model(sys, PlanMode::nonfc, {});
    auto sol = milp::solve(pm.model, solver);
    REQUIRE(sol.status == milp::SolveStatus::optimal);

    // all (z, n) combinations: z=0, and z=1 with n in {0, 1}
    std::vector<std::pair<double, double>> combos = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}};
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [z, n] : combos) {
        auto restricted = build_planning_model(sys, PlanMode::nonfc, {});
        restricted.model.add_constraint("pin_z",
                                        milp::LinExpr(restricted.model.find_var(vn::z_dc("c1"))),
                                        milp::Sense::eq, z);
        restricted.model.add_constraint("pin_n",
                                        milp::LinExpr(restricted.model.find_var(vn::n_dc("c1"))),
                                        milp::Sense::eq, n);
        auto rsol = milp::solve(restricted.model, solver);
        if (rsol.status == milp::SolveStatus::optimal) best = std::min(best, rsol.objective);
    }
    CHECK(sol.objective == doctest::Approx(best).epsilon(1e-6));

    // the toy economics favor installing the link at full size
    auto result = extract_result(sys, pm, sol);
    CHECK(result.hvdc_capacity.at("c1") > 0.0);
}

TEST_CASE("mode ordering: nonfc <= fcec <= fc") {
    auto sys = toy_system();
    auto solver = test_solver();
    const auto rules = toy_rules(sys, 60.0);

    auto solve_mode = [&](PlanMode mode) {
        auto pm = build_planning_model(sys, mode, rules);
        auto sol = milp::solve(pm.model, solver);
        REQUIRE(sol.status == milp::SolveStatus::optimal);
        return extract_result(sys, pm, sol);
    };
    const auto r_nonfc = solve_mode(PlanMode::nonfc);
    const auto r_fc = solve_mode(PlanMode::fc);
    const auto r_fcec = solve_mode(PlanMode::fcec);

    const double slack = 1e-6 + 1e-5 * r_fc.cost_total;
    CHECK(r_nonfc.cost_total <= r_fcec.cost_total + slack);
    CHECK(r_fcec.cost_total <= r_fc.cost_total + slack);

    // fc keeps the line flow within the zero-EFC secure band
    for (const auto& d : r_fc.dispatch[0]) CHECK(std::abs(d.dc_flow.at("c1")) <= 60.0 + 1e-6);

    // cost identity: total = investment + operation + emergency
    for (const auto* r : {&r_nonfc, &r_fc, &r_fcec})
        CHECK(r->cost_total ==
              doctest::Approx(r->cost_investment + r->cost_operation + r->cost_emergency)
                  .epsilon(1e-6));

    // fcec emergencies respect the rule at the solved point
    for (const auto& e : r_fcec.emergencies) {
        const auto& d = r_fcec.dispatch[e.scenario][e.period];
        for (const auto& area : sys.areas) {
            double net_epc = 0.0;
            for (const auto& [line, v] : e.epc_by_line) {
                if (line == "c1") net_epc += (area == "X" ? -v : v);
            }
            double imbalance = 0.0;
            if (e.faulted_line == "c1")
                imbalance = (area == "X" ? d.dc_flow.at("c1") : -d.dc_flow.at("c1"));
            const double dlc = e.dlc_by_area.count(area) ? e.dlc_by_area.at(area) : 0.0;
            CHECK(std::abs(net_epc + dlc + imbalance) <= 60.0 + 1e-5);
        }
    }
}

TEST_CASE("uninstalled candidate carries no flow and its fault costs nothing") {
    auto sys = toy_system();
    // make the link uneconomical so nonfc skips it
    sys.candidates[0].fixed_cost = 1e9;
    sys.finalize();
    auto solver = test_solver();
    const auto rules = toy_rules(sys, 60.0);
    auto pm = build_planning_model(sys, PlanMode::fcec, rules);
    auto sol = milp::solve(pm.model, solver);
    REQUIRE(sol.status == milp::SolveStatus::optimal);
    auto result = extract_result(sys, pm, sol);
    CHECK(result.hvdc_capacity.at("c1") == 0.0);
    for (const auto& d : result.dispatch[0]) CHECK(d.dc_flow.at("c1") == doctest::Approx(0.0).scale(1));
    CHECK(result.cost_emergency == doctest::Approx(0.0).scale(1));

    // no installed line, no emergencies to validate
    auto report = validate_plan(result, sys);
    CHECK(report.entries.empty());
    CHECK(report.violations == 0);
}

TEST_CASE("validation re-simulates the planned emergencies") {
    auto sys = toy_system();
    auto solver = test_solver();
    const auto rules = toy_rules(sys, 60.0);
    auto pm = build_planning_model(sys, PlanMode::fcec, rules);
    auto sol = milp::solve(pm.model, solver);
    REQUIRE(sol.status == milp::SolveStatus::optimal);
    auto result = extract_result(sys, pm, sol);
    REQUIRE(result.hvdc_capacity.at("c1") > 0.0);

    auto report = validate_plan(result, sys);
    // 1 scenario x 2 periods x 1 installed line x 2 areas
    CHECK(report.entries.size() == 4);
    CHECK(report.worst_by_area.count("X") == 1);
    CHECK(report.worst_by_area.count("Y") == 1);
    CHECK(report.worst_nadir() >= 0.0);

    auto dir = gridnadir::testing::temp_dir("plan_io");
    write_validation_csv(report, dir / "validation.csv");
    save_plan(result, dir / "plan.json");
    auto back = load_plan(dir / "plan.json");
    CHECK(back.mode == result.mode);
    CHECK(back.cost_total == result.cost_total);
    CHECK(back.hvdc_capacity.at("c1") == result.hvdc_capacity.at("c1"));
    CHECK(back.dispatch[0][1].thermal_p.at("gy") == result.dispatch[0][1].thermal_p.at("gy"));
    CHECK(back.emergencies.size() == result.emergencies.size());
    write_plan_tables(back, dir / "tables");
    CHECK(std::filesystem::exists(dir / "tables" / "installations.csv"));
    CHECK(std::filesystem::exists(dir / "tables" / "costs.csv"));
    std::filesystem::remove_all(dir);
}
