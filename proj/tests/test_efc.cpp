#include <cmath>

#include "doctest.h"
#include "gridnadir/efc/efc.hpp"
#include "helpers.hpp"

using namespace gridnadir;
using namespace gridnadir::efc;
using gridnadir::testing::paper_style_area;

namespace {

milp::SolverConfig test_solver() {
    auto cfg = milp::resolve_solver();
    REQUIRE(cfg.has_value());
    return *cfg;
}

/// Hand rule: |dp_epc + dp_dlc + dp_d| <= slack, as a secure-region polytope.
wodt::SecureRegion net_band_rule(double slack) {
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

struct Toy2 {
    std::vector<AreaEfcSpec> areas;
    std::vector<HvdcLine> lines;
    EmergencyScenario scenario;
};

Toy2 two_area_toy(double slack_sender, double slack_receiver) {
    Toy2 t;
    t.areas.push_back({"A1", paper_style_area(), {net_band_rule(slack_sender)}, 50.0});
    t.areas.push_back({"A2", paper_style_area(), {net_band_rule(slack_receiver)}, 50.0});
    t.lines.push_back({"L1", "A1", "A2", 150.0, 100.0});  // faulted
    t.lines.push_back({"L2", "A1", "A2", 200.0, 50.0});   // surviving, headroom 150
    t.scenario = scenario_for_fault(t.lines, "L1");
    return t;
}

/// 1 MW-grid enumeration oracle over (epc, dlc1, dlc2).
double enumerate_toy2_cost(const Toy2& t, double epc_headroom, const EfcCosts& costs) {
    double best = std::numeric_limits<double>::infinity();
    const auto& sender_rule = t.areas[0].rules[0];
    const auto& receiver_rule = t.areas[1].rules[0];
    const HvdcLine& line = t.lines[1];
    for (int epc = -static_cast<int>(epc_headroom); epc <= static_cast<int>(epc_headroom); ++epc) {
        if (std::abs(line.prefault_flow + epc) > line.capacity) continue;
        for (int dlc1 = 0; dlc1 <= 50; ++dlc1) {
            for (int dlc2 = 0; dlc2 <= 50; ++dlc2) {
                Vector6d x1 = Vector6d::Zero(), x2 = Vector6d::Zero();
                x1(3) = -epc;
                x1(4) = dlc1;
                x1(5) = t.scenario.imbalance_of("A1");
                x2(3) = epc;
                x2(4) = dlc2;
                x2(5) = t.scenario.imbalance_of("A2");
                if (!sender_rule.contains(x1) || !receiver_rule.contains(x2)) continue;
                const double cost =
                    costs.c_epc * std::abs(epc) + costs.c_dlc * (dlc1 + dlc2);
                best = std::min(best, cost);
            }
        }
    }
    return best;
}

}  // namespace

TEST_CASE("scenario_for_fault splits the pre-fault flow with opposite signs") {
    std::vector<HvdcLine> lines = {{"L1", "A1", "A2", 150.0, 100.0},
                                   {"L2", "A2", "A3", 100.0, -40.0}};
    auto s = scenario_for_fault(lines, "L1");
    CHECK(s.imbalance_of("A1") == 100.0);   // sender keeps its surplus
    CHECK(s.imbalance_of("A2") == -100.0);  // receiver loses the import
    CHECK(s.imbalance_of("A3") == 0.0);
    CHECK(s.imbalance_of("A1") + s.imbalance_of("A2") == 0.0);

    auto s2 = scenario_for_fault(lines, "L2");
    CHECK(s2.imbalance_of("A2") == -40.0);
    CHECK(s2.imbalance_of("A3") == 40.0);

    CHECK_THROWS_AS(scenario_for_fault(lines, "nope"), DomainError);
}

TEST_CASE("zero-imbalance emergency solves to an all-zero schedule") {
    auto solver = test_solver();
    Toy2 t = two_area_toy(60.0, 20.0);
    t.lines[0].prefault_flow = 0.0;  // fault on an unloaded line
    t.scenario = scenario_for_fault(t.lines, "L1");
    auto problem = build_efc_problem(t.areas, t.lines, t.scenario, {});
    auto schedule = solve_efc(problem, solver);
    CHECK(schedule.cost == doctest::Approx(0.0).scale(1));
    CHECK(schedule.epc_by_line.at("L2") == doctest::Approx(0.0).scale(1));
    CHECK(schedule.dlc_by_area.at("A1") == doctest::Approx(0.0).scale(1));
    CHECK(schedule.dlc_by_area.at("A2") == doctest::Approx(0.0).scale(1));
}

TEST_CASE("2-area toy: cheap EPC covers the whole requirement") {
    auto solver = test_solver();
    Toy2 t = two_area_toy(60.0, 20.0);
    const EfcCosts costs{};
    auto problem = build_efc_problem(t.areas, t.lines, t.scenario, costs);
    auto schedule = solve_efc(problem, solver);

    CHECK(schedule.epc_by_line.at("L2") == doctest::Approx(80.0).epsilon(1e-4));
    CHECK(schedule.dlc_by_area.at("A2") == doctest::Approx(0.0).scale(1));
    CHECK(schedule.cost == doctest::Approx(8000.0).epsilon(1e-6));

    const double oracle = enumerate_toy2_cost(t, 150.0, costs);
    CHECK(schedule.cost <= oracle + 1e-6);          // MILP never loses to the grid
    CHECK(std::abs(schedule.cost - oracle) <= 0.005 * oracle);

    // the faulted line never carries EPC
    CHECK(schedule.epc_by_line.count("L1") == 0);
}

TEST_CASE("2-area toy with tight EPC headroom: DLC covers the remainder") {
    auto solver = test_solver();
    Toy2 t = two_area_toy(60.0, 20.0);
    const EfcCosts costs{};
    std::map<std::string, double> headroom = {{"L2", 50.0}};
    auto problem = build_efc_problem(t.areas, t.lines, t.scenario, costs, &headroom);
    auto schedule = solve_efc(problem, solver);

    CHECK(schedule.epc_by_line.at("L2") == doctest::Approx(50.0).epsilon(1e-4));
    CHECK(schedule.dlc_by_area.at("A2") == doctest::Approx(30.0).epsilon(1e-4));
    CHECK(schedule.cost == doctest::Approx(50.0 * 100.0 + 30.0 * 1000.0).epsilon(1e-6));

    const double oracle = enumerate_toy2_cost(t, 50.0, costs);
    CHECK(std::abs(schedule.cost - oracle) <= 0.005 * oracle);
}

TEST_CASE("infeasible rules are reported as 'no secure EFC'") {
    auto solver = test_solver();
    Toy2 t = two_area_toy(60.0, 0.5);  // receiver demands |net| <= 0.5 MW
    std::map<std::string, double> headroom = {{"L2", 10.0}};  // cannot reach 99.5
    auto problem = build_efc_problem(t.areas, t.lines, t.scenario, {}, &headroom);
    CHECK_THROWS_WITH_AS(solve_efc(problem, solver),
                         doctest::Contains("no secure EFC"), DomainError);
}

TEST_CASE("missing rules and bad line data are rejected at build time") {
    Toy2 t = two_area_toy(60.0, 20.0);
    t.areas[1].rules.clear();
    CHECK_THROWS_AS(build_efc_problem(t.areas, t.lines, t.scenario, {}), DomainError);

    Toy2 t2 = two_area_toy(60.0, 20.0);
    t2.lines[1].prefault_flow = 500.0;  // beyond capacity
    CHECK_THROWS_AS(build_efc_problem(t2.areas, t2.lines, t2.scenario, {}), DomainError);
}

TEST_CASE("three-area ring: EPC conservation across areas") {
    auto solver = test_solver();
    std::vector<AreaEfcSpec> areas = {
        {"A1", paper_style_area(), {net_band_rule(40.0)}, 40.0},
        {"A2", paper_style_area(), {net_band_rule(25.0)}, 40.0},
        {"A3", paper_style_area(), {net_band_rule(120.0)}, 40.0},
    };
    std::vector<HvdcLine> lines = {{"L12", "A1", "A2", 200.0, 80.0},
                                   {"L13", "A1", "A3", 200.0, 30.0},
                                   {"L32", "A3", "A2", 200.0, 60.0}};
    auto scenario = scenario_for_fault(lines, "L12");
    auto schedule = solve_efc(build_efc_problem(areas, lines, scenario, {}), solver);

    const auto net = net_epc_by_area(schedule, lines, areas);
    double total = 0.0;
    for (const auto& [id, v] : net) total += v;
    CHECK(total == doctest::Approx(0.0).scale(1).epsilon(1e-9));
    CHECK(schedule.epc_by_line.count("L12") == 0);

    // every area lands inside its rule at the solved point
    for (const auto& a : areas) {
        Vector6d x = Vector6d::Zero();
        x(3) = net.at(a.id);
        x(4) = schedule.dlc_by_area.at(a.id);
        x(5) = scenario.imbalance_of(a.id);
        CHECK(a.rules[0].contains(x + Vector6d::Constant(0)));
    }
}

TEST_CASE("verify_schedule: zero case and nadir reduction") {
    Toy2 t = two_area_toy(60.0, 20.0);
    VerifyConfig vc;
    vc.horizon = 15.0;

    EfcSchedule zero;
    zero.epc_by_line["L2"] = 0.0;
    zero.dlc_by_area["A1"] = 0.0;
    zero.dlc_by_area["A2"] = 0.0;
    auto none = verify_schedule(zero, t.areas, t.lines,
                                EmergencyScenario{"L1", {{"A1", 0.0}, {"A2", 0.0}}, 1e-4}, vc);
    CHECK(none.at("A1").nadir_hz == 0.0);
    CHECK(none.at("A2").nadir_hz == 0.0);
    CHECK(!none.at("A2").violates);

    auto uncontrolled = verify_schedule(zero, t.areas, t.lines, t.scenario, vc);
    EfcSchedule epc80;
    epc80.epc_by_line["L2"] = 80.0;
    epc80.dlc_by_area["A1"] = 0.0;
    epc80.dlc_by_area["A2"] = 0.0;
    auto controlled = verify_schedule(epc80, t.areas, t.lines, t.scenario, vc);
    CHECK(controlled.at("A2").nadir_hz < uncontrolled.at("A2").nadir_hz);
    CHECK(controlled.at("A1").nadir_hz < uncontrolled.at("A1").nadir_hz);

    EfcSchedule overdrawn;
    overdrawn.dlc_by_area["A2"] = 500.0;
    CHECK_THROWS_AS(verify_schedule(overdrawn, t.areas, t.lines, t.scenario, vc), DomainError);
}
