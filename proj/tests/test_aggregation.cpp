#include "doctest.h"
#include "gridnadir/aggregation.hpp"
#include "gridnadir/common/rng.hpp"
#include "helpers.hpp"

using namespace gridnadir;
using gridnadir::testing::paper_hydro;
using gridnadir::testing::paper_storage;
using gridnadir::testing::paper_thermal;

TEST_CASE("equivalent params: hand-computed cases") {
    // all thermal offline -> only load damping remains
    auto t_off = paper_thermal("g", 100.0, 4.0, false);
    auto eq0 = equivalent_params(std::vector{t_off}, {}, {}, 500.0, {});
    CHECK(eq0.inertia == 0.0);
    CHECK(eq0.d_fast == 500.0);
    CHECK(eq0.d_slow == 0.0);

    // one committed thermal: H = 400, D_fast = 0.3*100/0.06 = 500,
    // D_slow = 0.7*100/0.06 = 1166.67
    auto t_on = paper_thermal("g", 100.0, 4.0);
    auto eq1 = equivalent_params(std::vector{t_on}, {}, {}, 0.0, {});
    CHECK(eq1.inertia == doctest::Approx(400.0));
    CHECK(eq1.d_fast == doctest::Approx(500.0));
    CHECK(eq1.d_slow == doctest::Approx(1166.6666667));

    // storage adds 50/0.05 = 1000 to the fast droop only
    auto eq2 = equivalent_params(std::vector{t_on}, {}, std::vector{paper_storage("e", 50.0)},
                                 0.0, {});
    CHECK(eq2.d_fast - eq1.d_fast == doctest::Approx(1000.0));
    CHECK(eq2.d_slow == doctest::Approx(eq1.d_slow));
    CHECK(eq2.inertia == doctest::Approx(eq1.inertia));
}

TEST_CASE("feature vector ordering and invariance under fleet permutation") {
    auto t1 = paper_thermal("a", 120.0, 4.0);
    auto t2 = paper_thermal("b", 300.0, 5.0);
    auto hy = paper_hydro("h", 90.0, 3.0);

    auto eq_ab = equivalent_params(std::vector{t1, t2}, std::vector{hy}, {}, 250.0, {});
    auto eq_ba = equivalent_params(std::vector{t2, t1}, std::vector{hy}, {}, 250.0, {});
    CHECK(eq_ab.inertia == eq_ba.inertia);
    CHECK(eq_ab.d_fast == eq_ba.d_fast);
    CHECK(eq_ab.d_slow == eq_ba.d_slow);

    sfr::EfcAction efc{50.0, 0.2, 50.0, 0.6};
    auto f = feature_vector(eq_ab, efc, 200.0);
    CHECK(f.dp_epc() == 50.0);
    CHECK(f.dp_dlc() == 50.0);
    CHECK(f.dp_d() == 200.0);
    CHECK(f.x(0) == eq_ab.inertia);
    CHECK(f.x(1) == eq_ab.d_fast);
    CHECK(f.x(2) == eq_ab.d_slow);

    auto fz = feature_vector(eq_ab, sfr::EfcAction::none(), 0.0);
    CHECK(fz.x.tail<3>().isZero());
}

TEST_CASE("equivalent params are affine in the commitment vector") {
    Rng rng(1234);
    std::vector<sfr::ThermalUnitDyn> fleet;
    for (int i = 0; i < 6; ++i) {
        auto t = paper_thermal("g" + std::to_string(i), rng.uniform(50.0, 400.0),
                               rng.uniform(2.0, 6.0));
        t.droop = rng.uniform(0.04, 0.09);
        t.hp_fraction = rng.uniform(0.1, 0.5);
        fleet.push_back(t);
    }
    const double d_load = 700.0;

    // per-unit coefficients from indicator commitments
    std::vector<bool> none(fleet.size(), false);
    auto base = equivalent_params(fleet, {}, {}, d_load, none);
    std::vector<EquivalentParams> coeff(fleet.size());
    for (std::size_t k = 0; k < fleet.size(); ++k) {
        auto ind = none;
        ind[k] = true;
        auto ek = equivalent_params(fleet, {}, {}, d_load, ind);
        coeff[k] = {ek.inertia - base.inertia, ek.d_fast - base.d_fast, ek.d_slow - base.d_slow};
    }

    for (int trial = 0; trial < 20; ++trial) {
        std::vector<bool> u(fleet.size());
        for (auto&& b : u) b = rng.uniform() < 0.5;
        auto eq = equivalent_params(fleet, {}, {}, d_load, u);
        EquivalentParams rec = base;
        for (std::size_t k = 0; k < fleet.size(); ++k) {
            if (!u[k]) continue;
            rec.inertia += coeff[k].inertia;
            rec.d_fast += coeff[k].d_fast;
            rec.d_slow += coeff[k].d_slow;
        }
        CHECK(eq.inertia == doctest::Approx(rec.inertia).epsilon(1e-12));
        CHECK(eq.d_fast == doctest::Approx(rec.d_fast).epsilon(1e-12));
        CHECK(eq.d_slow == doctest::Approx(rec.d_slow).epsilon(1e-12));
    }
}

TEST_CASE("feature order string is frozen") {
    CHECK(feature_order_string() == "h,d_fast,d_slow,dp_epc,dp_dlc,dp_d");
}
