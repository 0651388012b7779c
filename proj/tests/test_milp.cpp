#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "doctest.h"
#include "gridnadir/common/num_format.hpp"
#include "gridnadir/common/rng.hpp"
#include "gridnadir/milp/embed.hpp"
#include "gridnadir/milp/lp_writer.hpp"
#include "gridnadir/milp/solver.hpp"
#include "helpers.hpp"

using namespace gridnadir;
using namespace gridnadir::milp;

namespace {

SolverConfig test_solver() {
    auto cfg = resolve_solver();
    REQUIRE_MESSAGE(cfg.has_value(), "no MILP solver found (bundled shim missing?)");
    return *cfg;
}

/// Minimal reader for the LP dialect our writer emits; the round-trip oracle.
struct ParsedLp {
    bool maximize = false;
    std::map<std::string, double> objective;
    struct Row {
        std::map<std::string, double> terms;
        std::string sense;
        double rhs;
    };
    std::map<std::string, Row> rows;
    std::map<std::string, std::pair<double, double>> bounds;
    std::set<std::string> binaries, generals;
};

double token_to_double(const std::string& t) {
    if (t == "1e30") return kInf;
    if (t == "-1e30") return -kInf;
    return parse_double(t);
}

void parse_terms(std::istringstream& ss, std::map<std::string, double>& into,
                 std::string& sense_out, double& rhs_out) {
    std::string tok;
    double sign = 1.0;
    double coeff = 0.0;
    bool have_coeff = false;
    while (ss >> tok) {
        if (tok == "+") { sign = 1.0; continue; }
        if (tok == "-") { sign = -1.0; continue; }
        if (tok == "<=" || tok == ">=" || tok == "=") {
            sense_out = tok;
            ss >> tok;
            rhs_out = parse_double(tok);
            return;
        }
        if (!have_coeff) {
            coeff = sign * parse_double(tok);
            have_coeff = true;
        } else {
            into[tok] += coeff;
            have_coeff = false;
            sign = 1.0;
        }
    }
}

ParsedLp parse_lp_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    REQUIRE(in.good());
    ParsedLp lp;
    std::string line, section;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '\\') continue;
        if (line == "Minimize" || line == "Maximize") {
            lp.maximize = line == "Maximize";
            section = "obj";
            continue;
        }
        if (line == "Subject To") { section = "st"; continue; }
        if (line == "Bounds") { section = "bounds"; continue; }
        if (line == "Binaries") { section = "bin"; continue; }
        if (line == "Generals") { section = "gen"; continue; }
        if (line == "End") break;

        std::istringstream ss(line);
        if (section == "obj") {
            std::string label;
            ss >> label;  // "obj:"
            std::string sense;
            double rhs = 0;
            parse_terms(ss, lp.objective, sense, rhs);
        } else if (section == "st") {
            std::string label;
            ss >> label;
            label.pop_back();  // trailing ':'
            ParsedLp::Row row;
            parse_terms(ss, row.terms, row.sense, row.rhs);
            lp.rows[label] = row;
        } else if (section == "bounds") {
            std::vector<std::string> toks;
            for (std::string t; ss >> t;) toks.push_back(t);
            if (toks.size() == 2 && toks[1] == "free") {
                lp.bounds[toks[0]] = {-kInf, kInf};
            } else if (toks.size() == 3 && toks[1] == "=") {
                const double v = token_to_double(toks[2]);
                lp.bounds[toks[0]] = {v, v};
            } else if (toks.size() == 5) {
                lp.bounds[toks[2]] = {token_to_double(toks[0]), token_to_double(toks[4])};
            }
        } else if (section == "bin") {
            std::string name;
            ss >> name;
            lp.binaries.insert(name);
        } else if (section == "gen") {
            std::string name;
            ss >> name;
            lp.generals.insert(name);
        }
    }
    return lp;
}

}  // namespace

TEST_CASE("model building and validation") {
    MilpModel m;
    auto x = m.add_continuous("x", 0.0, 5.0);
    CHECK_THROWS_AS(m.add_continuous("x", 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(m.add_continuous("y", 2.0, 1.0), DomainError);
    m.add_constraint("c", LinExpr(x) * 2.0, Sense::le, 4.0);
    CHECK_THROWS_AS(m.add_constraint("c", LinExpr(x), Sense::le, 1.0), DomainError);
    CHECK_THROWS_AS(m.add_constraint("c2", LinExpr(3.0), Sense::le, 1.0), DomainError);
    CHECK_THROWS_AS(m.add_constraint("c3", LinExpr(VarId{99}), Sense::le, 1.0), DomainError);

    // constants fold into the rhs
    LinExpr e = LinExpr(x) + LinExpr(2.5);
    m.add_constraint("c4", e, Sense::le, 4.0);
    CHECK(m.constraints().back().rhs == doctest::Approx(1.5));
    CHECK(m.constraints().back().expr.constant() == 0.0);

    // duplicate variables merge
    LinExpr dup = LinExpr(x) + LinExpr(x) * 2.0;
    CHECK(dup.compacted().terms().size() == 1);
    CHECK(dup.compacted().terms()[0].coeff == doctest::Approx(3.0));

    auto [lo, hi] = m.expr_bounds(LinExpr(x) * -2.0 + LinExpr(1.0));
    CHECK(lo == doctest::Approx(-9.0));
    CHECK(hi == doctest::Approx(1.0));
}

TEST_CASE("LP writer: skeleton, determinism, sanitized names") {
    auto dir = gridnadir::testing::temp_dir("lp");
    MilpModel m;
    auto x = m.add_continuous("x", 0.0, 3.0);
    m.set_objective(ObjSense::maximize, LinExpr(x));
    write_lp(m, dir / "one.lp");
    std::ifstream in(dir / "one.lp");
    std::stringstream body;
    body << in.rdbuf();
    const std::string text = body.str();
    CHECK(text.find("Maximize") != std::string::npos);
    CHECK(text.find("Bounds") != std::string::npos);
    CHECK(text.find("End") != std::string::npos);

    write_lp(m, dir / "two.lp");
    std::ifstream in2(dir / "two.lp");
    std::stringstream body2;
    body2 << in2.rdbuf();
    CHECK(body.str() == body2.str());

    // unfriendly names get sanitized with a mapping table alongside
    MilpModel weird;
    auto a = weird.add_continuous("p[1,2]", 0.0, 1.0);
    auto b = weird.add_continuous("p(1;2)", 0.0, 1.0);
    weird.add_constraint("flow: in", LinExpr(a) + LinExpr(b), Sense::le, 1.0);
    auto names = write_lp(weird, dir / "weird.lp");
    CHECK(std::filesystem::exists(dir / "weird.names.json"));
    CHECK(names.size() == 2);
    bool found_a = false;
    for (const auto& [clean, orig] : names) {
        CHECK(clean.find('[') == std::string::npos);
        if (orig == "p[1,2]") found_a = true;
    }
    CHECK(found_a);
    std::filesystem::remove_all(dir);
}

TEST_CASE("LP round trip reproduces a random 50-variable model exactly") {
    auto dir = gridnadir::testing::temp_dir("lp_rt");
    Rng rng(404);
    MilpModel m;
    std::vector<VarId> vars;
    for (int i = 0; i < 50; ++i) {
        const double lo = rng.uniform(-10.0, 0.0);
        const double hi = lo + rng.uniform(0.1, 20.0);
        const int kind = static_cast<int>(rng.below(3));
        if (kind == 0) vars.push_back(m.add_continuous("x" + std::to_string(i), lo, hi));
        else if (kind == 1) vars.push_back(m.add_binary("x" + std::to_string(i)));
        else
            vars.push_back(m.add_var("x" + std::to_string(i), VarKind::integer, 0.0,
                                     std::max(1.0, std::ceil(std::abs(hi)))));
    }
    LinExpr obj;
    for (const auto& v : vars)
        if (rng.uniform() < 0.7) obj.add(v, rng.uniform(-5.0, 5.0));
    m.set_objective(ObjSense::minimize, obj);
    for (int c = 0; c < 30; ++c) {
        LinExpr e;
        for (const auto& v : vars)
            if (rng.uniform() < 0.2) e.add(v, rng.uniform(-3.0, 3.0));
        if (e.terms().empty()) e.add(vars[0], 1.0);
        const Sense sense = static_cast<Sense>(rng.below(3));
        m.add_constraint("c" + std::to_string(c), e, sense, rng.uniform(-10.0, 10.0));
    }

    write_lp(m, dir / "model.lp");
    auto lp = parse_lp_file(dir / "model.lp");

    for (const auto& t : m.objective().expr.terms())
        CHECK(lp.objective.at(m.var(t.var).name) == t.coeff);
    CHECK(lp.rows.size() == m.constraints().size());
    for (const auto& c : m.constraints()) {
        const auto& row = lp.rows.at(c.name);
        CHECK(row.rhs == c.rhs);
        CHECK(row.terms.size() == c.expr.terms().size());
        for (const auto& t : c.expr.terms()) CHECK(row.terms.at(m.var(t.var).name) == t.coeff);
        const std::string want = c.sense == Sense::le ? "<=" : c.sense == Sense::ge ? ">=" : "=";
        CHECK(row.sense == want);
    }
    for (const auto& v : m.variables()) {
        if (v.kind == VarKind::binary) {
            CHECK(lp.binaries.count(v.name) == 1);
        } else {
            const auto [lo, hi] = lp.bounds.at(v.name);
            CHECK(lo == v.lo);
            CHECK(hi == v.hi);
            if (v.kind == VarKind::integer) CHECK(lp.generals.count(v.name) == 1);
        }
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("solve: constants, simple bounds, binary enumeration oracle") {
    auto solver = test_solver();

    MilpModel constant_only;
    constant_only.set_objective(ObjSense::minimize, LinExpr(5.0));
    auto s0 = solve(constant_only, solver);
    CHECK(s0.status == SolveStatus::optimal);
    CHECK(s0.objective == doctest::Approx(5.0));

    MilpModel lin;
    auto x = lin.add_continuous("x", 0.0, 3.0);
    lin.set_objective(ObjSense::maximize, LinExpr(x));
    auto s1 = solve(lin, solver);
    CHECK(s1.status == SolveStatus::optimal);
    CHECK(s1.objective == doctest::Approx(3.0));
    CHECK(s1.value("x") == doctest::Approx(3.0));

    MilpModel knap;
    auto a = knap.add_binary("a");
    auto b = knap.add_binary("b");
    knap.add_constraint("cap", LinExpr(a) + LinExpr(b), Sense::le, 1.0);
    knap.set_objective(ObjSense::maximize, LinExpr(a) + LinExpr(b));
    auto s2 = solve(knap, solver);
    CHECK(s2.status == SolveStatus::optimal);
    CHECK(s2.objective == doctest::Approx(1.0));  // brute force over 4 points
}

TEST_CASE("solve: infeasible, knapsack vs enumeration, time limit zero") {
    auto solver = test_solver();

    MilpModel bad;
    auto x = bad.add_continuous("x", -kInf, kInf);
    bad.add_constraint("ge", LinExpr(x), Sense::ge, 1.0);
    bad.add_constraint("le", LinExpr(x), Sense::le, 0.0);
    bad.set_objective(ObjSense::minimize, LinExpr(x));
    CHECK(solve(bad, solver).status == SolveStatus::infeasible);

    // 3-item knapsack, brute-forced
    const double value[3] = {7.0, 4.5, 5.5};
    const double weight[3] = {4.0, 3.0, 2.5};
    const double cap = 6.0;
    MilpModel knap;
    LinExpr total_w, total_v;
    std::vector<VarId> items;
    for (int i = 0; i < 3; ++i) {
        items.push_back(knap.add_binary("item" + std::to_string(i)));
        total_w.add(items.back(), weight[i]);
        total_v.add(items.back(), value[i]);
    }
    knap.add_constraint("cap", total_w, Sense::le, cap);
    knap.set_objective(ObjSense::maximize, total_v);
    auto sol = solve(knap, solver);
    double best = 0.0;
    for (int mask = 0; mask < 8; ++mask) {
        double w = 0, v = 0;
        for (int i = 0; i < 3; ++i)
            if (mask & (1 << i)) {
                w += weight[i];
                v += value[i];
            }
        if (w <= cap) best = std::max(best, v);
    }
    CHECK(sol.status == SolveStatus::optimal);
    CHECK(sol.objective == doctest::Approx(best));

    auto limited = solver;
    limited.time_limit_s = 0.0;
    MilpModel nontrivial;  // a knapsack presolve cannot finish instantly
    Rng krng(9);
    LinExpr obj2, wsum;
    double wtotal = 0.0;
    for (int i = 0; i < 60; ++i) {
        auto v = nontrivial.add_binary("b" + std::to_string(i));
        obj2.add(v, krng.uniform(1.0, 10.0));
        const double w = krng.uniform(1.0, 10.0);
        wsum.add(v, w);
        wtotal += w;
    }
    nontrivial.add_constraint("cap", wsum, Sense::le, wtotal / 3.0);
    nontrivial.set_objective(ObjSense::maximize, obj2);
    CHECK(solve(nontrivial, limited).status == SolveStatus::limit);
}

TEST_CASE("solver errors are distinct kinds") {
    MilpModel m;
    auto x = m.add_continuous("x", 0.0, 1.0);
    m.set_objective(ObjSense::minimize, LinExpr(x));
    SolverConfig missing;
    missing.executable = "/nonexistent/solver-binary";
    CHECK_THROWS_AS(solve(m, missing), SolverNotFound);
}

TEST_CASE("abs linearization") {
    auto solver = test_solver();

    // x pinned to -3: minimum of (pos + neg) splits as (0, 3)
    MilpModel m;
    auto x = m.add_continuous("x", -10.0, 10.0);
    m.add_constraint("pin", LinExpr(x), Sense::eq, -3.0);
    auto [pos, neg] = add_abs_linearization(m, LinExpr(x), "absx");
    m.set_objective(ObjSense::minimize, LinExpr(pos) + LinExpr(neg));
    auto sol = solve(m, solver);
    CHECK(sol.value("absx_pos") == doctest::Approx(0.0).scale(1));
    CHECK(sol.value("absx_neg") == doctest::Approx(3.0));
    CHECK(sol.objective == doctest::Approx(3.0));

    // x = 0 gives (0, 0)
    MilpModel z;
    auto xz = z.add_continuous("x", -5.0, 5.0);
    z.add_constraint("pin", LinExpr(xz), Sense::eq, 0.0);
    auto [pz, nz] = add_abs_linearization(z, LinExpr(xz), "absx");
    z.set_objective(ObjSense::minimize, LinExpr(pz) + LinExpr(nz));
    auto solz = solve(z, solver);
    CHECK(solz.objective == doctest::Approx(0.0).scale(1));

    // randomized LPs: the split cost equals |x| at the optimum
    Rng rng(77);
    for (int trial = 0; trial < 6; ++trial) {
        MilpModel r;
        auto xr = r.add_continuous("x", -8.0, 8.0);
        const double pin = rng.uniform(-6.0, 6.0);
        r.add_constraint("pin", LinExpr(xr), Sense::eq, pin);
        auto [pr, nr] = add_abs_linearization(r, LinExpr(xr) * 2.0 + LinExpr(1.0), "a");
        r.set_objective(ObjSense::minimize, LinExpr(pr) + LinExpr(nr));
        auto srr = solve(r, solver);
        CHECK(srr.objective == doctest::Approx(std::abs(2.0 * pin + 1.0)).epsilon(1e-6));
    }

    MilpModel unbounded;
    auto xu = unbounded.add_continuous("x", -kInf, kInf);
    CHECK_THROWS_AS(add_abs_linearization(unbounded, LinExpr(xu), "a"), DomainError);
}

namespace {

/// Hand-made box region a <= x_j <= b per feature, as A x + b >= 0 rows.
wodt::SecureRegion box_region(const Vector6d& lo, const Vector6d& hi, int leaf_id) {
    wodt::SecureRegion r;
    r.leaf_id = leaf_id;
    r.A.resize(12, 6);
    r.b.resize(12);
    r.A.setZero();
    for (int j = 0; j < 6; ++j) {
        r.A(2 * j, j) = 1.0;    // x_j - lo >= 0
        r.b(2 * j) = -lo(j);
        r.A(2 * j + 1, j) = -1.0;  // hi - x_j >= 0
        r.b(2 * j + 1) = hi(j);
    }
    return r;
}

}  // namespace

TEST_CASE("secure-region embedding: single region, disjoint boxes, big-M validity") {
    auto solver = test_solver();

    Vector6d lo1 = Vector6d::Constant(-1.0), hi1 = Vector6d::Constant(1.0);
    Vector6d lo2 = Vector6d::Constant(3.0), hi2 = Vector6d::Constant(5.0);

    // single region reduces to plain membership
    {
        MilpModel m;
        std::array<LinExpr, 6> x;
        for (int j = 0; j < 6; ++j)
            x[static_cast<std::size_t>(j)] =
                LinExpr(m.add_continuous("x" + std::to_string(j), -10.0, 10.0));
        auto emb = embed_secure_regions(m, x, {box_region(lo1, hi1, 0)}, "reg");
        CHECK(emb.selectors.size() == 1);
        LinExpr push;
        for (int j = 0; j < 6; ++j) push += x[static_cast<std::size_t>(j)];
        m.set_objective(ObjSense::maximize, push);
        auto sol = solve(m, solver);
        CHECK(sol.status == SolveStatus::optimal);
        CHECK(sol.value("reg_v0") == doctest::Approx(1.0));
        for (int j = 0; j < 6; ++j)
            CHECK(sol.value("x" + std::to_string(j)) <= hi1(j) + 1e-6);
    }

    // objective pushing into box 2 selects v_2 and lands inside box 2
    {
        MilpModel m;
        std::array<LinExpr, 6> x;
        for (int j = 0; j < 6; ++j)
            x[static_cast<std::size_t>(j)] =
                LinExpr(m.add_continuous("x" + std::to_string(j), -10.0, 10.0));
        auto emb = embed_secure_regions(
            m, x, {box_region(lo1, hi1, 0), box_region(lo2, hi2, 1)}, "reg");
        LinExpr push;
        for (int j = 0; j < 6; ++j) push += x[static_cast<std::size_t>(j)];
        m.set_objective(ObjSense::maximize, push);
        auto sol = solve(m, solver);
        CHECK(sol.value("reg_v0") == doctest::Approx(0.0).scale(1));
        CHECK(sol.value("reg_v1") == doctest::Approx(1.0));
        for (int j = 0; j < 6; ++j) {
            CHECK(sol.value("x" + std::to_string(j)) >= lo2(j) - 1e-6);
            CHECK(sol.value("x" + std::to_string(j)) <= hi2(j) + 1e-6);
        }

        // big-M validity at the box corners: an inactive region's rows never
        // cut the variable box
        const auto& region = box_region(lo1, hi1, 0);
        for (int corner = 0; corner < 64; ++corner) {
            Vector6d pt;
            for (int j = 0; j < 6; ++j) pt(j) = (corner >> j) & 1 ? 10.0 : -10.0;
            Eigen::VectorXd rows = region.A * pt + region.b;
            for (Eigen::Index r = 0; r < rows.size(); ++r)
                CHECK(rows(r) >= -emb.big_m[0][static_cast<std::size_t>(r)]);
        }
    }

    // unbounded feature expressions are rejected
    {
        MilpModel m;
        std::array<LinExpr, 6> x;
        for (int j = 0; j < 6; ++j)
            x[static_cast<std::size_t>(j)] =
                LinExpr(m.add_continuous("x" + std::to_string(j), 0.0, kInf));
        CHECK_THROWS_AS(embed_secure_regions(m, x, {box_region(lo1, hi1, 0)}, "reg"),
                        DomainError);
    }
}

TEST_CASE("random small embeddings are sound") {
    auto solver = test_solver();
    Rng rng(505);
    for (int trial = 0; trial < 10; ++trial) {
        MilpModel m;
        std::array<LinExpr, 6> x;
        for (int j = 0; j < 6; ++j)
            x[static_cast<std::size_t>(j)] =
                LinExpr(m.add_continuous("x" + std::to_string(j), -20.0, 20.0));

        const int n_regions = 1 + static_cast<int>(rng.below(4));
        std::vector<wodt::SecureRegion> regions;
        for (int t = 0; t < n_regions; ++t) {
            Vector6d center, half;
            for (int j = 0; j < 6; ++j) {
                center(j) = rng.uniform(-10.0, 10.0);
                half(j) = rng.uniform(0.5, 5.0);
            }
            regions.push_back(box_region(center - half, center + half, t));
        }
        auto emb = embed_secure_regions(m, x, regions, "reg");
        LinExpr obj;
        for (int j = 0; j < 6; ++j) obj += rng.uniform(-1.0, 1.0) * x[static_cast<std::size_t>(j)];
        m.set_objective(ObjSense::maximize, obj);
        auto sol = solve(m, solver);
        REQUIRE(sol.status == SolveStatus::optimal);

        int active = -1, count = 0;
        for (int t = 0; t < n_regions; ++t) {
            if (sol.value("reg_v" + std::to_string(t)) > 0.5) {
                active = t;
                ++count;
            }
        }
        CHECK(count == 1);
        Vector6d pt;
        for (int j = 0; j < 6; ++j) pt(j) = sol.value("x" + std::to_string(j));
        Eigen::VectorXd rows = regions[static_cast<std::size_t>(active)].A * pt +
                               regions[static_cast<std::size_t>(active)].b;
        CHECK(rows.minCoeff() >= -1e-5);
    }
}
