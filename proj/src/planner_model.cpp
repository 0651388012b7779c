#include "gridnadir/planner/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace gridnadir::planner {

using milp::kInf;
using milp::LinExpr;
using milp::MilpModel;
using milp::ObjSense;
using milp::Sense;
using milp::VarId;
using milp::VarKind;

std::string to_string(PlanMode mode) {
    switch (mode) {
        case PlanMode::nonfc: return "nonfc";
        case PlanMode::fc: return "fc";
        case PlanMode::fcec: return "fcec";
    }
    return "?";
}

PlanMode plan_mode_from(const std::string& text) {
    if (text == "nonfc") return PlanMode::nonfc;
    if (text == "fc") return PlanMode::fc;
    if (text == "fcec") return PlanMode::fcec;
    throw UsageError("unknown planning mode '" + text + "' (expected nonfc, fc or fcec)");
}

namespace vn {
std::string st(std::size_t s, std::size_t t) {
    return "s" + std::to_string(s) + "t" + std::to_string(t);
}
std::string commit(const std::string& u, std::size_t s, std::size_t t) {
    return "u_" + u + "_" + st(s, t);
}
std::string startup(const std::string& u, std::size_t s, std::size_t t) {
    return "vup_" + u + "_" + st(s, t);
}
std::string shutdown(const std::string& u, std::size_t s, std::size_t t) {
    return "wdn_" + u + "_" + st(s, t);
}
std::string power(const std::string& u, std::size_t s, std::size_t t) {
    return "p_" + u + "_" + st(s, t);
}
std::string seg(const std::string& u, std::size_t s, std::size_t t, std::size_t k) {
    return "pseg_" + u + "_" + st(s, t) + "_k" + std::to_string(k);
}
std::string hydro(const std::string& u, std::size_t s, std::size_t t) {
    return "ph_" + u + "_" + st(s, t);
}
std::string renew(const std::string& u, std::size_t s, std::size_t t) {
    return "pr_" + u + "_" + st(s, t);
}
std::string charge(const std::string& u, std::size_t s, std::size_t t) {
    return "pc_" + u + "_" + st(s, t);
}
std::string discharge(const std::string& u, std::size_t s, std::size_t t) {
    return "pd_" + u + "_" + st(s, t);
}
std::string charging(const std::string& u, std::size_t s, std::size_t t) {
    return "xc_" + u + "_" + st(s, t);
}
std::string discharging(const std::string& u, std::size_t s, std::size_t t) {
    return "xd_" + u + "_" + st(s, t);
}
std::string energy(const std::string& u, std::size_t s, std::size_t t) {
    return "e_" + u + "_" + st(s, t);
}
std::string angle(const std::string& bus, std::size_t s, std::size_t t) {
    return "th_" + bus + "_" + st(s, t);
}
std::string flow(const std::string& line, std::size_t s, std::size_t t) {
    return "f_" + line + "_" + st(s, t);
}
std::string epc(const std::string& line, std::size_t s, std::size_t t, const std::string& fault) {
    return "epc_" + line + "_" + st(s, t) + "_x" + fault;
}
std::string dlc(const std::string& area, std::size_t s, std::size_t t, const std::string& fault) {
    return "dlc_" + area + "_" + st(s, t) + "_x" + fault;
}
}  // namespace vn

namespace {

struct DcLineRef {
    std::string id;
    std::string from_area, to_area;
    double fixed_capacity = 0.0;   // existing lines
    const CandidateHvdc* cand = nullptr;

    int incidence(const std::string& area) const {
        if (area == from_area) return -1;
        if (area == to_area) return 1;
        return 0;
    }
    double max_capacity() const { return cand ? cand->p_cap_max : fixed_capacity; }
};

}  // namespace

PlanModel build_planning_model(const PlanningSystem& sys, PlanMode mode, const RuleSets& rules,
                               int emergency_stride) {
    if (emergency_stride < 1) throw DomainError("emergency stride must be >= 1");
    if (mode != PlanMode::nonfc)
        for (const auto& area : sys.areas)
            if (!rules.count(area) || rules.at(area).empty())
                throw DomainError("no frequency rule set for area '" + area + "'");

    PlanModel pm;
    pm.mode = mode;
    pm.emergency_stride = emergency_stride;
    pm.annuity = annuity_factor(sys.settings.discount_rate, sys.settings.lifespan_years);
    MilpModel& m = pm.model;

    // ---- planning layer -----------------------------------------------------
    LinExpr inv_cost;
    std::map<std::string, VarId> pcap_vars, zdc_vars, zess_vars;
    for (const auto& c : sys.candidates) {
        const VarId z = m.add_binary(vn::z_dc(c.id));
        const double n_max = std::floor((c.p_cap_max - c.p_cap_min) / c.cap_increment + 1e-9);
        const VarId n = m.add_var(vn::n_dc(c.id), VarKind::integer, 0.0, std::max(0.0, n_max));
        const VarId pcap = m.add_continuous(vn::p_cap(c.id), 0.0, c.p_cap_max);
        zdc_vars[c.id] = z;
        pcap_vars[c.id] = pcap;

        LinExpr sizing = LinExpr(pcap);
        sizing.add(z, -c.p_cap_min);
        sizing.add(n, -c.cap_increment);
        m.add_constraint("size_" + c.id, sizing, Sense::eq, 0.0);
        LinExpr cap_gate = LinExpr(pcap);
        cap_gate.add(z, -c.p_cap_max);
        m.add_constraint("capgate_" + c.id, cap_gate, Sense::le, 0.0);
        LinExpr n_gate = LinExpr(n);
        n_gate.add(z, -std::max(1.0, n_max));
        m.add_constraint("ngate_" + c.id, n_gate, Sense::le, 0.0);

        inv_cost += pm.annuity * (c.fixed_cost * LinExpr(z) + c.capacity_cost * LinExpr(pcap));
    }
    for (const auto& e : sys.ess_candidates) {
        const VarId z = m.add_binary(vn::z_ess(e.id));
        zess_vars[e.id] = z;
        inv_cost += pm.annuity * e.annualized_cost * LinExpr(z);
    }

    std::vector<DcLineRef> dc_lines;
    for (const auto& l : sys.hvdc_existing)
        dc_lines.push_back({l.id, sys.area_of(l.from_bus), sys.area_of(l.to_bus), l.capacity,
                            nullptr});
    for (const auto& c : sys.candidates)
        dc_lines.push_back({c.id, sys.area_of(c.from_bus), sys.area_of(c.to_bus), 0.0, &c});

    // ---- operation layer ----------------------------------------------------
    LinExpr op_cost;
    for (std::size_t s = 0; s < sys.scenarios.size(); ++s) {
        const Scenario& sc = sys.scenarios[s];
        const double dt_h = sc.period_hours;
        for (std::size_t t = 0; t < sc.periods.size(); ++t) {
            // thermal unit commitment
            for (const auto& unit : sys.thermal) {
                const VarId u = m.add_binary(vn::commit(unit.id, s, t));
                const VarId v = m.add_binary(vn::startup(unit.id, s, t));
                const VarId w = m.add_binary(vn::shutdown(unit.id, s, t));
                const VarId p = m.add_continuous(vn::power(unit.id, s, t), 0.0, unit.dyn.p_max);

                // p = p_min u + sum of gated segments
                LinExpr pdef = LinExpr(p);
                pdef.add(u, -unit.p_min);
                double seg_from = unit.p_min;
                for (std::size_t k = 0; k < unit.segments.size(); ++k) {
                    const double width = std::max(0.0, unit.segments[k].up_to_mw - seg_from);
                    seg_from = unit.segments[k].up_to_mw;
                    const VarId ps = m.add_continuous(vn::seg(unit.id, s, t, k), 0.0, width);
                    pdef.add(ps, -1.0);
                    LinExpr gate = LinExpr(ps);
                    gate.add(u, -width);
                    m.add_constraint("seggate_" + vn::seg(unit.id, s, t, k), gate, Sense::le, 0.0);
                    op_cost += sc.weight_days * dt_h * unit.segments[k].marginal_cost * LinExpr(ps);
                }
                m.add_constraint("pdef_" + vn::power(unit.id, s, t), pdef, Sense::eq, 0.0);
                op_cost += sc.weight_days *
                           (dt_h * unit.no_load_cost * LinExpr(u) + unit.startup_cost * LinExpr(v) +
                            unit.shutdown_cost * LinExpr(w));

                // commitment transition logic
                LinExpr logic = LinExpr(u);
                logic.add(v, -1.0);
                logic.add(w, 1.0);
                const bool init_on = unit.initial_on > 0;
                if (t == 0) {
                    m.add_constraint("ulogic_" + vn::commit(unit.id, s, t), logic, Sense::eq,
                                     init_on ? 1.0 : 0.0);
                } else {
                    logic.add(m.find_var(vn::commit(unit.id, s, t - 1)), -1.0);
                    m.add_constraint("ulogic_" + vn::commit(unit.id, s, t), logic, Sense::eq, 0.0);
                }
                LinExpr vw = LinExpr(v) + LinExpr(w);
                m.add_constraint("vw_" + vn::commit(unit.id, s, t), vw, Sense::le, 1.0);

                // ramps with startup/shutdown allowances
                const double su_ramp = std::max(unit.p_min, unit.ramp_up);
                const double sd_ramp = std::max(unit.p_min, unit.ramp_down);
                LinExpr up = LinExpr(p);
                up.add(v, -su_ramp);
                LinExpr down = -LinExpr(p);
                down.add(u, -unit.ramp_down);
                down.add(w, -sd_ramp);
                if (t == 0) {
                    m.add_constraint("rampup_" + vn::power(unit.id, s, t), up, Sense::le,
                                     unit.initial_power + (init_on ? unit.ramp_up : 0.0));
                    m.add_constraint("rampdn_" + vn::power(unit.id, s, t), down, Sense::le,
                                     -unit.initial_power);
                } else {
                    up.add(m.find_var(vn::power(unit.id, s, t - 1)), -1.0);
                    up.add(m.find_var(vn::commit(unit.id, s, t - 1)), -unit.ramp_up);
                    m.add_constraint("rampup_" + vn::power(unit.id, s, t), up, Sense::le, 0.0);
                    down.add(m.find_var(vn::power(unit.id, s, t - 1)), 1.0);
                    m.add_constraint("rampdn_" + vn::power(unit.id, s, t), down, Sense::le, 0.0);
                }

                // minimum on/off windows (trailing sums, truncated at t = 0)
                if (unit.min_on > 1) {
                    LinExpr window;
                    for (std::size_t tau = t >= static_cast<std::size_t>(unit.min_on) - 1
                                               ? t - static_cast<std::size_t>(unit.min_on) + 1
                                               : 0;
                         tau <= t; ++tau)
                        window.add(m.find_var(vn::startup(unit.id, s, tau)), 1.0);
                    window.add(u, -1.0);
                    m.add_constraint("minon_" + vn::commit(unit.id, s, t), window, Sense::le, 0.0);
                }
                if (unit.min_off > 1) {
                    LinExpr window;
                    for (std::size_t tau = t >= static_cast<std::size_t>(unit.min_off) - 1
                                               ? t - static_cast<std::size_t>(unit.min_off) + 1
                                               : 0;
                         tau <= t; ++tau)
                        window.add(m.find_var(vn::shutdown(unit.id, s, tau)), 1.0);
                    window.add(u, 1.0);
                    m.add_constraint("minoff_" + vn::commit(unit.id, s, t), window, Sense::le, 1.0);
                }
            }
            // pin initial min-on/min-off remainders
            if (t == 0) {
                for (const auto& unit : sys.thermal) {
                    const int remaining_on =
                        unit.initial_on > 0 ? unit.min_on - unit.initial_on : 0;
                    const int remaining_off =
                        unit.initial_on < 0 ? unit.min_off + unit.initial_on : 0;
                    for (int tt = 0; tt < remaining_on &&
                                     tt < static_cast<int>(sc.periods.size());
                         ++tt)
                        m.add_constraint("initon_" + vn::commit(unit.id, s, static_cast<std::size_t>(tt)),
                                         LinExpr(m.find_var(vn::commit(unit.id, s, static_cast<std::size_t>(tt)))),
                                         Sense::eq, 1.0);
                    for (int tt = 0; tt < remaining_off &&
                                     tt < static_cast<int>(sc.periods.size());
                         ++tt)
                        m.add_constraint("initoff_" + vn::commit(unit.id, s, static_cast<std::size_t>(tt)),
                                         LinExpr(m.find_var(vn::commit(unit.id, s, static_cast<std::size_t>(tt)))),
                                         Sense::eq, 0.0);
                }
            }

            for (const auto& u : sys.hydro)
                m.add_continuous(vn::hydro(u.id, s, t), 0.0, u.p_dispatch_max);
            for (const auto& u : sys.renewables) {
                const auto& avail = sc.periods[t].renew_avail;
                const auto it = avail.find(u.id);
                m.add_continuous(vn::renew(u.id, s, t), 0.0,
                                 it == avail.end() ? 0.0 : it->second);
            }

            // storage candidates
            for (const auto& e : sys.ess_candidates) {
                const VarId pc = m.add_continuous(vn::charge(e.id, s, t), 0.0, e.p_charge_max);
                const VarId pd = m.add_continuous(vn::discharge(e.id, s, t), 0.0, e.p_discharge_max);
                const VarId xc = m.add_binary(vn::charging(e.id, s, t));
                const VarId xd = m.add_binary(vn::discharging(e.id, s, t));
                LinExpr cgate = LinExpr(pc);
                cgate.add(xc, -e.p_charge_max);
                m.add_constraint("cgate_" + vn::charge(e.id, s, t), cgate, Sense::le, 0.0);
                LinExpr dgate = LinExpr(pd);
                dgate.add(xd, -e.p_discharge_max);
                m.add_constraint("dgate_" + vn::discharge(e.id, s, t), dgate, Sense::le, 0.0);
                m.add_constraint("xcxd_" + vn::charge(e.id, s, t), LinExpr(xc) + LinExpr(xd),
                                 Sense::le, 1.0);
                LinExpr zc = LinExpr(xc);
                zc.add(zess_vars.at(e.id), -1.0);
                m.add_constraint("zc_" + vn::charge(e.id, s, t), zc, Sense::le, 0.0);
                LinExpr zd = LinExpr(xd);
                zd.add(zess_vars.at(e.id), -1.0);
                m.add_constraint("zd_" + vn::discharge(e.id, s, t), zd, Sense::le, 0.0);

                const double e0 = 0.5 * (e.e_min + e.e_max);
                const VarId et = m.add_continuous(vn::energy(e.id, s, t), e.e_min, e.e_max);
                if (t == 0) {
                    m.add_constraint("e0_" + vn::energy(e.id, s, t), LinExpr(et), Sense::eq, e0);
                } else {
                    // e_t = e_{t-1} + eta_c dt pc_{t-1} - dt/eta_d pd_{t-1}
                    LinExpr bal = LinExpr(et);
                    bal.add(m.find_var(vn::energy(e.id, s, t - 1)), -1.0);
                    bal.add(m.find_var(vn::charge(e.id, s, t - 1)), -e.eta_c * dt_h);
                    bal.add(m.find_var(vn::discharge(e.id, s, t - 1)), dt_h / e.eta_d);
                    m.add_constraint("ebal_" + vn::energy(e.id, s, t), bal, Sense::eq, 0.0);
                }
                if (t + 1 == sc.periods.size()) {
                    // cyclic closure including the final period's throughput
                    LinExpr closure = LinExpr(et);
                    closure.add(pc, e.eta_c * dt_h);
                    closure.add(pd, -dt_h / e.eta_d);
                    m.add_constraint("ecyc_" + vn::energy(e.id, s, t), closure, Sense::ge, e0);
                }
            }

            // network: angles, HVDC flows, bus balance
            std::map<std::string, bool> is_ref;
            {
                std::set<std::string> seen_area;
                for (const auto& b : sys.buses)
                    is_ref[b.id] = seen_area.insert(b.area).second;
            }
            for (const auto& b : sys.buses) {
                const double bound = is_ref.at(b.id) ? 0.0 : kInf;
                m.add_continuous(vn::angle(b.id, s, t), -bound, bound);
            }
            for (const auto& l : dc_lines) {
                const double cap = l.max_capacity();
                const VarId f = m.add_continuous(vn::flow(l.id, s, t), -cap, cap);
                if (l.cand) {
                    LinExpr hi = LinExpr(f);
                    hi.add(pcap_vars.at(l.id), -1.0);
                    m.add_constraint("fcap_hi_" + vn::flow(l.id, s, t), hi, Sense::le, 0.0);
                    LinExpr lo = LinExpr(f);
                    lo.add(pcap_vars.at(l.id), 1.0);
                    m.add_constraint("fcap_lo_" + vn::flow(l.id, s, t), lo, Sense::ge, 0.0);
                }
            }

            for (const auto& b : sys.buses) {
                LinExpr balance;
                for (const auto& unit : sys.thermal)
                    if (unit.bus == b.id) balance.add(m.find_var(vn::power(unit.id, s, t)), 1.0);
                for (const auto& unit : sys.hydro)
                    if (unit.bus == b.id) balance.add(m.find_var(vn::hydro(unit.id, s, t)), 1.0);
                for (const auto& unit : sys.renewables)
                    if (unit.bus == b.id) balance.add(m.find_var(vn::renew(unit.id, s, t)), 1.0);
                for (const auto& e : sys.ess_candidates)
                    if (e.bus == b.id) {
                        balance.add(m.find_var(vn::discharge(e.id, s, t)), 1.0);
                        balance.add(m.find_var(vn::charge(e.id, s, t)), -1.0);
                    }
                for (const auto& l : sys.ac_lines) {
                    const VarId ti = m.find_var(vn::angle(l.from_bus, s, t));
                    const VarId tj = m.find_var(vn::angle(l.to_bus, s, t));
                    if (l.from_bus == b.id) {
                        balance.add(ti, -l.susceptance);
                        balance.add(tj, l.susceptance);
                    } else if (l.to_bus == b.id) {
                        balance.add(tj, -l.susceptance);
                        balance.add(ti, l.susceptance);
                    }
                }
                for (const auto& l : sys.hvdc_existing) {
                    if (l.from_bus == b.id) balance.add(m.find_var(vn::flow(l.id, s, t)), -1.0);
                    if (l.to_bus == b.id) balance.add(m.find_var(vn::flow(l.id, s, t)), 1.0);
                }
                for (const auto& c : sys.candidates) {
                    if (c.from_bus == b.id) balance.add(m.find_var(vn::flow(c.id, s, t)), -1.0);
                    if (c.to_bus == b.id) balance.add(m.find_var(vn::flow(c.id, s, t)), 1.0);
                }
                const auto& loads = sc.periods[t].bus_load;
                const auto it = loads.find(b.id);
                const double load = it == loads.end() ? 0.0 : it->second;
                if (balance.terms().empty()) {
                    if (load > 0.0)
                        throw DomainError("bus '" + b.id + "' has load but no injection path");
                    continue;
                }
                m.add_constraint("bal_" + b.id + "_" + vn::st(s, t), balance, Sense::eq, load);
            }
            for (const auto& l : sys.ac_lines) {
                LinExpr flow;
                flow.add(m.find_var(vn::angle(l.from_bus, s, t)), l.susceptance);
                flow.add(m.find_var(vn::angle(l.to_bus, s, t)), -l.susceptance);
                m.add_constraint("acf_hi_" + l.id + "_" + vn::st(s, t), flow, Sense::le, l.limit_mw);
                m.add_constraint("acf_lo_" + l.id + "_" + vn::st(s, t), flow, Sense::ge,
                                 -l.limit_mw);
            }
        }
    }

    // ---- emergency control layer ---------------------------------------------
    LinExpr ec_cost;
    if (mode != PlanMode::nonfc) {
        const auto faultable = sys.faultable_lines();
        const double pi_e = sys.emergencies.probability * static_cast<double>(emergency_stride);
        for (std::size_t s = 0; s < sys.scenarios.size(); ++s) {
            const Scenario& sc = sys.scenarios[s];
            for (std::size_t t = 0; t < sc.periods.size();
                 t += static_cast<std::size_t>(emergency_stride)) {
                for (const auto& fault_id : faultable) {
                    const auto fault_it =
                        std::find_if(dc_lines.begin(), dc_lines.end(),
                                     [&](const DcLineRef& l) { return l.id == fault_id; });
                    if (fault_it == dc_lines.end()) continue;
                    const DcLineRef& fault = *fault_it;
                    const VarId fault_flow = m.find_var(vn::flow(fault.id, s, t));

                    std::map<std::string, LinExpr> epc_net;
                    if (mode == PlanMode::fcec) {
                        for (const auto& l : dc_lines) {
                            if (l.id == fault.id) continue;
                            const double cap = l.max_capacity();
                            const VarId epc = m.add_continuous(
                                vn::epc(l.id, s, t, fault.id), -2.0 * cap, 2.0 * cap);
                            const VarId f = m.find_var(vn::flow(l.id, s, t));

                            // post-fault flow within the rating
                            LinExpr post = LinExpr(f) + LinExpr(epc);
                            if (l.cand) {
                                LinExpr hi = post;
                                hi.add(pcap_vars.at(l.id), -1.0);
                                m.add_constraint("dcpf_hi_" + vn::epc(l.id, s, t, fault.id), hi,
                                                 Sense::le, 0.0);
                                LinExpr lo = post;
                                lo.add(pcap_vars.at(l.id), 1.0);
                                m.add_constraint("dcpf_lo_" + vn::epc(l.id, s, t, fault.id), lo,
                                                 Sense::ge, 0.0);
                                // uninstalled lines cannot respond
                                LinExpr gate_hi = LinExpr(epc);
                                gate_hi.add(pcap_vars.at(l.id), -2.0);
                                m.add_constraint("epcgate_hi_" + vn::epc(l.id, s, t, fault.id),
                                                 gate_hi, Sense::le, 0.0);
                                LinExpr gate_lo = LinExpr(epc);
                                gate_lo.add(pcap_vars.at(l.id), 2.0);
                                m.add_constraint("epcgate_lo_" + vn::epc(l.id, s, t, fault.id),
                                                 gate_lo, Sense::ge, 0.0);
                            } else {
                                m.add_constraint("dcpf_hi_" + vn::epc(l.id, s, t, fault.id), post,
                                                 Sense::le, cap);
                                m.add_constraint("dcpf_lo_" + vn::epc(l.id, s, t, fault.id), post,
                                                 Sense::ge, -cap);
                            }
                            auto [pos, neg] = milp::add_abs_linearization(
                                m, LinExpr(epc), "epcabs_" + vn::epc(l.id, s, t, fault.id));
                            ec_cost += sc.weight_days * pi_e * sys.settings.c_epc *
                                       (LinExpr(pos) + LinExpr(neg));
                            for (const auto& area : sys.areas) {
                                const int inc = l.incidence(area);
                                if (inc) epc_net[area].add(epc, static_cast<double>(inc));
                            }
                        }
                    }

                    for (const auto& area : sys.areas) {
                        // equivalent aggregated parameters as affine expressions
                        LinExpr h_expr, dfast_expr, dslow_expr;
                        dfast_expr += LinExpr(sys.settings.damping_coeff *
                                              sys.area_load(sc, t, area));
                        for (const auto* u : sys.thermal_in(area)) {
                            const VarId uv = m.find_var(vn::commit(u->id, s, t));
                            h_expr.add(uv, u->dyn.inertia_const * u->dyn.p_max);
                            dfast_expr.add(uv, u->dyn.hp_fraction * u->dyn.p_max / u->dyn.droop);
                            dslow_expr.add(uv,
                                           (1.0 - u->dyn.hp_fraction) * u->dyn.p_max / u->dyn.droop);
                        }
                        for (const auto* u : sys.hydro_in(area)) {
                            h_expr += LinExpr(u->dyn.inertia_const * u->dyn.p_max);
                            dfast_expr += LinExpr(u->dyn.p_max / u->dyn.perm_droop);
                        }
                        for (const auto* e : sys.ess_in(area))
                            dfast_expr.add(zess_vars.at(e->id), e->dyn.p_max / e->dyn.droop);

                        LinExpr imbalance;
                        if (fault.from_area == area) imbalance.add(fault_flow, 1.0);
                        if (fault.to_area == area) imbalance.add(fault_flow, -1.0);

                        LinExpr dlc_expr, epc_expr;
                        if (mode == PlanMode::fcec) {
                            const double dlc_max =
                                sys.settings.dlc_fraction * sys.area_load(sc, t, area);
                            const VarId dlc =
                                m.add_continuous(vn::dlc(area, s, t, fault.id), 0.0, dlc_max);
                            ec_cost += sc.weight_days * pi_e * sys.settings.c_dlc * LinExpr(dlc);
                            dlc_expr = LinExpr(dlc);
                            auto it = epc_net.find(area);
                            if (it != epc_net.end()) epc_expr = it->second;
                        }

                        std::array<LinExpr, 6> x = {h_expr,   dfast_expr, dslow_expr,
                                                    epc_expr, dlc_expr,   imbalance};
                        milp::embed_secure_regions(m, x, rules.at(area),
                                                   "freq_" + area + "_" + vn::st(s, t) + "_x" +
                                                       fault.id);
                    }
                }
            }
        }
    }

    m.set_objective(ObjSense::minimize, inv_cost + op_cost + ec_cost);
    return pm;
}

}  // namespace gridnadir::planner
