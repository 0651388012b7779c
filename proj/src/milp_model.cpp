#include "gridnadir/milp/model.hpp"

#include <algorithm>
#include <map>

namespace gridnadir::milp {

LinExpr LinExpr::compacted() const {
    std::map<int, double> sums;  // ordered for determinism of lookups
    std::vector<int> order;
    for (const auto& t : terms_) {
        auto [it, fresh] = sums.try_emplace(t.var.idx, 0.0);
        if (fresh) order.push_back(t.var.idx);
        it->second += t.coeff;
    }
    LinExpr out(constant_);
    for (int idx : order) {
        const double c = sums[idx];
        if (c != 0.0) out.add(VarId{idx}, c);
    }
    return out;
}

VarId MilpModel::add_var(const std::string& name, VarKind kind, double lo, double hi) {
    if (name.empty()) throw DomainError("variable name must not be empty");
    if (var_names_.count(name)) throw DomainError("duplicate variable name '" + name + "'");
    if (std::isnan(lo) || std::isnan(hi) || lo > hi)
        throw DomainError("variable '" + name + "' has inconsistent bounds");
    if (kind == VarKind::binary) {
        lo = std::max(lo, 0.0);
        hi = std::min(hi, 1.0);
    }
    vars_.push_back({name, kind, lo, hi});
    const int idx = static_cast<int>(vars_.size()) - 1;
    var_names_.emplace(name, idx);
    return VarId{idx};
}

void MilpModel::check_expr(const LinExpr& expr) const {
    for (const auto& t : expr.terms()) {
        if (t.var.idx < 0 || t.var.idx >= static_cast<int>(vars_.size()))
            throw DomainError("expression references an unknown variable id");
        if (!std::isfinite(t.coeff)) throw DomainError("non-finite coefficient in expression");
    }
    if (!std::isfinite(expr.constant())) throw DomainError("non-finite constant in expression");
}

void MilpModel::add_constraint(const std::string& name, const LinExpr& expr, Sense sense,
                               double rhs) {
    if (name.empty()) throw DomainError("constraint name must not be empty");
    if (constraint_names_.count(name)) throw DomainError("duplicate constraint name '" + name + "'");
    if (!std::isfinite(rhs)) throw DomainError("constraint '" + name + "' has non-finite rhs");
    check_expr(expr);
    Constraint c;
    c.name = name;
    c.expr = expr.compacted();
    c.sense = sense;
    c.rhs = rhs - c.expr.constant();
    c.expr -= LinExpr(c.expr.constant());
    if (c.expr.terms().empty())
        throw DomainError("constraint '" + name + "' has no variable terms");
    constraints_.push_back(std::move(c));
    constraint_names_.emplace(name, static_cast<int>(constraints_.size()) - 1);
}

void MilpModel::set_objective(ObjSense sense, const LinExpr& expr) {
    check_expr(expr);
    objective_.sense = sense;
    objective_.expr = expr.compacted();
}

const Variable& MilpModel::var(VarId id) const {
    if (id.idx < 0 || id.idx >= static_cast<int>(vars_.size()))
        throw DomainError("unknown variable id");
    return vars_[static_cast<std::size_t>(id.idx)];
}

VarId MilpModel::find_var(const std::string& name) const {
    auto it = var_names_.find(name);
    return it == var_names_.end() ? VarId{} : VarId{it->second};
}

std::pair<double, double> MilpModel::expr_bounds(const LinExpr& expr) const {
    const LinExpr e = expr.compacted();
    double lo = e.constant(), hi = e.constant();
    for (const auto& t : e.terms()) {
        const Variable& v = var(t.var);
        const double a = t.coeff * v.lo, b = t.coeff * v.hi;
        lo += std::min(a, b);
        hi += std::max(a, b);
    }
    return {lo, hi};
}

}  // namespace gridnadir::milp
