#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "gridnadir/common/error.hpp"

namespace gridnadir::milp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarKind { continuous, binary, integer };
enum class Sense { le, eq, ge };
enum class ObjSense { minimize, maximize };

struct VarId {
    int idx = -1;
    bool valid() const { return idx >= 0; }
};

struct LinTerm {
    VarId var;
    double coeff = 0.0;
};

/// Affine expression over model variables. Supports the handful of operators
/// model-building code actually needs; compact() merges duplicate variables.
class LinExpr {
public:
    LinExpr() = default;
    LinExpr(double constant) : constant_(constant) {}  // NOLINT: implicit by design
    LinExpr(VarId v) { terms_.push_back({v, 1.0}); }   // NOLINT: implicit by design

    LinExpr& add(VarId v, double coeff) {
        terms_.push_back({v, coeff});
        return *this;
    }
    LinExpr& operator+=(const LinExpr& o) {
        terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
        constant_ += o.constant_;
        return *this;
    }
    LinExpr& operator-=(const LinExpr& o) {
        for (const auto& t : o.terms_) terms_.push_back({t.var, -t.coeff});
        constant_ -= o.constant_;
        return *this;
    }
    LinExpr& operator*=(double s) {
        for (auto& t : terms_) t.coeff *= s;
        constant_ *= s;
        return *this;
    }

    const std::vector<LinTerm>& terms() const { return terms_; }
    double constant() const { return constant_; }

    /// Sums duplicate variables (first-occurrence order) and drops zeros.
    LinExpr compacted() const;

private:
    std::vector<LinTerm> terms_;
    double constant_ = 0.0;
};

inline LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
inline LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
inline LinExpr operator*(double s, LinExpr e) { return e *= s; }
inline LinExpr operator*(LinExpr e, double s) { return e *= s; }
inline LinExpr operator-(LinExpr e) { return e *= -1.0; }

struct Variable {
    std::string name;
    VarKind kind = VarKind::continuous;
    double lo = 0.0;
    double hi = kInf;
};

struct Constraint {
    std::string name;
    LinExpr expr;  // compacted, constant folded into rhs
    Sense sense = Sense::le;
    double rhs = 0.0;
};

struct Objective {
    ObjSense sense = ObjSense::minimize;
    LinExpr expr;  // compacted; constant carried separately through solves
};

/// Solver-agnostic MILP container. Validation happens on insert: unique
/// names, finite coefficients, consistent bounds, resolvable variable ids.
class MilpModel {
public:
    VarId add_var(const std::string& name, VarKind kind, double lo, double hi);
    VarId add_continuous(const std::string& name, double lo, double hi) {
        return add_var(name, VarKind::continuous, lo, hi);
    }
    VarId add_binary(const std::string& name) { return add_var(name, VarKind::binary, 0.0, 1.0); }

    void add_constraint(const std::string& name, const LinExpr& expr, Sense sense, double rhs);
    void set_objective(ObjSense sense, const LinExpr& expr);

    const std::vector<Variable>& variables() const { return vars_; }
    const std::vector<Constraint>& constraints() const { return constraints_; }
    const Objective& objective() const { return objective_; }
    const Variable& var(VarId id) const;
    VarId find_var(const std::string& name) const;

    /// Interval of an affine expression over the variable box; used for
    /// big-M sizing. Throws if any participating variable is unbounded the
    /// wrong way.
    std::pair<double, double> expr_bounds(const LinExpr& expr) const;

private:
    void check_expr(const LinExpr& expr) const;

    std::vector<Variable> vars_;
    std::vector<Constraint> constraints_;
    Objective objective_;
    std::unordered_map<std::string, int> var_names_;
    std::unordered_map<std::string, int> constraint_names_;
};

}  // namespace gridnadir::milp
