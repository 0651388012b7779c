#include "gridnadir/milp/embed.hpp"

#include <algorithm>

namespace gridnadir::milp {

RegionEmbedding embed_secure_regions(MilpModel& model, const std::array<LinExpr, 6>& features,
                                     const std::vector<wodt::SecureRegion>& regions,
                                     const std::string& prefix) {
    if (regions.empty())
        throw DomainError(prefix + ": no secure regions to embed (tree has no secure leaf)");

    for (int j = 0; j < 6; ++j) {
        const auto [lo, hi] = model.expr_bounds(features[static_cast<std::size_t>(j)]);
        if (!std::isfinite(lo) || !std::isfinite(hi))
            throw DomainError(prefix + ": feature expression " + std::to_string(j) +
                              " is unbounded; big-M sizing needs explicit bounds");
    }

    RegionEmbedding emb;
    LinExpr selector_sum;
    for (std::size_t t = 0; t < regions.size(); ++t) {
        const auto& region = regions[t];
        const VarId v = model.add_binary(prefix + "_v" + std::to_string(t));
        emb.selectors.push_back(v);
        selector_sum += LinExpr(v);

        std::vector<double> row_m(static_cast<std::size_t>(region.A.rows()), 0.0);
        for (Eigen::Index r = 0; r < region.A.rows(); ++r) {
            LinExpr row_expr(region.b(r));
            for (int j = 0; j < 6; ++j)
                row_expr += region.A(r, j) * features[static_cast<std::size_t>(j)];

            const auto [row_lo, row_hi] = model.expr_bounds(row_expr);
            (void)row_hi;
            const double m = std::max(0.0, -row_lo) * (1.0 + 1e-9) + 1e-6;
            row_m[static_cast<std::size_t>(r)] = m;

            // A.X + b + M(1 - v) >= 0   <=>   A.X - M v >= -b - M
            LinExpr lhs = row_expr;
            lhs.add(v, -m);
            model.add_constraint(
                prefix + "_r" + std::to_string(t) + "_" + std::to_string(r), lhs, Sense::ge, -m);
        }
        emb.big_m.push_back(std::move(row_m));
    }
    model.add_constraint(prefix + "_pick_one", selector_sum, Sense::eq, 1.0);
    return emb;
}

std::pair<VarId, VarId> add_abs_linearization(MilpModel& model, const LinExpr& x,
                                              const std::string& prefix) {
    const auto [lo, hi] = model.expr_bounds(x);
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw DomainError(prefix + ": absolute-value split needs a bounded expression");

    const VarId plus = model.add_continuous(prefix + "_pos", 0.0, std::max(0.0, hi));
    const VarId minus = model.add_continuous(prefix + "_neg", 0.0, std::max(0.0, -lo));
    LinExpr balance = x;
    balance.add(plus, -1.0);
    balance.add(minus, 1.0);
    model.add_constraint(prefix + "_absdef", balance, Sense::eq, 0.0);
    return {plus, minus};
}

}  // namespace gridnadir::milp
