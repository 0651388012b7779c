#pragma once

#include <array>
#include <vector>

#include "gridnadir/milp/model.hpp"
#include "gridnadir/wodt/tree.hpp"

namespace gridnadir::milp {

struct RegionEmbedding {
    std::vector<VarId> selectors;             // one binary v_t per region
    std::vector<std::vector<double>> big_m;   // per region, per row
};

/// Disjunctive secure-region membership: one binary selector per region,
/// sum of selectors pinned to 1, and per row
///   A_row . X + b_row >= -M_row (1 - v_t).
/// M is sized per row from the feature-expression bounds over the variable
/// box (plus a small margin), so an inactive region never cuts the box.
/// Every feature expression must be bounded.
RegionEmbedding embed_secure_regions(MilpModel& model, const std::array<LinExpr, 6>& features,
                                     const std::vector<wodt::SecureRegion>& regions,
                                     const std::string& prefix);

/// Splits x into x = x_plus - x_minus with both parts nonnegative; under a
/// positive cost on (x_plus + x_minus) the pair takes the value (|x|, 0) or
/// (0, |x|) at an optimum. x must be bounded.
std::pair<VarId, VarId> add_abs_linearization(MilpModel& model, const LinExpr& x,
                                              const std::string& prefix);

}  // namespace gridnadir::milp
