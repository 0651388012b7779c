#pragma once

#include "gridnadir/dataset/dataset.hpp"
#include "gridnadir/wodt/tree.hpp"

namespace gridnadir::wodt {

/// Axis-aligned CART baseline: exact single-feature threshold splits chosen
/// by hard information gain. The result reuses the oblique tree structure
/// (one-hot coefficient rows), so predict() and region extraction apply.
ObliqueTree fit_axis_aligned(const dataset::Dataset& ds, const TrainConfig& config);

}  // namespace gridnadir::wodt
