#pragma once

#include <filesystem>

#include "gridnadir/wodt/regions.hpp"
#include "gridnadir/wodt/tree.hpp"

namespace gridnadir::wodt {

void save_tree(const ObliqueTree& tree, const std::filesystem::path& file);
ObliqueTree load_tree(const std::filesystem::path& file);

/// CSV of (leaf_id, row_idx, six coefficients, bias) in original units.
void write_regions_csv(const std::vector<SecureRegion>& regions,
                       const std::filesystem::path& file);

}  // namespace gridnadir::wodt
