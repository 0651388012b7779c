#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gridnadir/aggregation.hpp"

namespace gridnadir::dataset {

enum class Label : int { secure = 0, insecure = 1 };

struct LabeledSample {
    FeatureVector features;
    double nadir_hz = 0.0;
    Label label = Label::secure;
};

/// Labeled SFR dataset plus the provenance needed to reproduce and re-check
/// it: the frozen feature order, the security threshold, the band filter,
/// simulation resolution and the root seed.
struct Dataset {
    std::string feature_order;  // must equal feature_order_string()
    double threshold_hz = 0.5;
    double band_lo = 0.4;
    double band_hi = 0.6;
    double dt = 1e-3;
    double horizon = 20.0;
    std::uint64_t seed = 0;
    std::vector<LabeledSample> rows;

    std::size_t count(Label l) const;
};

/// CSV with `# key=value` comment header lines followed by the column header
/// h,d_fast,d_slow,dp_epc,dp_dlc,dp_d,nadir_hz,label and one row per sample.
void write_dataset(const Dataset& ds, const std::filesystem::path& file);
Dataset read_dataset(const std::filesystem::path& file);

}  // namespace gridnadir::dataset
