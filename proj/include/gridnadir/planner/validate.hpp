#pragma once

#include "gridnadir/planner/result.hpp"

namespace gridnadir::planner {

struct ValidationEntry {
    std::size_t scenario = 0, period = 0;
    std::string faulted_line;
    std::string area;
    double nadir_hz = 0.0;
    bool violates = false;
};

struct ValidationReport {
    std::vector<ValidationEntry> entries;
    std::map<std::string, double> worst_by_area;
    std::size_t violations = 0;
    double bound_hz = 0.5;

    double worst_nadir() const;
};

/// Re-simulates every planned (scenario, period, emergency) through the SFR
/// engine with the plan's EFC schedules (zero for nonfc/fc) and nominal unit
/// dynamics. Faults of candidates that were not installed are skipped (their
/// flow is structurally zero).
ValidationReport validate_plan(const PlanResult& result, const PlanningSystem& sys, int jobs = 1);

void write_validation_csv(const ValidationReport& report, const std::filesystem::path& file);

}  // namespace gridnadir::planner
