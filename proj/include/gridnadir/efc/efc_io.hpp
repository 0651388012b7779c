#pragma once

#include <filesystem>

#include "gridnadir/efc/efc.hpp"
#include "gridnadir/planner/system.hpp"

namespace gridnadir::efc {

/// One standalone emergency case: the HVDC topology with pre-fault flows,
/// the faulted line, and a per-area operating point (commitments + load)
/// resolved against the planning system's unit fleets.
struct CaseBundle {
    std::vector<AreaEfcSpec> areas;  // rules left empty; the caller attaches them
    std::vector<HvdcLine> lines;
    EmergencyScenario scenario;
    EfcCosts costs;
};

CaseBundle load_case(const std::filesystem::path& file, const planner::PlanningSystem& sys);

void write_schedule(const EfcSchedule& schedule, const CaseBundle& bundle,
                    const std::filesystem::path& file);
void write_schedule_csv(const EfcSchedule& schedule, const std::filesystem::path& file);
void write_verification_csv(const std::map<std::string, VerifiedNadir>& verification,
                            double bound_hz, const std::filesystem::path& file);

}  // namespace gridnadir::efc
