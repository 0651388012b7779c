#pragma once

#include <filesystem>
#include <optional>
#include <unordered_map>

#include "gridnadir/milp/model.hpp"

namespace gridnadir::milp {

enum class SolveStatus { optimal, infeasible, unbounded, limit };

struct Solution {
    SolveStatus status = SolveStatus::infeasible;
    double objective = 0.0;  // includes the model's objective constant
    std::unordered_map<std::string, double> values;  // by original variable name
    std::filesystem::path log_file;

    double value(const std::string& name) const;
    double value_or(const std::string& name, double fallback) const;
};

/// Two supported external-solver file dialects: the HiGHS CLI (also spoken
/// by the bundled scipy-backed shim) and the CBC CLI.
enum class SolverDialect { highs, cbc };

struct SolverConfig {
    std::filesystem::path executable;
    SolverDialect dialect = SolverDialect::highs;
    double time_limit_s = 600.0;
    double mip_rel_gap = 1e-6;
    std::filesystem::path workspace;  // defaults to a fresh temp directory
    bool keep_workspace = false;
};

// distinct error kinds for solver failure modes
struct SolverNotFound : EnvironmentError {
    using EnvironmentError::EnvironmentError;
};
struct SolverRunError : EnvironmentError {
    using EnvironmentError::EnvironmentError;
};
struct SolutionParseError : DomainError {
    using DomainError::DomainError;
};

/// Writes the LP file into a private workspace, invokes the solver as a
/// subprocess and parses its solution file. Threads and seeds are pinned
/// where the dialect supports it.
Solution solve(const MilpModel& model, const SolverConfig& config);

/// Resolves a solver: explicit path if given, else $GRIDNADIR_SOLVER, else
/// `highs` / `cbc` on PATH, else the bundled shim (tools/milp_solve.py) when
/// it can be located near the executable or the current directory.
std::optional<SolverConfig> resolve_solver(const std::string& explicit_path = "");

/// Dialect guess from an executable name (cbc if the stem mentions it).
SolverDialect dialect_for(const std::filesystem::path& exe);

}  // namespace gridnadir::milp
