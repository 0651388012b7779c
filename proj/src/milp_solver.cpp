#include "gridnadir/milp/solver.hpp"

#include <unistd.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gridnadir/common/num_format.hpp"
#include "gridnadir/common/subprocess.hpp"
#include "gridnadir/milp/lp_writer.hpp"

namespace gridnadir::milp {

double Solution::value(const std::string& name) const {
    auto it = values.find(name);
    if (it == values.end()) throw DomainError("solution carries no value for '" + name + "'");
    return it->second;
}

double Solution::value_or(const std::string& name, double fallback) const {
    auto it = values.find(name);
    return it == values.end() ? fallback : it->second;
}

SolverDialect dialect_for(const std::filesystem::path& exe) {
    const std::string stem = exe.stem().string();
    return stem.find("cbc") != std::string::npos ? SolverDialect::cbc : SolverDialect::highs;
}

namespace {

std::filesystem::path fresh_workspace() {
    static std::atomic<unsigned> counter{0};
    const auto dir = std::filesystem::temp_directory_path() /
                     ("gridnadir_milp_" + std::to_string(::getpid()) + "_" +
                      std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(dir);
    return dir;
}

SolveStatus status_from_text(const std::string& text) {
    if (text.find("Optimal") != std::string::npos || text.find("Integer optimal") != std::string::npos)
        return SolveStatus::optimal;
    if (text.find("nfeasible") != std::string::npos) return SolveStatus::infeasible;
    if (text.find("nbounded") != std::string::npos) return SolveStatus::unbounded;
    if (text.find("imit") != std::string::npos || text.find("Stopped") != std::string::npos ||
        text.find("bound") != std::string::npos || text.find("nterrupt") != std::string::npos)
        return SolveStatus::limit;
    throw SolutionParseError("unrecognized solver status '" + text + "'");
}

Solution parse_highs_solution(const std::filesystem::path& file,
                              const std::unordered_map<std::string, std::string>& names) {
    std::ifstream in(file);
    if (!in) throw SolutionParseError("solver produced no solution file at " + file.string());

    Solution sol;
    std::string line;
    bool saw_status = false;
    while (std::getline(in, line)) {
        if (line == "Model status") {
            while (std::getline(in, line) && line.empty()) {
            }
            sol.status = status_from_text(line);
            saw_status = true;
        } else if (line.rfind("Objective", 0) == 0) {
            std::istringstream ss(line);
            std::string word;
            ss >> word >> sol.objective;
        } else if (line.rfind("# Columns", 0) == 0) {
            std::size_t n = 0;
            std::istringstream ss(line.substr(9));
            ss >> n;
            for (std::size_t i = 0; i < n && std::getline(in, line); ++i) {
                std::istringstream row(line);
                std::string name;
                double value = 0.0;
                row >> name >> value;
                auto it = names.find(name);
                sol.values[it != names.end() ? it->second : name] = value;
            }
            break;  // duals/basis sections are not consumed
        }
    }
    if (!saw_status) throw SolutionParseError("malformed solution file " + file.string());
    return sol;
}

Solution parse_cbc_solution(const std::filesystem::path& file,
                            const std::unordered_map<std::string, std::string>& names) {
    std::ifstream in(file);
    if (!in) throw SolutionParseError("solver produced no solution file at " + file.string());

    Solution sol;
    std::string line;
    if (!std::getline(in, line)) throw SolutionParseError("empty solution file " + file.string());
    sol.status = status_from_text(line);
    const auto obj_at = line.find("objective value");
    if (obj_at != std::string::npos) sol.objective = parse_double_prefix(line.substr(obj_at + 15));

    while (std::getline(in, line)) {
        std::istringstream row(line);
        long idx = 0;
        std::string name;
        double value = 0.0;
        if (!(row >> idx >> name >> value)) continue;
        auto it = names.find(name);
        sol.values[it != names.end() ? it->second : name] = value;
    }
    return sol;
}

}  // namespace

Solution solve(const MilpModel& model, const SolverConfig& config) {
    if (config.executable.empty()) throw SolverNotFound("no MILP solver configured");

    const std::filesystem::path ws =
        config.workspace.empty() ? fresh_workspace() : config.workspace;
    std::filesystem::create_directories(ws);
    const auto lp = ws / "model.lp";
    const auto sol_file = ws / "model.sol";
    const auto log_file = ws / "solver.log";
    const auto names = write_lp(model, lp);

    std::vector<std::string> argv;
    const std::string exe = config.executable.string();
    if (config.executable.extension() == ".py") {
        argv.push_back("python3");
    }
    argv.push_back(exe);
    if (config.dialect == SolverDialect::highs) {
        const auto opts = ws / "highs_options.txt";
        {
            std::ofstream o(opts);
            o << "mip_rel_gap = " << format_double(config.mip_rel_gap) << '\n';
            o << "threads = 1\n";
            o << "random_seed = 0\n";
        }
        argv.insert(argv.end(), {"--options_file", opts.string(), "--time_limit",
                                 format_double(config.time_limit_s), "--solution_file",
                                 sol_file.string(), lp.string()});
    } else {
        argv.insert(argv.end(),
                    {lp.string(), "-seconds", format_double(config.time_limit_s), "-ratioGap",
                     format_double(config.mip_rel_gap), "solve", "printingOptions", "all",
                     "solution", sol_file.string()});
    }

    const RunResult run = run_process(argv, log_file, log_file);
    if (run.exec_failed)
        throw SolverNotFound("solver executable could not be started: " + exe);
    if (run.exit_code != 0)
        throw SolverRunError("solver exited with code " + std::to_string(run.exit_code) +
                             "; log: " + log_file.string());

    Solution sol = config.dialect == SolverDialect::highs
                       ? parse_highs_solution(sol_file, names)
                       : parse_cbc_solution(sol_file, names);
    sol.objective += model.objective().expr.constant();
    sol.log_file = log_file;

    if (!config.keep_workspace && config.workspace.empty()) {
        std::error_code ec;
        std::filesystem::remove_all(ws, ec);
        sol.log_file.clear();
    }
    return sol;
}

namespace {

std::optional<std::filesystem::path> which(const std::string& name) {
    const char* path_env = std::getenv("PATH");
    if (!path_env) return std::nullopt;
    std::stringstream ss(path_env);
    std::string dir;
    while (std::getline(ss, dir, ':')) {
        if (dir.empty()) continue;
        const auto candidate = std::filesystem::path(dir) / name;
        if (::access(candidate.c_str(), X_OK) == 0) return candidate;
    }
    return std::nullopt;
}

std::optional<std::filesystem::path> locate_bundled_shim() {
    std::vector<std::filesystem::path> roots;
    std::error_code ec;
    const auto self = std::filesystem::read_symlink("/proc/self/exe", ec);
    if (!ec) {
        auto dir = self.parent_path();
        for (int up = 0; up < 3; ++up) {
            roots.push_back(dir);
            dir = dir.parent_path();
        }
    }
    roots.push_back(std::filesystem::current_path());
    for (const auto& root : roots) {
        for (const auto& rel : {"milp_solve.py", "tools/milp_solve.py"}) {
            const auto candidate = root / rel;
            if (std::filesystem::exists(candidate)) return candidate;
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<SolverConfig> resolve_solver(const std::string& explicit_path) {
    SolverConfig cfg;
    if (!explicit_path.empty()) {
        cfg.executable = explicit_path;
        cfg.dialect = dialect_for(cfg.executable);
        return cfg;
    }
    if (const char* env = std::getenv("GRIDNADIR_SOLVER"); env && *env) {
        cfg.executable = env;
        cfg.dialect = dialect_for(cfg.executable);
        return cfg;
    }
    for (const char* name : {"highs", "cbc"}) {
        if (auto found = which(name)) {
            cfg.executable = *found;
            cfg.dialect = dialect_for(cfg.executable);
            return cfg;
        }
    }
    if (auto shim = locate_bundled_shim()) {
        cfg.executable = *shim;
        cfg.dialect = SolverDialect::highs;  // the shim speaks the HiGHS file dialect
        return cfg;
    }
    return std::nullopt;
}

}  // namespace gridnadir::milp
