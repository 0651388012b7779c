#include "gridnadir/common/subprocess.hpp"

#include <fcntl.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>

#include "gridnadir/common/error.hpp"

namespace gridnadir {

RunResult run_process(const std::vector<std::string>& argv,
                      const std::filesystem::path& stdout_file,
                      const std::filesystem::path& stderr_file) {
    if (argv.empty()) throw DomainError("run_process: empty argv");

    std::vector<char*> cargv;
    cargv.reserve(argv.size() + 1);
    for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
    cargv.push_back(nullptr);

    const pid_t pid = ::fork();
    if (pid < 0) throw EnvironmentError("fork failed");
    if (pid == 0) {
        auto redirect = [](const std::filesystem::path& file, int fd) {
            if (file.empty()) return;
            const int out = ::open(file.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
            if (out >= 0) {
                ::dup2(out, fd);
                ::close(out);
            }
        };
        redirect(stdout_file, STDOUT_FILENO);
        redirect(stderr_file, STDERR_FILENO);
        ::execvp(cargv[0], cargv.data());
        ::_exit(127);  // exec failed
    }

    int status = 0;
    if (::waitpid(pid, &status, 0) < 0) throw EnvironmentError("waitpid failed");
    RunResult r;
    if (WIFEXITED(status)) {
        r.exit_code = WEXITSTATUS(status);
        r.exec_failed = r.exit_code == 127;
    } else {
        r.exit_code = -1;
    }
    return r;
}

}  // namespace gridnadir
