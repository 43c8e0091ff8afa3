/* Copyright 2026 The blurbench Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef BLURBENCH_SUBPROCESS_HPP_
#define BLURBENCH_SUBPROCESS_HPP_

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <chrono>
#include <filesystem>
#include <string>
#include <thread>

namespace blurbench::detail {

struct CommandResult {
    int exit_code = -1;
    bool timed_out = false;
    std::string output;  // captured stdout
};

/// Runs a shell command with a wall-clock timeout, capturing stdout.
/// The child is killed (SIGKILL, whole process group) on timeout.
inline CommandResult run_command(const std::string& command, double timeout_seconds) {
    int pipefd[2];
    if (pipe(pipefd) != 0) throw std::runtime_error("run_command: pipe() failed");

    const pid_t pid = fork();
    if (pid < 0) {
        close(pipefd[0]);
        close(pipefd[1]);
        throw std::runtime_error("run_command: fork() failed");
    }
    if (pid == 0) {
        setpgid(0, 0);
        dup2(pipefd[1], STDOUT_FILENO);
        close(pipefd[0]);
        close(pipefd[1]);
        execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }

    close(pipefd[1]);
    // non-blocking read loop so the timeout also covers a child that never exits
    fcntl(pipefd[0], F_SETFL, O_NONBLOCK);

    CommandResult res;
    const auto deadline =
        std::chrono::steady_clock::now() + std::chrono::duration<double>(timeout_seconds);
    char buf[4096];
    int status = 0;
    bool exited = false;
    while (true) {
        ssize_t n;
        while ((n = read(pipefd[0], buf, sizeof(buf))) > 0) res.output.append(buf, n);
        const pid_t r = waitpid(pid, &status, WNOHANG);
        if (r == pid) {
            exited = true;
            break;
        }
        if (std::chrono::steady_clock::now() >= deadline) {
            kill(-pid, SIGKILL);
            kill(pid, SIGKILL);
            waitpid(pid, &status, 0);
            res.timed_out = true;
            break;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(2));
    }
    // drain whatever is left after exit
    ssize_t n;
    while ((n = read(pipefd[0], buf, sizeof(buf))) > 0) res.output.append(buf, n);
    close(pipefd[0]);

    if (exited && WIFEXITED(status)) res.exit_code = WEXITSTATUS(status);
    return res;
}

/// Process-unique temporary path; safe for concurrent workers.
inline std::filesystem::path unique_temp_path(const std::string& tag, const std::string& ext) {
    static std::atomic<uint64_t> counter{0};
    const uint64_t id = counter.fetch_add(1);
    const auto name = "blurbench_" + std::to_string(::getpid()) + "_" + tag + "_" +
                      std::to_string(id) + ext;
    return std::filesystem::temp_directory_path() / name;
}

inline std::string replace_all(std::string s, const std::string& from, const std::string& to) {
    size_t pos = 0;
    while ((pos = s.find(from, pos)) != std::string::npos) {
        s.replace(pos, from.size(), to);
        pos += to.size();
    }
    return s;
}

}  // namespace blurbench::detail

#endif  // BLURBENCH_SUBPROCESS_HPP_
