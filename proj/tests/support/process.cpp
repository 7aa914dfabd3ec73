#include "process.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdlib>
#include <stdexcept>
#include <thread>

extern char** environ;

namespace mova::test {

namespace {

using Clock = std::chrono::steady_clock;

std::vector<char*> c_argv(const std::vector<std::string>& argv)
{
    std::vector<char*> out;
    for (const auto& a : argv) {
        out.push_back(const_cast<char*>(a.c_str()));
    }
    out.push_back(nullptr);
    return out;
}

void make_pipe(int fds[2])
{
    if (pipe2(fds, O_CLOEXEC) != 0) {
        throw std::runtime_error("pipe failed");
    }
}

int remaining_ms(Clock::time_point deadline)
{
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now()).count();
    return left < 0 ? 0 : static_cast<int>(left);
}

std::optional<int> wait_for(pid_t pid, Clock::time_point deadline)
{
    while (true) {
        int status = 0;
        pid_t r = waitpid(pid, &status, WNOHANG);
        if (r == pid) {
            return status;
        }
        if (Clock::now() >= deadline) {
            return std::nullopt;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
}

int exit_code(int status)
{
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

RunResult run(const std::vector<std::string>& argv, std::chrono::milliseconds timeout)
{
    int out[2];
    int err[2];
    make_pipe(out);
    make_pipe(err);

    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, out[1], STDOUT_FILENO);
    posix_spawn_file_actions_adddup2(&actions, err[1], STDERR_FILENO);
    posix_spawn_file_actions_addopen(&actions, STDIN_FILENO, "/dev/null", O_RDONLY, 0);

    auto args = c_argv(argv);
    pid_t pid = -1;
    int rc = posix_spawn(&pid, args[0], &actions, nullptr, args.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    close(out[1]);
    close(err[1]);
    if (rc != 0) {
        close(out[0]);
        close(err[0]);
        throw std::runtime_error("cannot spawn " + argv[0]);
    }

    RunResult result;
    const auto deadline = Clock::now() + timeout;
    std::array<pollfd, 2> fds{pollfd{out[0], POLLIN, 0}, pollfd{err[0], POLLIN, 0}};
    int open_fds = 2;
    std::array<char, 4096> buf{};
    while (open_fds > 0) {
        int ready = poll(fds.data(), fds.size(), remaining_ms(deadline));
        if (ready <= 0) {
            result.timed_out = true;
            kill(pid, SIGKILL);
            break;
        }
        for (std::size_t i = 0; i < fds.size(); ++i) {
            if (fds[i].fd < 0 || fds[i].revents == 0) {
                continue;
            }
            ssize_t n = read(fds[i].fd, buf.data(), buf.size());
            if (n <= 0) {
                close(fds[i].fd);
                fds[i].fd = -1;
                --open_fds;
                continue;
            }
            (i == 0 ? result.out : result.err).append(buf.data(), static_cast<std::size_t>(n));
        }
    }
    for (auto& p : fds) {
        if (p.fd >= 0) {
            close(p.fd);
        }
    }
    auto status = wait_for(pid, result.timed_out ? Clock::now() + std::chrono::seconds(5) : deadline);
    if (!status) {
        kill(pid, SIGKILL);
        status = wait_for(pid, Clock::now() + std::chrono::seconds(5));
        result.timed_out = true;
    }
    result.exit_code = status && !result.timed_out ? exit_code(*status) : -1;
    return result;
}

Process::Process(const std::vector<std::string>& argv, const std::filesystem::path& stderr_path)
{
    int out[2];
    make_pipe(out);
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, out[1], STDOUT_FILENO);
    posix_spawn_file_actions_addopen(&actions, STDERR_FILENO, stderr_path.c_str(), O_WRONLY | O_CREAT | O_APPEND,
                                     0644);
    posix_spawn_file_actions_addopen(&actions, STDIN_FILENO, "/dev/null", O_RDONLY, 0);
    auto args = c_argv(argv);
    int rc = posix_spawn(&pid_, args[0], &actions, nullptr, args.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    close(out[1]);
    if (rc != 0) {
        close(out[0]);
        throw std::runtime_error("cannot spawn " + argv[0]);
    }
    out_fd_ = out[0];
}

Process::~Process()
{
    if (!reaped_ && pid_ > 0) {
        kill(pid_, SIGKILL);
        wait(std::chrono::seconds(5));
    }
    if (out_fd_ >= 0) {
        close(out_fd_);
    }
}

std::optional<std::string> Process::read_line(std::chrono::milliseconds timeout)
{
    const auto deadline = Clock::now() + timeout;
    while (true) {
        auto nl = buffer_.find('\n');
        if (nl != std::string::npos) {
            std::string line = buffer_.substr(0, nl);
            buffer_.erase(0, nl + 1);
            return line;
        }
        pollfd p{out_fd_, POLLIN, 0};
        if (poll(&p, 1, remaining_ms(deadline)) <= 0) {
            return std::nullopt;
        }
        std::array<char, 1024> buf{};
        ssize_t n = read(out_fd_, buf.data(), buf.size());
        if (n <= 0) {
            return std::nullopt;
        }
        buffer_.append(buf.data(), static_cast<std::size_t>(n));
    }
}

void Process::signal(int sig)
{
    if (!reaped_) {
        kill(pid_, sig);
    }
}

std::optional<int> Process::wait(std::chrono::milliseconds timeout)
{
    if (reaped_) {
        return std::nullopt;
    }
    auto status = wait_for(pid_, Clock::now() + timeout);
    if (status) {
        reaped_ = true;
    }
    return status;
}

TempDir::TempDir()
{
    std::string pattern = (std::filesystem::temp_directory_path() / "mova-test-XXXXXX").string();
    if (mkdtemp(pattern.data()) == nullptr) {
        throw std::runtime_error("mkdtemp failed");
    }
    path_ = pattern;
}

TempDir::~TempDir()
{
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

}  // namespace mova::test
