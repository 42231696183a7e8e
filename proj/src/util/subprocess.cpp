#include "tcpl/util/subprocess.hpp"

#include <cerrno>
#include <csignal>
#include <cstdlib>
#include <cstring>
#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <thread>
#include <unistd.h>

namespace tcpl {

namespace {

void close_fd(int& fd) {
    if (fd >= 0) ::close(fd);
    fd = -1;
}

}  // namespace

Subprocess::Subprocess(const std::vector<std::string>& argv) {
    if (argv.empty()) throw SubprocessError("empty command line");
    std::signal(SIGPIPE, SIG_IGN);

    int to_child[2];
    int from_child[2];
    int exec_err[2];
    if (::pipe(to_child) != 0 || ::pipe(from_child) != 0 || ::pipe2(exec_err, O_CLOEXEC) != 0) {
        throw SubprocessError(std::string("pipe: ") + std::strerror(errno));
    }

    std::vector<char*> args;
    for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);

    pid_ = ::fork();
    if (pid_ < 0) throw SubprocessError(std::string("fork: ") + std::strerror(errno));
    if (pid_ == 0) {
        ::dup2(to_child[0], STDIN_FILENO);
        ::dup2(from_child[1], STDOUT_FILENO);
        ::close(to_child[0]);
        ::close(to_child[1]);
        ::close(from_child[0]);
        ::close(from_child[1]);
        ::close(exec_err[0]);
        ::execvp(args[0], args.data());
        const int err = errno;
        [[maybe_unused]] auto n = ::write(exec_err[1], &err, sizeof err);
        ::_exit(127);
    }
    ::close(to_child[0]);
    ::close(from_child[1]);
    ::close(exec_err[1]);
    in_fd_ = to_child[1];
    out_fd_ = from_child[0];

    int err = 0;
    const auto n = ::read(exec_err[0], &err, sizeof err);
    ::close(exec_err[0]);
    if (n == static_cast<ssize_t>(sizeof err)) {
        close_fd(in_fd_);
        close_fd(out_fd_);
        ::waitpid(pid_, nullptr, 0);
        pid_ = -1;
        throw SubprocessError("cannot execute '" + argv.front() + "': " + std::strerror(err));
    }
}

Subprocess::~Subprocess() {
    close_fd(in_fd_);
    close_fd(out_fd_);
    if (pid_ <= 0) return;
    for (int i = 0; i < 50; ++i) {
        if (::waitpid(pid_, nullptr, WNOHANG) == pid_) return;
        std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    ::kill(pid_, SIGKILL);
    ::waitpid(pid_, nullptr, 0);
}

void Subprocess::write_line(const std::string& line) {
    std::string data = line;
    data += '\n';
    std::size_t off = 0;
    while (off < data.size()) {
        const auto n = ::write(in_fd_, data.data() + off, data.size() - off);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw SubprocessError(std::string("write to child failed: ") + std::strerror(errno));
        }
        off += static_cast<std::size_t>(n);
    }
}

std::optional<std::string> Subprocess::read_line(std::chrono::milliseconds timeout) {
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    while (true) {
        if (auto pos = buffer_.find('\n'); pos != std::string::npos) {
            std::string line = buffer_.substr(0, pos);
            buffer_.erase(0, pos + 1);
            return line;
        }
        if (eof_) {
            if (buffer_.empty()) return std::nullopt;
            std::string rest;
            rest.swap(buffer_);
            return rest;
        }
        const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
        if (left.count() <= 0) throw SubprocessTimeout("timed out waiting for child output");
        pollfd p{out_fd_, POLLIN, 0};
        const int r = ::poll(&p, 1, static_cast<int>(left.count()));
        if (r < 0) {
            if (errno == EINTR) continue;
            throw SubprocessError(std::string("poll: ") + std::strerror(errno));
        }
        if (r == 0) continue;
        char chunk[4096];
        const auto n = ::read(out_fd_, chunk, sizeof chunk);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw SubprocessError(std::string("read from child failed: ") + std::strerror(errno));
        }
        if (n == 0) eof_ = true;
        else buffer_.append(chunk, static_cast<std::size_t>(n));
    }
}

std::vector<std::string> split_command(const std::string& command) {
    std::vector<std::string> out;
    std::string cur;
    bool have = false;
    char quote = 0;
    for (char c : command) {
        if (quote) {
            if (c == quote) quote = 0;
            else cur += c;
            continue;
        }
        if (c == '\'' || c == '"') {
            quote = c;
            have = true;
        } else if (c == ' ' || c == '\t' || c == '\n') {
            if (have) out.push_back(cur);
            cur.clear();
            have = false;
        } else {
            cur += c;
            have = true;
        }
    }
    if (quote) throw SubprocessError("unterminated quote in command: " + command);
    if (have) out.push_back(cur);
    return out;
}

std::chrono::milliseconds subprocess_timeout() {
    if (const char* v = std::getenv("TCPL_SUBPROCESS_TIMEOUT_MS")) {
        char* end = nullptr;
        const long ms = std::strtol(v, &end, 10);
        if (end != v && ms > 0) return std::chrono::milliseconds(ms);
    }
    return std::chrono::milliseconds(30000);
}

}  // namespace tcpl
