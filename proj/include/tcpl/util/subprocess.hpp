#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <sys/types.h>
#include <vector>

#include "tcpl/core/errors.hpp"

namespace tcpl {

class SubprocessError : public Error {
public:
    using Error::Error;
};

class SubprocessTimeout : public SubprocessError {
public:
    using SubprocessError::SubprocessError;
};

/// Child process with line-oriented pipes on stdin/stdout. stderr is inherited.
/// The destructor closes stdin, waits briefly, then kills the child.
class Subprocess {
public:
    /// Throws SubprocessError when the program cannot be started.
    explicit Subprocess(const std::vector<std::string>& argv);
    ~Subprocess();

    Subprocess(const Subprocess&) = delete;
    Subprocess& operator=(const Subprocess&) = delete;

    /// Writes text plus '\n'. Throws SubprocessError when the child has gone away.
    void write_line(const std::string& line);

    /// Next line without its terminator; nullopt on EOF. Throws SubprocessTimeout.
    std::optional<std::string> read_line(std::chrono::milliseconds timeout);

    pid_t pid() const { return pid_; }

private:
    pid_t pid_ = -1;
    int in_fd_ = -1;   // our end of the child's stdin
    int out_fd_ = -1;  // our end of the child's stdout
    std::string buffer_;
    bool eof_ = false;
};

/// Whitespace split honouring single and double quotes.
std::vector<std::string> split_command(const std::string& command);

/// From TCPL_SUBPROCESS_TIMEOUT_MS, default 30 s.
std::chrono::milliseconds subprocess_timeout();

}  // namespace tcpl
