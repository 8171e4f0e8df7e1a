#ifndef CHAOSKIT_ERRORS_HPP
#define CHAOSKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace chaoskit {

// Hard resource/size limits were exceeded (chaos order cap, kernel support
// size, Cholesky budget). Mapped to exit code 3 by the CLI.
struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// A kernel file could not be parsed or failed schema validation.
// Mapped to exit code 2 by the CLI.
struct KernelParseError : std::runtime_error {
    KernelParseError(const std::string& what, int line)
        : std::runtime_error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what),
          line_number(line) {}
    int line_number = 0;
};

// Invalid run configuration (bad threshold, bad family parameters).
// Mapped to exit code 4 by the CLI.
struct ConfigError : std::invalid_argument {
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// The Hurst-parameter contract H in (0, 1/2) was violated. Mapped to exit
// code 5 by the CLI; kept separate from ConfigError because the whole
// power-variation analysis is meaningless outside this range.
struct HurstRangeError : std::domain_error {
    explicit HurstRangeError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace chaoskit

#endif
