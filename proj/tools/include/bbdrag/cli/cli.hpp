#pragma once

#include <string>
#include <vector>

namespace bbdrag::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_input_error = 1,
    exit_numerical_error = 2,
    exit_verify_failed = 3,
};

/// Entry point behind the `bbdrag` executable. `args` excludes the program
/// name. Results go to the configured target, diagnostics to stderr.
int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

/// Inclusive linear range "a:b:n" (n points) or a single number.
std::vector<double> parse_range(const std::string& text, const std::string& option);

/// Worker count from BBDRAG_THREADS, else the hardware concurrency.
unsigned thread_count();

} // namespace bbdrag::cli
