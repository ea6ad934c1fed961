#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace s3e::cli {

enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailure = 2,
    kBudgetExhausted = 3,
    kInputError = 4,
};

struct SolveFlags {
    std::string order = "lex";
    std::string var_order;  // comma separated, empty keeps the file's order
    std::string strategy = "sugar";
    std::uint64_t budget_pairs = 1'000'000;
    double budget_seconds = 0;
    int samples = 5;
    std::string out;
    std::string format = "table";
};

/// Writes the variational system of a case; reports the match against a shipped fixture.
int cmd_derive(const std::string& case_text, const std::string& out, std::ostream& os, std::ostream& err);

/// Buchberger, finiteness test, back substitution, exact and numeric certification.
/// Input is a system file, or a case derived on the fly when the path is empty.
int cmd_solve(const std::string& system_path, const std::string& case_text, const SolveFlags& flags,
              std::ostream& os, std::ostream& err);

/// Re-checks a solutions file: exact residuals on the system (derived from the file's
/// case unless a system path is given) and Einstein certification.
int cmd_verify(const std::string& solutions_path, const std::string& system_path, int samples,
               const std::string& format, std::ostream& os, std::ostream& err);

/// Command line entry point.
int run(int argc, char** argv, std::ostream& os, std::ostream& err);

/// Fixture directory compiled into the tool.
std::string data_dir();

}  // namespace s3e::cli
