#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace bnsens::cli {

enum class Format { Human, Structured };

struct RunConfig {
    unsigned precision = 128;
    std::uint64_t seed = 1;
    std::string grid = "1/16";
    std::size_t vertex_cap = 20;
    std::uint64_t max_states = std::uint64_t{1} << 20;
    Format format = Format::Human;
};

/// Exit codes shared by the subcommands.
enum Exit : int {
    kOk = 0,
    kNo = 1,         ///< tune: no / no-at-resolution; verify: disagreements found
    kError = 2,      ///< parse, validation and argument errors
    kZeroEvidence = 3,
};

struct SweepOptions {
    std::size_t count = 100;
    std::size_t first = 0;
    std::size_t max_vars = 6;
    std::size_t depth = 4;
    std::size_t max_clauses = 8;
    bool emajsat = true;
    bool maxsat = true;
    std::vector<std::string> variants{"RANGE", "TUNING", "EVIDENCE_RANGE", "MODE", "MIN_RANGE", "MIN_CHANGE_RANGE"};
};

/// Seeded equivalence sweep: compiled-network solvers against the brute-force
/// oracles. Writes one record per instance plus a summary and returns kOk iff
/// nothing disagreed.
int run_verify(const SweepOptions& options, const RunConfig& config, std::ostream& out);

/// Entry point of the bnsens executable; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace bnsens::cli
