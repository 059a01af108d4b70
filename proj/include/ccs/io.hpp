#pragma once

// Binary solution files (little-endian IEEE 754 interval endpoints) and the
// human-readable report with shared-prefix bracket notation.

#include <stdexcept>
#include <string>
#include <vector>

#include "ccs/search.hpp"

namespace ccs {

struct BadMagic : std::runtime_error {
    BadMagic() : std::runtime_error("solution file: bad magic") {}
};
struct VersionMismatch : std::runtime_error {
    VersionMismatch() : std::runtime_error("solution file: unsupported version") {}
};
struct TruncatedFile : std::runtime_error {
    TruncatedFile() : std::runtime_error("solution file: size does not match header") {}
};

// Header: magic, u32 version = 1, u32 n, u32 dim, u64 count; then per
// solution n * dim intervals as (lo, hi) binary64 pairs, little-endian,
// bodies in index order, coordinates x, y, z.
inline constexpr char kMagicSolutions[4] = {'C', 'C', 'N', 'D'};
inline constexpr char kMagicUndecided[4] = {'C', 'C', 'U', 'D'};

struct SolutionFileData {
    int n = 0;
    int dim = 0;
    bool undecided_kind = false;
    std::vector<Configuration> configs;
};

// Atomic write (temp file + rename).
void write_solutions(const std::string& path, int n, int dim, const std::vector<Configuration>& configs,
                     bool undecided_kind = false);
SolutionFileData read_solutions(const std::string& path);

// Shared-prefix bracket rendering, e.g. [0.64538119213252, 0.645381192132525]
// prints as 0.64538119213252[0,5]; a point interval prints plainly.  The
// printed form always contains the input interval.
std::string format_bracket(const Interval& v);
// Parses the bracket form (or a plain value) into a containing interval.
Interval parse_bracket(const std::string& s);

struct ClassifiedSolution {
    CertifiedSolution sol;
    std::string label;
};

std::string render_report(const std::vector<ClassifiedSolution>& classes, int n, int dim);

} // namespace ccs
