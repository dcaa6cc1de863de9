#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace invsub {
namespace cli {

// Parsed command-line job. `command` selects the operation; the remaining
// fields are interpreted per command (see the tool's --help text).
struct JobConfig {
    std::string command;                  // construct | range | lattice | verify | jordanize | demo
    std::string input_path;               // reference matrix file (JSON array of rows of scalar strings)
    std::string subspace_path;            // matrix file whose columns span the subspace
    std::string chains_path;              // JSON [{"eigenvalue": "...", "generator": ["...", ...]}, ...]
    std::vector<std::string> eigenvalues; // optional spectrum hints, scalar strings
    std::string method = "construct";     // construct | rowreduce
    std::string emit = "default";         // default | matrix | construction | json | dot
    std::string output_path;              // empty = standard output
    std::uint64_t seed = 1729;            // lattice sampling seed
    std::string target;                   // verify: file to check; demo: example name
};

// Run the job, writing results to `out` and diagnostics to `err`.
// Returns the process exit code: 0 success, 1 mathematical failure
// (math_error), 2 usage/parse/io failure (parse_error and kin).
int run(const JobConfig& config, std::ostream& out, std::ostream& err);

// Convenience overload using std::cout / std::cerr.
int run(const JobConfig& config);

} // namespace cli
} // namespace invsub
