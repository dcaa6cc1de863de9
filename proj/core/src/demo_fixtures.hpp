#pragma once

// Compiled-in fixture documents for the `demo` command. Each constant is a
// JSON document in the same formats the CLI accepts from files; all numeric
// parameter choices live here as data, the demo logic is parameter-agnostic.

namespace invsub {
namespace cli {
namespace fixtures {

// 3-1-1 structure with eigenvalues 2, 2, 3 and a sample commutant member.
inline constexpr const char* example_a = R"json({
  "structure": [["2", 3], ["2", 1], ["3", 1]],
  "member": [
    ["1", "2", "3", "4", "0"],
    ["0", "1", "2", "0", "0"],
    ["0", "0", "1", "0", "0"],
    ["0", "0", "5", "6", "0"],
    ["0", "0", "0", "0", "7"]
  ]
})json";

// Single nilpotent 3-block: backward shift powers and their kernels.
inline constexpr const char* example_b = R"json({
  "structure": [["0", 3]],
  "max_power": 3
})json";

// 3-2-1 nilpotent structure; three subspaces with parameters A=2, B=1, C=3,
// D=5 substituted into the generators.
inline constexpr const char* example_c = R"json({
  "structure": [["0", 3], ["0", 2], ["0", 1]],
  "subspaces": [
    {
      "name": "subspace 1",
      "chains": [
        {"eigenvalue": "0", "generator": ["1", "1", "0", "3", "2", "0"]}
      ]
    },
    {
      "name": "subspace 2",
      "chains": [
        {"eigenvalue": "0", "generator": ["2", "1", "0", "0", "0", "1"]}
      ]
    },
    {
      "name": "subspace 3",
      "chains": [
        {"eigenvalue": "0", "generator": ["1", "1", "0", "3", "2", "0"]},
        {"eigenvalue": "0", "generator": ["0", "0", "0", "5", "0", "1"]}
      ]
    }
  ]
})json";

// 3-1 nilpotent structure whose full lattice is enumerated.
inline constexpr const char* example_d = R"json({
  "structure": [["0", 3], ["0", 1]]
})json";

// 3-1-1 structure, eigenvalues 2, 2, 3; one non-marked chain at eigenvalue 2
// (parameters A=2, B=1) plus a marked eigenvector at eigenvalue 3.
inline constexpr const char* example_e = R"json({
  "structure": [["2", 3], ["2", 1], ["3", 1]],
  "chains": [
    {"eigenvalue": "2", "generator": ["1", "1", "0", "2", "0"]},
    {"eigenvalue": "3", "generator": ["0", "0", "0", "0", "1"]}
  ]
})json";

// 3-1 nilpotent structure, row-reduction walkthrough with alpha=2, beta=2.
inline constexpr const char* example_f = R"json({
  "structure": [["0", 3], ["0", 1]],
  "chains": [
    {"eigenvalue": "0", "generator": ["2", "1", "0", "2"]}
  ]
})json";

// A 3-2 nilpotent matrix and a non-commuting companion whose invariant
// subspaces still contain every kernel power; the probe vector exposes the
// nonzero commutator.
inline constexpr const char* example_g = R"json({
  "n": [
    ["0", "1", "0", "0", "0"],
    ["0", "0", "1", "0", "0"],
    ["0", "0", "0", "0", "0"],
    ["0", "0", "0", "0", "1"],
    ["0", "0", "0", "0", "0"]
  ],
  "a": [
    ["1", "3", "5", "0", "0"],
    ["0", "1", "7", "0", "0"],
    ["0", "0", "1", "0", "0"],
    ["0", "0", "0", "2", "11"],
    ["0", "0", "0", "0", "2"]
  ],
  "probe": ["0", "0", "1", "0", "0"],
  "max_power": 3
})json";

} // namespace fixtures
} // namespace cli
} // namespace invsub
