#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "invsub/exact.hpp"
#include "invsub/jordan.hpp"
#include "invsub/subspace.hpp"

namespace invsub {
namespace lattice {

using exact::Matrix;
using jordan::JordanStructure;

// Description of one node family restricted to a single eigenvalue group:
// per block, the host size t_b (equal to the block size when unexpanded) and
// the kernel power r_b in [0, n_b]. The family is the set of subspaces of the
// form ker(Z restricted suitably) obtained from generic generator choices.
struct NodeLabel {
    std::vector<std::size_t> expansion; // host sizes, one per block of the group
    std::vector<std::size_t> powers;    // kernel powers, one per block of the group

    bool operator==(const NodeLabel&) const = default;
};

struct LatticeNode {
    std::string id;
    std::size_t dim = 0;
    std::vector<NodeLabel> group_labels; // one per eigenvalue group, canonical label
    bool marked = false;
    bool hyperinvariant = false;
    subspace::TypeSignature sig;
    Matrix z; // block-diagonal backward-shift-power witness over the expansion
};

struct Lattice {
    JordanStructure structure;
    std::vector<LatticeNode> nodes;
    std::vector<std::pair<std::size_t, std::size_t>> covers; // (lower, upper) node indices
};

// Whether the node family given by `label` over blocks of sizes `sizes`
// consists of hyperinvariant subspaces: the family must be unexpanded and its
// power sequence must satisfy the classical monotonicity test (powers
// non-increasing and co-powers non-increasing along non-increasing sizes).
bool is_hyperinvariant_node(const std::vector<std::size_t>& sizes, const NodeLabel& label);

// Enumerate the full invariant-subspace lattice of the canonical structure
// `s` up to commutant-orbit type, with cover relations and hyperinvariance
// flags. Containment between type families is decided on generic
// representatives drawn from three independent parameter pools seeded from
// `seed`; disagreement between draws raises math_error.
Lattice enumerate_lattice(const JordanStructure& s, std::uint64_t seed = 1729);

// Combine per-eigenvalue lattices (disjoint spectra) into the lattice of the
// direct sum. Node ids join with '|', dimensions add, hyperinvariance is the
// componentwise conjunction, and cover relations move in exactly one
// coordinate. A single-element list returns its lattice unchanged.
Lattice product_lattice(const std::vector<Lattice>& per_eigenvalue);

std::string export_dot(const Lattice& l);
std::string export_json(const Lattice& l);
Lattice import_json(std::string_view text);

} // namespace lattice
} // namespace invsub
