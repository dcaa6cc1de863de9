#pragma once

#include <cstddef>
#include <vector>

#include "invsub/exact.hpp"
#include "invsub/jordan.hpp"
#include "invsub/subspace.hpp"

namespace invsub {
namespace halmos {

using exact::Matrix;
using exact::Scalar;
using jordan::JordanStructure;
using subspace::ChainSpec;
using subspace::Subspace;

// Kernel companion for one Jordan block: ker backward_shift_power(n, k) is
// exactly the span of the first k standard vectors.
Matrix construct_single_block(std::size_t n, std::size_t k);

struct Placement {
    std::size_t chain = 0;
    std::size_t block = 0;
    std::size_t length = 0;
};

// Assigns every chain a distinct home block carrying a nonzero component of
// its eigenvector. Chains are processed shortest first (ties: rightmost
// eigenvector support first, then input order) and each tries its rightmost
// available block, backtracking on collisions.
std::vector<Placement> place_chains(const JordanStructure& s, const ChainSpec& spec);

// Whether some placement of the chains yields an invertible chain transform
// that commutes with the Jordan matrix without enlarging any block. All
// candidate home assignments are searched, not just the first.
bool fits_without_expansion(const JordanStructure& s, const ChainSpec& spec);

// Block sizes needed to host the given chains as a kernel: a component at row
// q (one-based) in column c of a chain placed on a block of size m asks for
// q + m - c rows in its own block. Unexpanded blocks report their size.
std::vector<std::size_t> expansion_sizes(const JordanStructure& s, const ChainSpec& spec,
                                         const std::vector<Placement>& placements);

struct Expansion {
    JordanStructure expanded;
    std::vector<std::size_t> sizes;        // target size per block
    std::vector<std::size_t> added;        // rows appended per block
    std::vector<std::ptrdiff_t> cause;     // placement index forcing the max, -1 if none
};

Expansion expand_structure(const JordanStructure& s, const ChainSpec& spec,
                           const std::vector<Placement>& placements);

// Chain transform: home blocks carry the chain columns (eigenvector leftmost)
// followed by their diagonal shifts, other blocks carry identity columns.
// Components that would leave a block through its bottom row are dropped, so
// the result is always well formed; on a marked subspace nothing is dropped
// and the transform commutes with the Jordan matrix.
Matrix build_T(const JordanStructure& s, const ChainSpec& spec,
               const std::vector<Placement>& placements);

// Kernel selector for the unexpanded construction: the k-th backward shift
// power on every home block, identity elsewhere.
Matrix build_Z_simple(const JordanStructure& s, const ChainSpec& spec,
                      const std::vector<Placement>& placements);

// Kernel selector over an expanded structure: additionally each expanded
// block b gets the p_b-th shift power on its diagonal and an off-diagonal
// pair with the home block j of the chain that forced the expansion
// (identity into the (j,b) slot, shifted power into (b,j), padded to shape).
Matrix build_Z_nonmarked(const Expansion& expansion, const ChainSpec& spec,
                         const std::vector<Placement>& placements);

struct Construction {
    JordanStructure structure;
    JordanStructure expanded;         // equals structure when marked
    std::vector<Placement> placements;
    ChainSpec chains;                 // presentation actually used
    Matrix t;                         // m x m, invertible, commutes when marked
    Matrix z;                         // m x m
    Matrix p;                         // n x m row selection
    Matrix m;                         // n x n result: p z t^-1 p^T
    bool marked = false;
    bool used_canonical_chains = false;
};

// Commutant member with kernel span(spec). The given presentation is kept
// whenever it fits without expansion; otherwise the canonical decomposition
// is tried, and expansion is used only when the subspace is genuinely not
// marked. The result is always verified exactly (kernel, commutation, rank).
Construction construct(const JordanStructure& s, const ChainSpec& spec);
Construction construct(const JordanStructure& s, const Subspace& sub);

struct FullConstruction {
    Matrix q;
    JordanStructure structure;
    Construction construction;
    Matrix n;                         // q m q^-1, commutant member of a
};

// End-to-end: jordanize a, carry the subspace into Jordan coordinates, build
// the kernel companion there and return to the original coordinates.
FullConstruction construct_full(const Matrix& a, const Subspace& sub,
                                const std::vector<Scalar>& eigenvalue_hints = {});
FullConstruction construct_full(const Matrix& a, const ChainSpec& spec,
                                const std::vector<Scalar>& eigenvalue_hints = {});

struct RangeRepresentation {
    Matrix q;
    JordanStructure structure;
    JordanStructure expanded;         // structure of the adjoint-side pieces
    Matrix t;
    Matrix z;
    Matrix p;
    Matrix r;                         // q p (t*)^-1 z* p^T q^-1
};

// Commutant member whose range (not kernel) is the given invariant subspace,
// obtained from the kernel construction for the flipped orthocomplement.
RangeRepresentation range_representation(const Matrix& a, const Subspace& sub,
                                         const std::vector<Scalar>& eigenvalue_hints = {});

// Does ker (n_mat - alpha I)^k stay invariant under a? Guaranteed when a and
// n_mat commute; meaningful (and checked exactly) even when they do not.
bool translate_kernel_invariance(const Matrix& n_mat, const Matrix& a,
                                 const Scalar& alpha, std::size_t k);

} // namespace halmos
} // namespace invsub
