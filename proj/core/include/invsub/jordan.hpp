#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "invsub/exact.hpp"

namespace invsub {
namespace jordan {

using exact::Matrix;
using exact::Scalar;

struct JordanBlock {
    Scalar eigenvalue;
    std::size_t size = 0;

    friend bool operator==(const JordanBlock& a, const JordanBlock& b) {
        return a.eigenvalue == b.eigenvalue && a.size == b.size;
    }
};

// Position inside a block-partitioned space: block index and row within the
// block, both zero-based.
struct BlockIndex {
    std::size_t block = 0;
    std::size_t row = 0;

    friend bool operator==(const BlockIndex& a, const BlockIndex& b) {
        return a.block == b.block && a.row == b.row;
    }
};

// Block structure of a Jordan matrix. Canonical form keeps equal eigenvalues
// adjacent and block sizes non-increasing inside each eigenvalue run; only
// jordanize output and user-facing entry points insist on canonical input,
// internal constructions may carry expanded (unsorted) structures.
struct JordanStructure {
    std::vector<JordanBlock> blocks;

    // Run of blocks sharing one eigenvalue.
    struct Group {
        Scalar eigenvalue;
        std::size_t first_block = 0;
        std::size_t block_count = 0;
        std::size_t offset = 0;
        std::size_t dim = 0;
        std::vector<std::size_t> sizes;
    };

    std::size_t dimension() const;
    std::size_t block_offset(std::size_t block) const;
    std::vector<Group> groups() const;
    bool is_canonical() const;

    friend bool operator==(const JordanStructure& a, const JordanStructure& b) {
        return a.blocks == b.blocks;
    }
};

Matrix jordan_matrix(const JordanStructure& s);

// k-th power of the backward shift on an n-dimensional single block: ones on
// the k-th superdiagonal. k = 0 gives the identity, k = n the zero matrix.
Matrix backward_shift_power(std::size_t n, std::size_t k);

// Standard basis column at block `where.block`, row `where.row` of s.
Matrix elementary_vector(const JordanStructure& s, BlockIndex where);

// Shape test used blockwise by the commutant pattern. Square and tall blocks
// must vanish below the main diagonal; wide j x k blocks must vanish on the
// first k - j diagonals, so nonzero entries live on the rightmost j columns.
// All diagonals must be constant.
bool is_upper_triangular_toeplitz(const Matrix& m);

// Full commutant membership test against jordan_matrix(s): cross-eigenvalue
// blocks are zero and same-eigenvalue blocks are upper triangular Toeplitz.
// For a Jordan matrix this is exactly equivalent to M J = J M.
bool in_commutant_structural(const JordanStructure& s, const Matrix& m);

// First violated cell with a reason, or nullopt when m commutes with the
// Jordan matrix of s. Row/column in the report are one-based.
std::optional<std::string> commutant_violation(const JordanStructure& s, const Matrix& m);

struct JordanizeResult {
    Matrix q;
    JordanStructure structure;
};

// Exact Jordan decomposition a = Q J Q^-1. Eigenvalues are discovered via the
// characteristic polynomial (rational roots, plus exact quadratic formulas
// over Gaussian rationals); spectra outside that reach need explicit
// eigenvalue hints. Matrices already in canonical Jordan form return Q = I.
JordanizeResult jordanize(const Matrix& a);
JordanizeResult jordanize(const Matrix& a, const std::vector<Scalar>& eigenvalue_hints);

} // namespace jordan
} // namespace invsub
