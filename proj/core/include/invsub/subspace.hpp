#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "invsub/exact.hpp"
#include "invsub/jordan.hpp"

namespace invsub {
namespace subspace {

using exact::Matrix;
using exact::Scalar;
using jordan::JordanStructure;

// Linear subspace held by its canonical reduced column echelon basis: pivot
// rows strictly increase column by column and each pivot row is cleared from
// the other basis vectors, so equal subspaces compare equal entrywise.
class Subspace {
public:
    Subspace() = default;

    static Subspace zero(std::size_t ambient);
    static Subspace full(std::size_t ambient);
    // Span of the given columns (any spanning set, any rank).
    static Subspace span(const Matrix& columns);

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.cols(); }
    const Matrix& basis() const { return basis_; }

    bool contains(const Matrix& column_vector) const;
    bool contains(const Subspace& other) const;

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

private:
    std::size_t ambient_ = 0;
    Matrix basis_{0, 0};
};

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);

// One Jordan chain for eigenvalue lambda: vectors[0] is the generator v and
// vectors[t] = (J - lambda)^t v, so the eigenvector sits last.
struct Chain {
    Scalar eigenvalue;
    std::vector<Matrix> vectors;

    std::size_t length() const { return vectors.size(); }
    const Matrix& generator() const { return vectors.front(); }
    const Matrix& eigenvector() const { return vectors.back(); }
};

using ChainSpec = std::vector<Chain>;

// Builds the full chain from a generator; throws when v is zero, lies outside
// the generalized eigenspace of lambda, or lambda is not in the structure.
Chain chain_from_generator(const JordanStructure& s, const Scalar& lambda, const Matrix& v);

// Checks eigenvalues, the shift relation inside every chain, and that all
// chain vectors together are linearly independent.
void validate_chain_spec(const JordanStructure& s, const ChainSpec& spec);

Subspace span_of_chains(const ChainSpec& spec, std::size_t ambient);

// Invariance of sub under jordan_matrix(s) (resp. an arbitrary matrix m).
bool is_invariant(const JordanStructure& s, const Subspace& sub);
bool is_invariant_under(const Matrix& m, const Subspace& sub);

// Canonical chain decomposition of an invariant subspace: per eigenvalue
// group, chains of maximal height extracted greedily from the canonical
// kernel filtration of the restricted nilpotent action. Chains arrive in
// group order, longest first.
ChainSpec chain_decompose(const JordanStructure& s, const Subspace& sub);

// T-test on the canonical decomposition of span(spec): the subspace is marked
// exactly when the unexpanded chain transform is invertible and commutes with
// the Jordan matrix. The verdict depends only on the spanned subspace.
bool is_marked(const JordanStructure& s, const ChainSpec& spec);
bool is_marked(const JordanStructure& s, const Subspace& sub);

// Structural guarantee: when, for every eigenvalue, the largest and smallest
// block sizes differ by at most one, every invariant subspace is marked.
bool all_subspaces_marked(const JordanStructure& s);

// Isomorphism-type data of an invariant subspace, used to deduplicate lattice
// nodes and to compare orbits under the commutant action.
struct GroupSignature {
    // table[r][s] = dim(N^r sub ∩ ker N^s) for the group's nilpotent part N.
    std::vector<std::vector<std::size_t>> table;
    // Chain lengths, non-increasing.
    std::vector<std::size_t> partition;
    // Per chain, per block of the group: deepest populated row (one-based,
    // zero when the block is untouched) of the generator reduced modulo the
    // lower kernel filtration. Sorted lexicographically descending.
    std::vector<std::vector<std::size_t>> profiles;
    // Block sizes required to host the subspace as a kernel, original sizes
    // where no expansion is needed.
    std::vector<std::size_t> expansion;

    friend bool operator==(const GroupSignature&, const GroupSignature&) = default;
};

struct TypeSignature {
    std::size_t dim = 0;
    std::vector<GroupSignature> groups;

    friend bool operator==(const TypeSignature&, const TypeSignature&) = default;
};

std::string to_string(const TypeSignature& sig);

TypeSignature signature(const JordanStructure& s, const Subspace& sub);

} // namespace subspace
} // namespace invsub
