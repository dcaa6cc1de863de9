#include "invsub/subspace.hpp"

#include <algorithm>
#include <tuple>
#include <cassert>
#include <sstream>

#include "invsub/halmos.hpp"

namespace invsub {
namespace subspace {

// ---------------------------------------------------------------------------
// Subspace
// ---------------------------------------------------------------------------

Subspace Subspace::zero(std::size_t ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = Matrix(ambient, 0);
    return s;
}

Subspace Subspace::full(std::size_t ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = Matrix::identity(ambient);
    return s;
}

Subspace Subspace::span(const Matrix& columns) {
    Subspace s;
    s.ambient_ = columns.rows();
    exact::RrefResult r = exact::rref_full(exact::transpose(columns));
    Matrix basis(columns.rows(), r.rank);
    for (std::size_t i = 0; i < r.rank; ++i) {
        for (std::size_t j = 0; j < columns.rows(); ++j) {
            basis.at(j, i) = r.reduced.at(i, j);
        }
    }
    s.basis_ = basis;
    return s;
}

bool Subspace::contains(const Matrix& column_vector) const {
    if (column_vector.rows() != ambient_ || column_vector.cols() != 1) {
        throw math_error("contains expects a single column of the ambient dimension");
    }
    return exact::rank(exact::augment_h(basis_, column_vector)) == dim();
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) {
        throw math_error("subspace comparison across different ambient spaces");
    }
    if (other.dim() > dim()) {
        return false;
    }
    return exact::rank(exact::augment_h(basis_, other.basis_)) == dim();
}

Subspace sum(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) {
        throw math_error("subspace sum across different ambient spaces");
    }
    return Subspace::span(exact::augment_h(a.basis(), b.basis()));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) {
        throw math_error("subspace intersection across different ambient spaces");
    }
    if (a.dim() == 0 || b.dim() == 0) {
        return Subspace::zero(a.ambient());
    }
    // Solutions of A x = B y; the A-part of the kernel parameterizes the
    // intersection.
    Matrix paired = exact::augment_h(a.basis(), exact::scale(Scalar(-1), b.basis()));
    Matrix ker = exact::kernel_basis(paired);
    Matrix xpart = ker.block(0, 0, a.dim(), ker.cols());
    return Subspace::span(a.basis() * xpart);
}

// ---------------------------------------------------------------------------
// Chains
// ---------------------------------------------------------------------------

namespace {

const JordanStructure::Group* find_group(const std::vector<JordanStructure::Group>& groups,
                                         const Scalar& lambda) {
    for (const auto& g : groups) {
        if (g.eigenvalue == lambda) {
            return &g;
        }
    }
    return nullptr;
}

Matrix nilpotent_part(const JordanStructure& s, const Scalar& lambda) {
    std::size_t n = s.dimension();
    return jordan_matrix(s) - lambda * Matrix::identity(n);
}

Subspace group_block_span(const JordanStructure& s, const JordanStructure::Group& g) {
    Matrix basis(s.dimension(), g.dim);
    for (std::size_t i = 0; i < g.dim; ++i) {
        basis.at(g.offset + i, i) = Scalar(1);
    }
    return Subspace::span(basis);
}

} // namespace

Chain chain_from_generator(const JordanStructure& s, const Scalar& lambda, const Matrix& v) {
    if (v.rows() != s.dimension() || v.cols() != 1) {
        throw math_error("chain generator must be a column of the ambient dimension");
    }
    if (v.is_zero()) {
        throw math_error("chain generator must be nonzero");
    }
    if (!find_group(s.groups(), lambda)) {
        throw math_error("eigenvalue " + exact::to_string(lambda) +
                         " does not appear in the structure");
    }
    Matrix n = nilpotent_part(s, lambda);
    Chain c;
    c.eigenvalue = lambda;
    Matrix w = v;
    for (std::size_t t = 0; t <= s.dimension(); ++t) {
        if (w.is_zero()) {
            return c;
        }
        c.vectors.push_back(w);
        w = n * w;
    }
    throw math_error("generator lies outside the generalized eigenspace of " +
                     exact::to_string(lambda));
}

void validate_chain_spec(const JordanStructure& s, const ChainSpec& spec) {
    std::size_t n = s.dimension();
    std::vector<Matrix> all;
    for (std::size_t c = 0; c < spec.size(); ++c) {
        const Chain& chain = spec[c];
        if (chain.vectors.empty()) {
            throw math_error("chain " + std::to_string(c + 1) + " is empty");
        }
        if (!find_group(s.groups(), chain.eigenvalue)) {
            throw math_error("chain " + std::to_string(c + 1) + " uses eigenvalue " +
                             exact::to_string(chain.eigenvalue) +
                             " which does not appear in the structure");
        }
        Matrix nil = nilpotent_part(s, chain.eigenvalue);
        for (std::size_t t = 0; t < chain.vectors.size(); ++t) {
            const Matrix& v = chain.vectors[t];
            if (v.rows() != n || v.cols() != 1) {
                throw math_error("chain " + std::to_string(c + 1) +
                                 " holds a vector of the wrong shape");
            }
            if (t + 1 < chain.vectors.size()) {
                if (nil * v != chain.vectors[t + 1]) {
                    throw math_error("chain " + std::to_string(c + 1) +
                                     " breaks the shift relation at position " +
                                     std::to_string(t + 1));
                }
            } else if (!(nil * v).is_zero()) {
                throw math_error("chain " + std::to_string(c + 1) +
                                 " does not terminate: the last vector is no eigenvector");
            }
            all.push_back(v);
        }
    }
    Matrix stacked = Matrix::from_columns(all, n);
    if (exact::rank(stacked) != stacked.cols()) {
        throw math_error("chain vectors are linearly dependent");
    }
}

Subspace span_of_chains(const ChainSpec& spec, std::size_t ambient) {
    std::vector<Matrix> all;
    for (const Chain& c : spec) {
        for (const Matrix& v : c.vectors) {
            all.push_back(v);
        }
    }
    return Subspace::span(Matrix::from_columns(all, ambient));
}

bool is_invariant_under(const Matrix& m, const Subspace& sub) {
    if (m.cols() != sub.ambient()) {
        throw math_error("invariance test dimension mismatch");
    }
    if (sub.dim() == 0) {
        return true;
    }
    Matrix image = m * sub.basis();
    return exact::rank(exact::augment_h(sub.basis(), image)) == sub.dim();
}

bool is_invariant(const JordanStructure& s, const Subspace& sub) {
    return is_invariant_under(jordan_matrix(s), sub);
}

namespace {

struct GroupChains {
    std::vector<Matrix> generators;
    std::vector<std::size_t> heights;
    std::vector<Subspace> filtration;   // filtration[k] = sub_g ∩ ker N^k
};

// Greedy maximal-height chain extraction inside one group component,
// deterministic through the canonical filtration bases.
GroupChains decompose_group(const Matrix& nil, const Subspace& sub_g) {
    GroupChains out;
    std::size_t n = nil.rows();
    std::size_t d = sub_g.dim();
    out.filtration.push_back(Subspace::zero(n));
    Matrix power = nil;
    while (out.filtration.back().dim() < d) {
        Matrix image = power * sub_g.basis();
        Matrix coeff = exact::kernel_basis(image);
        out.filtration.push_back(Subspace::span(sub_g.basis() * coeff));
        power = power * nil;
    }
    std::size_t hmax = out.filtration.size() - 1;
    // Image powers of the nilpotent map.  Generators are drawn from the
    // deepest power that still meets the height level: a generator lying in
    // image(nil^d) is the tail of a longer ambient chain, and preferring the
    // deepest available representative keeps the decomposition canonical for
    // the subspace rather than for whichever spanning set produced it.
    std::vector<Subspace> images;
    images.push_back(Subspace::span(Matrix::identity(n)));
    Matrix image_power = nil;
    // Powers lose rank until the nilpotent index is reached; past that the
    // map is stable (and invertible on any other eigenvalue's coordinates).
    while (exact::rank(image_power) < images.back().dim()) {
        images.push_back(Subspace::span(image_power));
        image_power = image_power * nil;
    }
    for (std::size_t h = hmax; h >= 1; --h) {
        std::vector<Matrix> modcols;
        const Matrix& lower = out.filtration[h - 1].basis();
        for (std::size_t j = 0; j < lower.cols(); ++j) {
            modcols.push_back(lower.col(j));
        }
        for (std::size_t c = 0; c < out.generators.size(); ++c) {
            Matrix v = out.generators[c];
            for (std::size_t t = 0; t < out.heights[c] - h; ++t) {
                v = nil * v;
            }
            modcols.push_back(v);
        }
        Matrix modm = Matrix::from_columns(modcols, n);
        std::size_t r0 = exact::rank(modm);
        for (std::size_t d = images.size(); d-- > 0;) {
            const Subspace deep = intersect(out.filtration[h], images[d]);
            const Matrix& level = deep.basis();
            for (std::size_t j = 0; j < level.cols(); ++j) {
                Matrix cand = level.col(j);
                Matrix aug = exact::augment_h(modm, cand);
                if (exact::rank(aug) > r0) {
                    out.generators.push_back(cand);
                    out.heights.push_back(h);
                    modm = aug;
                    ++r0;
                }
            }
        }
    }
    return out;
}

} // namespace

ChainSpec chain_decompose(const JordanStructure& s, const Subspace& sub) {
    if (sub.ambient() != s.dimension()) {
        throw math_error("subspace ambient dimension does not match the structure");
    }
    if (!is_invariant(s, sub)) {
        throw math_error("subspace is not invariant under the Jordan matrix");
    }
    ChainSpec spec;
    std::size_t covered = 0;
    for (const auto& g : s.groups()) {
        Subspace sub_g = intersect(sub, group_block_span(s, g));
        covered += sub_g.dim();
        if (sub_g.dim() == 0) {
            continue;
        }
        Matrix nil = nilpotent_part(s, g.eigenvalue);
        GroupChains gc = decompose_group(nil, sub_g);
        for (std::size_t c = 0; c < gc.generators.size(); ++c) {
            Chain chain;
            chain.eigenvalue = g.eigenvalue;
            Matrix v = gc.generators[c];
            for (std::size_t t = 0; t < gc.heights[c]; ++t) {
                chain.vectors.push_back(v);
                v = nil * v;
            }
            spec.push_back(chain);
        }
    }
    assert(covered == sub.dim());
    return spec;
}

bool is_marked(const JordanStructure& s, const Subspace& sub) {
    return halmos::fits_without_expansion(s, chain_decompose(s, sub));
}

bool is_marked(const JordanStructure& s, const ChainSpec& spec) {
    validate_chain_spec(s, spec);
    return is_marked(s, span_of_chains(spec, s.dimension()));
}

bool all_subspaces_marked(const JordanStructure& s) {
    for (const auto& g : s.groups()) {
        std::size_t largest = 0;
        std::size_t smallest = 0;
        for (std::size_t i = 0; i < g.sizes.size(); ++i) {
            if (i == 0 || g.sizes[i] > largest) largest = g.sizes[i];
            if (i == 0 || g.sizes[i] < smallest) smallest = g.sizes[i];
        }
        if (largest - smallest > 1) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Type signature
// ---------------------------------------------------------------------------

namespace {

// Clears the canonical-basis pivot rows of v against the basis columns.
Matrix reduce_against(const Matrix& v, const Matrix& basis) {
    Matrix out = v;
    for (std::size_t j = 0; j < basis.cols(); ++j) {
        std::size_t pivot = basis.rows();
        for (std::size_t i = 0; i < basis.rows(); ++i) {
            if (!basis.at(i, j).is_zero()) {
                pivot = i;
                break;
            }
        }
        assert(pivot < basis.rows());
        const Scalar& coeff = out.at(pivot, 0);
        if (!coeff.is_zero()) {
            out = out - coeff * basis.col(j);
        }
    }
    return out;
}

} // namespace

TypeSignature signature(const JordanStructure& s, const Subspace& sub) {
    TypeSignature sig;
    sig.dim = sub.dim();
    ChainSpec chains = chain_decompose(s, sub);
    auto placements = halmos::place_chains(s, chains);
    auto expanded_sizes = halmos::expansion_sizes(s, chains, placements);
    std::size_t n = s.dimension();
    for (const auto& g : s.groups()) {
        GroupSignature gs;
        Matrix nil = nilpotent_part(s, g.eigenvalue);
        Subspace sub_g = intersect(sub, group_block_span(s, g));

        std::vector<Subspace> kernels;
        kernels.push_back(Subspace::zero(n));
        Matrix power = Matrix::identity(n);
        for (std::size_t k = 1; k <= g.dim; ++k) {
            power = power * nil;
            kernels.push_back(Subspace::span(exact::kernel_basis(power)));
        }
        gs.table.assign(g.dim + 1, std::vector<std::size_t>(g.dim + 1, 0));
        Subspace image = sub_g;
        for (std::size_t r = 0; r <= g.dim; ++r) {
            for (std::size_t c = 0; c <= g.dim; ++c) {
                gs.table[r][c] = intersect(image, kernels[c]).dim();
            }
            image = Subspace::span(nil * image.basis());
        }

        GroupChains gc = sub_g.dim() > 0 ? decompose_group(nil, sub_g) : GroupChains{};
        gs.partition = gc.heights;
        for (std::size_t c = 0; c < gc.generators.size(); ++c) {
            Matrix reduced =
                reduce_against(gc.generators[c], gc.filtration[gc.heights[c] - 1].basis());
            std::vector<std::size_t> profile(g.block_count, 0);
            for (std::size_t b = 0; b < g.block_count; ++b) {
                std::size_t off = s.block_offset(g.first_block + b);
                std::size_t size = s.blocks[g.first_block + b].size;
                for (std::size_t q = 0; q < size; ++q) {
                    if (!reduced.at(off + q, 0).is_zero()) {
                        profile[b] = q + 1;
                    }
                }
            }
            gs.profiles.push_back(profile);
        }

        // Profiles are compared across arbitrary members of the same orbit
        // of the commutant action, so close each one over the moves an
        // invertible commutant element can apply: a component at depth q in
        // a block of size nc reaches depth q in every block at least as
        // tall and depth q - (nc - nb) in a shorter block of size nb, and a
        // chain can absorb another chain shifted down far enough to respect
        // its own height.
        const std::size_t gens = gs.profiles.size();
        std::vector<std::vector<std::size_t>> closed(
            gens, std::vector<std::size_t>(g.block_count, 0));
        for (std::size_t c = 0; c < gens; ++c)
            for (std::size_t b = 0; b < g.block_count; ++b) {
                std::size_t best = 0;
                for (std::size_t src = 0; src < g.block_count; ++src) {
                    const std::size_t q = gs.profiles[c][src];
                    if (q == 0) continue;
                    const std::size_t drop =
                        g.sizes[src] > g.sizes[b] ? g.sizes[src] - g.sizes[b] : 0;
                    if (q > drop) best = std::max(best, q - drop);
                }
                closed[c][b] = best;
            }
        std::vector<std::vector<std::size_t>> mixed(
            gens, std::vector<std::size_t>(g.block_count, 0));
        for (std::size_t c = 0; c < gens; ++c)
            for (std::size_t c2 = 0; c2 < gens; ++c2) {
                const std::size_t shift =
                    gc.heights[c2] > gc.heights[c] ? gc.heights[c2] - gc.heights[c] : 0;
                for (std::size_t b = 0; b < g.block_count; ++b)
                    if (closed[c2][b] > shift)
                        mixed[c][b] = std::max(mixed[c][b], closed[c2][b] - shift);
            }
        gs.profiles = std::move(mixed);

        gs.expansion.assign(expanded_sizes.begin() + static_cast<std::ptrdiff_t>(g.first_block),
                            expanded_sizes.begin() +
                                static_cast<std::ptrdiff_t>(g.first_block + g.block_count));

        // Blocks of equal size are interchangeable by symmetries of the
        // commutant, so the signature must not depend on which of them a
        // chain lands in: canonicalize over all size-preserving block
        // permutations, keeping expansion and profiles consistent.
        std::vector<std::size_t> perm(g.block_count);
        for (std::size_t b = 0; b < g.block_count; ++b) perm[b] = b;
        bool first_candidate = true;
        std::vector<std::size_t> best_expansion;
        std::vector<std::vector<std::size_t>> best_profiles;
        do {
            bool size_preserving = true;
            for (std::size_t b = 0; b < g.block_count; ++b)
                if (g.sizes[perm[b]] != g.sizes[b]) size_preserving = false;
            if (!size_preserving) continue;
            std::vector<std::size_t> expansion(g.block_count);
            for (std::size_t b = 0; b < g.block_count; ++b)
                expansion[b] = gs.expansion[perm[b]];
            std::vector<std::vector<std::size_t>> profiles = gs.profiles;
            for (auto& profile : profiles) {
                std::vector<std::size_t> permuted(g.block_count);
                for (std::size_t b = 0; b < g.block_count; ++b)
                    permuted[b] = profile[perm[b]];
                profile = std::move(permuted);
            }
            std::sort(profiles.begin(), profiles.end(),
                      [](const auto& a, const auto& b) { return a > b; });
            if (first_candidate || std::tie(expansion, profiles) <
                                       std::tie(best_expansion, best_profiles)) {
                best_expansion = std::move(expansion);
                best_profiles = std::move(profiles);
                first_candidate = false;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        gs.expansion = std::move(best_expansion);
        gs.profiles = std::move(best_profiles);
        sig.groups.push_back(std::move(gs));
    }
    return sig;
}

namespace {

void append_list(std::ostringstream& out, const std::vector<std::size_t>& xs) {
    out << "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i > 0) {
            out << ",";
        }
        out << xs[i];
    }
    out << "]";
}

} // namespace

std::string to_string(const TypeSignature& sig) {
    std::ostringstream out;
    out << "dim=" << sig.dim;
    for (const GroupSignature& g : sig.groups) {
        out << "|{table=";
        for (const auto& row : g.table) {
            append_list(out, row);
        }
        out << ";part=";
        append_list(out, g.partition);
        out << ";prof=";
        for (const auto& p : g.profiles) {
            append_list(out, p);
        }
        out << ";exp=";
        append_list(out, g.expansion);
        out << "}";
    }
    return out.str();
}

} // namespace subspace
} // namespace invsub
