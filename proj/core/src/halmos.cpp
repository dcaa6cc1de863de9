#include "invsub/halmos.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace invsub {
namespace halmos {

using jordan::backward_shift_power;
using jordan::jordan_matrix;
using subspace::Chain;
using subspace::chain_decompose;
using subspace::span_of_chains;
using subspace::validate_chain_spec;

namespace detail {

// Candidate home blocks per chain (rightmost first, restricted to blocks of
// the chain's group where its eigenvector has a nonzero top component) plus
// the deterministic visiting order: shortest chains first, ties preferring
// the chain whose support reaches furthest right, then input order.
struct PlacementCandidates {
    std::vector<std::vector<std::size_t>> support;
    std::vector<std::size_t> order;
};

inline PlacementCandidates placement_candidates(const JordanStructure& s, const ChainSpec& spec) {
    const std::size_t n = s.dimension();
    const auto groups = s.groups();
    PlacementCandidates pc;
    pc.support.resize(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const JordanStructure::Group* group = nullptr;
        for (const auto& g : groups)
            if (g.eigenvalue == spec[i].eigenvalue) group = &g;
        if (group == nullptr)
            throw math_error("chain eigenvalue does not appear in the structure");
        const Matrix& ev = spec[i].eigenvector();
        if (ev.rows() != n || ev.cols() != 1)
            throw math_error("chain vector has the wrong dimension");
        const std::size_t last = group->first_block + group->block_count;
        for (std::size_t b = last; b-- > group->first_block;) {
            if (!ev.at(s.block_offset(b), 0).is_zero() && s.blocks[b].size >= spec[i].length())
                pc.support[i].push_back(b);
        }
        if (pc.support[i].empty())
            throw math_error("chain eigenvector has no block that can host the chain");
    }
    pc.order.resize(spec.size());
    for (std::size_t i = 0; i < pc.order.size(); ++i) pc.order[i] = i;
    std::stable_sort(pc.order.begin(), pc.order.end(), [&](std::size_t a, std::size_t b) {
        if (spec[a].length() != spec[b].length()) return spec[a].length() < spec[b].length();
        return pc.support[a].front() > pc.support[b].front();
    });
    return pc;
}

// Backtracks over complete home assignments in the deterministic search
// order, handing each one to `accept` until it keeps one. Returns whether
// any assignment was accepted.
template <typename F>
bool search_placements(const JordanStructure& s, const ChainSpec& spec, F&& accept) {
    const PlacementCandidates pc = placement_candidates(s, spec);
    std::vector<bool> taken(s.blocks.size(), false);
    std::vector<std::size_t> home(spec.size(), 0);
    auto assign = [&](auto&& self, std::size_t pos) -> bool {
        if (pos == pc.order.size()) {
            std::vector<Placement> placements(spec.size());
            for (std::size_t i = 0; i < spec.size(); ++i)
                placements[i] = Placement{i, home[i], spec[i].length()};
            return accept(placements);
        }
        const std::size_t c = pc.order[pos];
        for (std::size_t b : pc.support[c]) {
            if (taken[b]) continue;
            taken[b] = true;
            home[c] = b;
            if (self(self, pos + 1)) return true;
            taken[b] = false;
        }
        return false;
    };
    return assign(assign, 0);
}

} // namespace detail

namespace {

// Per-block downward shift of a column vector over `host`: every component
// moves one row down inside its block, components on bottom rows drop out.
Matrix down_shift(const JordanStructure& host, const Matrix& v) {
    Matrix out(v.rows(), 1);
    for (std::size_t b = 0; b < host.blocks.size(); ++b) {
        const std::size_t off = host.block_offset(b);
        const std::size_t sz = host.blocks[b].size;
        for (std::size_t q = 0; q + 1 < sz; ++q)
            out.at(off + q + 1, 0) = v.at(off + q, 0);
    }
    return out;
}

// Copies a vector over `s` into the coordinates of `host` (same block list,
// blocks possibly taller), aligning every block at its top.
Matrix embed_vector(const JordanStructure& s, const JordanStructure& host, const Matrix& v) {
    Matrix out(host.dimension(), 1);
    for (std::size_t b = 0; b < s.blocks.size(); ++b) {
        const std::size_t off = s.block_offset(b);
        const std::size_t hoff = host.block_offset(b);
        for (std::size_t q = 0; q < s.blocks[b].size; ++q)
            out.at(hoff + q, 0) = v.at(off + q, 0);
    }
    return out;
}

// Chain transform over an arbitrary host (the structure itself, or its
// expansion): home blocks carry the chain columns eigenvector-first, then
// repeated downward shifts of the generator column; other blocks carry
// identity columns.
Matrix build_T_on(const JordanStructure& host, const JordanStructure& s, const ChainSpec& spec,
                  const std::vector<Placement>& placements) {
    const std::size_t m = host.dimension();
    Matrix t(m, m);
    std::vector<bool> is_home(host.blocks.size(), false);
    for (const auto& pl : placements) is_home[pl.block] = true;
    for (std::size_t b = 0; b < host.blocks.size(); ++b) {
        if (is_home[b]) continue;
        const std::size_t off = host.block_offset(b);
        t.set_block(off, off, Matrix::identity(host.blocks[b].size));
    }
    for (const auto& pl : placements) {
        const Chain& chain = spec[pl.chain];
        const std::size_t off = host.block_offset(pl.block);
        const std::size_t sz = host.blocks[pl.block].size;
        Matrix w(m, 1);
        for (std::size_t idx = 0; idx < sz; ++idx) {
            if (idx < pl.length)
                w = embed_vector(s, host, chain.vectors[pl.length - 1 - idx]);
            else
                w = down_shift(host, w);
            t.set_block(0, off + idx, w);
        }
    }
    return t;
}

// Row selection dropping the appended rows of every expanded block.
Matrix selection_matrix(const JordanStructure& s, const JordanStructure& host) {
    Matrix p(s.dimension(), host.dimension());
    for (std::size_t b = 0; b < s.blocks.size(); ++b) {
        const std::size_t off = s.block_offset(b);
        const std::size_t hoff = host.block_offset(b);
        for (std::size_t q = 0; q < s.blocks[b].size; ++q)
            p.at(off + q, hoff + q) = Scalar(1);
    }
    return p;
}

bool verify_construction(const JordanStructure& s, const ChainSpec& original, const Construction& c) {
    const std::size_t n = s.dimension();
    const Matrix j = jordan_matrix(s);
    if (c.m.rows() != n || c.m.cols() != n) return false;
    if (c.m * j != j * c.m) return false;
    const Subspace want = span_of_chains(original, n);
    if (Subspace::span(exact::kernel_basis(c.m)) != want) return false;
    return exact::rank(c.m) == n - want.dim();
}

std::optional<Construction> attempt_unexpanded(const JordanStructure& s, const ChainSpec& chains) {
    std::optional<Construction> found;
    try {
        detail::search_placements(s, chains, [&](const std::vector<Placement>& placements) {
            const auto sizes = expansion_sizes(s, chains, placements);
            for (std::size_t b = 0; b < s.blocks.size(); ++b)
                if (sizes[b] != s.blocks[b].size) return false;
            Matrix t = build_T(s, chains, placements);
            if (!jordan::in_commutant_structural(s, t)) return false;
            if (exact::rank(t) != t.rows()) return false;
            Construction c;
            c.structure = s;
            c.expanded = s;
            c.placements = placements;
            c.chains = chains;
            c.t = t;
            c.z = build_Z_simple(s, chains, placements);
            c.p = Matrix::identity(s.dimension());
            c.m = c.z * exact::inverse(t);
            c.marked = true;
            found = std::move(c);
            return true;
        });
    } catch (const math_error&) {
        return std::nullopt;
    }
    return found;
}

// Solves for a host-level Z inside the commutant of the expanded Jordan
// matrix such that (i) Z annihilates every home chain column and (ii) in
// Z*T^{-1} the first appended row of every grown block vanishes over the
// surviving columns. Condition (ii) is exactly what makes the row-selected
// product commute with the original Jordan matrix, and (i) pins the chain
// span inside the kernel. Keeping the kernel no bigger than that is a
// genericity condition, so deterministic samples from the solution space are
// tried until one verifies.
std::optional<Matrix> build_Z_generic(const JordanStructure& s, const Expansion& e,
                                      const ChainSpec& chains,
                                      const std::vector<Placement>& placements,
                                      const Matrix& t) {
    const JordanStructure& host = e.expanded;
    const std::size_t m = host.dimension();
    const std::size_t n = s.dimension();
    const Matrix tinv = exact::inverse(t);

    // Basis of the block-Toeplitz maps commuting with the host Jordan
    // matrix: one matrix per same-eigenvalue block pair and superdiagonal.
    std::vector<Matrix> basis;
    for (std::size_t b = 0; b < host.blocks.size(); ++b)
        for (std::size_t c = 0; c < host.blocks.size(); ++c) {
            if (host.blocks[b].eigenvalue != host.blocks[c].eigenvalue) continue;
            const std::size_t tb = host.blocks[b].size;
            const std::size_t tc = host.blocks[c].size;
            for (std::size_t d = 0; d < std::min(tb, tc); ++d) {
                Matrix x(m, m);
                const std::size_t off = (tc > tb ? tc - tb : 0) + d;
                for (std::size_t r = 0; r + off < tc && r < tb; ++r)
                    x.at(host.block_offset(b) + r, host.block_offset(c) + r + off) =
                        Scalar(1);
                basis.push_back(std::move(x));
            }
        }
    if (basis.empty()) return std::nullopt;

    std::vector<std::size_t> chain_cols;
    for (const auto& pl : placements)
        for (std::size_t q = 0; q < pl.length; ++q)
            chain_cols.push_back(host.block_offset(pl.block) + q);
    std::vector<std::size_t> guard_rows;
    for (std::size_t b = 0; b < host.blocks.size(); ++b)
        if (e.added[b] > 0) guard_rows.push_back(host.block_offset(b) + s.blocks[b].size);

    const std::size_t np = basis.size();
    Matrix a(chain_cols.size() * m + guard_rows.size() * n, np);
    for (std::size_t pi = 0; pi < np; ++pi) {
        std::size_t ci = 0;
        for (std::size_t col : chain_cols)
            for (std::size_t r = 0; r < m; ++r) a.at(ci++, pi) = basis[pi].at(r, col);
        const Matrix bt = basis[pi] * tinv;
        for (std::size_t row : guard_rows)
            for (std::size_t b = 0; b < s.blocks.size(); ++b)
                for (std::size_t q = 0; q < s.blocks[b].size; ++q)
                    a.at(ci++, pi) = bt.at(row, host.block_offset(b) + q);
    }
    const Matrix null = exact::kernel_basis(a);
    if (null.cols() == 0) return std::nullopt;

    const Subspace want = span_of_chains(chains, n);
    const Matrix p = selection_matrix(s, host);
    const Matrix pt = exact::transpose(p);
    const Matrix j = jordan_matrix(s);
    std::mt19937 rng(0x5eed1e5u);
    for (int trial = 0; trial < 64; ++trial) {
        Matrix z(m, m);
        for (std::size_t sd = 0; sd < null.cols(); ++sd) {
            const int cval = static_cast<int>(rng() % 9u) - 4;
            if (cval == 0) continue;
            for (std::size_t pi = 0; pi < np; ++pi)
                if (!null.at(pi, sd).is_zero())
                    z = z + (Scalar(cval) * null.at(pi, sd)) * basis[pi];
        }
        if (exact::rank(z) + chain_cols.size() != m) continue;
        const Matrix mm = p * z * tinv * pt;
        if (mm * j != j * mm) continue;
        if (Subspace::span(exact::kernel_basis(mm)) != want) continue;
        return z;
    }
    return std::nullopt;
}

std::optional<Construction> attempt_expanded(const JordanStructure& s, const ChainSpec& chains) {
    std::optional<Construction> found;
    const Subspace want = span_of_chains(chains, s.dimension());
    try {
        detail::search_placements(s, chains, [&](const std::vector<Placement>& placements) {
            const Expansion e = expand_structure(s, chains, placements);
            Matrix t = build_T_on(e.expanded, s, chains, placements);
            if (!jordan::in_commutant_structural(e.expanded, t)) return false;
            if (exact::rank(t) != t.rows()) return false;
            Construction c;
            c.structure = s;
            c.expanded = e.expanded;
            c.placements = placements;
            c.chains = chains;
            c.t = t;
            c.p = selection_matrix(s, e.expanded);
            const Matrix tinv = exact::inverse(t);
            const Matrix pt = exact::transpose(c.p);
            c.z = build_Z_nonmarked(e, chains, placements);
            c.m = c.p * c.z * tinv * pt;
            if (Subspace::span(exact::kernel_basis(c.m)) != want) {
                // The paired off-diagonal shape needs a private home per
                // grown block; when several grown blocks share one home its
                // pads collide, so solve for a generic commutant Z instead.
                const auto z = build_Z_generic(s, e, chains, placements, t);
                if (!z) return false;
                c.z = *z;
                c.m = c.p * c.z * tinv * pt;
            }
            c.marked = false;
            found = std::move(c);
            return true;
        });
    } catch (const math_error&) {
        return std::nullopt;
    }
    return found;
}

// Block-diagonal matrix that reverses the rows of every block.
Matrix flip_matrix(const JordanStructure& s) {
    const std::size_t n = s.dimension();
    Matrix f(n, n);
    for (std::size_t b = 0; b < s.blocks.size(); ++b) {
        const std::size_t off = s.block_offset(b);
        const std::size_t sz = s.blocks[b].size;
        for (std::size_t q = 0; q < sz; ++q)
            f.at(off + q, off + sz - 1 - q) = Scalar(1);
    }
    return f;
}

JordanStructure conjugate_structure(const JordanStructure& s) {
    JordanStructure out = s;
    for (auto& blk : out.blocks) blk.eigenvalue = exact::conj(blk.eigenvalue);
    return out;
}

} // namespace

Matrix construct_single_block(std::size_t n, std::size_t k) {
    return backward_shift_power(n, k);
}

std::vector<Placement> place_chains(const JordanStructure& s, const ChainSpec& spec) {
    std::vector<Placement> out;
    const bool any = detail::search_placements(
        s, spec, [&](const std::vector<Placement>& placements) {
            out = placements;
            return true;
        });
    if (!any)
        throw math_error("chain eigenvectors cannot be matched to distinct home blocks");
    return out;
}

bool fits_without_expansion(const JordanStructure& s, const ChainSpec& spec) {
    try {
        return detail::search_placements(
            s, spec, [&](const std::vector<Placement>& placements) {
                const auto sizes = expansion_sizes(s, spec, placements);
                for (std::size_t b = 0; b < s.blocks.size(); ++b)
                    if (sizes[b] != s.blocks[b].size) return false;
                const Matrix t = build_T(s, spec, placements);
                return jordan::in_commutant_structural(s, t) && exact::rank(t) == t.rows();
            });
    } catch (const math_error&) {
        return false;
    }
}

Expansion expand_structure(const JordanStructure& s, const ChainSpec& spec,
                           const std::vector<Placement>& placements) {
    Expansion e;
    e.sizes.resize(s.blocks.size());
    e.added.assign(s.blocks.size(), 0);
    e.cause.assign(s.blocks.size(), -1);
    for (std::size_t b = 0; b < s.blocks.size(); ++b) e.sizes[b] = s.blocks[b].size;
    // Growing a block that is itself some chain's home deepens that chain's
    // lift columns, which can demand further rows elsewhere, so sweep until
    // the sizes stabilize. Mutually inflating homes never stabilize; the cap
    // turns that into a rejected placement instead of an endless loop.
    const std::size_t cap = 4 * s.dimension() + 4;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t pi = 0; pi < placements.size(); ++pi) {
            const Placement& pl = placements[pi];
            const Chain& chain = spec[pl.chain];
            const std::size_t home_size = e.sizes[pl.block];
            for (std::size_t c = 1; c <= pl.length; ++c) {
                const Matrix& vec = chain.vectors[pl.length - c];
                for (std::size_t b = 0; b < s.blocks.size(); ++b) {
                    if (b == pl.block) continue;
                    const std::size_t off = s.block_offset(b);
                    for (std::size_t q = 1; q <= s.blocks[b].size; ++q) {
                        if (vec.at(off + q - 1, 0).is_zero()) continue;
                        const std::size_t req = q + home_size - c;
                        if (req > e.sizes[b]) {
                            if (req > cap)
                                throw math_error(
                                    "expansion does not stabilize for this placement");
                            e.sizes[b] = req;
                            e.cause[b] = static_cast<std::ptrdiff_t>(pi);
                            changed = true;
                        }
                    }
                }
            }
        }
    }
    e.expanded = s;
    for (std::size_t b = 0; b < s.blocks.size(); ++b) {
        e.added[b] = e.sizes[b] - s.blocks[b].size;
        e.expanded.blocks[b].size = e.sizes[b];
    }
    return e;
}

std::vector<std::size_t> expansion_sizes(const JordanStructure& s, const ChainSpec& spec,
                                         const std::vector<Placement>& placements) {
    return expand_structure(s, spec, placements).sizes;
}

Matrix build_T(const JordanStructure& s, const ChainSpec& spec,
               const std::vector<Placement>& placements) {
    return build_T_on(s, s, spec, placements);
}

Matrix build_Z_simple(const JordanStructure& s, const ChainSpec& /*spec*/,
                      const std::vector<Placement>& placements) {
    Matrix z(s.dimension(), s.dimension());
    std::vector<std::size_t> power(s.blocks.size(), 0);
    for (const auto& pl : placements) power[pl.block] = pl.length;
    for (std::size_t b = 0; b < s.blocks.size(); ++b) {
        const std::size_t off = s.block_offset(b);
        z.set_block(off, off, backward_shift_power(s.blocks[b].size, power[b]));
    }
    return z;
}

Matrix build_Z_nonmarked(const Expansion& expansion, const ChainSpec& /*spec*/,
                         const std::vector<Placement>& placements) {
    const JordanStructure& host = expansion.expanded;
    Matrix z(host.dimension(), host.dimension());
    std::vector<std::size_t> chain_power(host.blocks.size(), 0);
    std::vector<bool> is_home(host.blocks.size(), false);
    for (const auto& pl : placements) {
        is_home[pl.block] = true;
        chain_power[pl.block] = pl.length;
    }
    for (std::size_t b = 0; b < host.blocks.size(); ++b) {
        const std::size_t off = host.block_offset(b);
        const std::size_t tb = host.blocks[b].size;
        std::size_t power = 0;
        if (is_home[b])
            power = chain_power[b];
        else if (expansion.added[b] > 0)
            power = expansion.added[b];
        z.set_block(off, off, backward_shift_power(tb, power));
    }
    // Off-diagonal pair between every expanded block and the home block of
    // the chain that forced its growth.
    for (std::size_t b = 0; b < host.blocks.size(); ++b) {
        if (expansion.added[b] == 0) continue;
        const std::ptrdiff_t cause = expansion.cause[b];
        if (cause < 0) continue;
        const std::size_t j = placements[static_cast<std::size_t>(cause)].block;
        const std::size_t tb = host.blocks[b].size;
        const std::size_t nj = host.blocks[j].size;
        const std::size_t offb = host.block_offset(b);
        const std::size_t offj = host.block_offset(j);
        // The paired shape needs a tall (j, b) slot and a wide (b, j) slot;
        // when a grown block outgrows its home the shape does not exist and
        // the caller falls back to the generic solve.
        if (tb > nj) continue;
        z.set_block(offj, offb, Matrix::identity(tb));
        z.set_block(offb, offj + (nj - tb), backward_shift_power(tb, expansion.added[b]));
    }
    return z;
}

Construction construct(const JordanStructure& s, const ChainSpec& spec) {
    if (!s.is_canonical())
        throw math_error("construction requires a canonical structure");
    validate_chain_spec(s, spec);

    // Keep the caller's presentation whenever it works without expansion.
    if (auto c = attempt_unexpanded(s, spec); c && verify_construction(s, spec, *c))
        return *c;

    const ChainSpec canonical = chain_decompose(s, span_of_chains(spec, s.dimension()));
    if (auto c = attempt_unexpanded(s, canonical); c && verify_construction(s, spec, *c)) {
        c->used_canonical_chains = true;
        return *c;
    }
    if (auto c = attempt_expanded(s, spec); c && verify_construction(s, spec, *c))
        return *c;
    if (auto c = attempt_expanded(s, canonical); c && verify_construction(s, spec, *c)) {
        c->used_canonical_chains = true;
        return *c;
    }
    throw math_error("internal: kernel construction failed verification on every route");
}

Construction construct(const JordanStructure& s, const Subspace& sub) {
    if (sub.ambient() != s.dimension())
        throw math_error("subspace ambient dimension does not match the structure");
    return construct(s, chain_decompose(s, sub));
}

FullConstruction construct_full(const Matrix& a, const Subspace& sub,
                                const std::vector<Scalar>& eigenvalue_hints) {
    if (!a.is_square()) throw math_error("matrix must be square");
    if (sub.ambient() != a.rows())
        throw math_error("subspace ambient dimension does not match the matrix");
    if (!subspace::is_invariant_under(a, sub))
        throw math_error("subspace is not invariant under the matrix");
    const jordan::JordanizeResult jr =
        eigenvalue_hints.empty() ? jordan::jordanize(a) : jordan::jordanize(a, eigenvalue_hints);
    const Matrix qinv = exact::inverse(jr.q);
    const Subspace subj = Subspace::span(qinv * sub.basis());
    FullConstruction full;
    full.q = jr.q;
    full.structure = jr.structure;
    full.construction = construct(jr.structure, subj);
    full.n = jr.q * full.construction.m * qinv;
    if (full.n * a != a * full.n)
        throw math_error("internal: commutation lost returning to original coordinates");
    if (Subspace::span(exact::kernel_basis(full.n)) != sub)
        throw math_error("internal: kernel mismatch returning to original coordinates");
    return full;
}

FullConstruction construct_full(const Matrix& a, const ChainSpec& spec,
                                const std::vector<Scalar>& eigenvalue_hints) {
    if (!a.is_square()) throw math_error("matrix must be square");
    const jordan::JordanizeResult jr =
        eigenvalue_hints.empty() ? jordan::jordanize(a) : jordan::jordanize(a, eigenvalue_hints);
    const Matrix qinv = exact::inverse(jr.q);
    ChainSpec specj = spec;
    for (auto& chain : specj)
        for (auto& v : chain.vectors) {
            if (v.rows() != a.rows() || v.cols() != 1)
                throw math_error("chain vector has the wrong dimension");
            v = qinv * v;
        }
    FullConstruction full;
    full.q = jr.q;
    full.structure = jr.structure;
    full.construction = construct(jr.structure, specj);
    full.n = jr.q * full.construction.m * qinv;
    if (full.n * a != a * full.n)
        throw math_error("internal: commutation lost returning to original coordinates");
    const Subspace original = Subspace::span(jr.q * span_of_chains(specj, a.rows()).basis());
    if (Subspace::span(exact::kernel_basis(full.n)) != original)
        throw math_error("internal: kernel mismatch returning to original coordinates");
    return full;
}

RangeRepresentation range_representation(const Matrix& a, const Subspace& sub,
                                         const std::vector<Scalar>& eigenvalue_hints) {
    if (!a.is_square()) throw math_error("matrix must be square");
    if (sub.ambient() != a.rows())
        throw math_error("subspace ambient dimension does not match the matrix");
    if (!subspace::is_invariant_under(a, sub))
        throw math_error("subspace is not invariant under the matrix");
    const jordan::JordanizeResult jr =
        eigenvalue_hints.empty() ? jordan::jordanize(a) : jordan::jordanize(a, eigenvalue_hints);
    const Matrix qinv = exact::inverse(jr.q);
    const Subspace subj = Subspace::span(qinv * sub.basis());
    // A matrix W has range subj exactly when ker W* is the orthocomplement of
    // subj; flipping each block carries the adjoint Jordan matrix back to a
    // Jordan matrix over the conjugated eigenvalues, where the kernel
    // construction applies.
    const Matrix f = flip_matrix(jr.structure);
    const JordanStructure adjoint_side = conjugate_structure(jr.structure);
    const Matrix perp = exact::kernel_basis(exact::conj_transpose(subj.basis()));
    const Subspace flipped = Subspace::span(f * perp);
    const Construction c = construct(adjoint_side, flipped);
    const Matrix fm = flip_matrix(c.expanded);
    RangeRepresentation rep;
    rep.q = jr.q;
    rep.structure = jr.structure;
    rep.expanded = c.expanded;
    rep.t = fm * c.t * fm;
    rep.z = fm * c.z * fm;
    rep.p = f * c.p * fm;
    const Matrix w = exact::conj_transpose(f * c.m * f);
    rep.r = jr.q * w * qinv;
    if (rep.r * a != a * rep.r)
        throw math_error("internal: range companion does not commute");
    if (Subspace::span(rep.r) != sub)
        throw math_error("internal: range companion has the wrong range");
    const Matrix redone = rep.q * rep.p * exact::inverse(exact::conj_transpose(rep.t)) *
                          exact::conj_transpose(rep.z) * exact::transpose(rep.p) * qinv;
    if (redone != rep.r)
        throw math_error("internal: range factorization does not reassemble");
    return rep;
}

bool translate_kernel_invariance(const Matrix& n_mat, const Matrix& a,
                                 const Scalar& alpha, std::size_t k) {
    if (!n_mat.is_square() || !a.is_square() || n_mat.rows() != a.rows())
        throw math_error("translate check needs square matrices of equal size");
    const std::size_t n = n_mat.rows();
    const Matrix shifted = n_mat - alpha * Matrix::identity(n);
    Matrix power = Matrix::identity(n);
    for (std::size_t i = 0; i < k; ++i) power = power * shifted;
    const Subspace kernel = Subspace::span(exact::kernel_basis(power));
    return subspace::is_invariant_under(a, kernel);
}

} // namespace halmos
} // namespace invsub
