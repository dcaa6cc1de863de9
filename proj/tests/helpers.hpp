// Shared builders for the test suites: compact matrix/structure/chain
// literals and a deterministic random chain-spec generator.
#pragma once

#include <cstddef>
#include <initializer_list>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "invsub/exact.hpp"
#include "invsub/halmos.hpp"
#include "invsub/jordan.hpp"
#include "invsub/subspace.hpp"

namespace helpers {

using invsub::exact::Matrix;
using invsub::exact::Rational;
using invsub::exact::Scalar;
using invsub::jordan::JordanStructure;
using invsub::subspace::Chain;
using invsub::subspace::ChainSpec;
using invsub::subspace::Subspace;

inline Scalar sc(const std::string& text) { return invsub::exact::parse_scalar(text); }

inline Matrix mat(std::initializer_list<std::initializer_list<const char*>> rows) {
    std::vector<std::vector<const char*>> copy(rows.begin(), rows.end());
    const std::size_t r = copy.size();
    const std::size_t c = r == 0 ? 0 : copy.front().size();
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = sc(copy[i][j]);
    return m;
}

inline Matrix col(std::initializer_list<const char*> entries) {
    std::vector<Scalar> values;
    for (const char* text : entries) values.push_back(sc(text));
    return Matrix::column(values);
}

inline JordanStructure structure(
    std::initializer_list<std::pair<const char*, std::size_t>> blocks) {
    JordanStructure s;
    for (const auto& [eig, size] : blocks) {
        invsub::jordan::JordanBlock block;
        block.eigenvalue = sc(eig);
        block.size = size;
        s.blocks.push_back(block);
    }
    return s;
}

inline Chain chain_of(const JordanStructure& s, const char* eigenvalue,
                      std::initializer_list<const char*> generator) {
    std::vector<const char*> entries(generator.begin(), generator.end());
    std::vector<Scalar> values;
    for (const char* text : entries) values.push_back(sc(text));
    return invsub::subspace::chain_from_generator(s, sc(eigenvalue),
                                                  Matrix::column(values));
}

// Random chain specs over a Jordan structure: pick up to `max_chains`
// generators with small integer entries supported on blocks of one
// eigenvalue each, discarding degenerate draws (zero vectors, dependent
// spans are fine - validate_chain_spec decides).
struct SpecSampler {
    std::mt19937_64 rng;

    explicit SpecSampler(std::uint64_t seed) : rng(seed) {}

    Scalar small_scalar() {
        const int v = static_cast<int>(rng() % 7) - 3;
        return Scalar(v);
    }

    // A generator for one eigenvalue group: random height per block (0 =
    // block unused), entries random below the chosen height rows.
    Matrix generator(const JordanStructure& s, const Scalar& eigenvalue) {
        const std::size_t n = s.dimension();
        Matrix v(n, 1);
        bool nonzero = false;
        for (const auto& g : s.groups()) {
            if (!(g.eigenvalue == eigenvalue)) continue;
            for (std::size_t b = 0; b < g.block_count; ++b) {
                const std::size_t size = g.sizes[b];
                const std::size_t height = rng() % (size + 1);
                std::size_t offset = g.offset;
                for (std::size_t k = 0; k < b; ++k) offset += g.sizes[k];
                for (std::size_t rrow = 0; rrow < height; ++rrow) {
                    Scalar value = small_scalar();
                    if (rrow + 1 == height && value.is_zero()) value = Scalar(1);
                    if (!value.is_zero()) nonzero = true;
                    v.at(offset + rrow, 0) = value;
                }
            }
        }
        if (!nonzero) return Matrix(0, 0);
        return v;
    }

    ChainSpec draw(const JordanStructure& s, std::size_t max_chains) {
        ChainSpec spec;
        std::vector<Matrix> stacked;
        std::vector<Scalar> eigenvalues;
        for (const auto& g : s.groups()) eigenvalues.push_back(g.eigenvalue);
        const std::size_t count = 1 + rng() % max_chains;
        for (std::size_t c = 0; c < count; ++c) {
            const Scalar eigenvalue = eigenvalues[rng() % eigenvalues.size()];
            const Matrix v = generator(s, eigenvalue);
            if (v.rows() == 0) continue;
            Chain chain = invsub::subspace::chain_from_generator(s, eigenvalue, v);
            std::vector<Matrix> extended = stacked;
            for (const Matrix& w : chain.vectors) extended.push_back(w);
            const Matrix joined =
                Matrix::from_columns(extended, s.dimension());
            if (invsub::exact::rank(joined) != joined.cols()) continue;
            stacked = std::move(extended);
            spec.push_back(std::move(chain));
        }
        return spec;
    }
};

// The ten-plus structure corpus used by the randomized suites.
inline std::vector<JordanStructure> corpus() {
    return {
        structure({{"0", 2}}),
        structure({{"0", 3}}),
        structure({{"0", 4}}),
        structure({{"0", 2}, {"0", 1}}),
        structure({{"0", 3}, {"0", 1}}),
        structure({{"0", 3}, {"0", 2}}),
        structure({{"0", 2}, {"0", 2}, {"0", 1}}),
        structure({{"0", 4}, {"0", 2}, {"0", 1}}),
        structure({{"2", 3}, {"2", 1}, {"3", 1}}),
        structure({{"1", 2}, {"1", 2}, {"-1", 2}}),
        structure({{"1/2", 3}, {"1/2", 2}, {"5", 2}}),
        structure({{"i", 2}, {"i", 1}, {"0", 3}}),
    };
}

} // namespace helpers
