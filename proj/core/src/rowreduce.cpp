#include "invsub/rowreduce.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "invsub/halmos.hpp"

namespace invsub {
namespace rowreduce {

using exact::Rational;
using jordan::jordan_matrix;
using subspace::Subspace;
using subspace::span_of_chains;
using subspace::validate_chain_spec;

Matrix form_x(const JordanStructure& s, const ChainSpec& spec) {
    validate_chain_spec(s, spec);
    const std::size_t n = s.dimension();
    std::size_t k = 0;
    for (const auto& chain : spec) k += chain.length();
    Matrix x(k, n);
    std::size_t r = 0;
    for (const auto& chain : spec) {
        for (std::size_t t = chain.length(); t-- > 0;) {
            for (std::size_t j = 0; j < n; ++j) x.at(r, j) = chain.vectors[t].at(j, 0);
            ++r;
        }
    }
    return x;
}

EquationSystem build_equation_system(const JordanStructure& s, const ChainSpec& spec) {
    EquationSystem es;
    es.x = form_x(s, spec);
    es.x_rref = exact::rref(es.x);
    for (std::size_t i = 0; i < es.x_rref.rows(); ++i) {
        Equation eq;
        for (std::size_t j = 0; j < es.x_rref.cols(); ++j)
            if (!es.x_rref.at(i, j).is_zero()) eq.terms.emplace_back(j, es.x_rref.at(i, j));
        if (!eq.terms.empty()) es.equations.push_back(std::move(eq));
    }
    return es;
}

namespace {

// Values summing to zero for q equal-weight slots: halves get +1 / -1; an odd
// count splits the lead entry into two halves.
std::vector<Scalar> balanced_targets(std::size_t q) {
    std::vector<Scalar> t;
    if (q == 0) return t;
    if (q == 1) {
        t.push_back(Scalar(0));
        return t;
    }
    if (q % 2 == 0) {
        for (std::size_t i = 0; i < q / 2; ++i) t.push_back(Scalar(1));
        for (std::size_t i = 0; i < q / 2; ++i) t.push_back(Scalar(-1));
    } else {
        t.push_back(Scalar(Rational(1, 2)));
        t.push_back(Scalar(Rational(1, 2)));
        for (std::size_t i = 0; i < (q - 3) / 2; ++i) t.push_back(Scalar(1));
        for (std::size_t i = 0; i < (q - 1) / 2; ++i) t.push_back(Scalar(-1));
    }
    return t;
}

} // namespace

RowReduceResult construct_via_row_reduction(const JordanStructure& s, const ChainSpec& spec) {
    const std::size_t n = s.dimension();
    RowReduceResult result;
    if (spec.empty()) {
        // The trivial subspace wants an invertible commutant member: identity.
        result.m = Matrix::identity(n);
        result.system.x = Matrix(0, n);
        result.system.x_rref = Matrix(0, n);
        return result;
    }
    if (!s.is_canonical())
        throw math_error("row reduction requires a canonical structure");
    const auto groups = s.groups();
    if (groups.size() != 1)
        throw math_error("row reduction handles one eigenvalue at a time; split by group first");

    result.system = build_equation_system(s, spec);

    const Scalar lambda = groups.front().eigenvalue;
    const Matrix nil = jordan_matrix(s) - lambda * Matrix::identity(n);

    // Solve the first-row variables: every equation is processed in order,
    // known values substituted, and the unknowns of the equation receive
    // values that cancel the accumulated constant.
    std::vector<std::optional<Scalar>> rho(n);
    std::vector<bool> engaged(n, false);
    for (const auto& eq : result.system.equations)
        for (const auto& term : eq.terms) engaged[term.first] = true;
    for (const auto& eq : result.system.equations) {
        Scalar constant(0);
        std::vector<std::pair<std::size_t, Scalar>> unknown;
        for (const auto& term : eq.terms) {
            if (rho[term.first])
                constant += term.second * *rho[term.first];
            else
                unknown.push_back(term);
        }
        if (unknown.empty()) continue; // cannot happen: each rref row has a fresh pivot
        std::vector<Scalar> targets;
        if (constant.is_zero()) {
            targets = balanced_targets(unknown.size());
        } else {
            targets.push_back(-constant);
            const auto rest = balanced_targets(unknown.size() - 1);
            targets.insert(targets.end(), rest.begin(), rest.end());
        }
        for (std::size_t i = 0; i < unknown.size(); ++i)
            rho[unknown[i].first] = targets[i] / unknown[i].second;
    }
    for (std::size_t j = 0; j < n; ++j)
        if (!rho[j]) rho[j] = Scalar(0); // nondeterministically free: start at zero

    const std::size_t block_count = s.blocks.size();
    std::vector<Matrix> first_rows(block_count, Matrix(1, n));
    for (std::size_t j = 0; j < n; ++j) first_rows[0].at(0, j) = *rho[j];

    auto assemble = [&]() {
        Matrix m(n, n);
        for (std::size_t alpha = 0; alpha < block_count; ++alpha) {
            const std::size_t off = s.block_offset(alpha);
            Matrix row = first_rows[alpha];
            for (std::size_t t = 0; t < s.blocks[alpha].size; ++t) {
                m.set_block(off + t, 0, row);
                row = row * nil;
            }
        }
        return m;
    };
    auto block_of_col = [&](std::size_t col) {
        std::size_t b = 0;
        while (s.block_offset(b) + s.blocks[b].size <= col) ++b;
        return b;
    };

    const Subspace want = span_of_chains(spec, n);
    const std::size_t target_rank = n - want.dim();
    result.m = assemble();
    std::size_t current = exact::rank(result.m);

    // Rank completion: place elementary entries at annihilating positions
    // that the block pattern allows, keeping each only when the rank grows.
    for (std::size_t alpha = 0; alpha < block_count && current < target_rank; ++alpha) {
        for (std::size_t col = 0; col < n && current < target_rank; ++col) {
            if (engaged[col]) continue;
            if (!first_rows[alpha].at(0, col).is_zero()) continue;
            const std::size_t beta = block_of_col(col);
            const std::size_t tall = s.blocks[alpha].size;
            const std::size_t wide = s.blocks[beta].size;
            const std::size_t within = col - s.block_offset(beta);
            if (tall < wide && within < wide - tall) continue;
            first_rows[alpha].at(0, col) = Scalar(1);
            Matrix candidate = assemble();
            const std::size_t grown = exact::rank(candidate);
            if (grown > current) {
                result.m = std::move(candidate);
                current = grown;
            } else {
                first_rows[alpha].at(0, col) = Scalar(0);
            }
        }
    }

    const Matrix j = jordan_matrix(s);
    const bool sound = current == target_rank && result.m * j == j * result.m &&
                       Subspace::span(exact::kernel_basis(result.m)) == want;
    if (!sound) {
        const halmos::Construction fallback = halmos::construct(s, spec);
        result.m = fallback.m;
        result.fell_back = true;
        result.notice = "row reduction could not complete the rank; used the transform construction";
        if (result.m * j != j * result.m ||
            Subspace::span(exact::kernel_basis(result.m)) != want)
            throw math_error("internal: fallback construction failed verification");
    }
    return result;
}

} // namespace rowreduce
} // namespace invsub
