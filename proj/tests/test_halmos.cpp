#include <catch2/catch_amalgamated.hpp>

#include <cstddef>
#include <vector>

#include "helpers.hpp"
#include "invsub/exact.hpp"
#include "invsub/halmos.hpp"
#include "invsub/jordan.hpp"
#include "invsub/subspace.hpp"

using namespace invsub;
using namespace helpers;
using subspace::Subspace;

namespace {

bool block_diagonal(const Matrix& z, const jordan::JordanStructure& s) {
    for (std::size_t i = 0; i < z.rows(); ++i)
        for (std::size_t j = 0; j < z.cols(); ++j) {
            std::size_t bi = 0, bj = 0, seen = 0;
            for (std::size_t b = 0; b < s.blocks.size(); ++b) {
                if (i >= seen && i < seen + s.blocks[b].size) bi = b;
                if (j >= seen && j < seen + s.blocks[b].size) bj = b;
                seen += s.blocks[b].size;
            }
            if (bi != bj && !z.at(i, j).is_zero()) return false;
        }
    return true;
}

} // namespace

TEST_CASE("single block kernels: powers of the backward shift") {
    CHECK(halmos::construct_single_block(3, 0) == Matrix::identity(3));
    CHECK(halmos::construct_single_block(3, 1) == mat({{"0", "1", "0"},
                                                       {"0", "0", "1"},
                                                       {"0", "0", "0"}}));
    CHECK(halmos::construct_single_block(3, 2) == mat({{"0", "0", "1"},
                                                       {"0", "0", "0"},
                                                       {"0", "0", "0"}}));
    CHECK(halmos::construct_single_block(3, 3) == Matrix::zero(3, 3));

    CHECK(exact::kernel_basis(halmos::construct_single_block(3, 0)).cols() == 0);
    CHECK(Subspace::span(exact::kernel_basis(halmos::construct_single_block(3, 1))) ==
          Subspace::span(col({"1", "0", "0"})));
    CHECK(Subspace::span(exact::kernel_basis(halmos::construct_single_block(3, 2))) ==
          Subspace::span(mat({{"1", "0"}, {"0", "1"}, {"0", "0"}})));
    CHECK(Subspace::span(exact::kernel_basis(halmos::construct_single_block(3, 3))) ==
          Subspace::full(3));
    CHECK_THROWS_AS(halmos::construct_single_block(3, 4), math_error);
}

TEST_CASE("worked nilpotent example, first subspace") {
    const auto s = structure({{"0", 3}, {"0", 2}, {"0", 1}});
    const subspace::ChainSpec spec = {chain_of(s, "0", {"1", "1", "0", "3", "2", "0"})};
    const auto c = halmos::construct(s, spec);

    CHECK(c.t == mat({{"1", "0", "0", "1", "1", "0"},
                      {"0", "1", "0", "0", "1", "0"},
                      {"0", "0", "1", "0", "0", "0"},
                      {"0", "0", "0", "2", "3", "0"},
                      {"0", "0", "0", "0", "2", "0"},
                      {"0", "0", "0", "0", "0", "1"}}));
    CHECK(c.z == mat({{"1", "0", "0", "0", "0", "0"},
                      {"0", "1", "0", "0", "0", "0"},
                      {"0", "0", "1", "0", "0", "0"},
                      {"0", "0", "0", "0", "0", "0"},
                      {"0", "0", "0", "0", "0", "0"},
                      {"0", "0", "0", "0", "0", "1"}}));
    CHECK(c.p == Matrix::identity(6));
    CHECK(c.m == mat({{"1", "0", "0", "-1/2", "1/4", "0"},
                      {"0", "1", "0", "0", "-1/2", "0"},
                      {"0", "0", "1", "0", "0", "0"},
                      {"0", "0", "0", "0", "0", "0"},
                      {"0", "0", "0", "0", "0", "0"},
                      {"0", "0", "0", "0", "0", "1"}}));
    CHECK(c.marked);
    CHECK(Subspace::span(exact::kernel_basis(c.m)) ==
          subspace::span_of_chains(spec, 6));
}

TEST_CASE("worked nilpotent example, expanded subspace") {
    const auto s = structure({{"0", 3}, {"0", 2}, {"0", 1}});
    const subspace::ChainSpec spec = {chain_of(s, "0", {"2", "1", "0", "0", "0", "1"})};
    const auto c = halmos::construct(s, spec);

    CHECK_FALSE(c.marked);
    REQUIRE(c.expanded.blocks.size() == 3);
    CHECK(c.expanded.blocks[0].size == 3);
    CHECK(c.expanded.blocks[1].size == 2);
    CHECK(c.expanded.blocks[2].size == 2);

    CHECK(c.t == mat({{"1", "2", "0", "0", "0", "0", "0"},
                      {"0", "1", "2", "0", "0", "0", "0"},
                      {"0", "0", "1", "0", "0", "0", "0"},
                      {"0", "0", "0", "1", "0", "0", "0"},
                      {"0", "0", "0", "0", "1", "0", "0"},
                      {"0", "1", "0", "0", "0", "1", "0"},
                      {"0", "0", "1", "0", "0", "0", "1"}}));
    CHECK(c.z == mat({{"0", "0", "1", "0", "0", "1", "0"},
                      {"0", "0", "0", "0", "0", "0", "1"},
                      {"0", "0", "0", "0", "0", "0", "0"},
                      {"0", "0", "0", "1", "0", "0", "0"},
                      {"0", "0", "0", "0", "1", "0", "0"},
                      {"0", "0", "1", "0", "0", "0", "1"},
                      {"0", "0", "0", "0", "0", "0", "0"}}));
    CHECK(c.p == mat({{"1", "0", "0", "0", "0", "0", "0"},
                      {"0", "1", "0", "0", "0", "0", "0"},
                      {"0", "0", "1", "0", "0", "0", "0"},
                      {"0", "0", "0", "1", "0", "0", "0"},
                      {"0", "0", "0", "0", "1", "0", "0"},
                      {"0", "0", "0", "0", "0", "1", "0"}}));
    CHECK(c.m == mat({{"0", "-1", "3", "0", "0", "1"},
                      {"0", "0", "-1", "0", "0", "0"},
                      {"0", "0", "0", "0", "0", "0"},
                      {"0", "0", "0", "1", "0", "0"},
                      {"0", "0", "0", "0", "1", "0"},
                      {"0", "0", "0", "0", "0", "0"}}));
    CHECK(Subspace::span(exact::kernel_basis(c.m)) ==
          subspace::span_of_chains(spec, 6));
    CHECK(c.m == c.p * c.z * exact::inverse(c.t) * exact::transpose(c.p));
}

TEST_CASE("worked nilpotent example, two-chain subspace") {
    const auto s = structure({{"0", 3}, {"0", 2}, {"0", 1}});
    const subspace::ChainSpec spec = {
        chain_of(s, "0", {"1", "1", "0", "3", "2", "0"}),
        chain_of(s, "0", {"0", "0", "0", "5", "0", "1"})};
    const auto c = halmos::construct(s, spec);

    CHECK(c.t == mat({{"1", "0", "0", "1", "1", "0"},
                      {"0", "1", "0", "0", "1", "0"},
                      {"0", "0", "1", "0", "0", "0"},
                      {"0", "0", "0", "2", "3", "5"},
                      {"0", "0", "0", "0", "2", "0"},
                      {"0", "0", "0", "0", "0", "1"}}));
    CHECK(c.z == mat({{"1", "0", "0", "0", "0", "0"},
                      {"0", "1", "0", "0", "0", "0"},
                      {"0", "0", "1", "0", "0", "0"},
                      {"0", "0", "0", "0", "0", "0"},
                      {"0", "0", "0", "0", "0", "0"},
                      {"0", "0", "0", "0", "0", "0"}}));
    CHECK(c.p == Matrix::identity(6));
    CHECK(c.m == mat({{"1", "0", "0", "-1/2", "1/4", "5/2"},
                      {"0", "1", "0", "0", "-1/2", "0"},
                      {"0", "0", "1", "0", "0", "0"},
                      {"0", "0", "0", "0", "0", "0"},
                      {"0", "0", "0", "0", "0", "0"},
                      {"0", "0", "0", "0", "0", "0"}}));
    CHECK(c.marked);
}

TEST_CASE("worked two-eigenvalue example") {
    const auto s = structure({{"2", 3}, {"2", 1}, {"3", 1}});
    const subspace::ChainSpec spec = {chain_of(s, "2", {"1", "1", "0", "2", "0"}),
                                      chain_of(s, "3", {"0", "0", "0", "0", "1"})};
    const auto c = halmos::construct(s, spec);

    CHECK_FALSE(c.marked);
    REQUIRE(c.expanded.blocks.size() == 3);
    CHECK(c.expanded.blocks[0].size == 3);
    CHECK(c.expanded.blocks[1].size == 2);
    CHECK(c.expanded.blocks[2].size == 1);

    CHECK(c.t == mat({{"1", "1", "0", "0", "0", "0"},
                      {"0", "1", "1", "0", "0", "0"},
                      {"0", "0", "1", "0", "0", "0"},
                      {"0", "2", "0", "1", "0", "0"},
                      {"0", "0", "2", "0", "1", "0"},
                      {"0", "0", "0", "0", "0", "1"}}));
    CHECK(c.z == mat({{"0", "0", "1", "1", "0", "0"},
                      {"0", "0", "0", "0", "1", "0"},
                      {"0", "0", "0", "0", "0", "0"},
                      {"0", "0", "1", "0", "1", "0"},
                      {"0", "0", "0", "0", "0", "0"},
                      {"0", "0", "0", "0", "0", "0"}}));
    CHECK(c.p == mat({{"1", "0", "0", "0", "0", "0"},
                      {"0", "1", "0", "0", "0", "0"},
                      {"0", "0", "1", "0", "0", "0"},
                      {"0", "0", "0", "1", "0", "0"},
                      {"0", "0", "0", "0", "0", "1"}}));
    CHECK(c.m == mat({{"0", "-2", "3", "1", "0"},
                      {"0", "0", "-2", "0", "0"},
                      {"0", "0", "0", "0", "0"},
                      {"0", "0", "-1", "0", "0"},
                      {"0", "0", "0", "0", "0"}}));

    const Matrix j = jordan::jordan_matrix(s);
    CHECK(c.m * j == j * c.m);
    CHECK(Subspace::span(exact::kernel_basis(c.m)) ==
          subspace::span_of_chains(spec, 5));
}

TEST_CASE("kernel, commutation, rank, and markedness over a random corpus") {
    std::size_t checked = 0;
    for (const auto& s : corpus()) {
        const std::size_t n = s.dimension();
        const Matrix j = jordan::jordan_matrix(s);
        SpecSampler sampler(0xC0FFEE ^ n);
        for (int trial = 0; trial < 200; ++trial) {
            const auto spec = sampler.draw(s, 2);
            if (spec.empty()) continue;
            const Subspace sub = subspace::span_of_chains(spec, n);
            const auto c = halmos::construct(s, spec);

            CHECK(c.m * j == j * c.m);
            CHECK(Subspace::span(exact::kernel_basis(c.m)) == sub);
            CHECK(exact::rank(c.m) == n - sub.dim());
            CHECK(c.marked == subspace::is_marked(s, sub));
            const bool plain = c.p == Matrix::identity(n) && block_diagonal(c.z, c.expanded);
            CHECK(c.marked == plain);
            CHECK(c.m == c.p * c.z * exact::inverse(c.t) * exact::transpose(c.p));
            ++checked;
        }
    }
    CHECK(checked >= 2000);
}

TEST_CASE("subspace and chain entries agree") {
    const auto s = structure({{"0", 3}, {"0", 2}, {"0", 1}});
    const subspace::ChainSpec spec = {chain_of(s, "0", {"2", "1", "0", "0", "0", "1"})};
    const Subspace sub = subspace::span_of_chains(spec, 6);
    const auto from_spec = halmos::construct(s, spec);
    const auto from_sub = halmos::construct(s, sub);
    CHECK(Subspace::span(exact::kernel_basis(from_spec.m)) ==
          Subspace::span(exact::kernel_basis(from_sub.m)));
}

TEST_CASE("full pipeline on a matrix away from canonical form") {
    const Matrix a = mat({{"1", "3", "5", "0", "0"},
                          {"0", "1", "7", "0", "0"},
                          {"0", "0", "1", "0", "0"},
                          {"0", "0", "0", "2", "11"},
                          {"0", "0", "0", "0", "2"}});
    const Subspace sub = Subspace::span(mat({{"1", "0"}, {"0", "0"}, {"0", "0"},
                                             {"0", "1"}, {"0", "0"}}));
    const auto full = halmos::construct_full(a, sub);
    CHECK(full.n * a == a * full.n);
    CHECK(Subspace::span(exact::kernel_basis(full.n)) == sub);
    CHECK(exact::rank(full.n) == 3);

    subspace::Chain chain;
    chain.eigenvalue = sc("1");
    chain.vectors = {col({"0", "0", "1", "0", "0"}), col({"5", "7", "0", "0", "0"}),
                     col({"21", "0", "0", "0", "0"})};
    const auto from_chain = halmos::construct_full(a, {chain});
    CHECK(from_chain.n * a == a * from_chain.n);
    CHECK(Subspace::span(exact::kernel_basis(from_chain.n)) ==
          Subspace::span(mat({{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"},
                              {"0", "0", "0"}, {"0", "0", "0"}})));
    CHECK_THROWS_AS(
        halmos::construct_full(a, Subspace::span(col({"0", "1", "0", "0", "0"}))),
        math_error);
}

TEST_CASE("range representation produces the subspace as a range") {
    std::size_t checked = 0;
    for (const auto& s : corpus()) {
        const std::size_t n = s.dimension();
        const Matrix j = jordan::jordan_matrix(s);
        SpecSampler sampler(0xBEEF ^ n);
        for (int trial = 0; trial < 40; ++trial) {
            const auto spec = sampler.draw(s, 2);
            if (spec.empty()) continue;
            const Subspace sub = subspace::span_of_chains(spec, n);
            const auto rep = halmos::range_representation(j, sub);
            CHECK(rep.r * j == j * rep.r);
            CHECK(Subspace::span(rep.r) == sub);
            CHECK(exact::rank(rep.r) == sub.dim());
            ++checked;
        }
    }
    CHECK(checked >= 400);

    const Matrix a = mat({{"1", "3"}, {"0", "1"}});
    const auto rep = halmos::range_representation(a, Subspace::span(col({"1", "0"})));
    CHECK(rep.r * a == a * rep.r);
    CHECK(Subspace::span(rep.r) == Subspace::span(col({"1", "0"})));
}

TEST_CASE("kernels of translates stay invariant for commuting pairs") {
    const auto s = structure({{"0", 3}, {"0", 2}, {"0", 1}});
    const Matrix j = jordan::jordan_matrix(s);
    const subspace::ChainSpec spec = {chain_of(s, "0", {"2", "1", "0", "0", "0", "1"})};
    const auto c = halmos::construct(s, spec);
    for (std::size_t k = 1; k <= 3; ++k) {
        CHECK(halmos::translate_kernel_invariance(c.m, j, sc("0"), k));
        CHECK(halmos::translate_kernel_invariance(c.m, j, sc("1"), k));
        CHECK(halmos::translate_kernel_invariance(c.m, j, sc("-1/2"), k));
    }
}

TEST_CASE("translate invariance can hold without commuting") {
    const Matrix n = mat({{"0", "1", "0", "0", "0"},
                          {"0", "0", "1", "0", "0"},
                          {"0", "0", "0", "0", "0"},
                          {"0", "0", "0", "0", "1"},
                          {"0", "0", "0", "0", "0"}});
    const Matrix a = mat({{"1", "3", "5", "0", "0"},
                          {"0", "1", "7", "0", "0"},
                          {"0", "0", "1", "0", "0"},
                          {"0", "0", "0", "2", "11"},
                          {"0", "0", "0", "0", "2"}});
    CHECK(n * a != a * n);
    CHECK((n * a - a * n) * col({"0", "0", "1", "0", "0"}) ==
          col({"4", "0", "0", "0", "0"}));

    CHECK(Subspace::span(exact::kernel_basis(n)) ==
          Subspace::span(mat({{"1", "0"}, {"0", "0"}, {"0", "0"}, {"0", "1"},
                              {"0", "0"}})));
    CHECK(Subspace::span(exact::kernel_basis(n * n)) ==
          Subspace::span(mat({{"1", "0", "0", "0"}, {"0", "1", "0", "0"},
                              {"0", "0", "0", "0"}, {"0", "0", "1", "0"},
                              {"0", "0", "0", "1"}})));
    CHECK(Subspace::span(exact::kernel_basis(n * n * n)) == Subspace::full(5));

    for (std::size_t k = 1; k <= 3; ++k)
        CHECK(halmos::translate_kernel_invariance(n, a, sc("0"), k));

    const Matrix shift_down = mat({{"0", "0"}, {"1", "0"}});
    const Matrix shift_up = mat({{"0", "1"}, {"0", "0"}});
    CHECK_FALSE(halmos::translate_kernel_invariance(shift_up, shift_down, sc("0"), 1));
}

TEST_CASE("degenerate subspaces") {
    const auto s = structure({{"0", 3}, {"0", 1}});
    const auto zero = halmos::construct(s, Subspace::zero(4));
    CHECK(exact::rank(zero.m) == 4);
    CHECK(exact::kernel_basis(zero.m).cols() == 0);
    const auto full = halmos::construct(s, Subspace::full(4));
    CHECK(full.m.is_zero());

    CHECK_THROWS_AS(
        halmos::construct(s, Subspace::span(col({"0", "1", "0", "0"}))),
        math_error);
}
