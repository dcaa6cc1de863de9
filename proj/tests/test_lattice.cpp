#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "invsub/exact.hpp"
#include "invsub/halmos.hpp"
#include "invsub/jordan.hpp"
#include "invsub/lattice.hpp"
#include "invsub/subspace.hpp"

using namespace invsub;
using namespace helpers;
using subspace::Subspace;

namespace {

const lattice::LatticeNode& node_by_id(const lattice::Lattice& l, const std::string& id) {
    for (const auto& node : l.nodes)
        if (node.id == id) return node;
    FAIL("no node with id " + id);
    return l.nodes.front();
}

std::set<std::pair<std::string, std::string>> edge_ids(const lattice::Lattice& l) {
    std::set<std::pair<std::string, std::string>> out;
    for (const auto& [lo, hi] : l.covers)
        out.insert({l.nodes[lo].id, l.nodes[hi].id});
    return out;
}

std::size_t count_hyper(const lattice::Lattice& l) {
    std::size_t k = 0;
    for (const auto& node : l.nodes) k += node.hyperinvariant ? 1 : 0;
    return k;
}

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
    std::size_t count = 0, pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

void check_grading(const lattice::Lattice& l) {
    const std::size_t n = l.structure.dimension();
    std::size_t bottoms = 0, tops = 0;
    for (const auto& node : l.nodes) {
        bottoms += node.dim == 0 ? 1 : 0;
        tops += node.dim == n ? 1 : 0;
    }
    CHECK(bottoms == 1);
    CHECK(tops == 1);
    for (const auto& [lo, hi] : l.covers)
        CHECK(l.nodes[hi].dim == l.nodes[lo].dim + 1);
}

} // namespace

TEST_CASE("four-dimensional two-block lattice matches the worked diagram") {
    const auto s = structure({{"0", 3}, {"0", 1}});
    const auto l = lattice::enumerate_lattice(s);
    REQUIRE(l.nodes.size() == 9);
    CHECK(l.covers.size() == 12);
    CHECK(count_hyper(l) == 6);
    check_grading(l);

    CHECK(node_by_id(l, "r0,0").z == Matrix::identity(4));
    CHECK(node_by_id(l, "r1,0").z == mat({{"0", "1", "0", "0"},
                                          {"0", "0", "1", "0"},
                                          {"0", "0", "0", "0"},
                                          {"0", "0", "0", "1"}}));
    CHECK(node_by_id(l, "r0,1").z == mat({{"1", "0", "0", "0"},
                                          {"0", "1", "0", "0"},
                                          {"0", "0", "1", "0"},
                                          {"0", "0", "0", "0"}}));
    CHECK(node_by_id(l, "r2,0").z == mat({{"0", "0", "1", "0"},
                                          {"0", "0", "0", "0"},
                                          {"0", "0", "0", "0"},
                                          {"0", "0", "0", "1"}}));
    CHECK(node_by_id(l, "r1,1").z == mat({{"0", "1", "0", "0"},
                                          {"0", "0", "1", "0"},
                                          {"0", "0", "0", "0"},
                                          {"0", "0", "0", "0"}}));
    CHECK(node_by_id(l, "r2,0t3,2").z == mat({{"0", "0", "1", "0", "0"},
                                              {"0", "0", "0", "0", "0"},
                                              {"0", "0", "0", "0", "0"},
                                              {"0", "0", "0", "1", "0"},
                                              {"0", "0", "0", "0", "1"}}));
    CHECK(node_by_id(l, "r3,0").z == mat({{"0", "0", "0", "0"},
                                          {"0", "0", "0", "0"},
                                          {"0", "0", "0", "0"},
                                          {"0", "0", "0", "1"}}));
    CHECK(node_by_id(l, "r2,1").z == mat({{"0", "0", "1", "0"},
                                          {"0", "0", "0", "0"},
                                          {"0", "0", "0", "0"},
                                          {"0", "0", "0", "0"}}));
    CHECK(node_by_id(l, "r3,1").z == Matrix::zero(4, 4));

    const std::set<std::string> hyper_ids = {"r0,0", "r1,0", "r2,0",
                                             "r1,1", "r2,1", "r3,1"};
    for (const auto& node : l.nodes)
        CHECK(node.hyperinvariant == (hyper_ids.count(node.id) > 0));

    const auto edges = edge_ids(l);
    const std::set<std::pair<std::string, std::string>> expected = {
        {"r0,0", "r1,0"},     {"r0,0", "r0,1"},     {"r1,0", "r2,0"},
        {"r1,0", "r2,0t3,2"}, {"r1,0", "r1,1"},     {"r0,1", "r1,1"},
        {"r2,0", "r3,0"},     {"r2,0", "r2,1"},     {"r2,0t3,2", "r2,1"},
        {"r1,1", "r2,1"},     {"r3,0", "r3,1"},     {"r2,1", "r3,1"}};
    CHECK(edges == expected);

    CHECK(node_by_id(l, "r2,0t3,2").marked == false);
    CHECK(node_by_id(l, "r2,0").marked == true);
}

TEST_CASE("three-dimensional lattice") {
    const auto l = lattice::enumerate_lattice(structure({{"0", 2}, {"0", 1}}));
    CHECK(l.nodes.size() == 6);
    CHECK(l.covers.size() == 7);
    CHECK(count_hyper(l) == 4);
    check_grading(l);
    const auto edges = edge_ids(l);
    CHECK(edges.count({"r1,0", "r1,1"}) == 1);
    CHECK(edges.count({"r0,1", "r2,0"}) == 0);
}

TEST_CASE("equal blocks merge symmetric labels") {
    const auto l = lattice::enumerate_lattice(structure({{"0", 2}, {"0", 2}}));
    CHECK(l.nodes.size() == 6);
    CHECK(l.covers.size() == 6);
    CHECK(count_hyper(l) == 3);
    check_grading(l);

    const auto& line = node_by_id(l, "r0,1");
    REQUIRE(line.group_labels.size() == 1);
    CHECK(line.dim == 1);

    std::vector<std::size_t> dims;
    for (const auto& node : l.nodes) dims.push_back(node.dim);
    std::sort(dims.begin(), dims.end());
    CHECK(dims == std::vector<std::size_t>{0, 1, 2, 2, 3, 4});
}

TEST_CASE("five-dimensional two-block lattice is graded 1-2-3-3-2-1") {
    const auto l = lattice::enumerate_lattice(structure({{"0", 3}, {"0", 2}}));
    REQUIRE(l.nodes.size() == 12);
    CHECK(count_hyper(l) == 6);
    check_grading(l);
    std::map<std::size_t, std::size_t> by_dim;
    for (const auto& node : l.nodes) by_dim[node.dim] += 1;
    CHECK(by_dim == std::map<std::size_t, std::size_t>{
                        {0, 1}, {1, 2}, {2, 3}, {3, 3}, {4, 2}, {5, 1}});
}

TEST_CASE("node signatures agree with independently sampled members") {
    const auto s = structure({{"0", 3}, {"0", 1}});
    const auto l = lattice::enumerate_lattice(s);

    std::map<std::string, Subspace> samples;
    samples["r0,0"] = Subspace::zero(4);
    samples["r1,0"] = Subspace::span(col({"1", "0", "0", "0"}));
    samples["r0,1"] = Subspace::span(col({"0", "0", "0", "1"}));
    samples["r2,0"] = Subspace::span(mat({{"1", "0"}, {"0", "1"}, {"0", "0"},
                                          {"0", "0"}}));
    samples["r1,1"] = Subspace::span(mat({{"1", "0"}, {"0", "0"}, {"0", "0"},
                                          {"0", "1"}}));
    samples["r2,0t3,2"] = Subspace::span(mat({{"0", "1"}, {"1", "0"}, {"0", "0"},
                                              {"7", "0"}}));
    samples["r3,0"] = Subspace::span(mat({{"1", "0", "0"}, {"0", "1", "0"},
                                          {"0", "0", "1"}, {"0", "0", "0"}}));
    samples["r2,1"] = Subspace::span(mat({{"1", "0", "0"}, {"0", "1", "0"},
                                          {"0", "0", "0"}, {"0", "0", "1"}}));
    samples["r3,1"] = Subspace::full(4);

    for (const auto& [id, sub] : samples) {
        const auto& node = node_by_id(l, id);
        CHECK(to_string(subspace::signature(s, sub)) == to_string(node.sig));
        CHECK(subspace::is_marked(s, sub) == node.marked);
        CHECK(sub.dim() == node.dim);
    }
}

TEST_CASE("expanded constructions factor the kernel through the column transform") {
    const auto s = structure({{"2", 3}, {"2", 1}, {"3", 1}});
    const subspace::ChainSpec spec = {chain_of(s, "2", {"1", "1", "0", "2", "0"}),
                                      chain_of(s, "3", {"0", "0", "0", "0", "1"})};
    const Subspace sub = subspace::span_of_chains(spec, 5);
    const auto c = halmos::construct(s, spec);
    CHECK(Subspace::span(c.p * (c.t * exact::kernel_basis(c.z))) == sub);
    CHECK_FALSE(Subspace::span(c.p * exact::kernel_basis(c.z)) == sub);

    const auto s2 = structure({{"0", 3}, {"0", 2}, {"0", 1}});
    const subspace::ChainSpec spec2 = {chain_of(s2, "0", {"2", "1", "0", "0", "0", "1"})};
    const auto c2 = halmos::construct(s2, spec2);
    CHECK(Subspace::span(c2.p * (c2.t * exact::kernel_basis(c2.z))) ==
          subspace::span_of_chains(spec2, 6));
}

TEST_CASE("hyperinvariant nodes are closed under sum and intersection") {
    for (const auto& s : {structure({{"0", 2}, {"0", 1}}), structure({{"0", 3}, {"0", 1}}),
                          structure({{"0", 2}, {"0", 2}}), structure({{"0", 3}, {"0", 2}})}) {
        const auto l = lattice::enumerate_lattice(s);
        std::vector<Subspace> hyper;
        for (const auto& node : l.nodes)
            if (node.hyperinvariant)
                hyper.push_back(Subspace::span(exact::kernel_basis(node.z)));
        const auto member = [&](const Subspace& sub) {
            return std::any_of(hyper.begin(), hyper.end(),
                               [&](const Subspace& h) { return h == sub; });
        };
        for (const auto& a : hyper)
            for (const auto& b : hyper) {
                CHECK(member(subspace::sum(a, b)));
                CHECK(member(subspace::intersect(a, b)));
            }
    }
}

TEST_CASE("hyperinvariance conditions on labels") {
    const std::vector<std::size_t> sizes = {3, 1};
    lattice::NodeLabel label;
    label.expansion = sizes;
    label.powers = {2, 0};
    CHECK(lattice::is_hyperinvariant_node(sizes, label));
    label.powers = {3, 0};
    CHECK_FALSE(lattice::is_hyperinvariant_node(sizes, label));
    label.powers = {0, 1};
    CHECK_FALSE(lattice::is_hyperinvariant_node(sizes, label));
    label.powers = {1, 1};
    CHECK(lattice::is_hyperinvariant_node(sizes, label));
    label.expansion = {3, 2};
    CHECK_FALSE(lattice::is_hyperinvariant_node(sizes, label));
}

TEST_CASE("single block lattice is a chain") {
    const auto l = lattice::enumerate_lattice(structure({{"0", 2}}));
    REQUIRE(l.nodes.size() == 3);
    CHECK(l.covers.size() == 2);
    CHECK(count_hyper(l) == 3);
    const auto& middle = node_by_id(l, "r1");
    CHECK(middle.dim == 1);
    CHECK(middle.z == mat({{"0", "1"}, {"0", "0"}}));
}

TEST_CASE("multi-eigenvalue lattices are products of the group lattices") {
    const auto s = structure({{"2", 3}, {"2", 1}, {"3", 1}});
    const auto l = lattice::enumerate_lattice(s);
    CHECK(l.nodes.size() == 18);
    CHECK(l.covers.size() == 33);
    CHECK(count_hyper(l) == 12);
    check_grading(l);

    bool found = false;
    for (const auto& node : l.nodes) found = found || node.id == "r0,0|r0";
    CHECK(found);

    const auto single = lattice::enumerate_lattice(structure({{"2", 2}}));
    const auto product = lattice::product_lattice({single});
    CHECK(product.nodes.size() == single.nodes.size());
}

TEST_CASE("enumeration is deterministic and seed independent in content") {
    const auto s = structure({{"0", 3}, {"0", 2}});
    const auto a = lattice::enumerate_lattice(s, 1729);
    const auto b = lattice::enumerate_lattice(s, 1729);
    const auto c = lattice::enumerate_lattice(s, 987654321);
    const auto ids = [](const lattice::Lattice& l) {
        std::vector<std::string> out;
        for (const auto& node : l.nodes) out.push_back(node.id);
        return out;
    };
    CHECK(ids(a) == ids(b));
    CHECK(ids(a) == ids(c));
    CHECK(a.covers == b.covers);
    CHECK(a.covers == c.covers);
    CHECK(lattice::export_json(a) == lattice::export_json(b));
}

TEST_CASE("enumeration rejects non-canonical structures") {
    CHECK_THROWS_AS(lattice::enumerate_lattice(structure({{"0", 1}, {"0", 2}})),
                    math_error);
}

TEST_CASE("DOT export shape") {
    const auto l = lattice::enumerate_lattice(structure({{"0", 3}, {"0", 1}}));
    const std::string dot = lattice::export_dot(l);
    CHECK(dot.rfind("digraph lattice {", 0) == 0);
    CHECK(dot.back() == '\n');
    CHECK(count_occurrences(dot, "peripheries=2") == 6);
    CHECK(count_occurrences(dot, "->") == 12);
    CHECK(count_occurrences(dot, "black:black") == 6);
    CHECK(count_occurrences(dot, "rankdir=BT") == 1);
}

TEST_CASE("JSON export round-trips") {
    for (const auto& s : {structure({{"0", 3}, {"0", 1}}),
                          structure({{"2", 3}, {"2", 1}, {"3", 1}})}) {
        const auto l = lattice::enumerate_lattice(s);
        const std::string text = lattice::export_json(l);
        CHECK(text.back() == '\n');
        const auto back = lattice::import_json(text);
        CHECK(lattice::export_json(back) == text);
        CHECK(back.nodes.size() == l.nodes.size());
        CHECK(back.covers == l.covers);
        for (std::size_t i = 0; i < l.nodes.size(); ++i) {
            CHECK(back.nodes[i].id == l.nodes[i].id);
            CHECK(back.nodes[i].z == l.nodes[i].z);
            CHECK(back.nodes[i].hyperinvariant == l.nodes[i].hyperinvariant);
        }
    }
    CHECK_THROWS_AS(lattice::import_json("not json"), parse_error);
    CHECK_THROWS_AS(lattice::import_json("{\"format\":1,\"kind\":\"other\"}"),
                    parse_error);
}
