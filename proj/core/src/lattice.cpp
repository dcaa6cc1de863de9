#include "invsub/lattice.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

namespace invsub {
namespace lattice {

using exact::Scalar;
using jordan::backward_shift_power;
using jordan::jordan_matrix;
using subspace::Subspace;
using subspace::TypeSignature;

namespace {

// One parameter pool: generic nonzero values keyed by (home block, other
// block, depth offset). Keying by the offset q - r makes a truncated chain
// reuse the exact values of its extensions, so genuine family containments
// hold literally on the sampled representatives.
struct PoolKey {
    std::size_t home = 0;
    std::size_t other = 0;
    std::ptrdiff_t rel = 0;

    friend bool operator<(const PoolKey& a, const PoolKey& b) {
        return std::tie(a.home, a.other, a.rel) < std::tie(b.home, b.other, b.rel);
    }
};

struct ParameterDraw {
    std::mt19937_64 rng;
    std::map<PoolKey, Scalar> pool;

    explicit ParameterDraw(std::uint64_t seed) : rng(seed) {}

    Scalar value(const PoolKey& key) {
        auto it = pool.find(key);
        if (it == pool.end()) {
            const auto raw = static_cast<long long>(2 + rng() % 999983ULL);
            it = pool.emplace(key, Scalar(raw)).first;
        }
        return it->second;
    }
};

std::string join_sizes(const std::vector<std::size_t>& v) {
    std::ostringstream out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out << ',';
        out << v[i];
    }
    return out.str();
}

std::string label_id(const NodeLabel& label, const std::vector<std::size_t>& sizes) {
    std::string id = "r" + join_sizes(label.powers);
    if (label.expansion != sizes) id += "t" + join_sizes(label.expansion);
    return id;
}

std::size_t label_dim(const NodeLabel& label) {
    std::size_t d = 0;
    for (std::size_t r : label.powers) d += r;
    return d;
}

bool label_key_less(const NodeLabel& a, const NodeLabel& b) {
    return std::tie(a.expansion, a.powers) < std::tie(b.expansion, b.powers);
}

// Generic member of the family described by `label` over the single-group
// structure `s`: one chain per block with r_b > 0, generated by the depth-r_b
// elementary vector plus pooled generic components in the other blocks at the
// largest depth the family constraints allow.
Subspace representative(const JordanStructure& s, const NodeLabel& label, ParameterDraw& draw) {
    const std::size_t n = s.dimension();
    const std::size_t m = s.blocks.size();
    if (m == 0) return Subspace::zero(0);
    const Scalar lambda = s.blocks.front().eigenvalue;
    const Matrix nil = jordan_matrix(s) - lambda * Matrix::identity(n);
    std::vector<Matrix> cols;
    for (std::size_t b = 0; b < m; ++b) {
        const std::size_t r = label.powers[b];
        if (r == 0) continue;
        Matrix gen = jordan::elementary_vector(s, {b, r - 1});
        for (std::size_t o = 0; o < m; ++o) {
            if (o == b) continue;
            const auto cap = static_cast<std::ptrdiff_t>(label.expansion[o]) -
                             static_cast<std::ptrdiff_t>(label.expansion[b]) +
                             static_cast<std::ptrdiff_t>(r);
            std::ptrdiff_t q = std::min<std::ptrdiff_t>(
                static_cast<std::ptrdiff_t>(r),
                std::min(static_cast<std::ptrdiff_t>(s.blocks[o].size), cap));
            if (q < 1) continue;
            if (static_cast<std::size_t>(q) <= label.powers[o]) continue; // absorbed below
            const Scalar kappa =
                draw.value({b, o, q - static_cast<std::ptrdiff_t>(r)});
            gen = gen + kappa * jordan::elementary_vector(s, {o, static_cast<std::size_t>(q) - 1});
        }
        Matrix v = gen;
        for (std::size_t t = 0; t < r; ++t) {
            cols.push_back(v);
            v = nil * v;
        }
    }
    const Subspace sub = Subspace::span(Matrix::from_columns(cols, n));
    if (sub.dim() != label_dim(label))
        throw math_error("internal: sampled lattice representative lost rank");
    return sub;
}

Matrix label_z(const NodeLabel& label) {
    std::size_t total = 0;
    for (std::size_t t : label.expansion) total += t;
    Matrix z(total, total);
    std::size_t off = 0;
    for (std::size_t b = 0; b < label.expansion.size(); ++b) {
        z.set_block(off, off, backward_shift_power(label.expansion[b], label.powers[b]));
        off += label.expansion[b];
    }
    return z;
}

Lattice single_group_lattice(const JordanStructure& s, std::uint64_t seed) {
    const auto groups = s.groups();
    const std::vector<std::size_t> sizes = groups.empty() ? std::vector<std::size_t>{}
                                                          : groups.front().sizes;
    const std::size_t m = sizes.size();
    const std::size_t nmax = m ? sizes.front() : 0;

    // All labels: host size from the block size up to one below the largest
    // block, kernel power from zero up to the block size.
    std::vector<NodeLabel> labels;
    NodeLabel current;
    current.expansion.resize(m);
    current.powers.resize(m);
    auto emit = [&](auto&& self, std::size_t b) -> void {
        if (b == m) {
            labels.push_back(current);
            return;
        }
        const std::size_t upper = std::max(sizes[b], nmax ? nmax - 1 : 0);
        for (std::size_t t = sizes[b]; t <= upper; ++t) {
            for (std::size_t r = 0; r <= sizes[b]; ++r) {
                current.expansion[b] = t;
                current.powers[b] = r;
                self(self, b + 1);
            }
        }
    };
    emit(emit, 0);
    std::sort(labels.begin(), labels.end(), [](const NodeLabel& a, const NodeLabel& b) {
        const std::size_t da = label_dim(a), db = label_dim(b);
        if (da != db) return da < db;
        return label_key_less(a, b);
    });

    ParameterDraw draws[3] = {ParameterDraw(seed), ParameterDraw(seed + 1),
                              ParameterDraw(seed + 2)};

    struct Pending {
        NodeLabel primary;
        std::vector<NodeLabel> all;
        std::vector<std::vector<Subspace>> reps; // reps[label][draw]
        TypeSignature sig;
    };
    std::vector<Pending> pending;
    std::map<std::string, std::size_t> by_sig;
    for (const auto& label : labels) {
        std::vector<Subspace> reps;
        reps.reserve(3);
        for (auto& draw : draws) reps.push_back(representative(s, label, draw));
        const TypeSignature sig = subspace::signature(s, reps.front());
        for (std::size_t d = 1; d < 3; ++d)
            if (!(subspace::signature(s, reps[d]) == sig))
                throw math_error(
                    "lattice sampling disagreed between random draws; retry with a "
                    "different --seed");
        const std::string key = subspace::to_string(sig);
        const auto it = by_sig.find(key);
        if (it == by_sig.end()) {
            by_sig.emplace(key, pending.size());
            pending.push_back({label, {label}, {std::move(reps)}, sig});
        } else {
            pending[it->second].all.push_back(label);
            pending[it->second].reps.push_back(std::move(reps));
        }
    }

    Lattice lat;
    lat.structure = s;
    for (const auto& p : pending) {
        LatticeNode node;
        node.id = label_id(p.primary, sizes);
        node.dim = label_dim(p.primary);
        node.group_labels = {p.primary};
        node.sig = p.sig;
        node.marked = p.sig.groups.empty() || p.sig.groups.front().expansion == sizes;
        node.hyperinvariant = std::any_of(
            p.all.begin(), p.all.end(),
            [&](const NodeLabel& l) { return is_hyperinvariant_node(sizes, l); });
        node.z = label_z(p.primary);
        lat.nodes.push_back(std::move(node));
    }

    for (std::size_t i = 0; i < pending.size(); ++i) {
        for (std::size_t j = 0; j < pending.size(); ++j) {
            if (lat.nodes[j].dim != lat.nodes[i].dim + 1) continue;
            bool verdict = false;
            for (std::size_t d = 0; d < 3; ++d) {
                bool contained = false;
                for (const auto& ri : pending[i].reps) {
                    for (const auto& rj : pending[j].reps)
                        if (rj[d].contains(ri[d])) {
                            contained = true;
                            break;
                        }
                    if (contained) break;
                }
                if (d == 0)
                    verdict = contained;
                else if (contained != verdict)
                    throw math_error(
                        "lattice containment disagreed between random draws; retry "
                        "with a different --seed");
            }
            if (verdict) lat.covers.emplace_back(i, j);
        }
    }
    return lat;
}

Lattice pair_product(const Lattice& a, const Lattice& b) {
    std::set<std::string> seen;
    for (const auto& block : a.structure.blocks) seen.insert(exact::to_string(block.eigenvalue));
    for (const auto& block : b.structure.blocks)
        if (seen.count(exact::to_string(block.eigenvalue)))
            throw math_error("lattice product requires disjoint eigenvalue groups");

    Lattice out;
    out.structure.blocks = a.structure.blocks;
    out.structure.blocks.insert(out.structure.blocks.end(), b.structure.blocks.begin(),
                                b.structure.blocks.end());
    const std::size_t bcount = b.nodes.size();
    for (const auto& na : a.nodes) {
        for (const auto& nb : b.nodes) {
            LatticeNode node;
            node.id = na.id + "|" + nb.id;
            node.dim = na.dim + nb.dim;
            node.group_labels = na.group_labels;
            node.group_labels.insert(node.group_labels.end(), nb.group_labels.begin(),
                                     nb.group_labels.end());
            node.marked = na.marked && nb.marked;
            node.hyperinvariant = na.hyperinvariant && nb.hyperinvariant;
            node.sig.dim = node.dim;
            node.sig.groups = na.sig.groups;
            node.sig.groups.insert(node.sig.groups.end(), nb.sig.groups.begin(),
                                   nb.sig.groups.end());
            Matrix z(na.z.rows() + nb.z.rows(), na.z.cols() + nb.z.cols());
            z.set_block(0, 0, na.z);
            z.set_block(na.z.rows(), na.z.cols(), nb.z);
            node.z = std::move(z);
            out.nodes.push_back(std::move(node));
        }
    }
    for (const auto& cover : a.covers)
        for (std::size_t ib = 0; ib < bcount; ++ib)
            out.covers.emplace_back(cover.first * bcount + ib, cover.second * bcount + ib);
    for (std::size_t ia = 0; ia < a.nodes.size(); ++ia)
        for (const auto& cover : b.covers)
            out.covers.emplace_back(ia * bcount + cover.first, ia * bcount + cover.second);

    // Deterministic final order: dimension, then the concatenated expansion
    // tuple, then the concatenated power tuple.
    auto key = [](const LatticeNode& node) {
        std::vector<std::size_t> exp, pow;
        for (const auto& label : node.group_labels) {
            exp.insert(exp.end(), label.expansion.begin(), label.expansion.end());
            pow.insert(pow.end(), label.powers.begin(), label.powers.end());
        }
        return std::make_tuple(node.dim, std::move(exp), std::move(pow));
    };
    std::vector<std::size_t> order(out.nodes.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return key(out.nodes[x]) < key(out.nodes[y]); });
    std::vector<std::size_t> position(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
    std::vector<LatticeNode> sorted;
    sorted.reserve(out.nodes.size());
    for (std::size_t i = 0; i < order.size(); ++i) sorted.push_back(std::move(out.nodes[order[i]]));
    out.nodes = std::move(sorted);
    for (auto& cover : out.covers)
        cover = {position[cover.first], position[cover.second]};
    std::sort(out.covers.begin(), out.covers.end());
    return out;
}

std::string dot_label(const Lattice& l, const LatticeNode& node) {
    std::ostringstream out;
    out << "dim " << node.dim << "\\nr=";
    for (std::size_t g = 0; g < node.group_labels.size(); ++g) {
        if (g) out << '|';
        out << '(' << join_sizes(node.group_labels[g].powers) << ')';
    }
    const auto groups = l.structure.groups();
    bool expanded = false;
    for (std::size_t g = 0; g < node.group_labels.size() && g < groups.size(); ++g)
        if (node.group_labels[g].expansion != groups[g].sizes) expanded = true;
    if (expanded) {
        out << "\\nt=";
        for (std::size_t g = 0; g < node.group_labels.size(); ++g) {
            if (g) out << '|';
            out << '(' << join_sizes(node.group_labels[g].expansion) << ')';
        }
    }
    return out.str();
}

} // namespace

bool is_hyperinvariant_node(const std::vector<std::size_t>& sizes, const NodeLabel& label) {
    if (label.expansion != sizes) return false;
    for (std::size_t b = 0; b + 1 < sizes.size(); ++b) {
        if (label.powers[b] < label.powers[b + 1]) return false;
        if (sizes[b] - label.powers[b] < sizes[b + 1] - label.powers[b + 1]) return false;
    }
    return true;
}

Lattice enumerate_lattice(const JordanStructure& s, std::uint64_t seed) {
    if (!s.is_canonical())
        throw math_error("lattice enumeration requires a canonical structure");
    const auto groups = s.groups();
    if (groups.size() <= 1) return single_group_lattice(s, seed);
    std::vector<Lattice> per;
    per.reserve(groups.size());
    for (const auto& g : groups) {
        JordanStructure sub;
        sub.blocks.assign(s.blocks.begin() + static_cast<std::ptrdiff_t>(g.first_block),
                          s.blocks.begin() +
                              static_cast<std::ptrdiff_t>(g.first_block + g.block_count));
        per.push_back(single_group_lattice(sub, seed));
    }
    return product_lattice(per);
}

Lattice product_lattice(const std::vector<Lattice>& per_eigenvalue) {
    if (per_eigenvalue.empty()) return single_group_lattice(JordanStructure{}, 1729);
    Lattice acc = per_eigenvalue.front();
    for (std::size_t i = 1; i < per_eigenvalue.size(); ++i)
        acc = pair_product(acc, per_eigenvalue[i]);
    return acc;
}

std::string export_dot(const Lattice& l) {
    std::ostringstream out;
    out << "digraph lattice {\n";
    out << "  rankdir=BT;\n";
    out << "  node [shape=box];\n";
    for (const auto& node : l.nodes) {
        out << "  \"" << node.id << "\" [label=\"" << dot_label(l, node) << "\"";
        if (node.hyperinvariant) out << ", peripheries=2";
        out << "];\n";
    }
    for (const auto& cover : l.covers) {
        const auto& lo = l.nodes[cover.first];
        const auto& hi = l.nodes[cover.second];
        out << "  \"" << lo.id << "\" -> \"" << hi.id << "\"";
        if (lo.hyperinvariant && hi.hyperinvariant) out << " [color=\"black:black\"]";
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

std::string export_json(const Lattice& l) {
    nlohmann::json doc;
    doc["format"] = 1;
    doc["kind"] = "lattice";
    doc["structure"] = nlohmann::json::array();
    for (const auto& block : l.structure.blocks)
        doc["structure"].push_back({exact::to_string(block.eigenvalue), block.size});
    doc["nodes"] = nlohmann::json::array();
    for (const auto& node : l.nodes) {
        nlohmann::json jnode;
        jnode["id"] = node.id;
        jnode["dim"] = node.dim;
        jnode["marked"] = node.marked;
        jnode["hyperinvariant"] = node.hyperinvariant;
        jnode["labels"] = nlohmann::json::array();
        for (const auto& label : node.group_labels)
            jnode["labels"].push_back({{"t", label.expansion}, {"r", label.powers}});
        jnode["z"] = nlohmann::json::parse(exact::to_text(node.z));
        doc["nodes"].push_back(std::move(jnode));
    }
    doc["covers"] = nlohmann::json::array();
    for (const auto& cover : l.covers) doc["covers"].push_back({cover.first, cover.second});
    return doc.dump(2) + "\n";
}

Lattice import_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("lattice JSON: ") + e.what());
    }
    try {
        if (doc.at("format") != 1 || doc.at("kind") != "lattice")
            throw parse_error("lattice JSON: unknown format or kind");
        Lattice l;
        for (const auto& pair : doc.at("structure")) {
            jordan::JordanBlock block;
            block.eigenvalue = exact::parse_scalar(pair.at(0).get<std::string>());
            block.size = pair.at(1).get<std::size_t>();
            l.structure.blocks.push_back(block);
        }
        for (const auto& jnode : doc.at("nodes")) {
            LatticeNode node;
            node.id = jnode.at("id").get<std::string>();
            node.dim = jnode.at("dim").get<std::size_t>();
            node.marked = jnode.at("marked").get<bool>();
            node.hyperinvariant = jnode.at("hyperinvariant").get<bool>();
            for (const auto& jlabel : jnode.at("labels")) {
                NodeLabel label;
                label.expansion = jlabel.at("t").get<std::vector<std::size_t>>();
                label.powers = jlabel.at("r").get<std::vector<std::size_t>>();
                node.group_labels.push_back(std::move(label));
            }
            node.z = exact::matrix_from_text(jnode.at("z").dump());
            l.nodes.push_back(std::move(node));
        }
        for (const auto& jcover : doc.at("covers")) {
            const auto lo = jcover.at(0).get<std::size_t>();
            const auto hi = jcover.at(1).get<std::size_t>();
            if (lo >= l.nodes.size() || hi >= l.nodes.size())
                throw parse_error("lattice JSON: cover index out of range");
            l.covers.emplace_back(lo, hi);
        }
        return l;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("lattice JSON: ") + e.what());
    }
}

} // namespace lattice
} // namespace invsub
