#include "invsub/cli.hpp"

#include <cstddef>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "invsub/exact.hpp"
#include "invsub/halmos.hpp"
#include "invsub/jordan.hpp"
#include "invsub/lattice.hpp"
#include "invsub/rowreduce.hpp"
#include "invsub/subspace.hpp"

#include "demo_fixtures.hpp"

namespace invsub {
namespace cli {

namespace {

using exact::Matrix;
using exact::Scalar;
using jordan::JordanStructure;
using subspace::Chain;
using subspace::ChainSpec;
using subspace::Subspace;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void deliver(const JobConfig& config, const std::string& text, std::ostream& out) {
    if (config.output_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(config.output_path, std::ios::binary);
    if (!file) throw parse_error("cannot open output file: " + config.output_path);
    file << text;
    if (!file) throw parse_error("write failed: " + config.output_path);
}

Matrix load_matrix(const std::string& path) {
    try {
        return exact::matrix_from_text(read_file(path));
    } catch (const parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
}

std::vector<Scalar> parse_hints(const std::vector<std::string>& eigenvalues) {
    std::vector<Scalar> hints;
    hints.reserve(eigenvalues.size());
    for (const auto& text : eigenvalues) hints.push_back(exact::parse_scalar(text));
    return hints;
}

Matrix column_from_json(const nlohmann::json& entries, const std::string& origin) {
    if (!entries.is_array() || entries.empty())
        throw parse_error(origin + ": generator must be a non-empty array of scalar strings");
    std::vector<Scalar> values;
    values.reserve(entries.size());
    for (const auto& item : entries) {
        if (!item.is_string())
            throw parse_error(origin + ": generator entries must be scalar strings");
        values.push_back(exact::parse_scalar(item.get<std::string>()));
    }
    return Matrix::column(values);
}

// Chain descriptions: [{"eigenvalue": "2", "generator": ["1", "0", ...]}, ...]
// Full chains are grown by repeated application of (a - lambda I).
ChainSpec chains_against_matrix(const Matrix& a, const nlohmann::json& doc,
                                const std::string& origin) {
    if (!doc.is_array()) throw parse_error(origin + ": expected an array of chains");
    ChainSpec spec;
    for (const auto& entry : doc) {
        if (!entry.is_object() || !entry.contains("eigenvalue") || !entry.contains("generator"))
            throw parse_error(origin + ": each chain needs \"eigenvalue\" and \"generator\"");
        Chain chain;
        chain.eigenvalue = exact::parse_scalar(entry.at("eigenvalue").get<std::string>());
        Matrix v = column_from_json(entry.at("generator"), origin);
        if (v.rows() != a.rows())
            throw parse_error(origin + ": generator length does not match the matrix size");
        const Matrix shifted = a - chain.eigenvalue * Matrix::identity(a.rows());
        while (!v.is_zero()) {
            chain.vectors.push_back(v);
            if (chain.vectors.size() > a.rows())
                throw math_error(origin + ": chain for eigenvalue " +
                                 exact::to_string(chain.eigenvalue) +
                                 " does not terminate; the generator is outside its "
                                 "generalized eigenspace");
            v = shifted * v;
        }
        if (chain.vectors.empty())
            throw math_error(origin + ": chain generator is the zero vector");
        spec.push_back(std::move(chain));
    }
    return spec;
}

JordanStructure structure_from_json(const nlohmann::json& doc, const std::string& origin) {
    if (!doc.is_array()) throw parse_error(origin + ": structure must be an array of pairs");
    JordanStructure s;
    for (const auto& pair : doc) {
        if (!pair.is_array() || pair.size() != 2)
            throw parse_error(origin + ": structure entries are [eigenvalue, size] pairs");
        jordan::JordanBlock block;
        block.eigenvalue = exact::parse_scalar(pair.at(0).get<std::string>());
        block.size = pair.at(1).get<std::size_t>();
        if (block.size == 0) throw parse_error(origin + ": zero-sized block");
        s.blocks.push_back(block);
    }
    return s;
}

ChainSpec chains_against_structure(const JordanStructure& s, const nlohmann::json& doc,
                                   const std::string& origin) {
    if (!doc.is_array()) throw parse_error(origin + ": expected an array of chains");
    ChainSpec spec;
    for (const auto& entry : doc) {
        if (!entry.is_object() || !entry.contains("eigenvalue") || !entry.contains("generator"))
            throw parse_error(origin + ": each chain needs \"eigenvalue\" and \"generator\"");
        const Scalar lambda = exact::parse_scalar(entry.at("eigenvalue").get<std::string>());
        const Matrix v = column_from_json(entry.at("generator"), origin);
        spec.push_back(subspace::chain_from_generator(s, lambda, v));
    }
    return spec;
}

nlohmann::json matrix_to_json(const Matrix& m) {
    return nlohmann::json::parse(exact::to_text(m));
}

nlohmann::json structure_to_json(const JordanStructure& s) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& block : s.blocks)
        arr.push_back({exact::to_string(block.eigenvalue), block.size});
    return arr;
}

// Per-eigenvalue routing of the row-reduction construction: each group is
// handled on its own coordinates, groups without chains get identity blocks.
Matrix rowreduce_over_structure(const JordanStructure& s, const ChainSpec& spec,
                                std::ostream& err) {
    subspace::validate_chain_spec(s, spec);
    const std::size_t n = s.dimension();
    Matrix m(n, n);
    for (const auto& g : s.groups()) {
        JordanStructure local;
        local.blocks.assign(
            s.blocks.begin() + static_cast<std::ptrdiff_t>(g.first_block),
            s.blocks.begin() + static_cast<std::ptrdiff_t>(g.first_block + g.block_count));
        ChainSpec local_spec;
        for (const auto& chain : spec) {
            if (!(chain.eigenvalue == g.eigenvalue)) continue;
            Chain sliced;
            sliced.eigenvalue = chain.eigenvalue;
            for (const auto& v : chain.vectors)
                sliced.vectors.push_back(v.block(g.offset, 0, g.dim, 1));
            local_spec.push_back(std::move(sliced));
        }
        const auto result = rowreduce::construct_via_row_reduction(local, local_spec);
        if (result.fell_back)
            err << "notice: eigenvalue " << exact::to_string(g.eigenvalue) << ": "
                << result.notice << "\n";
        m.set_block(g.offset, g.offset, result.m);
    }
    return m;
}

struct SubspaceInput {
    ChainSpec spec;      // chains in original coordinates (construct path)
    Subspace sub;        // equivalent span
    bool from_chains = false;
};

SubspaceInput load_subspace_input(const JobConfig& config, const Matrix& a) {
    const bool has_sub = !config.subspace_path.empty();
    const bool has_chains = !config.chains_path.empty();
    if (has_sub == has_chains)
        throw parse_error("provide exactly one of --subspace or --chains");
    SubspaceInput input{ {}, Subspace::zero(a.rows()), false };
    if (has_sub) {
        const Matrix columns = load_matrix(config.subspace_path);
        if (columns.rows() != a.rows())
            throw parse_error(config.subspace_path +
                              ": column length does not match the input matrix");
        input.sub = Subspace::span(columns);
    } else {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(read_file(config.chains_path));
        } catch (const nlohmann::json::exception& e) {
            throw parse_error(config.chains_path + ": " + e.what());
        }
        input.spec = chains_against_matrix(a, doc, config.chains_path);
        input.sub = subspace::span_of_chains(input.spec, a.rows());
        input.from_chains = true;
    }
    return input;
}

std::string section(const std::string& name) { return "# " + name + "\n"; }

// ------------------------------------------------------------------ construct

std::string construction_json(const Matrix& a, const halmos::FullConstruction& full) {
    nlohmann::json doc;
    doc["format"] = 1;
    doc["kind"] = "construction";
    doc["input"] = matrix_to_json(a);
    doc["structure"] = structure_to_json(full.structure);
    doc["expanded"] = structure_to_json(full.construction.expanded);
    doc["marked"] = full.construction.marked;
    doc["used_canonical_chains"] = full.construction.used_canonical_chains;
    doc["q"] = matrix_to_json(full.q);
    doc["t"] = matrix_to_json(full.construction.t);
    doc["z"] = matrix_to_json(full.construction.z);
    doc["p"] = matrix_to_json(full.construction.p);
    doc["m"] = matrix_to_json(full.construction.m);
    doc["n"] = matrix_to_json(full.n);
    doc["kernel"] = matrix_to_json(exact::kernel_basis(full.n));
    return doc.dump(2) + "\n";
}

int run_construct(const JobConfig& config, std::ostream& out, std::ostream& err) {
    if (config.input_path.empty()) throw parse_error("construct requires --input");
    if (config.method != "construct" && config.method != "rowreduce")
        throw parse_error("unknown --method: " + config.method);
    const Matrix a = load_matrix(config.input_path);
    if (!a.is_square()) throw math_error(config.input_path + ": matrix must be square");
    const auto hints = parse_hints(config.eigenvalues);
    const SubspaceInput input = load_subspace_input(config, a);

    if (config.method == "rowreduce") {
        if (config.emit != "default" && config.emit != "matrix")
            throw parse_error("--method rowreduce supports --emit matrix only");
        const auto jr = hints.empty() ? jordan::jordanize(a) : jordan::jordanize(a, hints);
        const Matrix qinv = exact::inverse(jr.q);
        ChainSpec specj;
        if (input.from_chains) {
            specj = input.spec;
            for (auto& chain : specj)
                for (auto& v : chain.vectors) v = qinv * v;
        } else {
            specj = subspace::chain_decompose(jr.structure,
                                              Subspace::span(qinv * input.sub.basis()));
        }
        const Matrix m = rowreduce_over_structure(jr.structure, specj, err);
        const Matrix n = jr.q * m * qinv;
        if (n * a != a * n)
            throw math_error("internal: row-reduction result lost commutation");
        if (Subspace::span(exact::kernel_basis(n)) != input.sub)
            throw math_error("internal: row-reduction result has the wrong kernel");
        deliver(config, exact::to_text(n), out);
        return 0;
    }

    const halmos::FullConstruction full =
        input.from_chains ? halmos::construct_full(a, input.spec, hints)
                          : halmos::construct_full(a, input.sub, hints);
    if (config.emit == "default" || config.emit == "matrix") {
        deliver(config, exact::to_text(full.n), out);
    } else if (config.emit == "construction") {
        deliver(config, construction_json(a, full), out);
    } else {
        throw parse_error("construct supports --emit matrix or construction");
    }
    return 0;
}

// ---------------------------------------------------------------------- range

int run_range(const JobConfig& config, std::ostream& out, std::ostream&) {
    if (config.input_path.empty()) throw parse_error("range requires --input");
    const Matrix a = load_matrix(config.input_path);
    if (!a.is_square()) throw math_error(config.input_path + ": matrix must be square");
    const auto hints = parse_hints(config.eigenvalues);
    const SubspaceInput input = load_subspace_input(config, a);
    const halmos::RangeRepresentation rep =
        halmos::range_representation(a, input.sub, hints);
    if (config.emit == "default" || config.emit == "matrix") {
        deliver(config, exact::to_text(rep.r), out);
    } else if (config.emit == "construction") {
        nlohmann::json doc;
        doc["format"] = 1;
        doc["kind"] = "range";
        doc["input"] = matrix_to_json(a);
        doc["structure"] = structure_to_json(rep.structure);
        doc["expanded"] = structure_to_json(rep.expanded);
        doc["q"] = matrix_to_json(rep.q);
        doc["t"] = matrix_to_json(rep.t);
        doc["z"] = matrix_to_json(rep.z);
        doc["p"] = matrix_to_json(rep.p);
        doc["r"] = matrix_to_json(rep.r);
        deliver(config, doc.dump(2) + "\n", out);
    } else {
        throw parse_error("range supports --emit matrix or construction");
    }
    return 0;
}

// -------------------------------------------------------------------- lattice

std::string lattice_sections(const lattice::Lattice& lat) {
    std::ostringstream text;
    for (const auto& node : lat.nodes) {
        text << "# node " << node.id;
        if (node.hyperinvariant) text << " hyperinvariant";
        text << "\n" << exact::to_text(node.z);
    }
    text << section("covers");
    for (const auto& cover : lat.covers)
        text << lat.nodes[cover.first].id << " -> " << lat.nodes[cover.second].id << "\n";
    return text.str();
}

int run_lattice(const JobConfig& config, std::ostream& out, std::ostream&) {
    if (config.input_path.empty()) throw parse_error("lattice requires --input");
    const Matrix a = load_matrix(config.input_path);
    if (!a.is_square()) throw math_error(config.input_path + ": matrix must be square");
    const auto hints = parse_hints(config.eigenvalues);
    const auto jr = hints.empty() ? jordan::jordanize(a) : jordan::jordanize(a, hints);
    const lattice::Lattice lat = lattice::enumerate_lattice(jr.structure, config.seed);
    if (config.emit == "default" || config.emit == "dot") {
        deliver(config, lattice::export_dot(lat), out);
    } else if (config.emit == "json") {
        deliver(config, lattice::export_json(lat), out);
    } else if (config.emit == "matrix") {
        deliver(config, lattice_sections(lat), out);
    } else {
        throw parse_error("lattice supports --emit dot, json, or matrix");
    }
    return 0;
}

// ------------------------------------------------------------------ jordanize

int run_jordanize(const JobConfig& config, std::ostream& out, std::ostream&) {
    if (config.input_path.empty()) throw parse_error("jordanize requires --input");
    const Matrix a = load_matrix(config.input_path);
    if (!a.is_square()) throw math_error(config.input_path + ": matrix must be square");
    const auto hints = parse_hints(config.eigenvalues);
    const auto jr = hints.empty() ? jordan::jordanize(a) : jordan::jordanize(a, hints);
    if (config.emit == "default" || config.emit == "matrix") {
        std::ostringstream text;
        text << section("structure") << structure_to_json(jr.structure).dump() << "\n";
        text << section("jordan") << exact::to_text(jordan::jordan_matrix(jr.structure));
        text << section("transform") << exact::to_text(jr.q);
        deliver(config, text.str(), out);
    } else if (config.emit == "json") {
        nlohmann::json doc;
        doc["format"] = 1;
        doc["kind"] = "jordanize";
        doc["structure"] = structure_to_json(jr.structure);
        doc["jordan"] = matrix_to_json(jordan::jordan_matrix(jr.structure));
        doc["q"] = matrix_to_json(jr.q);
        deliver(config, doc.dump(2) + "\n", out);
    } else {
        throw parse_error("jordanize supports --emit matrix or json");
    }
    return 0;
}

// --------------------------------------------------------------------- verify

int verify_construction(const nlohmann::json& doc, std::ostream& out) {
    const auto matrix_field = [&](const char* name) {
        return exact::matrix_from_text(doc.at(name).dump());
    };
    const Matrix a = matrix_field("input");
    const JordanStructure structure = [&] {
        JordanStructure s;
        for (const auto& pair : doc.at("structure")) {
            jordan::JordanBlock block;
            block.eigenvalue = exact::parse_scalar(pair.at(0).get<std::string>());
            block.size = pair.at(1).get<std::size_t>();
            s.blocks.push_back(block);
        }
        return s;
    }();
    const Matrix q = matrix_field("q");
    const Matrix t = matrix_field("t");
    const Matrix z = matrix_field("z");
    const Matrix p = matrix_field("p");
    const Matrix m = matrix_field("m");
    const Matrix n = matrix_field("n");
    const Matrix kernel = matrix_field("kernel");

    const auto check = [&](const char* what, bool good) {
        out << (good ? "ok: " : "failed: ") << what << "\n";
        return good;
    };
    bool all = true;
    Matrix qinv(0, 0), tinv(0, 0);
    bool invertible = true;
    try {
        qinv = exact::inverse(q);
        tinv = exact::inverse(t);
    } catch (const math_error&) {
        invertible = false;
    }
    all = check("transforms are invertible", invertible) && all;
    if (!invertible) return 1;
    all = check("jordan form reproduces the input matrix",
                q * jordan::jordan_matrix(structure) * qinv == a) &&
          all;
    all = check("assembly m = p z t^-1 p^t",
                m == p * z * tinv * exact::transpose(p)) &&
          all;
    all = check("assembly n = q m q^-1", n == q * m * qinv) && all;
    all = check("n commutes with the input matrix", n * a == a * n) && all;
    all = check("kernel of n matches the declared kernel",
                Subspace::span(exact::kernel_basis(n)) == Subspace::span(kernel)) &&
          all;
    all = check("rank of n equals dimension minus kernel dimension",
                exact::rank(n) == n.rows() - Subspace::span(kernel).dim()) &&
          all;
    return all ? 0 : 1;
}

int verify_plain_matrix(const JobConfig& config, const Matrix& target, std::ostream& out) {
    if (config.input_path.empty())
        throw parse_error("verify of a plain matrix requires --input for the reference");
    const Matrix a = load_matrix(config.input_path);
    if (!a.is_square() || !target.is_square() || a.rows() != target.rows())
        throw math_error("verify needs square matrices of matching size");
    const Matrix commutator = target * a - a * target;
    if (!commutator.is_zero()) {
        for (std::size_t i = 0; i < commutator.rows(); ++i)
            for (std::size_t j = 0; j < commutator.cols(); ++j)
                if (!commutator.at(i, j).is_zero()) {
                    out << "failed: commutation: (target*reference - reference*target) at row "
                        << (i + 1) << ", column " << (j + 1) << " = "
                        << exact::to_string(commutator.at(i, j)) << "\n";
                    return 1;
                }
    }
    out << "ok: the matrix commutes with the reference matrix\n";
    const Subspace kernel = Subspace::span(exact::kernel_basis(target));
    out << (subspace::is_invariant_under(a, kernel)
                ? "ok: kernel of the matrix is invariant under the reference matrix\n"
                : "failed: kernel of the matrix is not invariant under the reference matrix\n");
    return 0;
}

int run_verify(const JobConfig& config, std::ostream& out, std::ostream&) {
    if (config.target.empty()) throw parse_error("verify requires a target file");
    const std::string text = read_file(config.target);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(config.target + ": " + e.what());
    }
    if (doc.is_array()) {
        Matrix target(0, 0);
        try {
            target = exact::matrix_from_text(text);
        } catch (const parse_error& e) {
            throw parse_error(config.target + ": " + e.what());
        }
        return verify_plain_matrix(config, target, out);
    }
    if (!doc.is_object() || doc.value("kind", "") != "construction")
        throw parse_error(config.target +
                          ": expected a matrix file or a construction JSON document");
    try {
        return verify_construction(doc, out);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(config.target + ": " + e.what());
    }
}

// ----------------------------------------------------------------------- demo

nlohmann::json parse_fixture(const char* text) {
    return nlohmann::json::parse(text);
}

std::string demo_example_a() {
    const auto doc = parse_fixture(fixtures::example_a);
    const JordanStructure s = structure_from_json(doc.at("structure"), "exampleA");
    const Matrix j = jordan::jordan_matrix(s);
    const Matrix member = exact::matrix_from_text(doc.at("member").dump());
    std::ostringstream text;
    text << section("jordan") << exact::to_text(j);
    text << section("commutant member") << exact::to_text(member);
    text << section("commutator") << exact::to_text(member * j - j * member);
    return text.str();
}

std::string demo_example_b() {
    const auto doc = parse_fixture(fixtures::example_b);
    const JordanStructure s = structure_from_json(doc.at("structure"), "exampleB");
    const std::size_t n = s.dimension();
    const auto max_power = doc.at("max_power").get<std::size_t>();
    std::ostringstream text;
    for (std::size_t k = 0; k <= max_power; ++k) {
        const Matrix zk = halmos::construct_single_block(n, k);
        text << "# power " << k << "\n" << exact::to_text(zk);
        text << "# kernel " << k << "\n" << exact::to_text(exact::kernel_basis(zk));
    }
    return text.str();
}

std::string demo_example_c() {
    const auto doc = parse_fixture(fixtures::example_c);
    const JordanStructure s = structure_from_json(doc.at("structure"), "exampleC");
    std::ostringstream text;
    for (const auto& entry : doc.at("subspaces")) {
        const std::string name = entry.at("name").get<std::string>();
        const ChainSpec spec = chains_against_structure(s, entry.at("chains"), "exampleC");
        const halmos::Construction c = halmos::construct(s, spec);
        text << "# " << name << " T\n" << exact::to_text(c.t);
        text << "# " << name << " Z\n" << exact::to_text(c.z);
        text << "# " << name << " P\n" << exact::to_text(c.p);
        text << "# " << name << " M\n" << exact::to_text(c.m);
    }
    return text.str();
}

std::string demo_example_d(const JobConfig& config) {
    const auto doc = parse_fixture(fixtures::example_d);
    const JordanStructure s = structure_from_json(doc.at("structure"), "exampleD");
    const lattice::Lattice lat = lattice::enumerate_lattice(s, config.seed);
    if (config.emit == "dot") return lattice::export_dot(lat);
    if (config.emit == "json") return lattice::export_json(lat);
    return lattice_sections(lat);
}

std::string demo_example_e() {
    const auto doc = parse_fixture(fixtures::example_e);
    const JordanStructure s = structure_from_json(doc.at("structure"), "exampleE");
    const ChainSpec spec = chains_against_structure(s, doc.at("chains"), "exampleE");
    const halmos::Construction c = halmos::construct(s, spec);
    std::ostringstream text;
    text << section("T") << exact::to_text(c.t);
    text << section("Z") << exact::to_text(c.z);
    text << section("P") << exact::to_text(c.p);
    text << section("M") << exact::to_text(c.m);
    return text.str();
}

std::string demo_example_f() {
    const auto doc = parse_fixture(fixtures::example_f);
    const JordanStructure s = structure_from_json(doc.at("structure"), "exampleF");
    const ChainSpec spec = chains_against_structure(s, doc.at("chains"), "exampleF");
    const auto system = rowreduce::build_equation_system(s, spec);
    const auto result = rowreduce::construct_via_row_reduction(s, spec);
    std::ostringstream text;
    text << section("X") << exact::to_text(system.x);
    text << section("row reduced") << exact::to_text(system.x_rref);
    text << section("M") << exact::to_text(result.m);
    return text.str();
}

std::string demo_example_g() {
    const auto doc = parse_fixture(fixtures::example_g);
    const Matrix n = exact::matrix_from_text(doc.at("n").dump());
    const Matrix a = exact::matrix_from_text(doc.at("a").dump());
    const Matrix probe = column_from_json(doc.at("probe"), "exampleG");
    const auto max_power = doc.at("max_power").get<std::size_t>();
    std::ostringstream text;
    text << section("n") << exact::to_text(n);
    text << section("a") << exact::to_text(a);
    Matrix power = Matrix::identity(n.rows());
    for (std::size_t k = 1; k <= max_power; ++k) {
        power = power * n;
        text << "# kernel power " << k << "\n" << exact::to_text(exact::kernel_basis(power));
        text << "invariant: "
             << (halmos::translate_kernel_invariance(n, a, Scalar(0), k) ? "yes" : "no")
             << "\n";
    }
    text << section("commutator times probe")
         << exact::to_text((n * a - a * n) * probe);
    return text.str();
}

int run_demo(const JobConfig& config, std::ostream& out, std::ostream&) {
    const std::string& name = config.target;
    std::string text;
    if (name == "exampleA")
        text = demo_example_a();
    else if (name == "exampleB")
        text = demo_example_b();
    else if (name == "exampleC")
        text = demo_example_c();
    else if (name == "exampleD")
        text = demo_example_d(config);
    else if (name == "exampleE")
        text = demo_example_e();
    else if (name == "exampleF")
        text = demo_example_f();
    else if (name == "exampleG")
        text = demo_example_g();
    else
        throw parse_error("unknown demo: \"" + name + "\" (expected exampleA..exampleG)");
    deliver(config, text, out);
    return 0;
}

} // namespace

int run(const JobConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.command == "construct") return run_construct(config, out, err);
        if (config.command == "range") return run_range(config, out, err);
        if (config.command == "lattice") return run_lattice(config, out, err);
        if (config.command == "jordanize") return run_jordanize(config, out, err);
        if (config.command == "verify") return run_verify(config, out, err);
        if (config.command == "demo") return run_demo(config, out, err);
        throw parse_error("unknown command: " + config.command);
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const math_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int run(const JobConfig& config) { return run(config, std::cout, std::cerr); }

} // namespace cli
} // namespace invsub
