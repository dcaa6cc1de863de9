#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "invsub/exact.hpp"
#include "invsub/jordan.hpp"
#include "invsub/subspace.hpp"

namespace invsub {
namespace rowreduce {

using exact::Matrix;
using exact::Scalar;
using jordan::JordanStructure;
using subspace::ChainSpec;

// One homogeneous condition on the first-row variables: sum of coeff * rho_col
// over the terms equals zero. Terms are kept in ascending column order.
struct Equation {
    std::vector<std::pair<std::size_t, Scalar>> terms;
};

struct EquationSystem {
    Matrix x;        // chain vectors as rows, eigenvector first inside each chain
    Matrix x_rref;
    std::vector<Equation> equations;
};

// Chain vectors as rows of a k x n matrix, each chain contributing its
// vectors eigenvector-first, chains in input order. Row space = span(spec).
Matrix form_x(const JordanStructure& s, const ChainSpec& spec);

EquationSystem build_equation_system(const JordanStructure& s, const ChainSpec& spec);

struct RowReduceResult {
    Matrix m;
    EquationSystem system;
    bool fell_back = false;
    std::string notice;
};

// Row-reduction route to a commutant member with kernel span(spec), for a
// single eigenvalue group: solve the annihilation equations for the first
// row, propagate rows through the nilpotent part, then complete the rank with
// elementary rows at pattern-legal annihilating positions. Falls back to the
// transform construction (with a notice) if the greedy completion stalls.
RowReduceResult construct_via_row_reduction(const JordanStructure& s, const ChainSpec& spec);

} // namespace rowreduce
} // namespace invsub
