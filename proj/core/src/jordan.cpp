#include "invsub/jordan.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <utility>

namespace invsub {
namespace jordan {

// ---------------------------------------------------------------------------
// Structure bookkeeping
// ---------------------------------------------------------------------------

std::size_t JordanStructure::dimension() const {
    std::size_t n = 0;
    for (const JordanBlock& b : blocks) {
        n += b.size;
    }
    return n;
}

std::size_t JordanStructure::block_offset(std::size_t block) const {
    assert(block <= blocks.size());
    std::size_t off = 0;
    for (std::size_t i = 0; i < block; ++i) {
        off += blocks[i].size;
    }
    return off;
}

std::vector<JordanStructure::Group> JordanStructure::groups() const {
    std::vector<Group> out;
    std::size_t offset = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (out.empty() || !(out.back().eigenvalue == blocks[b].eigenvalue)) {
            Group g;
            g.eigenvalue = blocks[b].eigenvalue;
            g.first_block = b;
            g.offset = offset;
            out.push_back(g);
        }
        Group& g = out.back();
        g.block_count += 1;
        g.dim += blocks[b].size;
        g.sizes.push_back(blocks[b].size);
        offset += blocks[b].size;
    }
    return out;
}

bool JordanStructure::is_canonical() const {
    std::vector<Group> gs = groups();
    for (std::size_t i = 0; i < gs.size(); ++i) {
        for (std::size_t j = i + 1; j < gs.size(); ++j) {
            if (gs[i].eigenvalue == gs[j].eigenvalue) {
                return false;
            }
        }
        for (std::size_t k = 1; k < gs[i].sizes.size(); ++k) {
            if (gs[i].sizes[k - 1] < gs[i].sizes[k]) {
                return false;
            }
        }
        if (!gs[i].sizes.empty() && gs[i].sizes.back() == 0) {
            return false;
        }
    }
    return true;
}

Matrix jordan_matrix(const JordanStructure& s) {
    Matrix j(s.dimension(), s.dimension());
    std::size_t off = 0;
    for (const JordanBlock& b : s.blocks) {
        for (std::size_t i = 0; i < b.size; ++i) {
            j.at(off + i, off + i) = b.eigenvalue;
            if (i + 1 < b.size) {
                j.at(off + i, off + i + 1) = Scalar(1);
            }
        }
        off += b.size;
    }
    return j;
}

Matrix backward_shift_power(std::size_t n, std::size_t k) {
    if (k > n) {
        throw math_error("backward shift power exceeds the block size: " +
                         std::to_string(k) + " > " + std::to_string(n));
    }
    Matrix m(n, n);
    for (std::size_t i = 0; i + k < n; ++i) {
        m.at(i, i + k) = Scalar(1);
    }
    return m;
}

Matrix elementary_vector(const JordanStructure& s, BlockIndex where) {
    if (where.block >= s.blocks.size() || where.row >= s.blocks[where.block].size) {
        throw math_error("elementary vector index outside the block structure");
    }
    Matrix v(s.dimension(), 1);
    v.at(s.block_offset(where.block) + where.row, 0) = Scalar(1);
    return v;
}

// ---------------------------------------------------------------------------
// Commutant pattern
// ---------------------------------------------------------------------------

bool is_upper_triangular_toeplitz(const Matrix& m) {
    std::size_t r = m.rows();
    std::size_t c = m.cols();
    if (r == 0 || c == 0) {
        return true;
    }
    std::ptrdiff_t dmin = static_cast<std::ptrdiff_t>(c) -
                          static_cast<std::ptrdiff_t>(std::min(r, c));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            std::ptrdiff_t d = static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(i);
            if (d < dmin && !m.at(i, j).is_zero()) {
                return false;
            }
            if (i > 0 && j > 0 && m.at(i, j) != m.at(i - 1, j - 1)) {
                return false;
            }
        }
    }
    return true;
}

namespace {

std::string cell_name(std::size_t i, std::size_t j) {
    return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

} // namespace

std::optional<std::string> commutant_violation(const JordanStructure& s, const Matrix& m) {
    std::size_t n = s.dimension();
    if (m.rows() != n || m.cols() != n) {
        throw math_error("commutant test requires a " + std::to_string(n) + "x" +
                         std::to_string(n) + " matrix");
    }
    for (std::size_t bi = 0; bi < s.blocks.size(); ++bi) {
        for (std::size_t bj = 0; bj < s.blocks.size(); ++bj) {
            std::size_t ri = s.block_offset(bi);
            std::size_t cj = s.block_offset(bj);
            std::size_t nr = s.blocks[bi].size;
            std::size_t nc = s.blocks[bj].size;
            bool same = s.blocks[bi].eigenvalue == s.blocks[bj].eigenvalue;
            std::ptrdiff_t dmin = static_cast<std::ptrdiff_t>(nc) -
                                  static_cast<std::ptrdiff_t>(std::min(nr, nc));
            for (std::size_t i = 0; i < nr; ++i) {
                for (std::size_t j = 0; j < nc; ++j) {
                    const Scalar& v = m.at(ri + i, cj + j);
                    if (!same) {
                        if (!v.is_zero()) {
                            return "entry " + cell_name(ri + i, cj + j) +
                                   " must vanish: block pair (" + std::to_string(bi + 1) +
                                   "," + std::to_string(bj + 1) +
                                   ") couples distinct eigenvalues";
                        }
                        continue;
                    }
                    std::ptrdiff_t d = static_cast<std::ptrdiff_t>(j) -
                                       static_cast<std::ptrdiff_t>(i);
                    if (d < dmin && !v.is_zero()) {
                        return "entry " + cell_name(ri + i, cj + j) +
                               " must vanish: below the allowed diagonals of block pair (" +
                               std::to_string(bi + 1) + "," + std::to_string(bj + 1) + ")";
                    }
                    if (i > 0 && j > 0 && v != m.at(ri + i - 1, cj + j - 1)) {
                        return "entry " + cell_name(ri + i, cj + j) +
                               " breaks the constant diagonal of block pair (" +
                               std::to_string(bi + 1) + "," + std::to_string(bj + 1) +
                               "): differs from entry " + cell_name(ri + i - 1, cj + j - 1);
                    }
                }
            }
        }
    }
    return std::nullopt;
}

bool in_commutant_structural(const JordanStructure& s, const Matrix& m) {
    return !commutant_violation(s, m).has_value();
}

// ---------------------------------------------------------------------------
// Exact Jordan decomposition
// ---------------------------------------------------------------------------

namespace {

using exact::Int;
using exact::Rational;

Scalar trace(const Matrix& m) {
    Scalar t;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        t += m.at(i, i);
    }
    return t;
}

// Coefficient list indexed by degree.
struct Poly {
    std::vector<Scalar> c;

    std::size_t degree() const { return c.empty() ? 0 : c.size() - 1; }

    void normalize() {
        while (c.size() > 1 && c.back().is_zero()) {
            c.pop_back();
        }
    }

    Scalar eval(const Scalar& x) const {
        Scalar acc;
        for (std::size_t k = c.size(); k-- > 0;) {
            acc = acc * x + c[k];
        }
        return acc;
    }

    // Synthetic division by (x - root); the remainder must vanish.
    Poly deflate(const Scalar& root) const {
        assert(c.size() >= 2);
        Poly q;
        q.c.assign(c.size() - 1, Scalar());
        Scalar carry = c.back();
        for (std::size_t k = c.size() - 1; k-- > 0;) {
            q.c[k] = carry;
            carry = c[k] + root * carry;
        }
        assert(carry.is_zero());
        return q;
    }
};

Poly characteristic_polynomial(const Matrix& a) {
    std::size_t n = a.rows();
    Poly p;
    p.c.assign(n + 1, Scalar());
    p.c[n] = Scalar(1);
    Matrix mk = Matrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        Matrix am = a * mk;
        Scalar ck = -(trace(am) / Scalar(static_cast<long long>(k)));
        p.c[n - k] = ck;
        mk = am + ck * Matrix::identity(n);
    }
    return p;
}

std::optional<Rational> rational_sqrt(const Rational& x) {
    assert(x >= 0);
    Int num = numerator(x);
    Int den = denominator(x);
    Int sn = boost::multiprecision::sqrt(num);
    Int sd = boost::multiprecision::sqrt(den);
    if (sn * sn != num || sd * sd != den) {
        return std::nullopt;
    }
    return Rational(sn, sd);
}

std::optional<Scalar> gaussian_sqrt(const Scalar& s) {
    if (s.im == 0) {
        if (s.re >= 0) {
            auto r = rational_sqrt(s.re);
            if (!r) {
                return std::nullopt;
            }
            return Scalar(*r);
        }
        auto r = rational_sqrt(Rational(-s.re));
        if (!r) {
            return std::nullopt;
        }
        return Scalar(Rational(0), *r);
    }
    auto r = rational_sqrt(s.re * s.re + s.im * s.im);
    if (!r) {
        return std::nullopt;
    }
    auto c = rational_sqrt(Rational((s.re + *r) / 2));
    if (!c || *c == 0) {
        return std::nullopt;
    }
    Rational d = s.im / (2 * *c);
    Scalar root(*c, d);
    assert(root * root == s);
    return root;
}

[[noreturn]] void unsupported_spectrum() {
    throw math_error("unable to factor the characteristic polynomial over "
                     "Gaussian rationals; supply the eigenvalues explicitly");
}

// Divisor list of |n| in ascending order; gives up (nullopt) when trial
// division would need too many steps for an exact enumeration.
std::optional<std::vector<Int>> divisors(Int n) {
    if (n < 0) {
        n = -n;
    }
    assert(n != 0);
    std::vector<Int> low;
    std::vector<Int> high;
    const Int cap = 2000000;
    Int i = 1;
    for (; i * i <= n; ++i) {
        if (i > cap) {
            return std::nullopt;
        }
        if (n % i == 0) {
            low.push_back(i);
            if (i * i != n) {
                high.push_back(n / i);
            }
        }
    }
    low.insert(low.end(), high.rbegin(), high.rend());
    return low;
}

bool scalar_less(const Scalar& a, const Scalar& b) {
    if (a.re != b.re) {
        return a.re < b.re;
    }
    return a.im < b.im;
}

std::optional<Scalar> rational_root(const Poly& p) {
    for (const Scalar& ck : p.c) {
        if (!ck.is_real()) {
            return std::nullopt;
        }
    }
    if (p.c.front().is_zero()) {
        return Scalar(0);
    }
    Int scale = 1;
    for (const Scalar& ck : p.c) {
        scale = boost::multiprecision::lcm(scale, denominator(ck.re));
    }
    std::vector<Int> ic(p.c.size());
    for (std::size_t k = 0; k < p.c.size(); ++k) {
        Rational v = p.c[k].re * scale;
        assert(denominator(v) == 1);
        ic[k] = numerator(v);
    }
    auto ps = divisors(ic.front());
    auto qs = divisors(ic.back());
    if (!ps || !qs) {
        return std::nullopt;
    }
    std::set<Rational> tried;
    for (const Int& q : *qs) {
        for (const Int& pdiv : *ps) {
            Rational cand(pdiv, q);
            if (!tried.insert(cand).second) {
                continue;
            }
            if (p.eval(Scalar(cand)).is_zero()) {
                return Scalar(cand);
            }
            Rational neg = -cand;
            if (tried.insert(neg).second && p.eval(Scalar(neg)).is_zero()) {
                return Scalar(neg);
            }
        }
    }
    return std::nullopt;
}

std::optional<Scalar> find_root(const Poly& p) {
    if (p.degree() == 1) {
        return -(p.c[0] / p.c[1]);
    }
    if (auto r = rational_root(p)) {
        return r;
    }
    if (p.degree() == 2) {
        Scalar disc = p.c[1] * p.c[1] - Scalar(4) * p.c[2] * p.c[0];
        auto sq = gaussian_sqrt(disc);
        if (!sq) {
            return std::nullopt;
        }
        Scalar r1 = (-p.c[1] + *sq) / (Scalar(2) * p.c[2]);
        Scalar r2 = (-p.c[1] - *sq) / (Scalar(2) * p.c[2]);
        return scalar_less(r1, r2) ? r1 : r2;
    }
    return std::nullopt;
}

std::vector<Scalar> discover_eigenvalues(const Matrix& a) {
    Poly p = characteristic_polynomial(a);
    std::vector<Scalar> found;
    while (p.degree() > 0) {
        auto root = find_root(p);
        if (!root) {
            unsupported_spectrum();
        }
        found.push_back(*root);
        p = p.deflate(*root);
    }
    std::sort(found.begin(), found.end(), scalar_less);
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

std::vector<Scalar> check_eigenvalue_hints(const Matrix& a, std::vector<Scalar> hints) {
    std::vector<Scalar> distinct;
    for (const Scalar& h : hints) {
        if (std::find(distinct.begin(), distinct.end(), h) == distinct.end()) {
            distinct.push_back(h);
        }
    }
    Poly p = characteristic_polynomial(a);
    for (const Scalar& h : distinct) {
        bool is_root = false;
        while (p.degree() > 0 && p.eval(h).is_zero()) {
            is_root = true;
            p = p.deflate(h);
        }
        if (!is_root) {
            throw math_error("supplied value " + exact::to_string(h) +
                             " is not an eigenvalue");
        }
    }
    if (p.degree() > 0) {
        throw math_error("supplied eigenvalues do not account for the full spectrum");
    }
    return distinct;
}

std::optional<JordanStructure> try_read_canonical_jordan(const Matrix& a) {
    std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || j == i + 1) {
                continue;
            }
            if (!a.at(i, j).is_zero()) {
                return std::nullopt;
            }
        }
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const Scalar& s = a.at(i, i + 1);
        if (!s.is_zero() && s != Scalar(1)) {
            return std::nullopt;
        }
        if (s == Scalar(1) && a.at(i, i) != a.at(i + 1, i + 1)) {
            return std::nullopt;
        }
    }
    JordanStructure s;
    std::size_t start = 0;
    for (std::size_t i = 0; i < n; ++i) {
        bool block_ends = (i + 1 == n) || a.at(i, i + 1).is_zero();
        if (block_ends) {
            s.blocks.push_back({a.at(start, start), i - start + 1});
            start = i + 1;
        }
    }
    if (!s.is_canonical()) {
        return std::nullopt;
    }
    return s;
}

struct ChainRec {
    Matrix generator;
    std::size_t height;
};

// Chains of maximal height for the nilpotent action of k on its generalized
// kernel, chosen deterministically from the canonical kernel filtration.
std::vector<ChainRec> extract_chains(const Matrix& k, std::size_t multiplicity) {
    std::size_t n = k.rows();
    std::vector<Matrix> kernels;
    Matrix power = k;
    while (true) {
        Matrix basis = exact::kernel_basis(power);
        if (!kernels.empty() && basis.cols() == kernels.back().cols()) {
            break;
        }
        kernels.push_back(basis);
        if (basis.cols() == multiplicity) {
            break;
        }
        power = power * k;
    }
    assert(!kernels.empty() && kernels.back().cols() == multiplicity);

    std::vector<ChainRec> chains;
    std::size_t hmax = kernels.size();
    for (std::size_t h = hmax; h >= 1; --h) {
        std::vector<Matrix> modcols;
        if (h >= 2) {
            const Matrix& lower = kernels[h - 2];
            for (std::size_t j = 0; j < lower.cols(); ++j) {
                modcols.push_back(lower.col(j));
            }
        }
        for (const ChainRec& c : chains) {
            Matrix v = c.generator;
            for (std::size_t t = 0; t < c.height - h; ++t) {
                v = k * v;
            }
            modcols.push_back(v);
        }
        Matrix modm = Matrix::from_columns(modcols, n);
        std::size_t r0 = exact::rank(modm);
        const Matrix& level = kernels[h - 1];
        for (std::size_t j = 0; j < level.cols(); ++j) {
            Matrix cand = level.col(j);
            Matrix aug = exact::augment_h(modm, cand);
            if (exact::rank(aug) > r0) {
                chains.push_back({cand, h});
                modm = aug;
                ++r0;
            }
        }
    }
    std::size_t total = 0;
    for (const ChainRec& c : chains) {
        total += c.height;
    }
    assert(total == multiplicity);
    std::stable_sort(chains.begin(), chains.end(),
                     [](const ChainRec& a, const ChainRec& b) { return a.height > b.height; });
    return chains;
}

} // namespace

JordanizeResult jordanize_impl(const Matrix& a, std::vector<Scalar> eigenvalues) {
    std::size_t n = a.rows();
    std::vector<Matrix> q_cols;
    JordanStructure structure;
    for (const Scalar& lambda : eigenvalues) {
        Matrix k = a - lambda * Matrix::identity(n);
        Matrix power = k;
        std::size_t prev = 0;
        std::size_t mult = 0;
        for (std::size_t j = 1; j <= n; ++j) {
            std::size_t dim = n - exact::rank(power);
            if (dim == prev) {
                break;
            }
            prev = dim;
            mult = dim;
            power = power * k;
        }
        if (mult == 0) {
            throw math_error("supplied value " + exact::to_string(lambda) +
                             " is not an eigenvalue");
        }
        std::vector<ChainRec> chains = extract_chains(k, mult);
        for (const ChainRec& c : chains) {
            structure.blocks.push_back({lambda, c.height});
            std::vector<Matrix> tail;
            Matrix v = c.generator;
            tail.push_back(v);
            for (std::size_t t = 1; t < c.height; ++t) {
                v = k * v;
                tail.push_back(v);
            }
            for (std::size_t t = tail.size(); t-- > 0;) {
                q_cols.push_back(tail[t]);
            }
        }
    }
    if (structure.dimension() != n) {
        throw math_error("the eigenvalues do not account for the full spectrum");
    }
    JordanizeResult res;
    res.q = Matrix::from_columns(q_cols, n);
    res.structure = structure;
    Matrix qinv = exact::inverse(res.q);
    if (qinv * a * res.q != jordan_matrix(structure)) {
        throw math_error("internal: similarity verification failed in jordanize");
    }
    return res;
}

JordanizeResult jordanize(const Matrix& a) {
    if (!a.is_square()) {
        throw math_error("jordanize requires a square matrix");
    }
    if (a.rows() == 0) {
        return {Matrix(0, 0), JordanStructure{}};
    }
    if (auto s = try_read_canonical_jordan(a)) {
        return {Matrix::identity(a.rows()), *s};
    }
    return jordanize_impl(a, discover_eigenvalues(a));
}

JordanizeResult jordanize(const Matrix& a, const std::vector<Scalar>& eigenvalue_hints) {
    if (eigenvalue_hints.empty()) {
        return jordanize(a);
    }
    if (!a.is_square()) {
        throw math_error("jordanize requires a square matrix");
    }
    if (a.rows() == 0) {
        return {Matrix(0, 0), JordanStructure{}};
    }
    return jordanize_impl(a, check_eigenvalue_hints(a, eigenvalue_hints));
}

} // namespace jordan
} // namespace invsub
