#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "helpers.hpp"
#include "invsub/exact.hpp"

using namespace invsub;
using namespace helpers;

TEST_CASE("scalar arithmetic is exact") {
    const Scalar third(Rational(1, 3));
    CHECK(third + third + third == Scalar(1));
    CHECK(Scalar(1) / Scalar(3) == third);
    const Scalar i(Rational(0), Rational(1));
    CHECK(i * i == Scalar(-1));
    CHECK((Scalar(2) + i) * (Scalar(2) - i) == Scalar(5));
    CHECK(exact::conj(sc("1/2-3/4i")) == sc("1/2+3/4i"));
    CHECK(sc("-i") * sc("i") == Scalar(1));
    CHECK_FALSE(sc("1+i").is_real());
    CHECK(sc("7/14") == sc("1/2"));
}

TEST_CASE("scalar parsing and printing round-trip") {
    for (const char* text : {"0", "1", "-2", "3/4", "-5/7", "i", "-i", "2i",
                             "1+i", "1-i", "1/2+3/4i", "-1/2-3/4i", "7"}) {
        const Scalar value = sc(text);
        CHECK(exact::parse_scalar(exact::to_string(value)) == value);
    }
    CHECK(exact::to_string(sc("0")) == "0");
    CHECK(exact::to_string(sc("3/4")) == "3/4");
    CHECK_THROWS_AS(sc("1..2"), parse_error);
    CHECK_THROWS_AS(sc(""), parse_error);
    CHECK_THROWS_AS(sc("1/0"), parse_error);
    CHECK_THROWS_AS(sc("x"), parse_error);
}

TEST_CASE("matrix construction and block access") {
    const Matrix a = mat({{"1", "2"}, {"3", "4"}});
    CHECK(a.rows() == 2);
    CHECK(a.cols() == 2);
    CHECK(a.at(1, 0) == Scalar(3));
    CHECK(Matrix::identity(3).is_square());
    CHECK(Matrix::zero(2, 3).is_zero());
    const Matrix b = a.block(0, 1, 2, 1);
    CHECK(b == mat({{"2"}, {"4"}}));
    Matrix c = Matrix::zero(3, 3);
    c.set_block(1, 1, mat({{"5"}}));
    CHECK(c.at(1, 1) == Scalar(5));
    CHECK(a.col(0) == col({"1", "3"}));
    CHECK(a.row(1) == mat({{"3", "4"}}));
}

TEST_CASE("matrix algebra") {
    const Matrix a = mat({{"1", "2"}, {"3", "4"}});
    const Matrix b = mat({{"0", "1"}, {"1", "0"}});
    CHECK(a * b == mat({{"2", "1"}, {"4", "3"}}));
    CHECK(a + b == mat({{"1", "3"}, {"4", "4"}}));
    CHECK(a - a == Matrix::zero(2, 2));
    CHECK(Scalar(2) * a == mat({{"2", "4"}, {"6", "8"}}));
    CHECK(exact::transpose(a) == mat({{"1", "3"}, {"2", "4"}}));
    const Matrix g = mat({{"i", "1"}, {"0", "-i"}});
    CHECK(exact::conj_transpose(g) == mat({{"-i", "0"}, {"1", "i"}}));
}

TEST_CASE("row reduction, rank, kernel, inverse") {
    const Matrix a = mat({{"1", "2", "3"}, {"2", "4", "6"}, {"1", "1", "1"}});
    CHECK(exact::rank(a) == 2);
    const auto rr = exact::rref_full(a);
    CHECK(rr.rank == 2);
    CHECK(exact::rref(rr.reduced) == rr.reduced);

    const Matrix k = exact::kernel_basis(a);
    CHECK(k.cols() == 1);
    CHECK((a * k).is_zero());

    const Matrix inv_input = mat({{"1", "1"}, {"0", "1/2"}});
    const Matrix inv = exact::inverse(inv_input);
    CHECK(inv_input * inv == Matrix::identity(2));
    CHECK(inv * inv_input == Matrix::identity(2));
    CHECK_THROWS_AS(exact::inverse(a), math_error);

    const Matrix gauss = mat({{"1", "i"}, {"-i", "1"}});
    CHECK(exact::rank(gauss) == 1);
    const Matrix gk = exact::kernel_basis(gauss);
    CHECK((gauss * gk).is_zero());
    CHECK(gk.cols() == 1);
}

TEST_CASE("rank and nullity are complementary on random integer matrices") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t r = 1 + rng() % 5;
        const std::size_t c = 1 + rng() % 5;
        Matrix a(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                a.at(i, j) = Scalar(static_cast<int>(rng() % 5) - 2);
        const Matrix k = exact::kernel_basis(a);
        CHECK(exact::rank(a) + k.cols() == c);
        CHECK((a * k).is_zero());
        CHECK(exact::rank(k) == k.cols());
    }
}

TEST_CASE("augmentation helpers") {
    const Matrix a = mat({{"1"}, {"2"}});
    const Matrix b = mat({{"3"}, {"4"}});
    CHECK(exact::augment_h(a, b) == mat({{"1", "3"}, {"2", "4"}}));
    CHECK(exact::augment_v(exact::transpose(a), exact::transpose(b)) ==
          mat({{"1", "2"}, {"3", "4"}}));
}

TEST_CASE("matrix text form round-trips and ends with a newline") {
    const Matrix a = mat({{"1/2", "-i"}, {"0", "2+3i"}});
    const std::string text = exact::to_text(a);
    CHECK(!text.empty());
    CHECK(text.back() == '\n');
    CHECK(exact::matrix_from_text(text) == a);

    CHECK(exact::matrix_from_text("[[\"1\",\"2\"],[\"3\",\"4\"]]") ==
          mat({{"1", "2"}, {"3", "4"}}));
    CHECK_THROWS_AS(exact::matrix_from_text("not json"), parse_error);
    CHECK_THROWS_AS(exact::matrix_from_text("[[\"1\"],[\"1\",\"2\"]]"), parse_error);
    CHECK_THROWS_AS(exact::matrix_from_text("{\"a\":1}"), parse_error);
}

TEST_CASE("columns assemble into matrices") {
    const Matrix m = Matrix::from_columns({col({"1", "0"}), col({"2", "3"})}, 2);
    CHECK(m == mat({{"1", "2"}, {"0", "3"}}));
    const Matrix empty = Matrix::from_columns({}, 4);
    CHECK(empty.rows() == 4);
    CHECK(empty.cols() == 0);
}
