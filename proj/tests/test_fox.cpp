#include "l2chi/chain.hpp"
#include "l2chi/fox.hpp"
#include "l2chi/parse.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"

using namespace l2chi;

namespace {

// Sum_j d(r)/d(x_j) * (x_j - 1) = r - 1 in the free group ring.
void check_fundamental_formula(const Word& r, int ngens) {
    GRE acc;
    for (int j = 0; j < ngens; ++j) {
        GRE dj = fox_derivative(r, j);
        GRE xm1 = GRE(Word::generator(j)) - GRE(Int(1));
        acc = acc + ring_mul(dj, xm1);
    }
    GRE expect = GRE(r) - GRE(Int(1));
    CHECK(acc == expect);
}

} // namespace

TEST_CASE("fox derivative rules") {
    Word comm = parse_expression("a*b*A*B", 2).as_unit()->first;
    CHECK(fox_derivative(comm, 0) == parse_expression("1-a*b*A", 2));

    for (int n = 1; n <= 5; ++n) {
        GRE expect;
        for (int t = 0; t < n; ++t) expect.add_term(Word::generator(0, t), 1);
        CHECK(fox_derivative(Word::generator(0, n), 0) == expect);
    }
    CHECK(fox_derivative(Word::generator(0, -1), 0) == parse_expression("-A", 1));
    CHECK(fox_derivative(Word::generator(1), 0).is_zero());
}

TEST_CASE("fundamental formula on all fixture relators") {
    for (const char* name : {"borromean", "l10n14", "v1539", "v1539_matrix_a", "fbc_example_1"}) {
        InputFile f = fixtures::load(name);
        for (auto& r : f.presentation.relators) check_fundamental_formula(r, f.presentation.ngens);
    }
}

TEST_CASE("presentation complex shapes and first boundary") {
    InputFile f = fixtures::load("borromean");
    ChainComplex c = presentation_complex(f.presentation);
    REQUIRE(c.dims == std::vector<int>{1, 3, 2});
    CHECK(c.boundaries[0].at(0, 0) == parse_expression("1-a", 3));
    CHECK(c.boundaries[0].at(1, 0) == parse_expression("1-b", 3));
    CHECK(c.boundaries[0].at(2, 0) == parse_expression("1-c", 3));

    ChainComplex one = presentation_complex(Presentation(1, {}));
    REQUIRE(one.dims == std::vector<int>{1, 1});
    CHECK(one.boundaries[0].at(0, 0) == parse_expression("1-a", 1));
}

TEST_CASE("borromean second boundary matches its published factored form") {
    InputFile f = fixtures::load("borromean");
    ChainComplex c = presentation_complex(f.presentation);
    const GrMat& d2 = c.boundaries[1];
    REQUIRE(d2.rows == 2);
    REQUIRE(d2.cols == 3);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(d2.at(i, j) == parse_expression(fixtures::borromean_d2t[j][i], 3));
}

TEST_CASE("l10n14 second boundary matches its published factored form") {
    InputFile f = fixtures::load("l10n14");
    ChainComplex c = presentation_complex(f.presentation);
    const GrMat& d2 = c.boundaries[1];
    REQUIRE(d2.rows == 1);
    REQUIRE(d2.cols == 2);
    CHECK(d2.at(0, 0) == parse_expression(fixtures::l10n14_d2[0], 2));
    CHECK(d2.at(0, 1) == parse_expression(fixtures::l10n14_d2[1], 2));
}

TEST_CASE("v1539 fixture second boundary equals the Fox matrix") {
    InputFile f = fixtures::load("v1539");
    ChainComplex fox = presentation_complex(f.presentation);
    const GrMat& fixture_d2 = f.complex.boundaries[1];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(fixture_d2.at(i, j) == fox.boundaries[1].at(i, j));
}

TEST_CASE("laplacians are formally self-adjoint with the expected degree-zero entry") {
    InputFile f = fixtures::load("borromean");
    ChainComplex c = presentation_complex(f.presentation);
    std::vector<GrMat> lap = laplacians(c);
    REQUIRE(lap.size() == 3);
    CHECK(lap[0].rows == 1);
    CHECK(lap[0].at(0, 0) == parse_expression("6-a-b-c-a^-1-b^-1-c^-1", 3));
    for (auto& l : lap) CHECK(mat_adjoint(l) == l);

    ChainComplex single = presentation_complex(Presentation(1, {}));
    std::vector<GrMat> lap1 = laplacians(single);
    CHECK(lap1[0].at(0, 0) == parse_expression("2-a-A", 1));

    InputFile v = fixtures::load("v1539");
    for (auto& l : laplacians(v.complex)) CHECK(mat_adjoint(l) == l);
}

TEST_CASE("boundary validation under quotients") {
    InputFile v = fixtures::load("v1539");
    CHECK(validate_boundary(v.complex, trivial_quotient(v.presentation)));
    CHECK(validate_boundary(v.complex, abelian_quotient(v.presentation, {Int(5)})));

    InputFile b = fixtures::load("borromean");
    ChainComplex c = presentation_complex(b.presentation);
    CHECK(validate_boundary(c, trivial_quotient(b.presentation)));
    CHECK(validate_boundary(c, abelian_quotient(b.presentation, {Int(3)})));

    // corrupt one entry
    ChainComplex bad = v.complex;
    bad.boundaries[2].at(0, 0).add_term(Word::generator(0, 7), 1);
    CHECK_FALSE(validate_boundary(bad, abelian_quotient(v.presentation, {Int(5)})));
}
