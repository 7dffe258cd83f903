#include "l2chi/parse.hpp"
#include "l2chi/quotient.hpp"
#include "l2chi/rank.hpp"
#include "l2chi/subgroup.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"

using namespace l2chi;

namespace {

Presentation borromean() { return fixtures::load("borromean").presentation; }

Presentation four_torsion_group() {
    std::vector<Word> rels;
    for (int i = 0; i < 4; ++i) rels.push_back(Word::generator(i, 4));
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            rels.push_back(word_concat(word_concat(Word::generator(i), Word::generator(j)),
                                       word_concat(Word::generator(i, -1), Word::generator(j, -1))));
    return Presentation(4, rels);
}

Word rand_word(Rng& rng, int ngens, int len) {
    Word w;
    for (int i = 0; i < len; ++i) {
        int g = static_cast<int>(rng.below(static_cast<std::uint64_t>(ngens)));
        std::int64_t e = static_cast<std::int64_t>(rng.below(5)) - 2;
        if (e == 0) e = 1;
        w.push_syllable(g, e);
    }
    return w;
}

} // namespace

TEST_CASE("abelian quotients through the Smith form") {
    FiniteQuotient q29 = abelian_quotient(borromean(), {Int(29)});
    CHECK(q29.group_order() == 29 * 29 * 29);

    FiniteQuotient q3 = abelian_quotient(four_torsion_group(), {Int(3)});
    CHECK(q3.group_order() == 1); // no 3-torsion in (Z/4)^4

    std::vector<ElementaryAut> word = {
        {'e', 1, 0}, {'s', 0, 2}, {'e', 1, 0}, {'e', 2, 1}, {'e', 2, 0}};
    Presentation fbc = free_by_cyclic(3, word);
    FiniteQuotient q49 = abelian_quotient(fbc, {Int(49)});
    CHECK(q49.group_order() == 49 * 49); // free rank 2, mod 7^2
}

TEST_CASE("quotient evaluation is a homomorphism killing relators") {
    Presentation p = borromean();
    for (auto q : {abelian_quotient(p, {Int(4), Int(3)}), trivial_quotient(p)}) {
        CHECK(relators_vanish(q, p));
        Rng rng(10);
        for (int t = 0; t < 100; ++t) {
            Word x = rand_word(rng, 3, 5), y = rand_word(rng, 3, 5);
            CHECK(q.eval(word_concat(x, y)) == q.mul(q.eval(x), q.eval(y)));
            CHECK(q.eval(word_inverse(x)) == q.inv(q.eval(x)));
        }
    }
}

TEST_CASE("permutation quotients") {
    Presentation p = borromean();
    QElem swap01{1, 0, 2};
    FiniteQuotient q = perm_quotient(p, {swap01, swap01, swap01});
    CHECK(q.group_order() == 2);

    QElem id{0, 1, 2};
    FiniteQuotient t = perm_quotient(p, {id, id, id});
    CHECK(t.group_order() == 1);

    // a free product relation that the images violate
    Presentation killer(2, {Word::generator(0)});
    QElem flip{1, 0};
    CHECK_THROWS_AS(perm_quotient(killer, {flip, flip}), input_error);
}

TEST_CASE("symmetric group search") {
    Presentation single(1, {Word::generator(0, 2)});
    SearchResult sr = search_quotient(single, 2, 1000);
    REQUIRE_FALSE(sr.quotients.empty());
    CHECK(sr.quotients.front().group_order() == 2);

    SearchResult trivial_only = search_quotient(single, 1, 1000);
    REQUIRE(trivial_only.quotients.size() == 1);
    CHECK(trivial_only.quotients[0].kind == FiniteQuotient::Kind::trivial);

    SearchResult borr = search_quotient(borromean(), 3, 2000000);
    CHECK_FALSE(borr.budget_exhausted);
    CHECK(borr.quotients.front().group_order() >= 3);
}

TEST_CASE("subgroup closure sizes") {
    Presentation p = borromean();
    FiniteQuotient q = abelian_quotient(p, {Int(29)});

    SubgroupTable trivial_table = subgroup_closure(q, std::vector<Word>{});
    CHECK(trivial_table.size() == 1);

    // kernel words of the character (0,0,1): conjugates of a and b
    std::vector<Word> gens{Word::generator(0), Word::generator(1),
                           word_conjugate(Word::generator(2), Word::generator(0))};
    SubgroupTable t = subgroup_closure(q, gens);
    CHECK(t.size() == 29 * 29);
    CHECK(t.elems[0] == q.identity());

    InputFile matA = fixtures::load("v1539_matrix_a");
    FiniteQuotient q7 = abelian_quotient(matA.presentation, {Int(7)});
    std::vector<Word> support;
    for (auto& e : matA.complex.boundaries[0].a)
        for (auto& [w, c] : e.terms) support.push_back(w);
    // the support is not in the kernel of any character here; close over everything
    SubgroupTable full = subgroup_closure(q7, support);
    CHECK(full.size() == 49);
}

TEST_CASE("closure on permutation quotients matches brute force") {
    Presentation p(2, {});
    QElem r3{1, 2, 0};  // 3-cycle
    QElem flip{1, 0, 2};
    FiniteQuotient q = perm_quotient(p, {r3, flip});
    SubgroupTable t = subgroup_closure(q, std::vector<Word>{Word::generator(0), Word::generator(1)});
    CHECK(t.size() == 6); // S_3
    SubgroupTable c3 = subgroup_closure(q, std::vector<Word>{Word::generator(0)});
    CHECK(c3.size() == 3);
}

TEST_CASE("table multiplication is closed and consistent") {
    Presentation p = borromean();
    FiniteQuotient q = abelian_quotient(p, {Int(4), Int(3)});
    std::vector<Word> gens{Word::generator(0), word_concat(Word::generator(1), Word::generator(2, -1))};
    SubgroupTable t = subgroup_closure(q, gens);
    Int group_order = q.group_order();
    CHECK(group_order % Int(t.size()) == 0);
    for (int a = 0; a < static_cast<int>(t.size()); ++a) {
        CHECK(t.mul(a, t.inv(a)) == 0);
        for (int b = 0; b < std::min<int>(static_cast<int>(t.size()), 10); ++b) {
            int ab = t.mul(a, b);
            CHECK(ab >= 0);
            CHECK(ab < static_cast<int>(t.size()));
        }
    }
}

TEST_CASE("regular action matrices") {
    Presentation p(1, {Word::generator(0, 2)}); // Z/2
    FiniteQuotient q = abelian_quotient(p, {Int(2)});
    SubgroupTable t = subgroup_closure(q, std::vector<Word>{Word::generator(0)});
    REQUIRE(t.size() == 2);

    GrMat ident(1, 1);
    ident.at(0, 0) = GRE(Int(1));
    IMat block = regular_action_matrix(ident, t);
    CHECK(block == IMat{{1, 0}, {0, 1}});

    GrMat g(1, 1);
    g.at(0, 0) = GRE(Word::generator(0));
    IMat pblock = regular_action_matrix(g, t);
    CHECK(pblock == IMat{{0, 1}, {1, 0}});

    GrMat lap(1, 1);
    lap.at(0, 0) = parse_expression("2-a-A", 1);
    IMat lblock = regular_action_matrix(lap, t);
    CHECK(lblock == IMat{{2, -2}, {-2, 2}});
    CHECK(rank_exact(lblock) == 1);
}

TEST_CASE("regular representation is multiplicative") {
    Presentation p(2, {});
    FiniteQuotient q = abelian_quotient(p, {Int(4)});
    SubgroupTable t = subgroup_closure(q, std::vector<Word>{Word::generator(0), Word::generator(1)});
    Rng rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        GrMat x(1, 1), y(1, 1);
        for (int k = 0; k < 3; ++k) {
            x.at(0, 0).add_term(rand_word(rng, 2, 3), Int(static_cast<std::int64_t>(rng.below(5)) - 2));
            y.at(0, 0).add_term(rand_word(rng, 2, 3), Int(static_cast<std::int64_t>(rng.below(5)) - 2));
        }
        IMat rx = regular_action_matrix(x, t);
        IMat ry = regular_action_matrix(y, t);
        IMat rxy = regular_action_matrix(mat_mul(x, y), t);
        CHECK(imat_mul(rx, ry) == rxy);
    }
}

TEST_CASE("character-space rank agrees with the direct regular rank") {
    Presentation p(2, {});
    FiniteQuotient q = abelian_quotient(p, {Int(6), Int(4)});
    SubgroupTable t = subgroup_closure(q, std::vector<Word>{Word::generator(0), Word::generator(1)});
    REQUIRE(t.size() == 24 * 24);
    Rng rng(42);
    for (int trial = 0; trial < 6; ++trial) {
        GrMat m(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k)
                    m.at(i, j).add_term(rand_word(rng, 2, 2),
                                        Int(static_cast<std::int64_t>(rng.below(5)) - 2));
        ZlMat zl = to_zl(m, t);
        RankPolicy policy;
        policy.seed = 1000 + static_cast<std::uint64_t>(trial);
        RankResult via_chars = zl_regular_rank(zl, t, policy);
        IMat full = regular_action_matrix(zl, t);
        RankResult direct = rank_rational(full, policy);
        CHECK(via_chars.rank == direct.rank);
    }
}
