#include "l2chi/free_by_cyclic.hpp"
#include "l2chi/parse.hpp"
#include "l2chi/presentation.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace l2chi;

TEST_CASE("identity composition gives the direct product presentation") {
    Presentation p = free_by_cyclic(3, std::vector<ElementaryAut>{});
    REQUIRE(p.ngens == 4);
    REQUIRE(p.relators.size() == 3);
    for (int i = 0; i < 3; ++i) {
        Word expect = parse_expression(std::string("d*") + static_cast<char>('a' + i) + "*D*" +
                                           static_cast<char>('A' + i),
                                       4)
                          .as_unit()
                          ->first;
        CHECK(p.relators[static_cast<std::size_t>(i)] == expect);
    }
}

TEST_CASE("elementary automorphisms are involutions") {
    for (int n : {2, 3, 4}) {
        std::vector<ElementaryAut> gens;
        for (int i = 0; i < n; ++i) gens.push_back({'t', i, 0});
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                gens.push_back({'s', i, j});
                gens.push_back({'e', i, j});
            }
        for (auto& g : gens) {
            FreeAutomorphism a = make_elementary(n, g);
            FreeAutomorphism sq = compose(a, a);
            for (int i = 0; i < n; ++i) CHECK(sq.images[static_cast<std::size_t>(i)] == Word::generator(i));
        }
    }
}

TEST_CASE("composition is left factor first") {
    // eta21 then sig13 on F_3: x1 -> eta: x1^-1 -> sig: x3^-1
    std::vector<ElementaryAut> word = {{'e', 1, 0}, {'s', 0, 2}};
    FreeAutomorphism phi = compose_elementaries(3, word);
    CHECK(phi.images[0] == Word::generator(2, -1));
    CHECK(phi.images[1] == word_concat(Word::generator(2, -1), Word::generator(1)));
    CHECK(phi.images[2] == Word::generator(0));
}

TEST_CASE("first free-by-cyclic example has free rank two") {
    std::vector<ElementaryAut> word = {
        {'e', 1, 0}, {'s', 0, 2}, {'e', 1, 0}, {'e', 2, 1}, {'e', 2, 0}};
    Presentation p = free_by_cyclic(3, word);
    AbelianStructure ab = abelianize(p);
    CHECK(ab.free_rank == 2);
    CHECK(ab.torsion.empty());
}

TEST_CASE("index validation") {
    CHECK_THROWS_AS(free_by_cyclic(2, std::vector<ElementaryAut>{{'e', 0, 5}}), input_error);
    CHECK_THROWS_AS(free_by_cyclic(2, std::vector<ElementaryAut>{{'t', 2, 0}}), input_error);
}
