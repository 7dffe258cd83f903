#include "l2chi/parse.hpp"
#include "l2chi/presentation.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace l2chi;

namespace {

Presentation borromean() {
    return Presentation(3, {parse_expression("C*B*c*a*C*A*b*a*c*A", 3).as_unit()->first,
                            parse_expression("B*a*b*C*B*c*A*C*b*c", 3).as_unit()->first});
}

// an ad-hoc group with abelianization (Z/4)^4
Presentation four_torsion_group() {
    std::vector<Word> rels;
    for (int i = 0; i < 4; ++i) rels.push_back(Word::generator(i, 4));
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            Word c = word_concat(word_concat(Word::generator(i), Word::generator(j)),
                                 word_concat(Word::generator(i, -1), Word::generator(j, -1)));
            rels.push_back(c);
        }
    return Presentation(4, rels);
}

} // namespace

TEST_CASE("smith transform identity U R V = S") {
    Rng rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t k = 1 + rng.below(4), r = 1 + rng.below(4);
        IMat m(k, std::vector<Int>(r));
        for (auto& row : m)
            for (auto& x : row) x = static_cast<std::int64_t>(rng.below(11)) - 5;
        SmithResult sm = smith_normal_form(m);
        IMat prod = imat_mul(imat_mul(sm.u, m), sm.v);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < r; ++j) {
                Int expect = (i == j && i < sm.s.size()) ? sm.s[i] : Int(0);
                CHECK(prod[i][j] == expect);
            }
        for (std::size_t i = 0; i + 1 < sm.s.size(); ++i)
            if (sm.s[i] != 0 && sm.s[i + 1] != 0) CHECK(sm.s[i + 1] % sm.s[i] == 0);
    }
}

TEST_CASE("abelianization examples") {
    AbelianStructure ab = abelianize(borromean());
    CHECK(ab.free_rank == 3);
    CHECK(ab.torsion.empty());

    AbelianStructure fn = abelianize(Presentation(5, {}));
    CHECK(fn.free_rank == 5);

    AbelianStructure tor = abelianize(four_torsion_group());
    CHECK(tor.free_rank == 0);
    REQUIRE(tor.torsion.size() == 4);
    for (auto& t : tor.torsion) CHECK(t == 4);
}

TEST_CASE("generator images satisfy relator equations") {
    Presentation p = borromean();
    AbelianStructure ab = abelianize(p);
    // every relator row maps to zero modulo the Smith moduli
    for (auto& r : p.relators) {
        for (int coord = 0; coord < p.ngens; ++coord) {
            Int acc = 0;
            for (auto& [g, e] : r.syl) acc += Int(e) * ab.coordinate(g, coord);
            if (ab.s[static_cast<std::size_t>(coord)] == 0)
                CHECK(acc == 0);
            else
                CHECK(acc % ab.s[static_cast<std::size_t>(coord)] == 0);
        }
    }
}

TEST_CASE("character construction") {
    Presentation p = borromean();
    Character phi = make_character_from_images(p, {0, 0, 1});
    CHECK(phi.d == 1);
    CHECK_FALSE(phi.zero);
    CHECK(phi.images == std::vector<std::int64_t>{0, 0, 1});

    Character twice = make_character_from_images(p, {0, 0, 2});
    CHECK(twice.d == 2);
    CHECK(twice.images == std::vector<std::int64_t>{0, 0, 1});

    Presentation killed(2, {Word::generator(0)});
    CHECK_THROWS_AS(make_character_from_images(killed, {1, 0}), input_error);

    Character zero = make_character_from_images(p, {0, 0, 0});
    CHECK(zero.zero);
    CHECK(zero.d == 0);
}

TEST_CASE("coordinate-mode characters use the free Smith coordinates") {
    Presentation p = borromean();
    AbelianStructure ab = abelianize(p);
    for (std::int64_t x = -2; x <= 2; ++x)
        for (std::int64_t y = -2; y <= 2; ++y) {
            if (x == 0 && y == 0) continue;
            Character phi = make_character_from_coords(p, ab, {x, y, 1});
            CHECK_FALSE(phi.zero);
        }
    CHECK_THROWS_AS(make_character_from_coords(p, ab, {1, 2}), input_error);
}

TEST_CASE("lift words evaluate to one") {
    Presentation p = borromean();
    Character phi = make_character_from_images(p, {0, 0, 1});
    Word x = find_lift(p, phi);
    CHECK(word_weight(x, phi.images) == 1);

    Presentation f1(1, {});
    Character one = make_character_from_images(f1, {1});
    CHECK(find_lift(f1, one) == Word::generator(0));

    Presentation f3(3, {});
    Character mixed = make_character_from_images(f3, {1, 1, 0});
    CHECK(word_weight(find_lift(f3, mixed), mixed.images) == 1);

    Character wide = make_character_from_images(f3, {6, 10, 15});
    CHECK(word_weight(find_lift(f3, wide), wide.images) == 1);
}

TEST_CASE("cyclic reduction normalizes relators") {
    Word r = parse_expression("B^4*a^2*(B*A)^3*B*a^2*b^5*a^2*B*A^3*b^4", 2).as_unit()->first;
    Word c = cyclically_reduce(r);
    CHECK(c.length() < r.length());
    CHECK(!c.is_identity());
    // ends no longer cancel
    if (c.syl.size() >= 2)
        CHECK((c.syl.front().first != c.syl.back().first ||
               (c.syl.front().second > 0) == (c.syl.back().second > 0)));
    Presentation p = normalized(Presentation(2, {r}));
    CHECK(p.relators[0] == c);
    CHECK(cyclically_reduce(c) == c);
}
