#include "l2chi/parse.hpp"
#include "l2chi/pipeline.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"

using namespace l2chi;

TEST_CASE("quantitative approximation bound") {
    double b = luck_error_bound(1, 10, 2);
    CHECK(b == Catch::Approx(0.30695).margin(2e-5));
    // decreasing in k, linear in n
    double prev = 1e9;
    for (double k : {3.0, 5.0, 10.0, 50.0, 200.0}) {
        double cur = luck_error_bound(2, k, 3);
        CHECK(cur < prev);
        prev = cur;
    }
    CHECK(luck_error_bound(4, 10, 2) == Catch::Approx(4 * luck_error_bound(1, 10, 2)));
    CHECK_THROWS_AS(luck_error_bound(1, 1, 2), input_error);
}

TEST_CASE("operator norm bounds") {
    GrMat m(1, 1);
    m.at(0, 0) = parse_expression("1-a", 1);
    CHECK(operator_norm_bound(m) == Catch::Approx(2.0));

    GrMat z(2, 3);
    CHECK(operator_norm_bound(z) == 0.0);

    GrMat lap(1, 1);
    lap.at(0, 0) = parse_expression("6-a-b-c-a^-1-b^-1-c^-1", 3);
    CHECK(operator_norm_bound(lap) == Catch::Approx(12.0));
}

TEST_CASE("alexander polynomial of the two-relator census fixture") {
    InputFile v = fixtures::load("v1539");
    Laurent2 alex = alexander_polynomial(v.presentation);
    Laurent2 expect;
    expect.add_term(0, 0, 1);
    expect.add_term(1, 0, 1);
    expect.add_term(1, 1, 1);
    expect.add_term(1, 2, 1);
    expect.add_term(2, 2, 1);
    CHECK(alex == expect);

    Character v10 = make_character_from_images(v.presentation, {1, 0});
    CHECK(alexander_norm_2g1r(v.presentation, v10) == 2);
}

TEST_CASE("alexander norms of the link fixture") {
    InputFile l = fixtures::load("l10n14");
    auto norm = [&](std::int64_t a, std::int64_t b) {
        Character phi = make_character_from_images(l.presentation, {a, b});
        return alexander_norm_2g1r(l.presentation, phi);
    };
    CHECK(norm(1, 0) == 1);
    CHECK(norm(0, 1) == 2);
    CHECK(norm(-1, 2) == 3);
    CHECK(norm(-1, 1) == 1);
}

TEST_CASE("alexander route input validation") {
    CHECK_THROWS_AS(alexander_polynomial(Presentation(3, {})), input_error);
    // nonzero exponent sums
    Presentation bad(2, {Word::generator(0)});
    CHECK_THROWS_AS(alexander_polynomial(bad), input_error);
}

TEST_CASE("chi on the zero character vanishes") {
    InputFile b = fixtures::load("borromean");
    Character zero = make_character_from_images(b.presentation, {0, 0, 0});
    ChiOptions opt;
    opt.mu = {1};
    ChiReport rep = chi_twisted(b.complex, zero, trivial_quotient(b.presentation), opt);
    CHECK(rep.zero_character);
    CHECK(rep.chi == 0);
}

TEST_CASE("chi homogeneity under character scaling") {
    InputFile b = fixtures::load("borromean");
    FiniteQuotient q = abelian_quotient(b.presentation, {Int(3)});
    ChiOptions opt;
    opt.mu = {2};
    opt.policy.seed = 3;
    Character base = make_character_from_images(b.presentation, {0, 0, 1});
    ChiReport r1 = chi_twisted(b.complex, base, q, opt);
    for (std::int64_t k : {2, 3}) {
        Character scaled = make_character_from_images(b.presentation, {0, 0, k});
        ChiReport rk = chi_twisted(b.complex, scaled, q, opt);
        CHECK(rk.chi == Rat(Int(k)) * r1.chi);
    }
}

TEST_CASE("chi symmetry under character negation") {
    InputFile b = fixtures::load("borromean");
    FiniteQuotient q = abelian_quotient(b.presentation, {Int(5)});
    ChiOptions opt;
    opt.mu = {2};
    opt.policy.seed = 4;
    Character plus = make_character_from_images(b.presentation, {0, 0, 1});
    Character minus = make_character_from_images(b.presentation, {0, 0, -1});
    ChiReport rp = chi_twisted(b.complex, plus, q, opt);
    ChiReport rm = chi_twisted(b.complex, minus, q, opt);
    CHECK(rp.chi == rm.chi);
}

TEST_CASE("chi denominator divides twice the subgroup order") {
    InputFile b = fixtures::load("borromean");
    FiniteQuotient q = abelian_quotient(b.presentation, {Int(5)});
    ChiOptions opt;
    opt.mu = {6};
    opt.policy.seed = 11;
    Character phi = make_character_from_images(b.presentation, {0, 0, 1});
    ChiReport rep = chi_twisted(b.complex, phi, q, opt);
    Int lcm = 1;
    for (auto& d : rep.degrees) lcm = lcm / int_gcd(lcm, d.subgroup_order) * d.subgroup_order;
    Rat scaled = rep.chi * Rat(Int(2) * lcm);
    CHECK(boost::multiprecision::denominator(scaled) == 1);
}

TEST_CASE("betti numbers of the planted synthetic complex") {
    InputFile f = fixtures::load("fiber_shape");
    RankPolicy policy;
    policy.exact = true;
    BettiReport rep = betti_untwisted(f.complex, trivial_quotient(f.presentation), policy);
    REQUIRE(rep.ranks.size() == 3);
    CHECK(rep.ranks[0] == Rat(1));
    CHECK(rep.ranks[1] == Rat(5));
    CHECK(rep.ranks[2] == Rat(4));
    CHECK(rep.betti == std::vector<Rat>{Rat(0), Rat(0), Rat(1), Rat(0)});
}
