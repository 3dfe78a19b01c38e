#include "cylfloer/action.hpp"

#include "fixtures.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace cylfloer;

TEST_CASE("defect of the base case is bottom minus top lens area") {
    // Oracle: the two-term cyclic sum s(e1)W(e1) + s(e2)W(e2) = -alpha + beta.
    Rational alpha(3, 2), beta(7, 3);
    Instance b = fixtures::base_case(alpha, beta);
    CHECK(exactness_defect(b) == beta - alpha);
    CHECK(exactness_defect(fixtures::base_case(alpha, alpha)).is_zero());
}

TEST_CASE("zigzag defect telescopes to zero") {
    // Oracle: +1 - 2 + 3 - 2 summed by hand.
    CHECK(exactness_defect(fixtures::zigzag()).is_zero());
}

TEST_CASE("zigzag action table") {
    ActionTable t = action_table(fixtures::zigzag());
    CHECK(t.value == std::vector<Rational>{Rational(0), Rational(1), Rational(-1), Rational(2)});
    CHECK(t.distinct());
}

TEST_CASE("base case action table") {
    ActionTable t = action_table(fixtures::base_case(Rational(1), Rational(1)));
    CHECK(t.value == std::vector<Rational>{Rational(0), Rational(-1)});
}

TEST_CASE("eight point action table is the hand telescoping") {
    ActionTable t = action_table(fixtures::eight_point());
    std::vector<Rational> expect = {Rational(0), Rational(5),  Rational(12), Rational(13),
                                    Rational(7), Rational(6),  Rational(10), Rational(8)};
    CHECK(t.value == expect);
    CHECK(t.distinct());
}

TEST_CASE("action table requires a zero defect") {
    CHECK_THROWS_AS(action_table(fixtures::base_case(Rational(1), Rational(2))), NonExact);
}

TEST_CASE("cyclic consistency of the differences") {
    for (const Instance& inst : {fixtures::zigzag(), fixtures::eight_point()}) {
        Model m = build_model(inst);
        Rational sum(0);
        for (int j = 0; j < m.arr.m; ++j) {
            Rational diff = m.actions[(j + 1) % m.arr.m] - m.actions[j];
            if (j + 1 < m.arr.m)
                CHECK(diff == Rational(m.tv.sign[j]) * m.tv.subtree_weight[j]);
            sum += Rational(m.tv.sign[j]) * m.tv.subtree_weight[j];
        }
        CHECK(sum.is_zero());
    }
}
