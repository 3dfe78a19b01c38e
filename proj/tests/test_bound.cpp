#include "cylfloer/bound.hpp"

#include "fixtures.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace cylfloer;

TEST_CASE("theorem bound of the worked instances") {
    CHECK(theorem_bound(fixtures::zigzag()) == Rational(5)); // 2*1 + 3
    CHECK(theorem_bound(fixtures::base_case(Rational(1), Rational(1))) == Rational(1));
}

TEST_CASE("reduction of the zigzag is tight") {
    ReductionTrace trace = reduce(fixtures::zigzag());
    REQUIRE(trace.steps.size() == 1);
    CHECK(trace.steps[0].event.leaf.face == "B1");
    CHECK(trace.steps[0].event.cost == Rational(1));
    CHECK(trace.final_gamma == Rational(4));
    CHECK(trace.constructive_cost == Rational(5));
    CHECK(trace.theorem_bound == Rational(5));
    CHECK(trace.gamma_original == Rational(3));
    CHECK(trace.generic);
}

TEST_CASE("reduction of the base case is free") {
    ReductionTrace trace = reduce(fixtures::base_case(Rational(1), Rational(1)));
    CHECK(trace.steps.empty());
    CHECK(trace.constructive_cost == Rational(1));
    CHECK(trace.theorem_bound == Rational(1));
}

TEST_CASE("bound chain on the eight point instance") {
    ReductionTrace trace = reduce(fixtures::eight_point());
    CHECK(trace.steps.size() == 3);
    CHECK(trace.gamma_original <= trace.constructive_cost);
    CHECK(trace.constructive_cost <= trace.theorem_bound);
    CHECK(trace.theorem_bound <=
          (Rational(std::int64_t(1) << 4) - Rational(1)) * trace.gamma_original);
}

TEST_CASE("shortest bar corresponds to the minimum leaf") {
    Model m = build_model(fixtures::zigzag());
    FloerComplex c = differential(m.arr, m.tv, m.actions);
    Barcode bc = barcode(c).first;
    ShortestBarReport rep = shortest_bar_leaf_check(m, c, bc);
    CHECK_FALSE(rep.skipped);
    CHECK(rep.endpoints_are_leaf_corners);
    CHECK(rep.leaf_has_min_area);
    CHECK(rep.gaps_at_least_beta_min);
}

TEST_CASE("shortest bar check skips non-generic spectra") {
    Instance z = fixtures::zigzag();
    z.top.vertices[2].area = Weight::of(1);
    z.bottom.vertices[1].area = Weight::of(1);
    z.bottom.vertices[2].area = Weight::of(1);
    Model m = build_model(z);
    FloerComplex c = differential(m.arr, m.tv, m.actions);
    ShortestBarReport rep = shortest_bar_leaf_check(m, c, barcode(c).first);
    CHECK(rep.skipped);
}

TEST_CASE("target policies are deterministic and may differ") {
    Model m = build_model(fixtures::eight_point());
    Leaf a4 = leaf_by_face(m, "a4");
    int w1 = pick_target(m, a4, TargetPolicy::SmallestEdgeLabel);
    int w2 = pick_target(m, a4, TargetPolicy::TowardRoot);
    CHECK(m.arr.faces[w1].id == m.arr.faces[pick_target(m, a4, TargetPolicy::SmallestEdgeLabel)].id);
    CHECK(m.arr.faces[w2].id == m.arr.faces[pick_target(m, a4, TargetPolicy::TowardRoot)].id);
}
