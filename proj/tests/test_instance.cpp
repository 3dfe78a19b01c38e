#include "cylfloer/action.hpp"

#include "fixtures.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace cylfloer;

TEST_CASE("serialization round trip") {
    Instance z = fixtures::zigzag();
    std::string text = serialize_instance(z);
    Instance back = parse_instance(text);
    CHECK(same_instance(z, back));
    CHECK(serialize_instance(back) == text);
}

TEST_CASE("unknown fields are rejected") {
    std::string text = serialize_instance(fixtures::zigzag());
    auto j = nlohmann::ordered_json::parse(text);
    j["extra"] = 1;
    CHECK_THROWS_AS(parse_instance(j.dump()), ValidationError);
    j.erase("extra");
    j["trees"]["top"]["vertices"][0]["color"] = "red";
    CHECK_THROWS_AS(parse_instance(j.dump()), ValidationError);
}

TEST_CASE("format tag is mandatory") {
    auto j = to_json(fixtures::zigzag());
    j["format"] = "cyl-floer/2";
    CHECK_THROWS_AS(parse_instance(j.dump()), ValidationError);
    j.erase("format");
    CHECK_THROWS_AS(parse_instance(j.dump()), ValidationError);
}

TEST_CASE("validate accepts the worked instances") {
    CHECK(validate(fixtures::zigzag()).valid());
    CHECK(validate(fixtures::base_case(Rational(1), Rational(1))).valid());
    CHECK(validate(fixtures::eight_point()).valid());
}

TEST_CASE("both roots in one tree is rejected") {
    // The bottom tree's unbounded face placed above the base: its root would
    // have to touch the upper half, which contradicts the encoding.
    Instance inst;
    inst.n = 1;
    inst.top.root = "R1";
    inst.top.vertices = {{"R1", Weight::unbounded()}, {"B", Weight::of(1)}};
    inst.top.edges = {{2, "R1", "B"}};
    inst.bottom.root = "R2";
    inst.bottom.vertices = {{"A", Weight::of(1)}, {"R2", Weight::unbounded()}};
    inst.bottom.edges = {{1, "R2", "A"}};
    ValidationReport rep = validate(inst);
    CHECK_FALSE(rep.valid());
}

TEST_CASE("structural defects are named") {
    Instance z = fixtures::zigzag();
    z.top.edges[0].label = 2; // duplicate label, parity break
    CHECK_FALSE(validate(z).valid());

    Instance w = fixtures::zigzag();
    w.top.vertices[1].area = Weight::of(Rational(-1));
    CHECK_FALSE(validate(w).valid());

    Instance v = fixtures::zigzag();
    v.top.vertices[1].area = Weight::unbounded(); // second unbounded face in the tree
    CHECK_FALSE(validate(v).valid());
}

TEST_CASE("nonzero defect invalidates") {
    Instance b = fixtures::base_case(Rational(1), Rational(2));
    ValidationReport rep = validate(b);
    CHECK_FALSE(rep.valid());
    bool found = false;
    for (const auto& r : rep.rules)
        if (r.rule == "zero_exactness_defect" && !r.passed) found = true;
    CHECK(found);
}

TEST_CASE("tied actions only warn") {
    // Two stacked lenses with equal subtree sums create an action collision
    // while remaining a perfectly valid instance.
    Instance z = fixtures::zigzag();
    z.top.vertices[2].area = Weight::of(1);    // B2 = 1
    z.bottom.vertices[1].area = Weight::of(1); // A1 = 1
    z.bottom.vertices[2].area = Weight::of(1); // A2 = 1: defect 1-1+1-1 = 0
    ValidationReport rep = validate(z);
    CHECK(rep.valid());
    CHECK_FALSE(rep.warnings.empty());
}

TEST_CASE("rotation relabels cyclically") {
    Instance z = fixtures::zigzag();
    Instance r = rotate_labels(z, 2);
    CHECK(validate(r).valid());
    CHECK_FALSE(same_instance(z, r));
    CHECK(same_instance(rotate_labels(r, 2), z));
}
