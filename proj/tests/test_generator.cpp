#include "cylfloer/generator.hpp"

#include "cylfloer/checks.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace cylfloer;

TEST_CASE("n=1 generation is the base shape with equal lenses") {
    Instance inst = random_instance(1, 123);
    CHECK(inst.n == 1);
    Model m = build_model(inst);
    Rational top_lens, bottom_lens;
    for (const auto& f : m.arr.faces) {
        if (f.is_root) continue;
        (f.upper ? top_lens : bottom_lens) = f.area.value();
    }
    CHECK(top_lens == bottom_lens);
}

TEST_CASE("generation is deterministic in the seed") {
    Instance a = random_instance(3, 7);
    Instance b = random_instance(3, 7);
    CHECK(serialize_instance(a) == serialize_instance(b));
    Instance c = random_instance(3, 8);
    CHECK(serialize_instance(a) != serialize_instance(c));
}

TEST_CASE("generated instances validate with distinct actions") {
    for (int seed = 0; seed < 12; ++seed) {
        Instance inst = random_instance(1 + seed % 5, 100 + seed);
        CHECK(validate(inst).valid());
        CHECK(action_table(inst).distinct());
        CHECK(inst.n == 1 + seed % 5);
    }
}

TEST_CASE("generated instances pass the full suite") {
    for (int seed = 0; seed < 4; ++seed) {
        Instance inst = random_instance(4, 555 + seed);
        SuiteResult r = check_instance(inst);
        INFO((r.messages.empty() ? std::string("ok") : r.messages.front()));
        CHECK(r.ok());
    }
}
