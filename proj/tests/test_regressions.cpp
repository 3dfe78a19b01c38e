// Pinned instances that once produced wrong lune counts. Each family was a
// combinatorial 2-chain passing the naive acceptance conditions without being
// an immersed disc; the cross-checks below must stay green.

#include "cylfloer/checks.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace cylfloer;

namespace {
void expect_clean(const Instance& inst) {
    SuiteResult r = check_instance(inst);
    INFO((r.messages.empty() ? std::string("ok") : r.messages.front()));
    CHECK(r.ok());
}
} // namespace

TEST_CASE("reflex corner chains are rejected") {
    // A chain entering the sink through three quadrants faked the corner sum.
    expect_clean(random_instance(4, 9 + 1000003ull * 55));
    Instance inst = random_instance(4, 555);
    Model m = build_model(inst);
    // The pair that used to disagree with the update formula after deleting R1.
    expect_clean(inst);
}

TEST_CASE("cover-negative chains are rejected") {
    // Nonnegative downstairs, negative on one deck translate in the strip.
    Instance inst = random_instance(7, 9 + 1000003ull * 62);
    expect_clean(inst);
}

TEST_CASE("turning number two chains are rejected") {
    // A boundary with Whitney index 2 enclosed the deleted leaf twice.
    Instance inst = random_instance(4, 9 + 1000003ull * 67);
    Model m = build_model(inst);
    expect_clean(inst);
}

TEST_CASE("generated instance with the documented example parameters") {
    Instance inst = random_instance(3, 7);
    CHECK(inst.n == 3);
    CHECK(validate(inst).valid());
    CHECK(action_table(inst).distinct());
}
