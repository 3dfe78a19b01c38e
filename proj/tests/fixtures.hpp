#pragma once

#include "cylfloer/instance.hpp"

namespace cylfloer::fixtures {

// Unique two-point shape: one lens above the base, one below, equal areas.
inline Instance base_case(const Rational& top_lens, const Rational& bottom_lens) {
    Instance inst;
    inst.n = 1;
    inst.top.root = "R1";
    inst.top.vertices = {{"R1", Weight::unbounded()}, {"B", Weight::of(bottom_lens)}};
    inst.top.edges = {{2, "R1", "B"}};
    inst.bottom.root = "R2";
    inst.bottom.vertices = {{"A", Weight::of(top_lens)}, {"R2", Weight::unbounded()}};
    inst.bottom.edges = {{1, "A", "R2"}};
    return inst;
}

// Four-point zigzag with lens areas B1=1, B2=3 below and A1=A2=2 above.
inline Instance zigzag() {
    Instance inst;
    inst.n = 2;
    inst.top.root = "R1";
    inst.top.vertices = {{"R1", Weight::unbounded()}, {"B1", Weight::of(1)}, {"B2", Weight::of(3)}};
    inst.top.edges = {{1, "R1", "B1"}, {3, "R1", "B2"}};
    inst.bottom.root = "R2";
    inst.bottom.vertices = {{"R2", Weight::unbounded()}, {"A1", Weight::of(2)}, {"A2", Weight::of(2)}};
    inst.bottom.edges = {{2, "A1", "R2"}, {4, "A2", "R2"}};
    return inst;
}

// Eight-point example with three leaves (a4, a2, b4); weights chosen with
// zero defect and pairwise distinct action values.
inline Instance eight_point() {
    Instance inst;
    inst.n = 4;
    inst.top.root = "a0";
    inst.top.vertices = {{"a0", Weight::unbounded()},
                         {"a1", Weight::of(2)},
                         {"a2", Weight::of(1)},
                         {"a3", Weight::of(1)},
                         {"a4", Weight::of(1)}};
    inst.top.edges = {{1, "a0", "a1"}, {7, "a3", "a1"}, {3, "a3", "a4"}, {5, "a2", "a1"}};
    inst.bottom.root = "b0";
    inst.bottom.vertices = {{"b0", Weight::unbounded()},
                            {"b1", Weight::of(1)},
                            {"b2", Weight::of(1)},
                            {"b3", Weight::of(2)},
                            {"b4", Weight::of(4)}};
    inst.bottom.edges = {{8, "b1", "b0"}, {2, "b1", "b2"}, {4, "b3", "b2"}, {6, "b3", "b4"}};
    return inst;
}

} // namespace cylfloer::fixtures
