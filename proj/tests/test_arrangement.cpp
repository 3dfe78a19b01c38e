#include "cylfloer/action.hpp"

#include "fixtures.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace cylfloer;

TEST_CASE("base case reconstructs to two arcs") {
    Arrangement arr = reconstruct_arrangement(fixtures::base_case(Rational(1), Rational(1)));
    CHECK(arr.m == 2);
    CHECK(arr.arcs.size() == 2);
    CHECK(arr.lcycle == std::vector<int>{0, 1});
    CHECK(arr.faces.size() == 4);
}

TEST_CASE("zigzag arrangement") {
    Arrangement arr = reconstruct_arrangement(fixtures::zigzag());
    CHECK(arr.arcs.size() == 4);
    CHECK(arr.lcycle == std::vector<int>{0, 1, 2, 3});
    // All four lens faces are discs with a single segment each.
    for (const auto& f : arr.faces)
        if (!f.is_root) CHECK(f.segs.size() == 1);
    // Quadrants at s2: NE=A1, NW=R1, SW=B1, SE=R2.
    auto q = arr.quad[1];
    CHECK(arr.faces[q[0]].id == "A1");
    CHECK(arr.faces[q[1]].id == "R1");
    CHECK(arr.faces[q[2]].id == "B1");
    CHECK(arr.faces[q[3]].id == "R2");
}

TEST_CASE("eight point arrangement matches the hand walk") {
    Arrangement arr = reconstruct_arrangement(fixtures::eight_point());
    CHECK(arr.faces.size() == 10);
    CHECK(arr.arcs.size() == 8);
    int roots = 0;
    for (const auto& f : arr.faces) roots += f.is_root;
    CHECK(roots == 2);
    CHECK(arr.lcycle == std::vector<int>{0, 7, 2, 3, 6, 5, 4, 1});
    std::multiset<std::pair<int, int>> up_pairs, down_pairs;
    for (const auto& a : arr.arcs)
        (a.upper ? up_pairs : down_pairs).insert({std::min(a.a, a.b), std::max(a.a, a.b)});
    CHECK(up_pairs == std::multiset<std::pair<int, int>>{{0, 1}, {2, 7}, {3, 6}, {4, 5}});
    CHECK(down_pairs == std::multiset<std::pair<int, int>>{{0, 7}, {1, 4}, {2, 3}, {5, 6}});
}

TEST_CASE("arc sides alternate along the curve") {
    for (const Instance& inst :
         {fixtures::zigzag(), fixtures::eight_point(), fixtures::base_case(Rational(2), Rational(2))}) {
        Arrangement arr = reconstruct_arrangement(inst);
        for (int t = 0; t < arr.m; ++t)
            CHECK(arr.arcs[arr.step_arc[t]].upper !=
                  arr.arcs[arr.step_arc[(t + 1) % arr.m]].upper);
    }
}

TEST_CASE("derive_trees signs and subtree weights") {
    Instance z = fixtures::zigzag();
    Arrangement arr = reconstruct_arrangement(z);
    TreeView tv = derive_trees(arr);
    CHECK(tv.sign == std::vector<int>{1, -1, 1, -1});
    CHECK(tv.subtree_weight[0] == Rational(1));
    CHECK(tv.subtree_weight[1] == Rational(2));
    CHECK(tv.subtree_weight[2] == Rational(3));
    CHECK(tv.subtree_weight[3] == Rational(2));

    Arrangement arr8 = reconstruct_arrangement(fixtures::eight_point());
    TreeView tv8 = derive_trees(arr8);
    CHECK(tv8.sign[0] == 1);  // edge 1: a0 -> a1 away from the root
    CHECK(tv8.sign[6] == -1); // edge 7: a3 -> a1 towards the root
    CHECK(tv8.subtree_weight[0] == Rational(5));
    CHECK(tv8.subtree_weight[6] == Rational(2));
}

TEST_CASE("single-edge tree subtree weight is the leaf weight") {
    Arrangement arr = reconstruct_arrangement(fixtures::base_case(Rational(3), Rational(3)));
    TreeView tv = derive_trees(arr);
    CHECK(tv.subtree_weight[0] == Rational(3));
    CHECK(tv.subtree_weight[1] == Rational(3));
}

TEST_CASE("face on both sides of the base is a conflict") {
    Instance bad;
    bad.n = 2;
    bad.top.root = "R1";
    bad.top.vertices = {{"R1", Weight::unbounded()}, {"X", Weight::of(1)}, {"Y", Weight::of(1)}};
    bad.top.edges = {{1, "R1", "X"}, {3, "X", "Y"}}; // X below edge 1 but above edge 3
    bad.bottom.root = "R2";
    bad.bottom.vertices = {{"R2", Weight::unbounded()}, {"U", Weight::of(1)}, {"V", Weight::of(1)}};
    bad.bottom.edges = {{2, "U", "R2"}, {4, "V", "R2"}};
    CHECK_THROWS_AS(reconstruct_arrangement(bad), ReconstructionConflict);
}

TEST_CASE("unmatched arc derivations are a conflict") {
    // Shape-wise fine, but the four upper faces derive four arcs once each:
    // no curve can realize this tree pair.
    Instance bad;
    bad.n = 2;
    bad.top.root = "R1";
    bad.top.vertices = {{"R1", Weight::unbounded()}, {"X", Weight::of(1)}, {"Y", Weight::of(1)}};
    bad.top.edges = {{1, "R1", "X"}, {3, "Y", "X"}};
    bad.bottom.root = "R2";
    bad.bottom.vertices = {{"R2", Weight::unbounded()}, {"U", Weight::of(1)}, {"V", Weight::of(1)}};
    bad.bottom.edges = {{2, "U", "R2"}, {4, "V", "R2"}};
    CHECK_THROWS_AS(reconstruct_arrangement(bad), ReconstructionConflict);
}

TEST_CASE("exactness coefficients depend only on the face's half") {
    for (const Instance& inst : {fixtures::zigzag(), fixtures::eight_point()}) {
        Arrangement arr = reconstruct_arrangement(inst);
        TreeView tv = derive_trees(arr);
        for (std::size_t f = 0; f < arr.faces.size(); ++f) {
            int root_half = arr.faces[f].tree == 0 ? 1 : 0;
            int face_half = arr.faces[f].upper ? 1 : 0;
            CHECK(tv.exactness_coefficient[f] == root_half - face_half);
        }
    }
}
