#include "cylfloer/lunes.hpp"

#include "fixtures.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

using namespace cylfloer;

namespace {
Model zig() { return build_model(fixtures::zigzag()); }

long long nu_of(const Model& m, const Lune& l, const FaceId& id) {
    return l.nu[m.arr.face_of(id)];
}
} // namespace

TEST_CASE("base case: two lunes from s1 to s2") {
    Model m = build_model(fixtures::base_case(Rational(1), Rational(1)));
    auto lunes = enumerate_lunes(m.arr, m.actions, 0, 1);
    REQUIRE(lunes.size() == 2);
    for (const auto& l : lunes) CHECK(l.area == Rational(1));
    // One lens each: the supports are the two non-root faces.
    std::set<FaceId> supports;
    for (const auto& l : lunes)
        for (std::size_t f = 0; f < m.arr.faces.size(); ++f)
            if (l.nu[f]) supports.insert(m.arr.faces[f].id);
    CHECK(supports == std::set<FaceId>{"A", "B"});
    CHECK(enumerate_lunes(m.arr, m.actions, 1, 0).empty());
}

TEST_CASE("zigzag: single lune from s2 to s1 over B1") {
    Model m = zig();
    auto lunes = enumerate_lunes(m.arr, m.actions, 1, 0);
    REQUIRE(lunes.size() == 1);
    CHECK(nu_of(m, lunes[0], "B1") == 1);
    CHECK(nu_of(m, lunes[0], "B2") == 0);
    CHECK(nu_of(m, lunes[0], "A1") == 0);
    CHECK(nu_of(m, lunes[0], "A2") == 0);
    CHECK(lunes[0].area == Rational(1));
}

TEST_CASE("zigzag: no lune against the action order") {
    Model m = zig();
    CHECK(enumerate_lunes(m.arr, m.actions, 0, 1).empty());
}

TEST_CASE("zigzag differential counts") {
    Model m = zig();
    FloerComplex c = differential(m.arr, m.tv, m.actions);
    std::vector<std::pair<int, int>> ones = {{1, 0}, {1, 2}, {3, 2}, {3, 0}};
    for (int q = 0; q < 4; ++q)
        for (int p = 0; p < 4; ++p) {
            bool expect_one =
                std::find(ones.begin(), ones.end(), std::make_pair(q, p)) != ones.end();
            CHECK(c.count[q][p] == (expect_one ? 1 : 0));
        }
    CHECK(c.bnd[1] == ((1ull << 0) | (1ull << 2)));
    CHECK(c.bnd[3] == ((1ull << 0) | (1ull << 2)));
    CHECK(c.bnd[0] == 0);
    CHECK(c.bnd[2] == 0);
}

TEST_CASE("base case differential vanishes mod 2") {
    Model m = build_model(fixtures::base_case(Rational(1), Rational(1)));
    FloerComplex c = differential(m.arr, m.tv, m.actions);
    CHECK(c.count[0][1] == 2);
    CHECK(c.bnd[0] == 0);
    CHECK(c.bnd[1] == 0);
}

TEST_CASE("neighbor lunes of the zigzag") {
    Model m = zig();
    auto nls = neighbor_lunes(m.arr, m.tv, m.actions);
    REQUIRE(nls.size() == 4);
    // Edge 3 points away from the root: lune from s4 to s3 with area 3.
    CHECK(nls[2].from == 3);
    CHECK(nls[2].to == 2);
    CHECK(nls[2].area == Rational(3));
    // Edge 1 of the base case points towards the root: lune from s1 to s2.
    Model b = build_model(fixtures::base_case(Rational(1), Rational(1)));
    auto base_nls = neighbor_lunes(b.arr, b.tv, b.actions);
    CHECK(base_nls[0].from == 0);
    CHECK(base_nls[0].to == 1);
    CHECK(base_nls[0].area == Rational(1));
}

TEST_CASE("eight point: neighbor lune of edge 3 is the leaf a4") {
    Model m = build_model(fixtures::eight_point());
    auto nls = neighbor_lunes(m.arr, m.tv, m.actions);
    const auto& nl = nls[2];
    for (std::size_t f = 0; f < m.arr.faces.size(); ++f)
        CHECK(nl.nu[f] == (m.arr.faces[f].id == "a4" ? 1 : 0));
}

TEST_CASE("lune areas equal action gaps everywhere") {
    Model m = build_model(fixtures::eight_point());
    for (int q = 0; q < m.arr.m; ++q)
        for (int p = 0; p < m.arr.m; ++p) {
            if (q == p) continue;
            for (const auto& l : enumerate_lunes(m.arr, m.actions, q, p))
                CHECK(l.area == m.actions[q] - m.actions[p]);
        }
}

TEST_CASE("at most two lunes per ordered pair") {
    Model m = build_model(fixtures::eight_point());
    for (int q = 0; q < m.arr.m; ++q)
        for (int p = 0; p < m.arr.m; ++p)
            if (q != p) CHECK(enumerate_lunes(m.arr, m.actions, q, p).size() <= 2);
}

TEST_CASE("wrap bound is stable at the default") {
    Model m = build_model(fixtures::eight_point());
    FloerComplex a = differential(m.arr, m.tv, m.actions, kDefaultMaxWraps);
    FloerComplex b = differential(m.arr, m.tv, m.actions, kDefaultMaxWraps + 1);
    CHECK(a.count == b.count);
}
