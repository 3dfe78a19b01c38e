#include "cylfloer/render.hpp"

#include "fixtures.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace cylfloer;

namespace {
std::string svg_of(const Instance& inst, const std::string& what) {
    Model m = build_model(inst);
    Barcode bc = barcode(differential(m.arr, m.tv, m.actions)).first;
    return render_svg(m, bc, what);
}
} // namespace

TEST_CASE("svg output is byte stable") {
    std::string a = svg_of(fixtures::zigzag(), "all");
    std::string b = svg_of(fixtures::zigzag(), "all");
    CHECK(a == b);
    CHECK(a.find("<svg") == 0);
    CHECK(a.rfind("</svg>\n") == a.size() - 7);
}

TEST_CASE("zigzag barcode panel carries the exact endpoints") {
    std::string s = svg_of(fixtures::zigzag(), "barcode");
    CHECK(s.find("[-1, inf)") != std::string::npos);
    CHECK(s.find("[2, inf)") != std::string::npos);
    CHECK(s.find("[0, 1)") != std::string::npos);
}

TEST_CASE("base case has exactly two infinite bars drawn") {
    std::string s = svg_of(fixtures::base_case(Rational(1), Rational(1)), "barcode");
    std::size_t count = 0, pos = 0;
    while ((pos = s.find(", inf)", pos)) != std::string::npos) {
        ++count;
        pos += 6;
    }
    CHECK(count == 2);
}

TEST_CASE("eight point tree panel highlights three leaves") {
    std::string s = svg_of(fixtures::eight_point(), "trees");
    std::size_t count = 0, pos = 0;
    while ((pos = s.find("fill=\"#e05555\"", pos)) != std::string::npos) {
        ++count;
        pos += 10;
    }
    CHECK(count == 3);
}

TEST_CASE("text barcode is aligned and complete") {
    Model m = build_model(fixtures::zigzag());
    Barcode bc = barcode(differential(m.arr, m.tv, m.actions)).first;
    std::string t = render_barcode_text(bc);
    CHECK(t.find("[-1, inf)") != std::string::npos);
    CHECK(t.find("[0, 1)") != std::string::npos);
    CHECK(t.find('>') != std::string::npos);
}
