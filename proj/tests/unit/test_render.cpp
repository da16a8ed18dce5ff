#include "fixtures.hpp"
#include "htk/render.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace htk;

namespace {

std::size_t count(const std::string &hay, const std::string &needle) {
    std::size_t n = 0;
    for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1))
        ++n;
    return n;
}

} // namespace

TEST_SUITE("render") {

TEST_CASE("letters") {
    CHECK(class_letter(0) == "A");
    CHECK(class_letter(25) == "Z");
    CHECK(class_letter(26) == "AA");
    CHECK(class_letter(27) == "AB");
    CHECK(rational_str(Rational(-11, 2)) == "-11/2");
}

TEST_CASE("P2 layout") {
    const auto arr = fixtures::p2(1);
    const auto en = enumerate_classes(arr);
    const auto plot = plot_layout(arr, en);
    CHECK(plot.axes == std::array<std::size_t, 2>{0, 1});
    CHECK(plot.lines.size() == 6);
    REQUIRE(plot.regions.size() == 3);
    CHECK(plot.regions[0].polygon.size() == 3);
    CHECK(plot.regions[1].polygon.size() == 6);
    CHECK(plot.regions[2].polygon.size() == 3);
    for (const auto &ln : plot.lines) {
        CHECK(ln.level.get_den() == 2);
        for (const auto &end : ln.ends)
            for (std::size_t c = 0; c < 2; ++c) {
                CHECK(end[c] >= plot.lo[c] - 1e-9);
                CHECK(end[c] <= plot.hi[c] + 1e-9);
            }
    }
    // every region is counter-clockwise
    for (const auto &reg : plot.regions) {
        double area = 0;
        const auto &P = reg.polygon;
        for (std::size_t i = 0; i < P.size(); ++i)
            area += P[i][0] * P[(i + 1) % P.size()][1] - P[(i + 1) % P.size()][0] * P[i][1];
        CHECK(area > 0);
    }
}

TEST_CASE("ASCII letters match the chamber of each lattice point") {
    const auto arr = fixtures::p2(1);
    const auto en = enumerate_classes(arr);
    const auto plot = plot_layout(arr, en);
    std::istringstream in(render_ascii(arr, en));
    std::string line;
    std::getline(in, line);
    CHECK(line == "axes: a1 (right), a2 (up)");
    for (int i = 0; i < 3; ++i)
        std::getline(in, line);
    CHECK(line == "C = (0,0,0)");
    const long ulo = std::lround(std::ceil(plot.lo[0]));
    std::size_t cells = 0;
    for (long v = std::lround(std::floor(plot.hi[1])); std::getline(in, line); --v)
        for (std::size_t col = 0; col < line.size(); col += 2) {
            const long u = ulo + static_cast<long>(col / 2);
            const long a[3] = {u, v, 1 - u - v};
            // the class is read off from the sum of floor(a_i / 5): -2, -1, 0 -> A, B, C
            std::int64_t s = 0;
            for (long ai : a)
                s += floor_div(ai, 5);
            CHECK(line[col] == static_cast<char>('A' + s + 2));
            ++cells;
        }
    CHECK(cells > 10);
}

TEST_CASE("SVG") {
    const auto arr = fixtures::p2(1);
    const auto en = enumerate_classes(arr);
    const auto svg = render_svg(arr, en);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(count(svg, "class=\"hyperplane\"") == 6);
    CHECK(count(svg, "class=\"chamber\"") == 3);
    CHECK(svg.find("a3 = -11/2") != std::string::npos);
    CHECK(svg == render_svg(arr, en));
}

TEST_CASE("needs a plane") {
    const auto arr = fixtures::torus(1);
    const auto en = enumerate_classes(arr);
    CHECK(fixtures::error_kind([&] { plot_layout(arr, en); }) == ErrorKind::InvalidInput);
    const auto sq = fixtures::torus(2);
    const auto es = enumerate_classes(sq);
    CHECK(plot_layout(sq, es).lines.size() == 4);
}

}
