#pragma once

#include "htk/arrangement.hpp"

#include <string>

namespace htk {

// The coset is drawn in the coordinates (a_{c1}, a_{c2}) of the two pivot
// columns of tperp, so it needs n - k = 2.
struct PlotLine {
    std::size_t coordinate = 0;
    Rational level; // kp - 1/2
    std::array<std::array<double, 2>, 2> ends{};
};

struct PlotRegion {
    std::size_t cls = 0;
    std::vector<std::array<double, 2>> polygon; // counter-clockwise
    std::array<double, 2> centroid{};
};

struct Plot {
    std::array<std::size_t, 2> axes{};
    std::array<double, 2> lo{}, hi{}; // window
    std::vector<PlotLine> lines;
    std::vector<PlotRegion> regions;
    std::vector<std::array<double, 2>> lattice_points;
};

/// Window: bounding box of the representative chambers plus `margin` on each side.
Plot plot_layout(const Arrangement &arr, const ChamberEnumeration &en, double margin = 0.3);

std::string render_svg(const Arrangement &arr, const ChamberEnumeration &en);

/// One character per lattice point of the window, the letter of its chamber class.
std::string render_ascii(const Arrangement &arr, const ChamberEnumeration &en);

std::string class_letter(std::size_t cls);
std::string rational_str(const Rational &q);

} // namespace htk
