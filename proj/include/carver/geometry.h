#pragma once

#include "carver/grid.h"

#include <array>
#include <vector>

namespace carver {

/// Point in unit-cube coordinates; slots beyond the dimension stay zero.
using Point = std::array<double, kMaxDim>;

Point make_point(std::initializer_list<double> coords);
double distance(const Point& a, const Point& b, int d);

/// Closed axis-aligned box [lo, hi] in unit coordinates. Measures treat it
/// as open where the construction calls for open sets.
struct GeoBox {
    Point lo{};
    Point hi{};

    double diameter(int d) const;
};

/// Unit-coordinate origin corner of a cell at a given resolution.
Point cell_corner(const CellIndex& cell, int resolution, int d);

/// Grid cells of resolution M traversed by the segment a-b, as a
/// face-connected chain. Cells are half-open [i, i+1) with coordinate 1
/// assigned to the last cell; exact ties on a vertex step the lowest axis
/// first.
std::vector<CellIndex> rasterize_segment(const Point& a, const Point& b, int d, int M);

}  // namespace carver
