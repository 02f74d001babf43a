#pragma once

#include "carver/geometry.h"
#include "carver/grid.h"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace carver {

enum class ShapeKind { Segment, Polyline, Circle, Koch, Carpet, Maze };

std::string to_string(ShapeKind kind);
ShapeKind parse_shape_kind(const std::string& name);

struct ShapeSpec {
    ShapeKind kind = ShapeKind::Segment;
    int d = 2;
    int resolution = 0;
    std::vector<Point> points;   // segment endpoints, polyline vertices, koch base
    Point center{};              // circle
    double radius = 0.0;         // circle
    int depth = 0;               // koch, carpet
    std::uint64_t seed = 0;      // maze
};

/// Default settings for a kind at a given resolution: the middle horizontal
/// segment, a Koch curve over y = 1/4, a centred circle of radius 3/8, and
/// so on. Depth defaults to the largest value the resolution admits.
ShapeSpec default_shape(ShapeKind kind, int resolution);

/// Supercover rasterization; always face-connected.
DiscreteContinuum rasterize_shape(const ShapeSpec& spec);

/// Analytic dimension; nullopt for the maze.
std::optional<double> known_dimension(ShapeKind kind);

/// Vertices of the depth-n Koch curve over the segment a-b (bump to the left).
std::vector<Point> koch_vertices(const Point& a, const Point& b, int depth);

}  // namespace carver
