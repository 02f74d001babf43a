#include "carver/generators.h"

#include "carver/errors.h"
#include "carver/random.h"

#include <cmath>
#include <numbers>

namespace carver {

std::string to_string(ShapeKind kind) {
    switch (kind) {
        case ShapeKind::Segment: return "segment";
        case ShapeKind::Polyline: return "polyline";
        case ShapeKind::Circle: return "circle";
        case ShapeKind::Koch: return "koch";
        case ShapeKind::Carpet: return "carpet";
        case ShapeKind::Maze: return "maze";
    }
    return "unknown";
}

ShapeKind parse_shape_kind(const std::string& name) {
    for (auto kind : {ShapeKind::Segment, ShapeKind::Polyline, ShapeKind::Circle, ShapeKind::Koch,
                      ShapeKind::Carpet, ShapeKind::Maze}) {
        if (to_string(kind) == name) return kind;
    }
    fail(ErrorKind::Config, "unknown shape '" + name + "'");
}

namespace {

int max_power_of_three_dividing(int r) {
    int depth = 0;
    while (r > 0 && r % 3 == 0) {
        r /= 3;
        ++depth;
    }
    return depth;
}

int pow3(int n) {
    int p = 1;
    for (int i = 0; i < n; ++i) p *= 3;
    return p;
}

void check_in_unit_cube(const Point& p, int d) {
    for (int axis = 0; axis < d; ++axis) {
        if (!(p[axis] >= 0.0 && p[axis] <= 1.0))
            fail(ErrorKind::Config, "shape point outside the unit cube");
    }
}

void append_polyline(std::vector<CellIndex>& out, const std::vector<Point>& pts, int d, int R) {
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        auto seg = rasterize_segment(pts[i], pts[i + 1], d, R);
        out.insert(out.end(), seg.begin(), seg.end());
    }
    if (pts.size() == 1) {
        auto seg = rasterize_segment(pts[0], pts[0], d, R);
        out.insert(out.end(), seg.begin(), seg.end());
    }
}

std::vector<CellIndex> carpet_cells(int R, int depth) {
    const int c = R / pow3(depth);
    std::vector<CellIndex> out;
    for (int x = 0; x < R; ++x) {
        for (int y = 0; y < R; ++y) {
            int u = x / c, v = y / c;
            bool keep = true;
            for (int level = 0; level < depth && keep; ++level) {
                if (u % 3 == 1 && v % 3 == 1) keep = false;
                u /= 3;
                v /= 3;
            }
            if (keep) out.push_back(make_cell({x, y}));
        }
    }
    return out;
}

// Uniform spanning tree of the m x m node lattice (Wilson's algorithm),
// carved into the cell grid with nodes at even coordinates and each tree
// edge filling the cell between its endpoints. At even R the last node row
// and column sit one cell short of the far faces, so each of their nodes
// gets a one-cell tooth reaching the face.
std::vector<CellIndex> maze_cells(int R, std::uint64_t seed) {
    const int m = (R - 1) / 2 + 1;
    const std::size_t nodes = static_cast<std::size_t>(m) * m;
    Rng rng(seed);
    std::vector<char> in_tree(nodes, 0);
    std::vector<std::int64_t> next(nodes, -1);
    in_tree[rng.below(nodes)] = 1;

    auto random_neighbor = [&](std::size_t v) {
        const int x = static_cast<int>(v / m), y = static_cast<int>(v % m);
        std::array<std::size_t, 4> nb{};
        int count = 0;
        if (x > 0) nb[count++] = v - m;
        if (x + 1 < m) nb[count++] = v + m;
        if (y > 0) nb[count++] = v - 1;
        if (y + 1 < m) nb[count++] = v + 1;
        return nb[rng.below(static_cast<std::uint64_t>(count))];
    };

    for (std::size_t start = 0; start < nodes; ++start) {
        std::size_t v = start;
        while (!in_tree[v]) {
            next[v] = static_cast<std::int64_t>(random_neighbor(v));
            v = static_cast<std::size_t>(next[v]);
        }
        v = start;
        while (!in_tree[v]) {
            in_tree[v] = 1;
            v = static_cast<std::size_t>(next[v]);
        }
    }

    std::vector<CellIndex> out;
    out.reserve(2 * nodes);
    for (std::size_t v = 0; v < nodes; ++v) {
        const int x = static_cast<int>(v / m), y = static_cast<int>(v % m);
        out.push_back(make_cell({2 * x, 2 * y}));
        if (next[v] >= 0) {
            const auto w = static_cast<std::size_t>(next[v]);
            const int wx = static_cast<int>(w / m), wy = static_cast<int>(w % m);
            out.push_back(make_cell({x + wx, y + wy}));
        }
        if (R % 2 == 0 && x == m - 1) out.push_back(make_cell({R - 1, 2 * y}));
        if (R % 2 == 0 && y == m - 1) out.push_back(make_cell({2 * x, R - 1}));
    }
    return out;
}

}  // namespace

std::vector<Point> koch_vertices(const Point& a, const Point& b, int depth) {
    std::vector<Point> pts{a, b};
    const double c = std::cos(std::numbers::pi / 3), s = std::sin(std::numbers::pi / 3);
    for (int level = 0; level < depth; ++level) {
        std::vector<Point> refined;
        refined.reserve(4 * pts.size());
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const Point& p = pts[i];
            const Point& q = pts[i + 1];
            const double dx = (q[0] - p[0]) / 3, dy = (q[1] - p[1]) / 3;
            const Point u = make_point({p[0] + dx, p[1] + dy});
            const Point w = make_point({p[0] + 2 * dx, p[1] + 2 * dy});
            const Point peak = make_point({u[0] + c * dx - s * dy, u[1] + s * dx + c * dy});
            refined.push_back(p);
            refined.push_back(u);
            refined.push_back(peak);
            refined.push_back(w);
        }
        refined.push_back(pts.back());
        pts = std::move(refined);
    }
    return pts;
}

ShapeSpec default_shape(ShapeKind kind, int resolution) {
    ShapeSpec spec;
    spec.kind = kind;
    spec.resolution = resolution;
    switch (kind) {
        case ShapeKind::Segment:
            spec.points = {make_point({0.0, 0.5}), make_point({1.0, 0.5})};
            break;
        case ShapeKind::Polyline:
            spec.points = {make_point({0.0, 0.25}), make_point({0.5, 0.75}), make_point({1.0, 0.25})};
            break;
        case ShapeKind::Circle:
            spec.center = make_point({0.5, 0.5});
            spec.radius = 0.375;
            break;
        case ShapeKind::Koch:
            spec.points = {make_point({0.0, 0.25}), make_point({1.0, 0.25})};
            spec.depth = max_power_of_three_dividing(resolution);
            break;
        case ShapeKind::Carpet:
            spec.depth = max_power_of_three_dividing(resolution);
            break;
        case ShapeKind::Maze:
            spec.seed = 1;
            break;
    }
    return spec;
}

DiscreteContinuum rasterize_shape(const ShapeSpec& spec) {
    const int d = spec.d;
    const int R = spec.resolution;
    if (d < 1 || d > kMaxDim) fail(ErrorKind::UnsupportedDimension, "unsupported dimension");
    if (R < 1) fail(ErrorKind::Config, "resolution must be positive");
    if (spec.depth < 0) fail(ErrorKind::Config, "depth must be non-negative");

    std::vector<CellIndex> cells;
    switch (spec.kind) {
        case ShapeKind::Segment:
        case ShapeKind::Polyline: {
            const std::size_t need = spec.kind == ShapeKind::Segment ? 2 : 1;
            if (spec.points.size() < need || (spec.kind == ShapeKind::Segment && spec.points.size() != 2))
                fail(ErrorKind::Config, to_string(spec.kind) + ": wrong number of points");
            for (const auto& p : spec.points) check_in_unit_cube(p, d);
            append_polyline(cells, spec.points, d, R);
            break;
        }
        case ShapeKind::Circle: {
            if (d != 2) fail(ErrorKind::Config, "circle requires d = 2");
            if (spec.radius <= 0.0) fail(ErrorKind::Config, "circle radius must be positive");
            for (int axis = 0; axis < 2; ++axis) {
                if (spec.center[axis] - spec.radius < 0.0 || spec.center[axis] + spec.radius > 1.0)
                    fail(ErrorKind::Config, "circle leaves the unit square");
            }
            const int n = std::max(64, 8 * R);
            std::vector<Point> pts;
            pts.reserve(static_cast<std::size_t>(n) + 1);
            for (int i = 0; i <= n; ++i) {
                const double t = 2 * std::numbers::pi * (i % n) / n;
                pts.push_back(make_point({spec.center[0] + spec.radius * std::cos(t),
                                          spec.center[1] + spec.radius * std::sin(t)}));
            }
            append_polyline(cells, pts, d, R);
            break;
        }
        case ShapeKind::Koch: {
            if (d != 2) fail(ErrorKind::Config, "koch requires d = 2");
            if (R % pow3(spec.depth) != 0)
                fail(ErrorKind::Config, "koch depth " + std::to_string(spec.depth) +
                                            " needs a resolution multiple of " + std::to_string(pow3(spec.depth)));
            const Point a = spec.points.size() == 2 ? spec.points[0] : make_point({0.0, 0.25});
            const Point b = spec.points.size() == 2 ? spec.points[1] : make_point({1.0, 0.25});
            auto pts = koch_vertices(a, b, spec.depth);
            for (const auto& p : pts) check_in_unit_cube(p, d);
            append_polyline(cells, pts, d, R);
            break;
        }
        case ShapeKind::Carpet: {
            if (d != 2) fail(ErrorKind::Config, "carpet requires d = 2");
            if (R % pow3(spec.depth) != 0)
                fail(ErrorKind::Config, "carpet depth " + std::to_string(spec.depth) +
                                            " needs a resolution multiple of " + std::to_string(pow3(spec.depth)));
            cells = carpet_cells(R, spec.depth);
            break;
        }
        case ShapeKind::Maze: {
            if (d != 2) fail(ErrorKind::Config, "maze requires d = 2");
            if (R < 3) fail(ErrorKind::Config, "maze needs resolution >= 3");
            cells = maze_cells(R, spec.seed);
            break;
        }
    }
    return DiscreteContinuum::make(d, R, CellSet::from_unsorted(d, std::move(cells)));
}

std::optional<double> known_dimension(ShapeKind kind) {
    switch (kind) {
        case ShapeKind::Segment:
        case ShapeKind::Polyline:
        case ShapeKind::Circle:
            return 1.0;
        case ShapeKind::Koch:
            return std::log(4.0) / std::log(3.0);
        case ShapeKind::Carpet:
            return std::log(8.0) / std::log(3.0);
        case ShapeKind::Maze:
            return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace carver
