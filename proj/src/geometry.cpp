#include "carver/geometry.h"

#include "carver/errors.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace carver {

Point make_point(std::initializer_list<double> coords) {
    if (coords.size() > static_cast<std::size_t>(kMaxDim))
        fail(ErrorKind::UnsupportedDimension, "point has more than kMaxDim coordinates");
    Point p{};
    std::size_t i = 0;
    for (double v : coords) p[i++] = v;
    return p;
}

double distance(const Point& a, const Point& b, int d) {
    double sum = 0.0;
    for (int axis = 0; axis < d; ++axis) {
        const double diff = a[axis] - b[axis];
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

double GeoBox::diameter(int d) const { return distance(lo, hi, d); }

Point cell_corner(const CellIndex& cell, int resolution, int d) {
    Point p{};
    for (int axis = 0; axis < d; ++axis) p[axis] = static_cast<double>(cell[axis]) / resolution;
    return p;
}

namespace {

double snap(double g) {
    const double r = std::round(g);
    return std::abs(g - r) < 1e-9 ? r : g;
}

std::int32_t cell_of(double g, int M) {
    auto i = static_cast<std::int64_t>(std::floor(g));
    i = std::clamp<std::int64_t>(i, 0, M - 1);
    return static_cast<std::int32_t>(i);
}

}  // namespace

std::vector<CellIndex> rasterize_segment(const Point& a, const Point& b, int d, int M) {
    std::array<double, kMaxDim> ga{}, gb{};
    CellIndex cell, end;
    for (int axis = 0; axis < d; ++axis) {
        ga[axis] = snap(a[axis] * M);
        gb[axis] = snap(b[axis] * M);
        cell[axis] = cell_of(ga[axis], M);
        end[axis] = cell_of(gb[axis], M);
    }

    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::array<std::int32_t, kMaxDim> remaining{}, step{};
    std::array<double, kMaxDim> t_max{}, t_delta{};
    for (int axis = 0; axis < d; ++axis) {
        const std::int32_t diff = end[axis] - cell[axis];
        remaining[axis] = std::abs(diff);
        step[axis] = diff > 0 ? 1 : (diff < 0 ? -1 : 0);
        const double dir = gb[axis] - ga[axis];
        if (step[axis] == 0 || dir == 0.0 || (dir > 0) != (step[axis] > 0)) {
            t_max[axis] = kInf;
            t_delta[axis] = 0.0;
            continue;
        }
        const double boundary = step[axis] > 0 ? cell[axis] + 1.0 : static_cast<double>(cell[axis]);
        t_max[axis] = (boundary - ga[axis]) / dir;
        t_delta[axis] = 1.0 / std::abs(dir);
    }

    std::vector<CellIndex> out{cell};
    for (;;) {
        int best = -1;
        for (int axis = 0; axis < d; ++axis) {
            if (remaining[axis] == 0) continue;
            if (best < 0 || t_max[axis] < t_max[best] - 1e-12) best = axis;
        }
        if (best < 0) break;
        cell[best] += step[best];
        --remaining[best];
        t_max[best] += t_delta[best];
        out.push_back(cell);
    }
    return out;
}

}  // namespace carver
