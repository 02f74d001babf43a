#include "carver/curve_cover.h"

#include "carver/errors.h"

#include <algorithm>
#include <cmath>
#include <map>

namespace carver {

double polyline_length(const Polyline& p) {
    double total = 0.0;
    for (std::size_t i = 1; i < p.points.size(); ++i) total += distance(p.points[i - 1], p.points[i], p.d);
    return total;
}

std::vector<double> arc_parameters(const Polyline& p) {
    std::vector<double> t(p.points.size(), 0.0);
    for (std::size_t i = 1; i < p.points.size(); ++i) t[i] = t[i - 1] + distance(p.points[i - 1], p.points[i], p.d);
    return t;
}

Point point_at(const Polyline& p, std::span<const double> params, double t) {
    if (p.points.empty()) fail(ErrorKind::Domain, "empty polyline");
    if (t <= 0.0) return p.points.front();
    if (t >= params.back()) return p.points.back();
    auto it = std::upper_bound(params.begin(), params.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - params.begin());  // params[i-1] <= t < params[i]
    const double span = params[i] - params[i - 1];
    const double u = span > 0.0 ? (t - params[i - 1]) / span : 0.0;
    Point out{};
    for (int axis = 0; axis < p.d; ++axis)
        out[axis] = p.points[i - 1][axis] + u * (p.points[i][axis] - p.points[i - 1][axis]);
    return out;
}

Point corner_point(const CubeRegion& cube, int resolution, int d) { return cell_corner(cube.origin, resolution, d); }

namespace {

std::vector<CellIndex> loop_vertices(const CubeRegion& parent, std::span<const CubeRegion> children) {
    std::vector<CellIndex> corners;
    for (const auto& child : children) corners.push_back(child.origin);
    std::sort(corners.begin(), corners.end());
    std::vector<CellIndex> loop{parent.origin};
    loop.insert(loop.end(), corners.begin(), corners.end());
    loop.push_back(parent.origin);
    return loop;
}

Polyline to_polyline(const std::vector<CellIndex>& vertices, int resolution, int d) {
    Polyline p{d, {}};
    p.points.reserve(vertices.size());
    for (const auto& v : vertices) p.points.push_back(cell_corner(v, resolution, d));
    return p;
}

}  // namespace

Polyline level_broken_line(const CubeRegion& parent, std::span<const CubeRegion> children, int resolution,
                           int d) {
    for (const auto& child : children) {
        if (!parent.contains(child)) fail(ErrorKind::Domain, "child cube is not inside its parent");
    }
    return to_polyline(loop_vertices(parent, children), resolution, d);
}

CubeHierarchy hierarchy_from_tree(const CantorTree& tree) {
    CubeHierarchy h;
    h.d = tree.d;
    h.resolution = tree.resolution;
    h.base = tree.N;
    h.s = tree.s();
    for (int n = 0; n <= tree.depth; ++n) {
        std::vector<CubeRegion> cubes;
        for (const auto* piece : tree.level(n)) cubes.push_back(piece->cube);
        h.levels.push_back(std::move(cubes));
    }
    return h;
}

CoverBudget length_budget(std::span<const std::uint64_t> r, double s, int d, int base, std::optional<double> c1,
                          double root_edge) {
    if (!(s < 1.0)) fail(ErrorKind::BudgetDivergence, "length budget diverges for s >= 1");
    if (base < 2) fail(ErrorKind::Domain, "base must be at least 2");
    if (r.empty()) fail(ErrorKind::Domain, "no level counts");

    CoverBudget budget;
    budget.base = base;
    budget.d = d;
    budget.s = s;
    budget.root_edge = root_edge;
    budget.r.assign(r.begin(), r.end());

    const double b = base;
    double c1_min = 0.0;
    for (std::size_t n = 0; n < r.size(); ++n)
        c1_min = std::max(c1_min, static_cast<double>(r[n]) / std::pow(b, s * static_cast<double>(n)));
    if (c1) {
        if (c1_min > *c1 * (1.0 + 1e-9))
            fail(ErrorKind::Precondition, "level counts exceed c1 * base^(s n)");
        budget.c1 = *c1;
    } else {
        budget.c1 = c1_min;
    }
    const double sqrt_d = std::sqrt(static_cast<double>(d));
    budget.c2 = 2.0 * budget.c1 * sqrt_d * std::pow(b, s) * root_edge;

    double running = 0.0;
    for (std::size_t n = 0; n + 1 < r.size(); ++n) {
        const double ln = 2.0 * static_cast<double>(r[n + 1]) * sqrt_d * root_edge * std::pow(b, -static_cast<double>(n));
        budget.l.push_back(ln);
        running += ln;
        budget.L_partial.push_back(running);
    }
    // Tail from the last level with unknown children onwards.
    const double first_tail = static_cast<double>(r.size() - 1);
    const double ratio = std::pow(b, s - 1.0);
    const double tail = budget.c2 * std::pow(ratio, first_tail) / (1.0 - ratio);
    budget.L = running + tail;
    return budget;
}

CoverResult cover_curve(const CubeHierarchy& h) {
    if (h.levels.empty() || h.levels[0].size() != 1)
        fail(ErrorKind::Domain, "hierarchy must have a single root cube");
    const int d = h.d;
    const std::size_t depth = h.levels.size() - 1;

    // Nesting and edge checks; children are attached to their first
    // containing parent.
    std::vector<std::vector<std::vector<CubeRegion>>> children(h.levels.size());
    for (std::size_t n = 0; n < h.levels.size(); ++n) {
        children[n].resize(h.levels[n].size());
        for (const auto& cube : h.levels[n]) {
            if (cube.edge_cells != h.levels[n][0].edge_cells) fail(ErrorKind::Domain, "mixed cube edges in a level");
        }
        if (n == 0) continue;
        if (!h.levels[n].empty() && h.levels[n - 1][0].edge_cells != h.base * h.levels[n][0].edge_cells)
            fail(ErrorKind::Domain, "level edges do not shrink by the base");
        for (const auto& cube : h.levels[n]) {
            bool placed = false;
            for (std::size_t i = 0; i < h.levels[n - 1].size() && !placed; ++i) {
                if (h.levels[n - 1][i].contains(cube)) {
                    children[n - 1][i].push_back(cube);
                    placed = true;
                }
            }
            if (!placed) fail(ErrorKind::Domain, "hierarchy is not nested at level " + std::to_string(n));
        }
    }

    std::vector<std::uint64_t> counts;
    for (const auto& level : h.levels) counts.push_back(level.size());
    double s = 0.0;
    if (h.s) {
        s = *h.s;
    } else {
        for (std::size_t n = 1; n < counts.size(); ++n) {
            if (counts[n] > 0)
                s = std::max(s, std::log(static_cast<double>(counts[n])) / (static_cast<double>(n) * std::log(h.base)));
        }
    }
    const double root_edge = h.levels[0][0].edge(h.resolution);

    CoverResult result;
    result.budget = length_budget(counts, s, d, h.base, std::nullopt, root_edge);

    const CubeRegion& root = h.levels[0][0];
    std::vector<CellIndex> g = loop_vertices(root, children[0][0]);
    result.curves.push_back(to_polyline(g, h.resolution, d));
    result.inserted_lengths.push_back(polyline_length(result.curves.back()));

    for (std::size_t n = 1; n <= depth; ++n) {
        std::map<CellIndex, std::size_t> corner_to_cube;
        for (std::size_t i = 0; i < h.levels[n].size(); ++i) corner_to_cube.emplace(h.levels[n][i].origin, i);

        std::vector<char> expanded(h.levels[n].size(), 0);
        std::vector<CellIndex> next;
        next.reserve(g.size() * 2);
        double inserted = 0.0;
        for (const auto& v : g) {
            auto it = corner_to_cube.find(v);
            if (it != corner_to_cube.end() && !expanded[it->second]) {
                expanded[it->second] = 1;
                const auto& kids = children[n][it->second];
                if (!kids.empty()) {
                    auto loop = loop_vertices(h.levels[n][it->second], kids);
                    inserted += polyline_length(to_polyline(loop, h.resolution, d));
                    next.insert(next.end(), loop.begin(), loop.end());
                    continue;
                }
            }
            next.push_back(v);
        }
        ensure(std::all_of(expanded.begin(), expanded.end(), [](char e) { return e != 0; }),
               "every level-" + std::to_string(n) + " corner lies on the previous curve");
        g = std::move(next);
        result.curves.push_back(to_polyline(g, h.resolution, d));
        result.inserted_lengths.push_back(inserted);
    }
    return result;
}

double matched_sup_distance(const Polyline& f_prev, const Polyline& f_next) {
    const auto tp = arc_parameters(f_prev);
    const auto tn = arc_parameters(f_next);
    std::vector<double> breaks;
    breaks.reserve(tp.size() + tn.size());
    std::merge(tp.begin(), tp.end(), tn.begin(), tn.end(), std::back_inserter(breaks));
    double sup = 0.0;
    for (double t : breaks)
        sup = std::max(sup, distance(point_at(f_prev, tp, t), point_at(f_next, tn, t), f_prev.d));
    return sup;
}

bool is_vertex_subsequence(const Polyline& sub, const Polyline& full) {
    std::size_t j = 0;
    for (const auto& p : full.points) {
        if (j < sub.points.size() && p == sub.points[j]) ++j;
    }
    return j == sub.points.size();
}

}  // namespace carver
