#include "carver/assembly.h"

#include "carver/dimension.h"
#include "carver/errors.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace carver {

CellSet stage_region(const DiscreteContinuum& K, const CellIndex& x, int n) {
    if (n < 1) fail(ErrorKind::Domain, "stage index must be at least 1");
    if (!K.cells().contains(x)) fail(ErrorKind::Domain, "centre cell is not in K");
    const std::int64_t R = K.resolution();
    // 2^-n >= 2/R so the ball reaches at least one neighbouring cell centre.
    if (n >= 62 || R < (std::int64_t{1} << (n + 1)))
        fail(ErrorKind::Resolution, "ball of radius 2^-" + std::to_string(n) + " is below the grid resolution " +
                                        std::to_string(R) + "; need R >= " + std::to_string(std::int64_t{1} << std::min(n + 1, 62)));
    const int d = K.dim();
    // |c - x|^2 / R^2 <= 4^-n, kept in integers as |c - x|^2 * 4^n <= R^2.
    const double scale = std::ldexp(1.0, 2 * n);
    const double limit = static_cast<double>(R * R);
    std::vector<CellIndex> inside;
    for (const auto& c : K.cells()) {
        double sq = 0.0;
        for (int a = 0; a < d; ++a) {
            const double diff = c[a] - x[a];
            sq += diff * diff;
        }
        if (sq * scale <= limit) inside.push_back(c);
    }
    CellSet region = component_containing(CellSet::from_sorted(d, std::move(inside)), x);
    if (region.size() < 2) fail(ErrorKind::Degeneracy, "stage " + std::to_string(n) + " component is a single cell");
    return region;
}

StageParameters choose_stage_parameters(int n, int extent) {
    if (n < 1) fail(ErrorKind::Domain, "stage index must be at least 1");
    if (extent < 2) fail(ErrorKind::Resolution, "stage region spans fewer than 2 cells");
    StageParameters p;
    const double target = 1.0 - 1.0 / n;
    p.ideal_N = 2;
    while (target_dimension(p.ideal_N) < target) ++p.ideal_N;
    p.N = std::min(p.ideal_N, extent);
    p.capped = p.N < p.ideal_N;
    p.depth = 0;
    std::int64_t power = 1;
    while (power * p.N <= extent) {
        power *= p.N;
        ++p.depth;
    }
    return p;
}

std::vector<Polyline> split_by_length(const Polyline& curve, double max_length) {
    if (!(max_length > 0.0)) fail(ErrorKind::Domain, "split length must be positive");
    const auto t = arc_parameters(curve);
    const double total = t.back();
    std::vector<Polyline> parts;
    if (total <= max_length) {
        parts.push_back(curve);
        return parts;
    }
    const auto count = static_cast<std::size_t>(std::ceil(total / max_length));
    std::size_t v = 0;  // next vertex index not yet consumed
    for (std::size_t j = 0; j < count; ++j) {
        const double a = static_cast<double>(j) * max_length;
        const double b = j + 1 == count ? total : static_cast<double>(j + 1) * max_length;
        Polyline part{curve.d, {point_at(curve, t, a)}};
        while (v < t.size() && t[v] <= a) ++v;
        while (v < t.size() && t[v] < b) part.points.push_back(curve.points[v++]);
        part.points.push_back(j + 1 == count ? curve.points.back() : point_at(curve, t, b));
        parts.push_back(std::move(part));
    }
    return parts;
}

double stage_intersection_slope(const Polyline& curve, const DiscreteContinuum& K, int n, std::vector<int>* scales) {
    std::vector<int> ks;
    const int k_max = max_scale_exponent(K.resolution(), 2);
    for (int k = std::max(0, n - 1); k <= k_max; ++k) ks.push_back(k);
    const auto series = intersection_box_counts(curve, K.cells(), K.resolution(), 2, ks);
    BoxCountSeries nonzero{series.base, {}};
    for (const auto& e : series.entries) {
        if (e.count > 0) nonzero.entries.push_back(e);
    }
    if (scales) {
        scales->clear();
        for (const auto& e : nonzero.entries) scales->push_back(e.k);
    }
    if (nonzero.entries.size() < 3) return std::numeric_limits<double>::quiet_NaN();
    return estimate_upper_minkowski(nonzero, {0, nonzero.entries.size() - 1}).slope;
}

namespace {

Point to_ambient(const Point& u, const SimilarityFrame& f, int d) {
    Point p{};
    for (int a = 0; a < d; ++a)
        p[a] = (static_cast<double>(f.offset[a]) + u[a] * static_cast<double>(f.extent)) / f.source_resolution;
    return p;
}

std::uint64_t meets_cells(const Polyline& part, const CellSet& cells, int resolution) {
    std::set<CellIndex> hit;
    for (std::size_t i = 1; i < part.points.size(); ++i) {
        for (const auto& c : rasterize_segment(part.points[i - 1], part.points[i], part.d, resolution)) {
            if (cells.contains(c)) hit.insert(c);
        }
    }
    return hit.size();
}

}  // namespace

StagePlan stage_curve(const DiscreteContinuum& K, const CellIndex& x, int n, const CellSet& region,
                      std::optional<StageParameters> params) {
    const int d = K.dim();
    StagePlan plan;
    plan.n = n;
    plan.center = x;
    plan.radius = std::ldexp(1.0, -n);
    plan.region = region;

    std::int32_t extent = 0;
    for (int a = 0; a < d; ++a) {
        std::int32_t lo = region[0][a], hi = region[0][a];
        for (const auto& c : region) {
            lo = std::min(lo, c[a]);
            hi = std::max(hi, c[a]);
        }
        extent = std::max(extent, hi - lo + 1);
    }
    plan.params = params ? *params : choose_stage_parameters(n, extent);
    plan.s = target_dimension(plan.params.N);
    if (!params && !plan.params.capped) ensure(plan.s >= 1.0 - 1.0 / n - 1e-12, "stage dimension ladder");
    plan.stage_resolution = static_cast<int>(checked_pow(static_cast<std::uint64_t>(plan.params.N), plan.params.depth));

    const auto normalized = normalize_to_unit_cube(region, plan.stage_resolution, K.resolution());
    plan.frame = normalized.frame;
    const auto tree = build_cantor_tree(normalized.continuum, normalized.cube, normalized.axis, plan.params.N,
                                        plan.params.depth);
    plan.leaves = tree.leaf_count();
    const auto cover = cover_curve(hierarchy_from_tree(tree));
    const Polyline& g = cover.deepest();

    // Work in normalized coordinates; the frame scales lengths by extent / R.
    const double scale = static_cast<double>(plan.frame.extent) / K.resolution();
    plan.cover_length = polyline_length(g) * scale;
    const double max_norm = plan.radius / scale;

    std::set<Point> leaf_corners;
    for (const auto* leaf : tree.level(tree.depth)) leaf_corners.insert(corner_point(leaf->cube, tree.resolution, d));
    const CellSet leaf_cells = level_cells(tree, tree.depth);

    auto parts = split_by_length(g, max_norm);
    plan.parts = parts.size();
    std::optional<std::size_t> best;
    std::uint64_t best_score = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const bool has_corner = std::any_of(parts[i].points.begin(), parts[i].points.end(),
                                            [&](const Point& p) { return leaf_corners.count(p) > 0; });
        if (!has_corner) continue;
        const std::uint64_t score = parts.size() == 1 ? 1 : meets_cells(parts[i], leaf_cells, tree.resolution);
        if (!best || score > best_score) {
            best = i;
            best_score = score;
        }
    }
    if (!best) fail(ErrorKind::Internal, "no split part of stage " + std::to_string(n) + " reaches a leaf corner");
    plan.kept_part = *best;

    // Trim to the first and last leaf corner.
    const auto& kept = parts[*best].points;
    std::size_t first = 0, last = kept.size() - 1;
    while (!leaf_corners.count(kept[first])) ++first;
    while (!leaf_corners.count(kept[last])) --last;
    plan.curve.d = d;
    for (std::size_t i = first; i <= last; ++i) plan.curve.points.push_back(to_ambient(kept[i], plan.frame, d));
    plan.curve_length = polyline_length(plan.curve);

    Point centre{};
    for (int a = 0; a < d; ++a) centre[a] = (x[a] + 0.5) / K.resolution();
    const double allowed = plan.radius + 1.0 / K.resolution();
    for (const auto& p : plan.curve.points) plan.ball_excess = std::max(plan.ball_excess, distance(p, centre, d) - allowed);
    plan.intersection_slope = stage_intersection_slope(plan.curve, K, n, &plan.slope_scales);
    return plan;
}

AssemblyResult assemble(const DiscreteContinuum& K, const AssemblyOptions& options) {
    if (!options.auto_stages && options.n_max < 1) fail(ErrorKind::Domain, "need at least one stage");
    AssemblyResult result;
    result.x = options.x ? *options.x : K.cells()[0];
    if (!K.cells().contains(result.x)) fail(ErrorKind::Domain, "chosen point is not a cell of K");

    const int last = options.auto_stages ? 62 : options.n_max;
    for (int n = 1; n <= last; ++n) {
        CellSet region;
        try {
            region = stage_region(K, result.x, n);
        } catch (const Error& e) {
            if (options.auto_stages && !result.stages.empty() &&
                (e.kind() == ErrorKind::Resolution || e.kind() == ErrorKind::Degeneracy))
                break;
            throw;
        }
        result.stages.push_back(stage_curve(K, result.x, n, region));
    }

    const int d = K.dim();
    result.gamma.d = d;
    for (std::size_t i = 0; i < result.stages.size(); ++i) {
        auto& stage = result.stages[i];
        if (i > 0) {
            auto& prev = result.stages[i - 1];
            prev.join_length = distance(prev.curve.points.back(), stage.curve.points.front(), d);
            result.joins_length += prev.join_length;
        }
        result.curves_length += stage.curve_length;
        result.gamma.points.insert(result.gamma.points.end(), stage.curve.points.begin(), stage.curve.points.end());
    }
    result.total_length = polyline_length(result.gamma);

    const int k_max = max_scale_exponent(K.resolution(), 2);
    std::vector<int> ks;
    for (int k = 0; k <= k_max; ++k) ks.push_back(k);
    const auto series = intersection_box_counts(result.gamma, K.cells(), K.resolution(), 2, ks);
    BoxCountSeries nonzero{series.base, {}};
    for (const auto& e : series.entries) {
        if (e.count > 0) nonzero.entries.push_back(e);
    }
    result.final_slope = nonzero.entries.size() >= 3
                             ? estimate_upper_minkowski(nonzero, default_window(nonzero, d)).slope
                             : std::numeric_limits<double>::quiet_NaN();
    return result;
}

}  // namespace carver
