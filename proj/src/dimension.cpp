#include "carver/dimension.h"

#include "carver/errors.h"
#include "carver/parallel.h"
#include "carver/random.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace carver {

namespace {

std::int64_t scale_cells(int base, int k) {
    if (base < 2) fail(ErrorKind::Domain, "base must be at least 2");
    if (k < 0) fail(ErrorKind::Domain, "scale exponent must be non-negative");
    return static_cast<std::int64_t>(checked_pow(static_cast<std::uint64_t>(base), k));
}

// Box index range [lo, hi] along one axis met by the half-open cell c.
std::pair<std::int64_t, std::int64_t> box_range(std::int64_t c, std::int64_t M, std::int64_t R) {
    const std::int64_t lo = c * M / R;
    const std::int64_t hi = ((c + 1) * M + R - 1) / R - 1;
    return {lo, hi};
}

std::vector<CellIndex> collect_boxes(const CellSet& cells, int resolution, std::int64_t M) {
    const int d = cells.dim();
    const std::int64_t R = resolution;
    std::vector<CellIndex> out;
    out.reserve(cells.size());
    for (const auto& cell : cells) {
        std::array<std::pair<std::int64_t, std::int64_t>, kMaxDim> range{};
        for (int a = 0; a < d; ++a) range[a] = box_range(cell[a], M, R);
        CellIndex box;
        for (int a = 0; a < d; ++a) box[a] = static_cast<std::int32_t>(range[a].first);
        // Odometer over the (usually single-box) range.
        while (true) {
            out.push_back(box);
            int a = 0;
            for (; a < d; ++a) {
                if (box[a] < range[a].second) {
                    ++box[a];
                    break;
                }
                box[a] = static_cast<std::int32_t>(range[a].first);
            }
            if (a == d) break;
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Whether some cell of the set overlaps box b of the M-grid. Cells are
// sorted lexicographically, so each run along the last axis is one binary
// search.
bool box_meets_cells(const CellIndex& b, std::int64_t M, const CellSet& cells, int resolution) {
    const int d = cells.dim();
    const std::int64_t R = resolution;
    std::array<std::int32_t, kMaxDim> lo{}, hi{};
    std::int64_t runs = 1;
    for (int a = 0; a < d; ++a) {
        lo[a] = static_cast<std::int32_t>(b[a] * R / M);
        hi[a] = static_cast<std::int32_t>(((b[a] + 1) * R + M - 1) / M - 1);
        if (a + 1 < d) runs *= hi[a] - lo[a] + 1;
    }
    if (runs > static_cast<std::int64_t>(cells.size())) {
        return std::any_of(cells.begin(), cells.end(), [&](const CellIndex& c) {
            for (int a = 0; a < d; ++a) {
                if (c[a] < lo[a] || c[a] > hi[a]) return false;
            }
            return true;
        });
    }
    CellIndex key;
    for (int a = 0; a < d; ++a) key[a] = lo[a];
    while (true) {
        auto it = std::lower_bound(cells.begin(), cells.end(), key);
        if (it != cells.end()) {
            bool same_prefix = true;
            for (int a = 0; a + 1 < d; ++a) same_prefix = same_prefix && (*it)[a] == key[a];
            if (same_prefix && (*it)[d - 1] <= hi[d - 1]) return true;
        }
        int a = d - 2;
        for (; a >= 0; --a) {
            if (key[a] < hi[a]) {
                ++key[a];
                break;
            }
            key[a] = lo[a];
        }
        if (a < 0) return false;
    }
}

double log_pow(double x, double s) { return s * std::log(x); }

}  // namespace

std::uint64_t box_count(const CellSet& cells, int resolution, int base, int k) {
    const std::int64_t M = scale_cells(base, k);
    if (M > resolution) fail(ErrorKind::Domain, "scale finer than the grid resolution");
    return collect_boxes(cells, resolution, M).size();
}

std::uint64_t box_count(std::span<const Point> points, int d, int base, int k) {
    const std::int64_t M = scale_cells(base, k);
    std::set<CellIndex> boxes;
    for (const auto& p : points) {
        CellIndex box;
        for (int a = 0; a < d; ++a) {
            const auto i = static_cast<std::int64_t>(std::floor(p[a] * static_cast<double>(M)));
            box[a] = static_cast<std::int32_t>(std::clamp<std::int64_t>(i, 0, M - 1));
        }
        boxes.insert(box);
    }
    return boxes.size();
}

int max_scale_exponent(int resolution, int base) {
    int k = 0;
    std::int64_t M = base;
    while (M <= resolution) {
        ++k;
        M *= base;
    }
    return k;
}

BoxCountSeries box_count_series(const CellSet& cells, int resolution, int base, int k_max) {
    BoxCountSeries series;
    series.base = base;
    series.entries.resize(static_cast<std::size_t>(k_max) + 1);
    parallel_for(series.entries.size(), [&](std::size_t i) {
        const int k = static_cast<int>(i);
        series.entries[i] = {k, std::pow(static_cast<double>(base), -k), box_count(cells, resolution, base, k)};
    });
    return series;
}

ScaleWindow default_window(const BoxCountSeries& series, int d) {
    if (series.entries.empty()) fail(ErrorKind::InsufficientData, "empty series");
    std::vector<std::size_t> usable;
    for (std::size_t i = 0; i < series.entries.size(); ++i) {
        const auto& e = series.entries[i];
        const double full = std::pow(static_cast<double>(series.base), static_cast<double>(e.k * d));
        if (e.k == 0 || static_cast<double>(e.count) >= full) continue;
        usable.push_back(i);
    }
    if (usable.size() >= 3) return {usable.front(), series.entries.size() - 1};
    return {0, series.entries.size() - 1};
}

DimensionEstimate estimate_upper_minkowski(const BoxCountSeries& series, ScaleWindow window) {
    if (window.last >= series.entries.size() || window.first > window.last)
        fail(ErrorKind::Domain, "window outside the series");
    const std::size_t n = window.last - window.first + 1;
    if (n < 3) fail(ErrorKind::InsufficientData, "regression needs at least 3 scales");
    std::vector<double> xs, ys;
    for (std::size_t i = window.first; i <= window.last; ++i) {
        const auto& e = series.entries[i];
        if (e.count == 0) fail(ErrorKind::InsufficientData, "zero count inside the regression window");
        xs.push_back(-std::log(e.delta));
        ys.push_back(std::log(static_cast<double>(e.count)));
    }
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(n);
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    DimensionEstimate est;
    est.window = window;
    est.slope = sxy / sxx;
    est.intercept = my - est.slope * mx;
    est.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return est;
}

double dimension_tolerance(std::size_t scales) { return scales >= 5 ? 0.05 : 0.1; }

std::vector<GeoBox> leaf_cube_cover(const CantorTree& tree) {
    std::vector<GeoBox> cover;
    for (const auto* piece : tree.level(tree.depth)) cover.push_back(cube_box(piece->cube, tree.resolution, tree.d));
    return cover;
}

namespace {

GeoBox cell_box(const CellIndex& cell, int resolution, int d) {
    GeoBox b;
    for (int a = 0; a < d; ++a) {
        b.lo[a] = static_cast<double>(cell[a]) / resolution;
        b.hi[a] = static_cast<double>(cell[a] + 1) / resolution;
    }
    return b;
}

bool closed_contains(const GeoBox& U, const Point& p, int d) {
    for (int a = 0; a < d; ++a) {
        if (p[a] < U.lo[a] || p[a] > U.hi[a]) return false;
    }
    return true;
}

bool interiors_meet(const GeoBox& a, const GeoBox& b, int d) {
    for (int i = 0; i < d; ++i) {
        if (!(a.lo[i] < b.hi[i] && b.lo[i] < a.hi[i])) return false;
    }
    return true;
}

// The closed cell box lies in the union of the closed boxes: split the cell
// along every box face crossing it and test one interior point per part.
bool cell_is_covered(const GeoBox& cell, const std::vector<const GeoBox*>& boxes, int d) {
    std::array<std::vector<double>, kMaxDim> cuts;
    for (int a = 0; a < d; ++a) {
        cuts[a] = {cell.lo[a], cell.hi[a]};
        for (const auto* U : boxes) {
            for (double v : {U->lo[a], U->hi[a]}) {
                if (v > cell.lo[a] && v < cell.hi[a]) cuts[a].push_back(v);
            }
        }
        std::sort(cuts[a].begin(), cuts[a].end());
        cuts[a].erase(std::unique(cuts[a].begin(), cuts[a].end()), cuts[a].end());
    }
    std::array<std::size_t, kMaxDim> idx{};
    while (true) {
        Point mid{};
        for (int a = 0; a < d; ++a) mid[a] = 0.5 * (cuts[a][idx[a]] + cuts[a][idx[a] + 1]);
        const bool hit = std::any_of(boxes.begin(), boxes.end(), [&](const GeoBox* U) { return closed_contains(*U, mid, d); });
        if (!hit) return false;
        int a = 0;
        for (; a < d; ++a) {
            if (idx[a] + 2 < cuts[a].size()) {
                ++idx[a];
                break;
            }
            idx[a] = 0;
        }
        if (a == d) return true;
    }
}

}  // namespace

CoverSumReport cover_sum_check(const CantorTree& tree, std::span<const GeoBox> cover) {
    const int d = tree.d;
    for (const auto& U : cover) {
        if (!(U.diameter(d) < 1.0)) fail(ErrorKind::Domain, "cover box with diameter >= 1");
    }
    const auto leaves = tree.level(tree.depth);
    std::vector<char> covered(leaves.size(), 1);
    std::vector<std::uint64_t> t(cover.size(), 0);
    parallel_for(leaves.size(), [&](std::size_t i) {
        for (const auto& cell : leaves[i]->piece) {
            const GeoBox cb = cell_box(cell, tree.resolution, d);
            std::vector<const GeoBox*> near;
            for (const auto& U : cover) {
                if (interiors_meet(U, cb, d)) near.push_back(&U);
            }
            if (!cell_is_covered(cb, near, d)) {
                covered[i] = 0;
                return;
            }
        }
    });
    if (std::find(covered.begin(), covered.end(), 0) != covered.end())
        fail(ErrorKind::Domain, "boxes do not cover the deepest level");

    parallel_for(cover.size(), [&](std::size_t j) {
        for (const auto* leaf : leaves) {
            if (!interiors_meet(cover[j], cube_box(leaf->cube, tree.resolution, d), d)) continue;
            if (std::any_of(leaf->piece.begin(), leaf->piece.end(),
                            [&](const CellIndex& c) { return cell_meets_open_box(c, tree.resolution, d, cover[j]); }))
                ++t[j];
        }
    });

    CoverSumReport report;
    const double s = tree.s();
    for (const auto& U : cover) report.sum += std::exp(log_pow(U.diameter(d), s));
    report.bound = 1.0 / (std::pow(2.0, d) * static_cast<double>(tree.N - 1));
    for (auto tj : t) report.t_sum += tj;
    report.t_bound = tree.leaf_count();
    report.passed = report.sum >= report.bound - 1e-9 && report.t_sum >= report.t_bound;
    return report;
}

std::vector<GeoBox> random_cover(const CantorTree& tree, Rng& rng) {
    const int d = tree.d;
    const auto leaves = tree.level(tree.depth);
    // Bounding box of each leaf's cells.
    std::vector<GeoBox> bbox(leaves.size());
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        GeoBox b = cell_box(leaves[i]->piece[0], tree.resolution, d);
        for (const auto& c : leaves[i]->piece) {
            const GeoBox cb = cell_box(c, tree.resolution, d);
            for (int a = 0; a < d; ++a) {
                b.lo[a] = std::min(b.lo[a], cb.lo[a]);
                b.hi[a] = std::max(b.hi[a], cb.hi[a]);
            }
        }
        bbox[i] = b;
    }
    std::vector<std::size_t> order(leaves.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);

    const double max_side = 0.999 / std::sqrt(static_cast<double>(d));
    std::vector<char> done(leaves.size(), 0);
    std::vector<GeoBox> cover;
    for (std::size_t i : order) {
        if (done[i]) continue;
        const GeoBox& b = bbox[i];
        GeoBox U;
        for (int a = 0; a < d; ++a) {
            const double need = b.hi[a] - b.lo[a];
            const double side = need >= max_side ? need : rng.log_uniform(need, max_side);
            // Place the box so it contains [lo, hi] and stays in the unit cube.
            const double lo_min = std::max(0.0, b.hi[a] - side);
            const double lo_max = std::min(b.lo[a], 1.0 - side);
            const double lo = lo_max > lo_min ? rng.uniform(lo_min, lo_max) : std::min(lo_min, b.lo[a]);
            U.lo[a] = lo;
            U.hi[a] = std::max(lo + side, b.hi[a]);
        }
        for (std::size_t j = 0; j < leaves.size(); ++j) {
            if (done[j]) continue;
            bool inside = true;
            for (int a = 0; a < d && inside; ++a)
                inside = bbox[j].lo[a] >= U.lo[a] && bbox[j].hi[a] <= U.hi[a];
            if (inside) done[j] = 1;
        }
        ensure(done[i] != 0, "random cover box contains its seed leaf");
        cover.push_back(U);
    }
    return cover;
}

bool frostman_bound_holds(const CantorTree& tree, const GeoBox& U, double* ratio) {
    const int d = tree.d;
    const Mass mass = measure_of_box(tree, U);
    const double diam = U.diameter(d);
    const double log_rhs = d * std::log(2.0) + std::log(static_cast<double>(tree.N - 1)) + log_pow(diam, tree.s());
    if (mass.count == 0) {
        if (ratio) *ratio = 0.0;
        return true;
    }
    const double log_lhs = std::log(mass.value());
    if (ratio) *ratio = std::exp(log_lhs - log_rhs);
    return log_lhs <= log_rhs + 1e-9;
}

FrostmanReport frostman_check(const CantorTree& tree, std::uint64_t trials, std::uint64_t seed) {
    const int d = tree.d;
    const auto leaves = tree.level(tree.depth);
    const double min_diam = std::pow(static_cast<double>(tree.N), -tree.depth);

    // Boxes are drawn sequentially so the sample does not depend on the
    // thread count; only the evaluation runs in parallel.
    Rng rng(seed);
    std::vector<GeoBox> boxes;
    boxes.reserve(trials);
    while (boxes.size() < trials) {
        const double diam = rng.log_uniform(min_diam, 0.999);
        std::array<double, kMaxDim> w{};
        double norm = 0.0;
        for (int a = 0; a < d; ++a) {
            w[a] = rng.uniform(0.2, 1.0);
            norm += w[a] * w[a];
        }
        norm = std::sqrt(norm);
        Point center{};
        if (rng.below(2) == 0) {
            const auto* leaf = leaves[rng.below(leaves.size())];
            const auto& cell = leaf->piece[rng.below(leaf->piece.size())];
            for (int a = 0; a < d; ++a) center[a] = (cell[a] + rng.uniform()) / tree.resolution;
        } else {
            for (int a = 0; a < d; ++a) center[a] = rng.uniform();
        }
        GeoBox U;
        for (int a = 0; a < d; ++a) {
            const double half = 0.5 * diam * w[a] / norm;
            U.lo[a] = std::max(0.0, center[a] - half);
            U.hi[a] = std::min(1.0, center[a] + half);
        }
        if (U.diameter(d) < min_diam) continue;
        boxes.push_back(U);
    }

    std::vector<double> ratios(boxes.size(), 0.0);
    std::vector<char> ok(boxes.size(), 1);
    parallel_for(boxes.size(), [&](std::size_t i) { ok[i] = frostman_bound_holds(tree, boxes[i], &ratios[i]) ? 1 : 0; });

    FrostmanReport report;
    report.trials = boxes.size();
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        if (!ok[i]) ++report.violations;
        if (ratios[i] > report.worst_ratio) {
            report.worst_ratio = ratios[i];
            report.worst_box = boxes[i];
        }
    }
    return report;
}

std::uint64_t intersection_box_count(const Polyline& curve, const CellSet& K, int resolution, int base, int k) {
    const std::int64_t M = scale_cells(base, k);
    if (M > resolution) fail(ErrorKind::Domain, "scale finer than the grid resolution");
    std::set<CellIndex> curve_boxes;
    if (curve.points.size() == 1) {
        for (const auto& c : rasterize_segment(curve.points[0], curve.points[0], curve.d, static_cast<int>(M)))
            curve_boxes.insert(c);
    }
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        for (const auto& c : rasterize_segment(curve.points[i - 1], curve.points[i], curve.d, static_cast<int>(M)))
            curve_boxes.insert(c);
    }
    std::uint64_t count = 0;
    for (const auto& b : curve_boxes) count += box_meets_cells(b, M, K, resolution) ? 1 : 0;
    return count;
}

BoxCountSeries intersection_box_counts(const Polyline& curve, const CellSet& K, int resolution, int base,
                                       std::span<const int> ks) {
    BoxCountSeries series;
    series.base = base;
    series.entries.resize(ks.size());
    parallel_for(ks.size(), [&](std::size_t i) {
        series.entries[i] = {ks[i], std::pow(static_cast<double>(base), -ks[i]),
                             intersection_box_count(curve, K, resolution, base, ks[i])};
    });
    return series;
}

}  // namespace carver
