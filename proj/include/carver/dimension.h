#pragma once

// Box counting on grid-aligned boxes, regression estimates of the upper
// Minkowski dimension, and the mass-distribution certificate for Cantor
// trees.

#include "carver/cantor.h"
#include "carver/curve_cover.h"
#include "carver/geometry.h"
#include "carver/grid.h"

#include <cstdint>
#include <span>
#include <vector>

namespace carver {

struct BoxCountEntry {
    int k = 0;
    double delta = 1.0;  // base^-k
    std::uint64_t count = 0;

    friend bool operator==(const BoxCountEntry&, const BoxCountEntry&) = default;
};

struct BoxCountSeries {
    int base = 2;
    std::vector<BoxCountEntry> entries;

    friend bool operator==(const BoxCountSeries&, const BoxCountSeries&) = default;
};

/// Inclusive range of entry indices.
struct ScaleWindow {
    std::size_t first = 0;
    std::size_t last = 0;

    friend bool operator==(const ScaleWindow&, const ScaleWindow&) = default;
};

struct DimensionEstimate {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;
    ScaleWindow window;

    friend bool operator==(const DimensionEstimate&, const DimensionEstimate&) = default;
};

/// Number of boxes [i/M, (i+1)/M)^d, M = base^k, meeting a half-open cell
/// [c/R, (c+1)/R)^d of the set. Requires M <= R.
std::uint64_t box_count(const CellSet& cells, int resolution, int base, int k);

/// Same for a finite point set; coordinate 1 belongs to the last box.
std::uint64_t box_count(std::span<const Point> points, int d, int base, int k);

/// Counts for k = 0 .. k_max.
BoxCountSeries box_count_series(const CellSet& cells, int resolution, int base, int k_max);

/// Largest k with base^k <= resolution.
int max_scale_exponent(int resolution, int base);

/// Drops k = 0 and scales whose count saturates the grid, unless fewer than
/// three scales would remain; then the coarsest scale is kept.
ScaleWindow default_window(const BoxCountSeries& series, int d);

/// Least-squares slope of log count against k log base over the window.
DimensionEstimate estimate_upper_minkowski(const BoxCountSeries& series, ScaleWindow window);

/// Acceptance tolerance for a regression over `scales` usable scales.
double dimension_tolerance(std::size_t scales);

struct CoverSumReport {
    double sum = 0.0;            // sum of diam^s
    double bound = 0.0;          // 1 / (2^d (N-1))
    std::uint64_t t_sum = 0;     // sum over boxes of leaves met
    std::uint64_t t_bound = 0;   // (N-1)^depth
    bool passed = false;
};

/// Requires every box to have diameter < 1 and the closed boxes to cover
/// every deepest-level cell; domain error otherwise.
CoverSumReport cover_sum_check(const CantorTree& tree, std::span<const GeoBox> cover);

/// The cubes of the deepest level as boxes.
std::vector<GeoBox> leaf_cube_cover(const CantorTree& tree);

class Rng;

/// Random cover of the deepest level by boxes of diameter < 1 that merge
/// clusters of leaves at random scales.
std::vector<GeoBox> random_cover(const CantorTree& tree, Rng& rng);

struct FrostmanReport {
    std::uint64_t trials = 0;
    std::uint64_t violations = 0;
    double worst_ratio = 0.0;  // max mu(U) / (2^d (N-1) diam(U)^s)
    GeoBox worst_box;
    bool passed() const { return violations == 0; }
};

/// Whether mass <= 2^d (N-1) diam^s, compared on logs with 1e-9 slack.
bool frostman_bound_holds(const CantorTree& tree, const GeoBox& U, double* ratio = nullptr);

/// Random boxes with diameter in [N^-depth, 1); half of them are centred in
/// a random leaf cell.
FrostmanReport frostman_check(const CantorTree& tree, std::uint64_t trials, std::uint64_t seed);

/// Boxes at scale base^-k meeting both the polyline and the cells of K.
std::uint64_t intersection_box_count(const Polyline& curve, const CellSet& K, int resolution, int base, int k);

BoxCountSeries intersection_box_counts(const Polyline& curve, const CellSet& K, int resolution, int base,
                                       std::span<const int> ks);

}  // namespace carver
