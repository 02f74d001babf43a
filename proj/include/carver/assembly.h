#pragma once

// Stage construction around a point x of K: for n = 1, 2, ... take the
// component of K in the ball of radius 2^-n about x, carve a Cantor set of
// dimension >= 1 - 1/n out of it, cover that set by a curve of length at
// most 2^-n, and join consecutive stage curves by straight segments.

#include "carver/cantor.h"
#include "carver/curve_cover.h"
#include "carver/grid.h"

#include <optional>
#include <vector>

namespace carver {

/// Cells of K whose centres lie in the closed ball of radius 2^-n about the
/// centre of x, restricted to the component containing x.
CellSet stage_region(const DiscreteContinuum& K, const CellIndex& x, int n);

struct StageParameters {
    int N = 2;
    int depth = 1;
    int ideal_N = 2;      // smallest N reaching 1 - 1/n
    bool capped = false;  // resolution forced N below ideal_N
};

/// Smallest N with target_dimension(N) >= 1 - 1/n, capped so that N <= extent;
/// depth is the largest with N^depth <= extent.
StageParameters choose_stage_parameters(int n, int extent);

struct StagePlan {
    int n = 1;
    CellIndex center;
    double radius = 0.5;
    CellSet region;
    StageParameters params;
    double s = 0.0;
    int stage_resolution = 1;
    SimilarityFrame frame;
    std::size_t leaves = 0;
    double cover_length = 0.0;   // before splitting
    std::size_t parts = 1;       // number of split parts
    std::size_t kept_part = 0;
    Polyline curve;              // ambient unit coordinates
    double curve_length = 0.0;
    double join_length = 0.0;    // segment to the next stage's start
    double ball_excess = 0.0;    // how far the curve leaves the ball inflated by one cell
    double intersection_slope = 0.0;
    std::vector<int> slope_scales;
};

/// Builds the stage curve for a region C_n of K.
StagePlan stage_curve(const DiscreteContinuum& K, const CellIndex& x, int n, const CellSet& region,
                      std::optional<StageParameters> params = std::nullopt);

/// Consecutive parts of arc length at most `max_length`.
std::vector<Polyline> split_by_length(const Polyline& curve, double max_length);

struct AssemblyOptions {
    int n_max = 3;
    bool auto_stages = false;  // continue until the resolution runs out
    std::optional<CellIndex> x;
};

struct AssemblyResult {
    Polyline gamma;
    std::vector<StagePlan> stages;
    CellIndex x;
    double curves_length = 0.0;
    double joins_length = 0.0;
    double total_length = 0.0;
    double final_slope = 0.0;
};

AssemblyResult assemble(const DiscreteContinuum& K, const AssemblyOptions& options);

/// Per-stage intersection slope of a curve with K, base 2, over scales
/// between the ball diameter 2^(1-n) and the grid resolution.
double stage_intersection_slope(const Polyline& curve, const DiscreteContinuum& K, int n,
                                std::vector<int>* scales = nullptr);

}  // namespace carver
