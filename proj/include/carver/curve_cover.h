#pragma once

// Broken-line curves through the origin corners of a nested cube hierarchy.
// Level-n curves are built by splicing, at each level-n corner, a closed
// loop through the corners of that cube's children.

#include "carver/cantor.h"
#include "carver/geometry.h"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace carver {

struct Polyline {
    int d = 2;
    std::vector<Point> points;

    friend bool operator==(const Polyline&, const Polyline&) = default;
};

double polyline_length(const Polyline& p);

/// Arc-length parameter of every vertex (first is 0).
std::vector<double> arc_parameters(const Polyline& p);

/// Point at arc length t (clamped to [0, length]).
Point point_at(const Polyline& p, std::span<const double> params, double t);

/// Vertex of the cube closest to the origin.
Point corner_point(const CubeRegion& cube, int resolution, int d);

/// Loop parent corner -> child corners (lexicographic) -> parent corner.
Polyline level_broken_line(const CubeRegion& parent, std::span<const CubeRegion> children, int resolution,
                           int d);

/// Nested cube family, one list per level; level n cubes have edge
/// root_edge * base^-n.
struct CubeHierarchy {
    int d = 2;
    int resolution = 1;
    int base = 2;
    std::vector<std::vector<CubeRegion>> levels;
    /// Exponent with r_n <= c1 * base^(s n); derived from counts when unset.
    std::optional<double> s;
};

CubeHierarchy hierarchy_from_tree(const CantorTree& tree);

struct CoverBudget {
    int base = 2;
    int d = 2;
    double s = 0.0;
    double c1 = 1.0;
    double c2 = 0.0;
    double root_edge = 1.0;
    std::vector<std::uint64_t> r;  // cubes per level
    std::vector<double> l;         // bound on inserted length per level
    std::vector<double> L_partial; // running sums of l
    double L = 0.0;                // bound on the length of the limit curve
};

/// l_n = 2 r_{n+1} sqrt(d) root_edge base^-n for levels with known children;
/// beyond the last known level the tail c2 base^((s-1) n) is summed in closed
/// form, with c2 = 2 c1 sqrt(d) base^s root_edge. When c1 is not supplied the
/// smallest admissible value max_n r_n / base^(s n) is used.
CoverBudget length_budget(std::span<const std::uint64_t> r, double s, int d, int base,
                          std::optional<double> c1 = std::nullopt, double root_edge = 1.0);

struct CoverResult {
    /// curves[n] is the naturally parametrized curve g_n.
    std::vector<Polyline> curves;
    /// Measured length inserted at step n (curves[0] counts as inserted at 0).
    std::vector<double> inserted_lengths;
    CoverBudget budget;

    const Polyline& deepest() const { return curves.back(); }
};

CoverResult cover_curve(const CubeHierarchy& hierarchy);

/// sup over x in [0, L] of |f_next(x) - f_prev(x)|, where each curve is
/// extended by its endpoint past its own length. Exact for polylines.
double matched_sup_distance(const Polyline& f_prev, const Polyline& f_next);

/// True iff `sub` occurs as a (not necessarily contiguous) subsequence.
bool is_vertex_subsequence(const Polyline& sub, const Polyline& full);

}  // namespace carver
