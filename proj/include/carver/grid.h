#pragma once

// Discrete continua: finite sets of grid cells inside the unit cube
// [0,1]^d, represented as the index grid [0,R)^d. A cell with index c
// occupies the closed box [c/R, (c+1)/R] in unit coordinates.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace carver {

inline constexpr int kMaxDim = 4;

/// Cell index vector. Coordinates beyond the ambient dimension stay zero,
/// so comparisons and containment tests may run over all kMaxDim slots.
struct CellIndex {
    std::array<std::int32_t, kMaxDim> c{};

    std::int32_t& operator[](int axis) { return c[static_cast<std::size_t>(axis)]; }
    std::int32_t operator[](int axis) const { return c[static_cast<std::size_t>(axis)]; }

    friend auto operator<=>(const CellIndex&, const CellIndex&) = default;
    friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

CellIndex make_cell(std::initializer_list<std::int32_t> coords);
std::string to_string(const CellIndex& cell, int d);

/// Sorted, duplicate-free set of cells of one ambient dimension.
class CellSet {
public:
    CellSet() = default;
    explicit CellSet(int d) : d_(d) {}

    /// Sorts and removes duplicates.
    static CellSet from_unsorted(int d, std::vector<CellIndex> cells);
    /// Caller guarantees strictly increasing order.
    static CellSet from_sorted(int d, std::vector<CellIndex> cells);

    int dim() const { return d_; }
    std::size_t size() const { return cells_.size(); }
    bool empty() const { return cells_.empty(); }
    const CellIndex& operator[](std::size_t i) const { return cells_[i]; }
    auto begin() const { return cells_.begin(); }
    auto end() const { return cells_.end(); }
    const std::vector<CellIndex>& cells() const { return cells_; }

    bool contains(const CellIndex& cell) const;
    std::optional<std::size_t> index_of(const CellIndex& cell) const;
    bool is_subset_of(const CellSet& other) const;

    friend bool operator==(const CellSet&, const CellSet&) = default;

private:
    int d_ = 0;
    std::vector<CellIndex> cells_;
};

CellSet set_union(const CellSet& a, const CellSet& b);
CellSet set_intersection(const CellSet& a, const CellSet& b);
CellSet set_difference(const CellSet& a, const CellSet& b);

/// Axis-aligned grid cube: cells origin + [0, edge_cells)^d.
struct CubeRegion {
    CellIndex origin;
    std::int32_t edge_cells = 1;

    bool contains(const CellIndex& cell) const;
    bool contains(const CubeRegion& other) const;
    bool fits_resolution(int resolution, int d) const;
    /// Geometric edge length in unit coordinates.
    double edge(int resolution) const { return static_cast<double>(edge_cells) / resolution; }

    friend bool operator==(const CubeRegion&, const CubeRegion&) = default;
};

/// True iff the interiors of the two cubes intersect.
bool cubes_overlap(const CubeRegion& a, const CubeRegion& b, int d);

CubeRegion full_cube(int resolution);

/// Face-neighbours (2d of them, possibly outside the grid).
template <class Fn>
void for_each_face_neighbor(const CellIndex& cell, int d, Fn&& fn) {
    for (int axis = 0; axis < d; ++axis) {
        CellIndex lo = cell;
        --lo[axis];
        fn(lo);
        CellIndex hi = cell;
        ++hi[axis];
        fn(hi);
    }
}

/// A connected, non-degenerate cell set at a fixed resolution.
class DiscreteContinuum {
public:
    /// Validates non-emptiness, bounds, connectivity and non-degeneracy.
    static DiscreteContinuum make(int d, int resolution, CellSet cells);

    int dim() const { return d_; }
    int resolution() const { return resolution_; }
    const CellSet& cells() const { return cells_; }

    friend bool operator==(const DiscreteContinuum&, const DiscreteContinuum&) = default;

private:
    DiscreteContinuum(int d, int resolution, CellSet cells)
        : d_(d), resolution_(resolution), cells_(std::move(cells)) {}

    int d_ = 0;
    int resolution_ = 0;
    CellSet cells_;
};

/// Partition into maximal face-connected subsets, ordered by smallest member.
std::vector<CellSet> connected_components(const CellSet& cells);

/// Face-connected component of `cells` that contains `seed`.
CellSet component_containing(const CellSet& cells, const CellIndex& seed);

bool is_connected(const CellSet& cells);

/// Cells of A with at least one face-neighbour in X \ A.
CellSet relative_boundary(const CellSet& X, const CellSet& A);

/// Every component of A meets the relative boundary of A in X.
/// Requires the empty set != A != X.cells().
bool check_boundary_component_property(const DiscreteContinuum& X, const CellSet& A);

/// Similarity between a source grid window and a normalized grid:
/// source cell coordinate = offset + u * extent, for unit coordinate u
/// of the normalized frame.
struct SimilarityFrame {
    CellIndex offset;
    std::int32_t extent = 1;
    int source_resolution = 1;
    int target_resolution = 1;
};

struct NormalizedContinuum {
    DiscreteContinuum continuum;
    CubeRegion cube;
    int axis = 0;
    SimilarityFrame frame;
};

/// Rescales and translates a connected cell set so it fills the unit cube
/// along its axis of maximal extent (ties to the lowest axis), resampled to
/// `target_resolution`. The window starts at the set's minimal corner, except
/// that a set spanning the whole source grid keeps the identity window.
NormalizedContinuum normalize_to_unit_cube(const CellSet& cells, int target_resolution,
                                           int source_resolution = 0);

/// K has a cell in both the first and the last layer of Q along `axis`.
bool spans_opposite_faces(const CellSet& K, const CubeRegion& Q, int axis);
bool spans_opposite_faces(const DiscreteContinuum& K, const CubeRegion& Q, int axis);

}  // namespace carver
