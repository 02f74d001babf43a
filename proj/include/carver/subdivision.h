#pragma once

// Splitting a spanning continuum into N spanning pieces inside N pairwise
// non-overlapping subcubes of edge 1/N of the parent cube.

#include "carver/grid.h"

#include <vector>

namespace carver {

/// A cube, a connected piece inside it, and the axis along which the piece
/// reaches both opposite faces of the cube.
struct SpanningPiece {
    CubeRegion cube;
    CellSet piece;
    int span_axis = 0;

    friend bool operator==(const SpanningPiece&, const SpanningPiece&) = default;
};

/// Slab T_index (1-based) of `parent` along `axis`: the cells whose axis
/// coordinate lies in [origin + (index-1) w, origin + index w), w = edge / N.
struct SlabRegion {
    CubeRegion parent;
    int axis = 0;
    int index = 1;
    int N = 2;

    std::int32_t width() const { return parent.edge_cells / N; }
    std::int32_t first_layer() const { return parent.origin[axis] + (index - 1) * width(); }
    std::int32_t last_layer() const { return first_layer() + width() - 1; }
    bool contains(const CellIndex& cell) const;
};

struct SlabChain {
    std::vector<SlabRegion> slabs;
    std::vector<CellSet> chains;
};

/// Left-to-right sweep: C_1 is the component of K in the first slab through
/// a first-face cell; the remainder C'_2 is the component of K beyond the
/// first slab through a last-face cell; the sweep continues inside C'_2.
/// Every C_i reaches both faces of its slab.
SlabChain slab_chain(const CellSet& K, const CubeRegion& Q, int axis, int N);

/// Per-axis trimming of a slab chain element into a cube of edge w with a
/// spanning subcontinuum. Strips start at the minimal coordinate of the
/// current piece (lexicographic tie-break) and are shifted back inside the
/// parent cube when they would leave it.
SpanningPiece trim_to_cube(const CellSet& C, const SlabRegion& slab);

/// N pieces, one per slab, each satisfying the SpanningPiece invariants.
std::vector<SpanningPiece> spanning_subdivision(const CellSet& K, const CubeRegion& Q, int axis, int N);

/// Checks every SpanningPiece invariant of `pieces` against the parent;
/// returns an empty string when all hold, otherwise a description.
std::string validate_pieces(const std::vector<SpanningPiece>& pieces, const CellSet& parent,
                            const CubeRegion& Q, int N);

}  // namespace carver
