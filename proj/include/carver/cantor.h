#pragma once

// Cantor-like subsets of a continuum: iterate the spanning subdivision,
// keeping N-1 of the N pieces at every node. Level n holds (N-1)^n pieces
// of edge N^-n, and the union of level-n pieces is A_n.

#include "carver/geometry.h"
#include "carver/subdivision.h"

#include <cstdint>
#include <map>
#include <vector>

namespace carver {

/// Digits in 1..N-1; the empty word is the root.
using Word = std::vector<int>;

std::string to_string(const Word& word);

struct CantorTree {
    int N = 2;
    int depth = 0;
    int d = 1;
    int resolution = 1;
    std::map<Word, SpanningPiece> nodes;

    /// log(N-1) / log(N).
    double s() const;
    const SpanningPiece& root() const;
    std::vector<const SpanningPiece*> level(int n) const;
    std::vector<Word> level_words(int n) const;
    std::uint64_t leaf_count() const;
};

/// log(N-1)/log(N); zero for N = 2, strictly increasing, always below 1.
double target_dimension(int N);

/// Smallest N >= 2 with target_dimension(N) >= 1 - epsilon.
int smallest_branching_for(double epsilon);

/// Integer power with overflow check.
std::uint64_t checked_pow(std::uint64_t base, int exponent);

/// Builds the full tree; slab N of every subdivision is discarded and each
/// node is subdivided along its own certified span axis.
CantorTree build_cantor_tree(const DiscreteContinuum& K, const CubeRegion& Q, int axis, int N, int depth);

/// Union of piece cells over the level-n nodes.
CellSet level_cells(const CantorTree& tree, int n);

struct Mass {
    std::uint64_t count = 0;
    std::uint64_t denominator = 1;
    double value() const { return static_cast<double>(count) / static_cast<double>(denominator); }
};

/// Natural measure of an open box: the fraction of deepest-level nodes whose
/// piece has a cell meeting the open box.
Mass measure_of_box(const CantorTree& tree, const GeoBox& U);

/// Whether a cell's closed box meets the open box U.
bool cell_meets_open_box(const CellIndex& cell, int resolution, int d, const GeoBox& U);

/// Geometric box of a grid cube in unit coordinates.
GeoBox cube_box(const CubeRegion& cube, int resolution, int d);

}  // namespace carver
