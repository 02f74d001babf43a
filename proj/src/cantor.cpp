#include "carver/cantor.h"

#include "carver/errors.h"
#include "carver/parallel.h"

#include <cmath>
#include <limits>

namespace carver {

std::string to_string(const Word& word) {
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i) out += '.';
        out += std::to_string(word[i]);
    }
    return out.empty() ? "<root>" : out;
}

double CantorTree::s() const { return target_dimension(N); }

const SpanningPiece& CantorTree::root() const { return nodes.at(Word{}); }

std::vector<const SpanningPiece*> CantorTree::level(int n) const {
    std::vector<const SpanningPiece*> out;
    for (const auto& [word, piece] : nodes) {
        if (static_cast<int>(word.size()) == n) out.push_back(&piece);
    }
    return out;
}

std::vector<Word> CantorTree::level_words(int n) const {
    std::vector<Word> out;
    for (const auto& entry : nodes) {
        if (static_cast<int>(entry.first.size()) == n) out.push_back(entry.first);
    }
    return out;
}

std::uint64_t CantorTree::leaf_count() const { return checked_pow(static_cast<std::uint64_t>(N - 1), depth); }

double target_dimension(int N) {
    if (N < 2) fail(ErrorKind::Domain, "N must be at least 2");
    return std::log(static_cast<double>(N - 1)) / std::log(static_cast<double>(N));
}

int smallest_branching_for(double epsilon) {
    if (!(epsilon > 0.0)) fail(ErrorKind::Domain, "epsilon must be positive");
    for (int N = 2; N < std::numeric_limits<int>::max(); ++N) {
        if (target_dimension(N) >= 1.0 - epsilon) return N;
    }
    fail(ErrorKind::Domain, "epsilon too small");
}

std::uint64_t checked_pow(std::uint64_t base, int exponent) {
    std::uint64_t out = 1;
    for (int i = 0; i < exponent; ++i) {
        if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base)
            fail(ErrorKind::Domain, "integer power overflows");
        out *= base;
    }
    return out;
}

CantorTree build_cantor_tree(const DiscreteContinuum& K, const CubeRegion& Q, int axis, int N, int depth) {
    if (N < 2) fail(ErrorKind::Domain, "N must be at least 2");
    if (depth < 0) fail(ErrorKind::Domain, "depth must be non-negative");
    if (!Q.fits_resolution(K.resolution(), K.dim())) fail(ErrorKind::Domain, "cube outside the grid");
    const std::uint64_t divisor = checked_pow(static_cast<std::uint64_t>(N), depth);
    if (static_cast<std::uint64_t>(Q.edge_cells) % divisor != 0) {
        std::string msg = "N = " + std::to_string(N) + ", depth = " + std::to_string(depth) +
                          " needs a cube edge that is a multiple of " + std::to_string(divisor) + " cells";
        if (Q.edge_cells == K.resolution()) msg += " (required resolution R = c * " + std::to_string(divisor) + ")";
        fail(ErrorKind::Resolution, msg + "; got " + std::to_string(Q.edge_cells));
    }
    if (!spans_opposite_faces(K, Q, axis))
        fail(ErrorKind::Precondition, "continuum does not span the cube along axis " + std::to_string(axis));

    CantorTree tree;
    tree.N = N;
    tree.depth = depth;
    tree.d = K.dim();
    tree.resolution = K.resolution();
    tree.nodes.emplace(Word{}, SpanningPiece{Q, K.cells(), axis});

    std::vector<Word> frontier{Word{}};
    for (int level = 0; level < depth; ++level) {
        std::vector<std::vector<SpanningPiece>> children(frontier.size());
        parallel_for(frontier.size(), [&](std::size_t i) {
            const SpanningPiece& node = tree.nodes.at(frontier[i]);
            children[i] = spanning_subdivision(node.piece, node.cube, node.span_axis, N);
        });
        std::vector<Word> next;
        for (std::size_t i = 0; i < frontier.size(); ++i) {
            // The last slab is dropped.
            for (int k = 1; k <= N - 1; ++k) {
                Word w = frontier[i];
                w.push_back(k);
                tree.nodes.emplace(w, std::move(children[i][static_cast<std::size_t>(k - 1)]));
                next.push_back(std::move(w));
            }
        }
        frontier = std::move(next);
    }
    return tree;
}

CellSet level_cells(const CantorTree& tree, int n) {
    if (n < 0 || n > tree.depth) fail(ErrorKind::Domain, "level outside the tree");
    std::vector<CellIndex> cells;
    for (const auto* piece : tree.level(n)) cells.insert(cells.end(), piece->piece.begin(), piece->piece.end());
    return CellSet::from_unsorted(tree.d, std::move(cells));
}

bool cell_meets_open_box(const CellIndex& cell, int resolution, int d, const GeoBox& U) {
    for (int axis = 0; axis < d; ++axis) {
        const double lo = static_cast<double>(cell[axis]) / resolution;
        const double hi = static_cast<double>(cell[axis] + 1) / resolution;
        if (!(lo < U.hi[axis] && hi > U.lo[axis])) return false;
    }
    return true;
}

GeoBox cube_box(const CubeRegion& cube, int resolution, int d) {
    GeoBox box;
    for (int axis = 0; axis < d; ++axis) {
        box.lo[axis] = static_cast<double>(cube.origin[axis]) / resolution;
        box.hi[axis] = static_cast<double>(cube.origin[axis] + cube.edge_cells) / resolution;
    }
    return box;
}

Mass measure_of_box(const CantorTree& tree, const GeoBox& U) {
    Mass mass{0, tree.leaf_count()};
    for (const auto* leaf : tree.level(tree.depth)) {
        // Quick reject on the leaf cube before scanning its cells.
        GeoBox cube = cube_box(leaf->cube, tree.resolution, tree.d);
        bool cube_meets = true;
        for (int axis = 0; axis < tree.d; ++axis) {
            if (!(cube.lo[axis] < U.hi[axis] && cube.hi[axis] > U.lo[axis])) cube_meets = false;
        }
        if (!cube_meets) continue;
        for (const auto& cell : leaf->piece) {
            if (cell_meets_open_box(cell, tree.resolution, tree.d, U)) {
                ++mass.count;
                break;
            }
        }
    }
    return mass;
}

}  // namespace carver
