#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_support.h"

#include "carver/generators.h"
#include "carver/subdivision.h"

using namespace carver;
using namespace carver::testing;

namespace {

DiscreteContinuum staircase(int R) {
    ShapeSpec spec = default_shape(ShapeKind::Segment, R);
    spec.points = {make_point({0.0, 0.0}), make_point({1.0, 1.0})};
    return rasterize_shape(spec);
}

DiscreteContinuum maze(int R, std::uint64_t seed) {
    ShapeSpec spec = default_shape(ShapeKind::Maze, R);
    spec.seed = seed;
    return rasterize_shape(spec);
}

// Independent checks of every piece invariant.
void check_pieces(const std::vector<SpanningPiece>& pieces, const CellSet& parent, const CubeRegion& Q, int N) {
    REQUIRE(pieces.size() == static_cast<std::size_t>(N));
    std::set<CellIndex> parent_set(parent.begin(), parent.end());
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const auto& p = pieces[i];
        CHECK(p.cube.edge_cells * N == Q.edge_cells);
        CHECK(Q.contains(p.cube));
        REQUIRE(!p.piece.empty());
        std::set<CellIndex> piece_set(p.piece.begin(), p.piece.end());
        CHECK(reachable_count(piece_set, p.piece[0], parent.dim()) == p.piece.size());
        bool lo = false, hi = false;
        for (const auto& c : p.piece) {
            CHECK(parent_set.count(c) == 1);
            CHECK(p.cube.contains(c));
            lo = lo || c[p.span_axis] == p.cube.origin[p.span_axis];
            hi = hi || c[p.span_axis] == p.cube.origin[p.span_axis] + p.cube.edge_cells - 1;
        }
        CHECK(lo);
        CHECK(hi);
        for (std::size_t j = i + 1; j < pieces.size(); ++j) {
            bool overlap = true;
            for (int a = 0; a < parent.dim(); ++a) {
                const int l = std::max(p.cube.origin[a], pieces[j].cube.origin[a]);
                const int h = std::min(p.cube.origin[a] + p.cube.edge_cells, pieces[j].cube.origin[a] + pieces[j].cube.edge_cells);
                overlap = overlap && l < h;
            }
            CHECK_FALSE(overlap);
        }
    }
}

}  // namespace

TEST_CASE("slab chain on the middle row") {
    const auto K = rasterize_shape(default_shape(ShapeKind::Segment, 8));
    const auto chain = slab_chain(K.cells(), full_cube(8), 0, 4);
    REQUIRE(chain.chains.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(chain.chains[i] == block(2 * i, 4, 2, 1));
}

TEST_CASE("slab chain on the staircase: one chain per half") {
    const auto K = staircase(8);
    const auto chain = slab_chain(K.cells(), full_cube(8), 0, 2);
    REQUIRE(chain.chains.size() == 2);
    for (int i = 0; i < 2; ++i) {
        const auto& C = chain.chains[i];
        CHECK(is_connected(C));
        bool first = false, last = false;
        for (const auto& c : C) {
            CHECK(c[0] >= 4 * i);
            CHECK(c[0] < 4 * i + 4);
            first = first || c[0] == 4 * i;
            last = last || c[0] == 4 * i + 3;
        }
        CHECK(first);
        CHECK(last);
    }
}

TEST_CASE("slab chain rejects a continuum touching one face") {
    const auto K = DiscreteContinuum::make(2, 8, block(0, 2, 5, 1));
    CHECK(error_kind_of([&] { slab_chain(K.cells(), full_cube(8), 0, 2); }) == ErrorKind::Precondition);
    CHECK(error_kind_of([&] { spanning_subdivision(K.cells(), full_cube(8), 0, 2); }) == ErrorKind::Precondition);
}

TEST_CASE("resolution must be divisible by N") {
    const auto K = rasterize_shape(default_shape(ShapeKind::Segment, 8));
    CHECK(error_kind_of([&] { spanning_subdivision(K.cells(), full_cube(8), 0, 3); }) == ErrorKind::Resolution);
    CHECK(error_kind_of([&] { spanning_subdivision(K.cells(), full_cube(8), 0, 1); }) == ErrorKind::Domain);
}

TEST_CASE("trim: piece already inside a cube keeps the slab axis") {
    const SlabRegion slab{full_cube(8), 0, 1, 2};
    const auto piece = trim_to_cube(block(0, 1, 4, 2), slab);
    CHECK(piece.cube == CubeRegion{make_cell({0, 1}), 4});
    CHECK(piece.span_axis == 0);
    CHECK(piece.piece == block(0, 1, 4, 2));
}

TEST_CASE("trim: strip-exceeding piece switches axis") {
    // An L-shape in the first slab that rises above the strip.
    CellSet C = set_union(block(0, 0, 4, 1), block(3, 0, 1, 8));
    const SlabRegion slab{full_cube(8), 0, 1, 2};
    const auto piece = trim_to_cube(C, slab);
    CHECK(piece.cube == CubeRegion{make_cell({0, 0}), 4});
    CHECK(piece.span_axis == 1);  // cut by the y-strip, so the certificate moves to y
    CHECK(piece.piece == set_union(block(0, 0, 4, 1), block(3, 0, 1, 4)));

    // Disconnected after cutting: only the component of the minimal point stays.
    CellSet D = set_union(set_union(block(0, 6, 4, 1), block(3, 0, 1, 7)), block(0, 0, 1, 2));
    D = set_union(D, block(0, 0, 3, 1));
    const auto q = trim_to_cube(D, slab);
    CHECK(q.cube.origin == make_cell({0, 0}));
    CHECK(spans_opposite_faces(q.piece, q.cube, q.span_axis));
    CHECK(is_connected(q.piece));
}

TEST_CASE("trim rejects a non-spanning chain") {
    const SlabRegion slab{full_cube(8), 0, 1, 2};
    CHECK(error_kind_of([&] { trim_to_cube(block(0, 0, 2, 1), slab); }) == ErrorKind::Precondition);
}

TEST_CASE("row segment, N=3: cubes tile the row") {
    const auto K = rasterize_shape(default_shape(ShapeKind::Segment, 9));
    const auto pieces = spanning_subdivision(K.cells(), full_cube(9), 0, 3);
    REQUIRE(pieces.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(pieces[i].cube == CubeRegion{make_cell({3 * i, 4}), 3});
        CHECK(pieces[i].piece == block(3 * i, 4, 3, 1));
        CHECK(pieces[i].span_axis == 0);
    }
}

TEST_CASE("staircase, N=2: traced cubes") {
    const auto K = staircase(8);
    const auto pieces = spanning_subdivision(K.cells(), full_cube(8), 0, 2);
    REQUIRE(pieces.size() == 2);
    CHECK(pieces[0].cube == CubeRegion{make_cell({0, 0}), 4});
    CHECK(pieces[0].span_axis == 0);
    // The second chain starts at (4,3) and climbs past the strip [3,7).
    CHECK(pieces[1].cube == CubeRegion{make_cell({4, 3}), 4});
    CHECK(pieces[1].span_axis == 1);
    check_pieces(pieces, K.cells(), full_cube(8), 2);
}

TEST_CASE("maze seed 7, N=3: invariants") {
    const auto K = maze(81, 7);
    const auto pieces = spanning_subdivision(K.cells(), full_cube(81), 0, 3);
    check_pieces(pieces, K.cells(), full_cube(81), 3);
    CHECK(validate_pieces(pieces, K.cells(), full_cube(81), 3).empty());
}

TEST_CASE("randomized mazes and axes satisfy the invariants") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        for (int N : {2, 3, 5}) {
            const int R = N == 2 ? 65 : (N == 3 ? 81 : 75);
            const auto K = maze(R, seed);
            if (R % N != 0) continue;
            for (int axis : {0, 1}) {
                if (!spans_opposite_faces(K, full_cube(R), axis)) continue;
                const auto pieces = spanning_subdivision(K.cells(), full_cube(R), axis, N);
                check_pieces(pieces, K.cells(), full_cube(R), N);
            }
        }
    }
}

TEST_CASE("iterating the subdivision nests") {
    const auto K = maze(81, 3);
    const auto top = spanning_subdivision(K.cells(), full_cube(81), 0, 3);
    for (const auto& p : top) {
        const auto sub = spanning_subdivision(p.piece, p.cube, p.span_axis, 3);
        check_pieces(sub, p.piece, p.cube, 3);
    }
}

TEST_CASE("validator reports broken pieces") {
    const auto K = rasterize_shape(default_shape(ShapeKind::Segment, 9));
    auto pieces = spanning_subdivision(K.cells(), full_cube(9), 0, 3);
    auto broken = pieces;
    broken[1].cube = broken[0].cube;
    CHECK_FALSE(validate_pieces(broken, K.cells(), full_cube(9), 3).empty());
    broken = pieces;
    broken.pop_back();
    CHECK_FALSE(validate_pieces(broken, K.cells(), full_cube(9), 3).empty());
}

TEST_CASE("three-dimensional subdivision") {
    ShapeSpec spec = default_shape(ShapeKind::Polyline, 27);
    spec.d = 3;
    spec.points = {make_point({0.0, 0.2, 0.1}), make_point({0.5, 0.9, 0.6}), make_point({1.0, 0.3, 0.9})};
    const auto K = rasterize_shape(spec);
    const auto pieces = spanning_subdivision(K.cells(), full_cube(27), 0, 3);
    check_pieces(pieces, K.cells(), full_cube(27), 3);
}
