#include "carver/subdivision.h"

#include "carver/errors.h"
#include "carver/parallel.h"

#include <algorithm>
#include <optional>

namespace carver {

bool SlabRegion::contains(const CellIndex& cell) const {
    return parent.contains(cell) && cell[axis] >= first_layer() && cell[axis] <= last_layer();
}

namespace {

CellSet filter(const CellSet& cells, auto&& keep) {
    std::vector<CellIndex> out;
    for (const auto& cell : cells) {
        if (keep(cell)) out.push_back(cell);
    }
    return CellSet::from_sorted(cells.dim(), std::move(out));
}

std::optional<CellIndex> first_in_layer(const CellSet& cells, int axis, std::int32_t layer) {
    for (const auto& cell : cells) {
        if (cell[axis] == layer) return cell;
    }
    return std::nullopt;
}

bool touches_layer(const CellSet& cells, int axis, std::int32_t layer) {
    return first_in_layer(cells, axis, layer).has_value();
}

void check_subdivision_args(const CellSet& K, const CubeRegion& Q, int axis, int N) {
    if (N < 2) fail(ErrorKind::Domain, "N must be at least 2");
    if (axis < 0 || axis >= K.dim()) fail(ErrorKind::Domain, "axis out of range");
    if (Q.edge_cells % N != 0)
        fail(ErrorKind::Resolution, "cube edge of " + std::to_string(Q.edge_cells) +
                                        " cells is not divisible by N = " + std::to_string(N));
    if (K.empty()) fail(ErrorKind::Precondition, "continuum is empty");
    if (!spans_opposite_faces(K, Q, axis))
        fail(ErrorKind::Precondition, "continuum does not span the cube along axis " + std::to_string(axis));
}

}  // namespace

SlabChain slab_chain(const CellSet& K, const CubeRegion& Q, int axis, int N) {
    check_subdivision_args(K, Q, axis, N);

    SlabChain chain;
    for (int i = 1; i <= N; ++i) chain.slabs.push_back(SlabRegion{Q, axis, i, N});

    const auto y = first_in_layer(K, axis, Q.origin[axis] + Q.edge_cells - 1);
    ensure(y.has_value(), "spanning continuum has a last-face cell");

    CellSet current = K;  // C'_i: spans from the first face of T_i to the last face of Q
    for (int i = 1; i <= N; ++i) {
        const SlabRegion& slab = chain.slabs[static_cast<std::size_t>(i - 1)];
        const auto x = first_in_layer(current, axis, slab.first_layer());
        ensure(x.has_value(), "remainder reaches the first face of slab " + std::to_string(i));

        CellSet in_slab = filter(current, [&](const CellIndex& c) { return slab.contains(c); });
        CellSet C = component_containing(in_slab, *x);
        ensure(touches_layer(C, axis, slab.last_layer()),
               "C_" + std::to_string(i) + " reaches the far face of its slab");
        chain.chains.push_back(std::move(C));

        if (i < N) {
            CellSet beyond = filter(current, [&](const CellIndex& c) { return c[axis] > slab.last_layer(); });
            current = component_containing(beyond, *y);
            ensure(touches_layer(current, axis, slab.last_layer() + 1),
                   "remainder C'_" + std::to_string(i + 1) + " reaches the face it shares with slab " +
                       std::to_string(i));
        }
    }
    return chain;
}

SpanningPiece trim_to_cube(const CellSet& C, const SlabRegion& slab) {
    const int d = C.dim();
    const int a = slab.axis;
    const std::int32_t w = slab.width();
    if (C.empty() || !std::all_of(C.begin(), C.end(), [&](const CellIndex& c) { return slab.contains(c); }))
        fail(ErrorKind::Precondition, "piece is not inside its slab");
    if (!touches_layer(C, a, slab.first_layer()) || !touches_layer(C, a, slab.last_layer()))
        fail(ErrorKind::Precondition, "piece does not span its slab");

    CellSet A = C;
    int m = a;
    CubeRegion cube{slab.parent.origin, w};
    cube.origin[a] = slab.first_layer();
    // Bounding hyperplanes (as cell layers) of the certified axis m.
    std::int32_t cert_lo = slab.first_layer(), cert_hi = slab.last_layer();

    for (int j = 0; j < d; ++j) {
        if (j == a) continue;
        // A is sorted lexicographically, so the first minimum found is the
        // lexicographically smallest cell of minimal j-th coordinate.
        const CellIndex* x = &A[0];
        for (const auto& cell : A) {
            if (cell[j] < (*x)[j]) x = &cell;
        }
        const std::int32_t parent_end = slab.parent.origin[j] + slab.parent.edge_cells;
        const std::int32_t lo = std::min((*x)[j], parent_end - w);
        const std::int32_t hi = lo + w - 1;
        cube.origin[j] = lo;

        const bool inside = std::all_of(A.begin(), A.end(), [&](const CellIndex& c) { return c[j] <= hi; });
        if (!inside) {
            const CellIndex seed = *x;
            A = component_containing(filter(A, [&](const CellIndex& c) { return c[j] <= hi; }), seed);
            m = j;
            cert_lo = lo;
            cert_hi = hi;
        }
        ensure(touches_layer(A, m, cert_lo) && touches_layer(A, m, cert_hi),
               "trimmed piece reaches both faces of its certified axis");
    }
    return SpanningPiece{cube, std::move(A), m};
}

std::vector<SpanningPiece> spanning_subdivision(const CellSet& K, const CubeRegion& Q, int axis, int N) {
    const SlabChain chain = slab_chain(K, Q, axis, N);
    std::vector<SpanningPiece> pieces(static_cast<std::size_t>(N));
    parallel_for(pieces.size(), [&](std::size_t i) { pieces[i] = trim_to_cube(chain.chains[i], chain.slabs[i]); });
    const std::string problem = validate_pieces(pieces, K, Q, N);
    ensure(problem.empty(), problem);
    return pieces;
}

std::string validate_pieces(const std::vector<SpanningPiece>& pieces, const CellSet& parent,
                            const CubeRegion& Q, int N) {
    const int d = parent.dim();
    if (pieces.size() != static_cast<std::size_t>(N)) return "expected N pieces";
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const auto& p = pieces[i];
        const std::string tag = "piece " + std::to_string(i + 1) + ": ";
        if (p.cube.edge_cells * N != Q.edge_cells) return tag + "wrong cube edge";
        if (!Q.contains(p.cube)) return tag + "cube leaves the parent cube";
        if (p.piece.empty()) return tag + "empty";
        if (!p.piece.is_subset_of(parent)) return tag + "not a subset of the parent continuum";
        if (!std::all_of(p.piece.begin(), p.piece.end(), [&](const CellIndex& c) { return p.cube.contains(c); }))
            return tag + "not inside its cube";
        if (!is_connected(p.piece)) return tag + "not connected";
        if (!spans_opposite_faces(p.piece, p.cube, p.span_axis)) return tag + "does not span its cube";
        for (std::size_t j = 0; j < i; ++j) {
            if (cubes_overlap(p.cube, pieces[j].cube, d)) return tag + "cube overlaps an earlier cube";
        }
    }
    return {};
}

}  // namespace carver
