#include "carver/grid.h"

#include "carver/errors.h"

#include <algorithm>
#include <cstdlib>

namespace carver {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput: return "invalid input";
        case ErrorKind::Domain: return "domain error";
        case ErrorKind::Precondition: return "precondition violated";
        case ErrorKind::Degeneracy: return "degenerate continuum";
        case ErrorKind::Resolution: return "insufficient resolution";
        case ErrorKind::Config: return "configuration error";
        case ErrorKind::UnsupportedDimension: return "unsupported dimension";
        case ErrorKind::BudgetDivergence: return "budget diverges";
        case ErrorKind::InsufficientData: return "insufficient data";
        case ErrorKind::Internal: return "internal error";
    }
    return "error";
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput:
        case ErrorKind::Domain:
        case ErrorKind::Config:
        case ErrorKind::UnsupportedDimension:
            return 2;
        case ErrorKind::Precondition:
        case ErrorKind::Degeneracy:
        case ErrorKind::BudgetDivergence:
        case ErrorKind::InsufficientData:
            return 3;
        case ErrorKind::Resolution:
            return 4;
        case ErrorKind::Internal:
            return 1;
    }
    return 1;
}

CellIndex make_cell(std::initializer_list<std::int32_t> coords) {
    if (coords.size() > static_cast<std::size_t>(kMaxDim))
        fail(ErrorKind::UnsupportedDimension, "cell has more than kMaxDim coordinates");
    CellIndex cell;
    std::size_t i = 0;
    for (auto v : coords) cell.c[i++] = v;
    return cell;
}

std::string to_string(const CellIndex& cell, int d) {
    std::string out = "(";
    for (int axis = 0; axis < d; ++axis) {
        if (axis) out += ",";
        out += std::to_string(cell[axis]);
    }
    return out + ")";
}

// ---------------------------------------------------------------------------
// CellSet

CellSet CellSet::from_unsorted(int d, std::vector<CellIndex> cells) {
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    CellSet out(d);
    out.cells_ = std::move(cells);
    return out;
}

CellSet CellSet::from_sorted(int d, std::vector<CellIndex> cells) {
    CellSet out(d);
    out.cells_ = std::move(cells);
    return out;
}

bool CellSet::contains(const CellIndex& cell) const {
    return std::binary_search(cells_.begin(), cells_.end(), cell);
}

std::optional<std::size_t> CellSet::index_of(const CellIndex& cell) const {
    auto it = std::lower_bound(cells_.begin(), cells_.end(), cell);
    if (it == cells_.end() || *it != cell) return std::nullopt;
    return static_cast<std::size_t>(it - cells_.begin());
}

bool CellSet::is_subset_of(const CellSet& other) const {
    return std::includes(other.cells_.begin(), other.cells_.end(), cells_.begin(), cells_.end());
}

CellSet set_union(const CellSet& a, const CellSet& b) {
    std::vector<CellIndex> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return CellSet::from_sorted(std::max(a.dim(), b.dim()), std::move(out));
}

CellSet set_intersection(const CellSet& a, const CellSet& b) {
    std::vector<CellIndex> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return CellSet::from_sorted(std::max(a.dim(), b.dim()), std::move(out));
}

CellSet set_difference(const CellSet& a, const CellSet& b) {
    std::vector<CellIndex> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return CellSet::from_sorted(a.dim(), std::move(out));
}

// ---------------------------------------------------------------------------
// CubeRegion

bool CubeRegion::contains(const CellIndex& cell) const {
    for (int axis = 0; axis < kMaxDim; ++axis) {
        if (cell[axis] < origin[axis] || cell[axis] >= origin[axis] + edge_cells) return false;
    }
    return true;
}

bool CubeRegion::contains(const CubeRegion& other) const {
    for (int axis = 0; axis < kMaxDim; ++axis) {
        if (other.origin[axis] < origin[axis]) return false;
        if (other.origin[axis] + other.edge_cells > origin[axis] + edge_cells) return false;
    }
    return true;
}

bool CubeRegion::fits_resolution(int resolution, int d) const {
    if (edge_cells <= 0) return false;
    for (int axis = 0; axis < d; ++axis) {
        if (origin[axis] < 0 || origin[axis] + edge_cells > resolution) return false;
    }
    for (int axis = d; axis < kMaxDim; ++axis) {
        if (origin[axis] != 0) return false;
    }
    return true;
}

bool cubes_overlap(const CubeRegion& a, const CubeRegion& b, int d) {
    for (int axis = 0; axis < d; ++axis) {
        if (a.origin[axis] + a.edge_cells <= b.origin[axis]) return false;
        if (b.origin[axis] + b.edge_cells <= a.origin[axis]) return false;
    }
    return true;
}

CubeRegion full_cube(int resolution) {
    return CubeRegion{CellIndex{}, resolution};
}

// ---------------------------------------------------------------------------
// Connectivity

namespace {

template <class Visit>
void flood(const CellSet& cells, std::size_t start, std::vector<std::int32_t>& label,
           std::int32_t id, Visit&& visit) {
    std::vector<std::size_t> stack{start};
    label[start] = id;
    while (!stack.empty()) {
        std::size_t k = stack.back();
        stack.pop_back();
        visit(cells[k]);
        for_each_face_neighbor(cells[k], cells.dim(), [&](const CellIndex& nb) {
            auto j = cells.index_of(nb);
            if (j && label[*j] < 0) {
                label[*j] = id;
                stack.push_back(*j);
            }
        });
    }
}

}  // namespace

std::vector<CellSet> connected_components(const CellSet& cells) {
    std::vector<std::int32_t> label(cells.size(), -1);
    std::vector<CellSet> out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (label[i] >= 0) continue;
        std::vector<CellIndex> members;
        flood(cells, i, label, static_cast<std::int32_t>(out.size()),
              [&](const CellIndex& c) { members.push_back(c); });
        // The seed is the smallest unlabeled cell, so components come out
        // ordered by their smallest member.
        out.push_back(CellSet::from_unsorted(cells.dim(), std::move(members)));
    }
    return out;
}

CellSet component_containing(const CellSet& cells, const CellIndex& seed) {
    auto start = cells.index_of(seed);
    if (!start) fail(ErrorKind::Domain, "seed cell is not in the set");
    std::vector<std::int32_t> label(cells.size(), -1);
    std::vector<CellIndex> members;
    flood(cells, *start, label, 0, [&](const CellIndex& c) { members.push_back(c); });
    return CellSet::from_unsorted(cells.dim(), std::move(members));
}

bool is_connected(const CellSet& cells) {
    if (cells.empty()) return true;
    std::vector<std::int32_t> label(cells.size(), -1);
    std::size_t reached = 0;
    flood(cells, 0, label, 0, [&](const CellIndex&) { ++reached; });
    return reached == cells.size();
}

CellSet relative_boundary(const CellSet& X, const CellSet& A) {
    if (!A.is_subset_of(X)) fail(ErrorKind::Domain, "relative_boundary: A is not a subset of X");
    std::vector<CellIndex> out;
    for (const auto& cell : A) {
        bool boundary = false;
        for_each_face_neighbor(cell, X.dim(), [&](const CellIndex& nb) {
            if (!boundary && X.contains(nb) && !A.contains(nb)) boundary = true;
        });
        if (boundary) out.push_back(cell);
    }
    return CellSet::from_sorted(A.dim(), std::move(out));
}

bool check_boundary_component_property(const DiscreteContinuum& X, const CellSet& A) {
    if (A.empty()) fail(ErrorKind::Precondition, "A must be non-empty");
    if (!A.is_subset_of(X.cells())) fail(ErrorKind::Precondition, "A must be a subset of X");
    if (A.size() == X.cells().size()) fail(ErrorKind::Precondition, "A must differ from X");
    const CellSet boundary = relative_boundary(X.cells(), A);
    for (const auto& component : connected_components(A)) {
        if (set_intersection(component, boundary).empty()) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// DiscreteContinuum

DiscreteContinuum DiscreteContinuum::make(int d, int resolution, CellSet cells) {
    if (d < 1 || d > kMaxDim)
        fail(ErrorKind::UnsupportedDimension, "dimension must be in [1, " + std::to_string(kMaxDim) + "]");
    if (resolution < 1) fail(ErrorKind::InvalidInput, "resolution must be positive");
    if (cells.dim() != d) cells = CellSet::from_sorted(d, std::vector<CellIndex>(cells.cells()));
    if (cells.empty()) fail(ErrorKind::InvalidInput, "continuum has no cells");
    for (const auto& cell : cells) {
        for (int axis = 0; axis < kMaxDim; ++axis) {
            const bool ok = axis < d ? (cell[axis] >= 0 && cell[axis] < resolution) : cell[axis] == 0;
            if (!ok) fail(ErrorKind::InvalidInput, "cell " + to_string(cell, d) + " outside the grid");
        }
    }
    if (!is_connected(cells)) fail(ErrorKind::InvalidInput, "cells are not face-connected");
    if (cells.size() < 2) fail(ErrorKind::Degeneracy, "continuum consists of a single cell");
    return DiscreteContinuum(d, resolution, std::move(cells));
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

}  // namespace

NormalizedContinuum normalize_to_unit_cube(const CellSet& cells, int target_resolution,
                                           int source_resolution) {
    const int d = cells.dim();
    if (cells.size() < 2) fail(ErrorKind::Degeneracy, "cannot normalize a single cell");
    if (!is_connected(cells)) fail(ErrorKind::InvalidInput, "cannot normalize a disconnected set");
    if (target_resolution < 2) fail(ErrorKind::Resolution, "target resolution must be at least 2");

    CellIndex lo = cells[0], hi = cells[0];
    for (const auto& cell : cells) {
        for (int axis = 0; axis < d; ++axis) {
            lo[axis] = std::min(lo[axis], cell[axis]);
            hi[axis] = std::max(hi[axis], cell[axis]);
        }
    }
    int span_axis = 0;
    std::int32_t extent = 0;
    for (int axis = 0; axis < d; ++axis) {
        const std::int32_t e = hi[axis] - lo[axis] + 1;
        if (e > extent) {
            extent = e;
            span_axis = axis;
        }
    }
    // A set already spanning the source grid keeps the identity window.
    // Otherwise the window [offset, offset + extent) starts at the set's
    // minimum, like the strips of the subdivision; it may reach past the
    // source grid on non-spanned axes, but the min-corner of any cube holding
    // a cell of the copy maps back inside it.
    CellIndex offset = extent == source_resolution ? CellIndex{} : lo;
    const std::int64_t R = target_resolution;
    const std::int64_t E = extent;
    std::vector<CellIndex> out;
    for (const auto& cell : cells) {
        // Target cells overlapping the scaled source cell, per axis.
        std::array<std::int32_t, kMaxDim> first{}, last{};
        for (int axis = 0; axis < d; ++axis) {
            const std::int64_t rel = cell[axis] - offset[axis];
            first[axis] = static_cast<std::int32_t>(floor_div(rel * R, E));
            last[axis] = static_cast<std::int32_t>(ceil_div((rel + 1) * R, E) - 1);
        }
        CellIndex cur;
        for (int axis = 0; axis < d; ++axis) cur[axis] = first[axis];
        for (;;) {
            out.push_back(cur);
            int axis = d - 1;
            while (axis >= 0) {
                if (cur[axis] < last[axis]) {
                    ++cur[axis];
                    break;
                }
                cur[axis] = first[axis];
                --axis;
            }
            if (axis < 0) break;
        }
    }
    NormalizedContinuum result{
        DiscreteContinuum::make(d, target_resolution, CellSet::from_unsorted(d, std::move(out))),
        full_cube(target_resolution), span_axis,
        SimilarityFrame{offset, extent, source_resolution, target_resolution}};
    ensure(spans_opposite_faces(result.continuum, result.cube, span_axis),
           "normalized continuum spans its reported axis");
    return result;
}

bool spans_opposite_faces(const CellSet& K, const CubeRegion& Q, int axis) {
    if (axis < 0 || axis >= K.dim()) fail(ErrorKind::Domain, "axis out of range");
    bool first = false, last = false;
    const std::int32_t lo = Q.origin[axis];
    const std::int32_t hi = Q.origin[axis] + Q.edge_cells - 1;
    for (const auto& cell : K) {
        if (!Q.contains(cell)) fail(ErrorKind::Precondition, "continuum is not contained in the cube");
        first = first || cell[axis] == lo;
        last = last || cell[axis] == hi;
    }
    return first && last;
}

bool spans_opposite_faces(const DiscreteContinuum& K, const CubeRegion& Q, int axis) {
    return spans_opposite_faces(K.cells(), Q, axis);
}

}  // namespace carver
