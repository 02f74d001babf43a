#include "carver/io.h"

#include "carver/errors.h"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace carver {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorKind::InvalidInput, what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) bad("expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) bad(std::string("missing field '") + key + "'");
    return *it;
}

int as_int(const Json& j, const char* what) {
    if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
    const auto v = j.get<std::int64_t>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) bad(std::string(what) + " out of range");
    return static_cast<int>(v);
}

double as_double(const Json& j, const char* what) {
    if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
    if (!j.is_number()) bad(std::string(what) + " must be a number");
    return j.get<double>();
}

std::uint64_t as_u64(const Json& j, const char* what) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        bad(std::string(what) + " must be a non-negative integer");
    return j.get<std::uint64_t>();
}

Json cell_json(const CellIndex& c, int d) {
    Json a = Json::array();
    for (int i = 0; i < d; ++i) a.push_back(c[i]);
    return a;
}

CellIndex cell_from(const Json& j, int d) {
    if (!j.is_array() || static_cast<int>(j.size()) != d) bad("cell must be an array of " + std::to_string(d) + " integers");
    CellIndex c;
    for (int i = 0; i < d; ++i) c[i] = as_int(j[static_cast<std::size_t>(i)], "cell coordinate");
    return c;
}

Json cells_json(const CellSet& cells) {
    Json a = Json::array();
    for (const auto& c : cells) a.push_back(cell_json(c, cells.dim()));
    return a;
}

// Cells must be strictly increasing in lexicographic order.
CellSet cells_from(const Json& j, int d) {
    if (!j.is_array()) bad("cells must be an array");
    std::vector<CellIndex> cells;
    cells.reserve(j.size());
    for (const auto& item : j) {
        CellIndex c = cell_from(item, d);
        if (!cells.empty() && !(cells.back() < c)) bad("cells are not sorted or contain duplicates at " + to_string(c, d));
        cells.push_back(c);
    }
    return CellSet::from_sorted(d, std::move(cells));
}

Json point_json(const Point& p, int d) {
    Json a = Json::array();
    for (int i = 0; i < d; ++i) a.push_back(p[i]);
    return a;
}

Point point_from(const Json& j, int d) {
    if (!j.is_array() || static_cast<int>(j.size()) != d) bad("point must have " + std::to_string(d) + " coordinates");
    Point p{};
    for (int i = 0; i < d; ++i) p[i] = as_double(j[static_cast<std::size_t>(i)], "point coordinate");
    return p;
}

int dim_from(const Json& j) {
    const int d = as_int(field(j, "d"), "d");
    if (d < 1 || d > kMaxDim) bad("dimension must be between 1 and " + std::to_string(kMaxDim));
    return d;
}

template <class T>
std::vector<T> vector_from(const Json& j, const char* what, T (*conv)(const Json&, const char*)) {
    if (!j.is_array()) bad(std::string(what) + " must be an array");
    std::vector<T> out;
    for (const auto& item : j) out.push_back(conv(item, what));
    return out;
}

template <class Fn>
auto guarded(Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const nlohmann::json::exception& e) {
        bad(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace

Json to_json(const DiscreteContinuum& K) {
    return Json{{"d", K.dim()}, {"resolution", K.resolution()}, {"cells", cells_json(K.cells())}};
}

DiscreteContinuum continuum_from_json(const Json& j) {
    return guarded([&] {
        const int d = dim_from(j);
        const int R = as_int(field(j, "resolution"), "resolution");
        try {
            return DiscreteContinuum::make(d, R, cells_from(field(j, "cells"), d));
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::InvalidInput) throw;
            bad(std::string("invalid continuum: ") + e.what());
        }
    });
}

Json to_json(const CubeRegion& cube, int d) {
    return Json{{"origin", cell_json(cube.origin, d)}, {"edge_cells", cube.edge_cells}};
}

CubeRegion cube_from_json(const Json& j, int d) {
    return guarded([&] {
        CubeRegion cube{cell_from(field(j, "origin"), d), as_int(field(j, "edge_cells"), "edge_cells")};
        if (cube.edge_cells < 1) bad("edge_cells must be positive");
        return cube;
    });
}

namespace {

Json piece_json(const SpanningPiece& p, int d) {
    return Json{{"cube", to_json(p.cube, d)}, {"span_axis", p.span_axis}, {"cells", cells_json(p.piece)}};
}

SpanningPiece piece_from(const Json& j, int d) {
    SpanningPiece p;
    p.cube = cube_from_json(field(j, "cube"), d);
    p.span_axis = as_int(field(j, "span_axis"), "span_axis");
    if (p.span_axis < 0 || p.span_axis >= d) bad("span_axis out of range");
    p.piece = cells_from(field(j, "cells"), d);
    return p;
}

}  // namespace

Json pieces_to_json(const std::vector<SpanningPiece>& pieces, int d) {
    Json a = Json::array();
    for (const auto& p : pieces) a.push_back(piece_json(p, d));
    return a;
}

std::vector<SpanningPiece> pieces_from_json(const Json& j) {
    return guarded([&] {
        if (!j.is_array()) bad("pieces must be an array");
        std::vector<SpanningPiece> out;
        for (const auto& item : j) {
            const auto& origin = field(field(item, "cube"), "origin");
            if (!origin.is_array() || origin.empty() || origin.size() > kMaxDim) bad("bad cube origin");
            out.push_back(piece_from(item, static_cast<int>(origin.size())));
        }
        return out;
    });
}

Json to_json(const CantorTree& tree) {
    Json nodes = Json::array();
    for (const auto& [word, piece] : tree.nodes) {
        Json node = piece_json(piece, tree.d);
        node["word"] = word;
        nodes.push_back(std::move(node));
    }
    return Json{{"N", tree.N}, {"depth", tree.depth}, {"d", tree.d}, {"resolution", tree.resolution},
                {"nodes", std::move(nodes)}};
}

CantorTree tree_from_json(const Json& j) {
    return guarded([&] {
        CantorTree tree;
        tree.N = as_int(field(j, "N"), "N");
        tree.depth = as_int(field(j, "depth"), "depth");
        tree.d = dim_from(j);
        tree.resolution = as_int(field(j, "resolution"), "resolution");
        if (tree.N < 2 || tree.depth < 0 || tree.resolution < 1) bad("tree parameters out of range");
        const auto& nodes = field(j, "nodes");
        if (!nodes.is_array()) bad("nodes must be an array");
        for (const auto& item : nodes) {
            const auto& wj = field(item, "word");
            if (!wj.is_array()) bad("word must be an array");
            Word w;
            for (const auto& digit : wj) {
                const int v = as_int(digit, "word digit");
                if (v < 1 || v > tree.N - 1) bad("word digit out of range");
                w.push_back(v);
            }
            if (static_cast<int>(w.size()) > tree.depth) bad("word longer than the tree depth");
            if (!tree.nodes.empty() && !(tree.nodes.rbegin()->first < w)) bad("nodes are not sorted by word");
            tree.nodes.emplace(std::move(w), piece_from(item, tree.d));
        }
        std::uint64_t expected = 0;
        for (int n = 0; n <= tree.depth; ++n) expected += checked_pow(static_cast<std::uint64_t>(tree.N - 1), n);
        if (tree.nodes.size() != expected) bad("tree has " + std::to_string(tree.nodes.size()) + " nodes, expected " +
                                               std::to_string(expected));
        return tree;
    });
}

Json to_json(const Polyline& p) {
    Json pts = Json::array();
    for (const auto& q : p.points) pts.push_back(point_json(q, p.d));
    return Json{{"d", p.d}, {"points", std::move(pts)}, {"length", polyline_length(p)}};
}

Polyline polyline_from_json(const Json& j) {
    return guarded([&] {
        Polyline p;
        p.d = dim_from(j);
        const auto& pts = field(j, "points");
        if (!pts.is_array() || pts.empty()) bad("polyline needs at least one point");
        for (const auto& q : pts) p.points.push_back(point_from(q, p.d));
        return p;
    });
}

Json to_json(const CoverBudget& b) {
    return Json{{"base", b.base}, {"d", b.d}, {"s", b.s}, {"c1", b.c1}, {"c2", b.c2}, {"root_edge", b.root_edge},
                {"r", b.r}, {"l", b.l}, {"L_partial", b.L_partial}, {"L", b.L}};
}

CoverBudget budget_from_json(const Json& j) {
    return guarded([&] {
        CoverBudget b;
        b.base = as_int(field(j, "base"), "base");
        b.d = dim_from(j);
        b.s = as_double(field(j, "s"), "s");
        b.c1 = as_double(field(j, "c1"), "c1");
        b.c2 = as_double(field(j, "c2"), "c2");
        b.root_edge = as_double(field(j, "root_edge"), "root_edge");
        b.r = vector_from<std::uint64_t>(field(j, "r"), "r", as_u64);
        b.l = vector_from<double>(field(j, "l"), "l", as_double);
        b.L_partial = vector_from<double>(field(j, "L_partial"), "L_partial", as_double);
        b.L = as_double(field(j, "L"), "L");
        return b;
    });
}

Json to_json(const BoxCountSeries& s) {
    Json entries = Json::array();
    for (const auto& e : s.entries) entries.push_back(Json{{"k", e.k}, {"delta", e.delta}, {"count", e.count}});
    return Json{{"base", s.base}, {"entries", std::move(entries)}};
}

BoxCountSeries series_from_json(const Json& j) {
    return guarded([&] {
        BoxCountSeries s;
        s.base = as_int(field(j, "base"), "base");
        const auto& entries = field(j, "entries");
        if (!entries.is_array()) bad("entries must be an array");
        for (const auto& e : entries)
            s.entries.push_back({as_int(field(e, "k"), "k"), as_double(field(e, "delta"), "delta"),
                                 as_u64(field(e, "count"), "count")});
        return s;
    });
}

Json to_json(const DimensionEstimate& e) {
    return Json{{"slope", e.slope},
                {"intercept", e.intercept},
                {"r_squared", e.r_squared},
                {"window", Json{{"first", e.window.first}, {"last", e.window.last}}}};
}

DimensionEstimate estimate_from_json(const Json& j) {
    return guarded([&] {
        DimensionEstimate e;
        e.slope = as_double(field(j, "slope"), "slope");
        e.intercept = as_double(field(j, "intercept"), "intercept");
        e.r_squared = as_double(field(j, "r_squared"), "r_squared");
        const auto& w = field(j, "window");
        e.window.first = as_u64(field(w, "first"), "window.first");
        e.window.last = as_u64(field(w, "last"), "window.last");
        return e;
    });
}

Json report_to_json(const AssemblyResult& result, int d) {
    Json stages = Json::array();
    for (const auto& st : result.stages) {
        stages.push_back(Json{{"n", st.n},
                              {"center", cell_json(st.center, d)},
                              {"radius", st.radius},
                              {"region_cells", st.region.size()},
                              {"N_n", st.params.N},
                              {"ideal_N", st.params.ideal_N},
                              {"capped", st.params.capped},
                              {"depth_n", st.params.depth},
                              {"s_n", st.s},
                              {"stage_resolution", st.stage_resolution},
                              {"leaves", st.leaves},
                              {"cover_length", st.cover_length},
                              {"parts", st.parts},
                              {"kept_part", st.kept_part},
                              {"curve_length", st.curve_length},
                              {"join_length", st.join_length},
                              {"ball_excess", st.ball_excess},
                              {"intersection_slope", st.intersection_slope},
                              {"slope_scales", st.slope_scales}});
    }
    return Json{{"x", cell_json(result.x, d)},
                {"stages", std::move(stages)},
                {"curves_length", result.curves_length},
                {"joins_length", result.joins_length},
                {"total_length", result.total_length},
                {"final_slope", result.final_slope}};
}

std::string dump(const Json& j) { return j.dump() + "\n"; }

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bad("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json read_json_file(const std::string& path) {
    const std::string text = read_text_file(path);
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) bad("'" + path + "' is not valid JSON");
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) bad("cannot write '" + path + "'");
    out << text;
    if (!out) bad("failed writing '" + path + "'");
}

}  // namespace carver
