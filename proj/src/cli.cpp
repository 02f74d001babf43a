#include "carver/cli.h"

#include "carver/assembly.h"
#include "carver/cantor.h"
#include "carver/curve_cover.h"
#include "carver/dimension.h"
#include "carver/errors.h"
#include "carver/generators.h"
#include "carver/io.h"
#include "carver/random.h"
#include "carver/subdivision.h"
#include "carver/svg.h"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace carver {

namespace {

constexpr int kMaxResolution = 1 << 14;

std::vector<double> parse_numbers(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            fail(ErrorKind::InvalidInput, "cannot parse number '" + item + "' in '" + text + "'");
        }
    }
    return out;
}

Point parse_point(const std::string& text, int d) {
    const auto v = parse_numbers(text);
    if (static_cast<int>(v.size()) != d) fail(ErrorKind::InvalidInput, "'" + text + "' needs " + std::to_string(d) + " coordinates");
    Point p{};
    for (int i = 0; i < d; ++i) p[i] = v[static_cast<std::size_t>(i)];
    return p;
}

CellIndex parse_cell(const std::string& text, int d) {
    const auto v = parse_numbers(text);
    if (static_cast<int>(v.size()) != d) fail(ErrorKind::InvalidInput, "'" + text + "' needs " + std::to_string(d) + " indices");
    CellIndex c;
    for (int i = 0; i < d; ++i) {
        const double x = v[static_cast<std::size_t>(i)];
        if (x != std::floor(x) || x < 0 || x > kMaxResolution) fail(ErrorKind::InvalidInput, "bad cell index in '" + text + "'");
        c[i] = static_cast<std::int32_t>(x);
    }
    return c;
}

std::string fmt(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

bool is_tree_json(const Json& j) { return j.is_object() && j.contains("nodes"); }

struct GenArgs {
    std::string shape;
    int resolution = 0;
    int dim = 2;
    int depth = -1;
    std::uint64_t seed = 1;
    std::vector<std::string> points;
    std::string center;
    double radius = -1.0;
    std::string output;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
    if (a.resolution < 1 || a.resolution > kMaxResolution)
        fail(ErrorKind::InvalidInput, "--res must be between 1 and " + std::to_string(kMaxResolution));
    ShapeSpec spec = default_shape(parse_shape_kind(a.shape), a.resolution);
    spec.d = a.dim;
    if (a.dim != 2 && spec.points.size() >= 2) {
        // Default endpoints are planar; extend them by a constant coordinate.
        for (auto& p : spec.points) {
            for (int i = 2; i < a.dim; ++i) p[i] = 0.5;
        }
    }
    if (!a.points.empty()) {
        spec.points.clear();
        for (const auto& p : a.points) spec.points.push_back(parse_point(p, a.dim));
    }
    if (!a.center.empty()) spec.center = parse_point(a.center, a.dim);
    if (a.radius >= 0.0) spec.radius = a.radius;
    if (a.depth >= 0) spec.depth = a.depth;
    spec.seed = a.seed;
    const auto K = rasterize_shape(spec);
    write_text_file(a.output, dump(to_json(K)));
    out << "shape " << to_string(spec.kind) << " d=" << K.dim() << " R=" << K.resolution() << " cells=" << K.cells().size()
        << "\n";
    return 0;
}

DiscreteContinuum load_continuum(const std::string& path) { return continuum_from_json(read_json_file(path)); }

int cmd_subdivide(const std::string& in, int N, int axis, const std::string& output, std::ostream& out) {
    const auto K = load_continuum(in);
    const auto Q = full_cube(K.resolution());
    const auto pieces = spanning_subdivision(K.cells(), Q, axis, N);
    write_text_file(output, dump(pieces_to_json(pieces, K.dim())));
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        out << "piece " << i + 1 << " cube " << to_string(pieces[i].cube.origin, K.dim()) << "+" << pieces[i].cube.edge_cells
            << " span_axis=" << pieces[i].span_axis << " cells=" << pieces[i].piece.size() << "\n";
    }
    return 0;
}

int cmd_carve(const std::string& in, int N, double epsilon, int depth, int axis, const std::string& output,
              std::ostream& out) {
    const auto K = load_continuum(in);
    if (epsilon > 0.0) N = smallest_branching_for(epsilon);
    if (N < 2) fail(ErrorKind::InvalidInput, "-N must be at least 2 (or pass --epsilon)");
    if (depth < 0) {
        // Deepest tree the resolution allows.
        depth = 0;
        std::int64_t p = N;
        while (K.resolution() % p == 0) {
            ++depth;
            p *= N;
        }
    }
    const auto tree = build_cantor_tree(K, full_cube(K.resolution()), axis, N, depth);
    write_text_file(output, dump(to_json(tree)));
    out << "N=" << N << " depth=" << depth << " s=" << fmt(tree.s()) << " leaves=" << tree.leaf_count()
        << " required_resolution_multiple=" << checked_pow(static_cast<std::uint64_t>(N), depth) << "\n";
    return 0;
}

int cmd_cover(const std::string& in, const std::string& output, const std::string& budget_path, std::ostream& out) {
    const auto tree = tree_from_json(read_json_file(in));
    const auto result = cover_curve(hierarchy_from_tree(tree));
    write_text_file(output, dump(to_json(result.deepest())));
    if (!budget_path.empty()) write_text_file(budget_path, dump(to_json(result.budget)));
    for (std::size_t n = 0; n < result.curves.size(); ++n) {
        out << "level " << n << " vertices=" << result.curves[n].points.size() << " length=" << fmt(polyline_length(result.curves[n]))
            << " inserted=" << fmt(result.inserted_lengths[n]);
        if (n < result.budget.l.size()) out << " bound=" << fmt(result.budget.l[n]);
        out << "\n";
    }
    out << "budget L=" << fmt(result.budget.L) << " c1=" << fmt(result.budget.c1) << " c2=" << fmt(result.budget.c2) << "\n";
    return 0;
}

int cmd_assemble(const std::string& in, int stages, bool auto_stages, const std::string& x, const std::string& output,
                 const std::string& report_path, std::ostream& out) {
    const auto K = load_continuum(in);
    AssemblyOptions opts;
    opts.n_max = stages;
    opts.auto_stages = auto_stages;
    if (!x.empty()) opts.x = parse_cell(x, K.dim());
    const auto result = assemble(K, opts);
    write_text_file(output, dump(to_json(result.gamma)));
    if (!report_path.empty()) write_text_file(report_path, dump(report_to_json(result, K.dim())));
    for (const auto& st : result.stages) {
        out << "stage " << st.n << " N=" << st.params.N << (st.params.capped ? " (capped)" : "") << " depth=" << st.params.depth
            << " s=" << fmt(st.s) << " length=" << fmt(st.curve_length) << " join=" << fmt(st.join_length)
            << " slope=" << fmt(st.intersection_slope) << "\n";
    }
    out << "total_length=" << fmt(result.total_length) << " final_slope=" << fmt(result.final_slope) << "\n";
    return 0;
}

int cmd_estimate(const std::string& in, int level, int base, int k_max, const std::string& output, std::ostream& out) {
    const Json j = read_json_file(in);
    CellSet cells;
    int resolution = 0;
    int d = 0;
    if (is_tree_json(j)) {
        const auto tree = tree_from_json(j);
        cells = level_cells(tree, level < 0 ? tree.depth : level);
        if (base < 0) base = tree.N;
        resolution = tree.resolution;
        d = tree.d;
    } else {
        const auto K = continuum_from_json(j);
        cells = K.cells();
        resolution = K.resolution();
        d = K.dim();
    }
    if (base < 0) base = 2;
    if (base < 2) fail(ErrorKind::InvalidInput, "--base must be at least 2");
    const int top = max_scale_exponent(resolution, base);
    if (k_max < 0) k_max = top;
    if (k_max > top) fail(ErrorKind::Resolution, "scale " + std::to_string(base) + "^-" + std::to_string(k_max) + " is finer than R = " + std::to_string(resolution));
    const auto series = box_count_series(cells, resolution, base, k_max);
    const auto window = default_window(series, d);
    const auto est = estimate_upper_minkowski(series, window);
    out << "k\tdelta\tcount\n";
    for (const auto& e : series.entries) out << e.k << "\t" << fmt(e.delta, 9) << "\t" << e.count << "\n";
    out << "slope=" << fmt(est.slope) << " r2=" << fmt(est.r_squared) << " window=k" << series.entries[window.first].k
        << "..k" << series.entries[window.last].k << "\n";
    if (!output.empty()) write_text_file(output, dump(Json{{"series", to_json(series)}, {"estimate", to_json(est)}}));
    return 0;
}

int cmd_verify(const std::string& in, std::uint64_t trials, int covers, std::uint64_t seed, const std::string& output,
               std::ostream& out) {
    const auto tree = tree_from_json(read_json_file(in));
    const int d = tree.d;
    bool ok = true;
    Json report;

    // Structural invariants of every node against its parent.
    std::string structure;
    if (tree.leaf_count() != tree.level(tree.depth).size()) structure = "leaf count";
    for (const auto& [word, node] : tree.nodes) {
        if (!structure.empty()) break;
        const auto expected_edge = tree.root().cube.edge_cells / static_cast<std::int32_t>(checked_pow(static_cast<std::uint64_t>(tree.N), static_cast<int>(word.size())));
        if (node.cube.edge_cells != expected_edge) structure = "edge at " + to_string(word);
        else if (!is_connected(node.piece)) structure = "connectivity at " + to_string(word);
        else if (!spans_opposite_faces(node.piece, node.cube, node.span_axis)) structure = "spanning at " + to_string(word);
        else if (!word.empty()) {
            const Word parent(word.begin(), word.end() - 1);
            const auto& p = tree.nodes.at(parent);
            if (!p.cube.contains(node.cube) || !node.piece.is_subset_of(p.piece)) structure = "nesting at " + to_string(word);
        }
    }
    for (int n = 1; n <= tree.depth && structure.empty(); ++n) {
        const auto level = tree.level(n);
        for (std::size_t a = 0; a < level.size() && structure.empty(); ++a)
            for (std::size_t b = a + 1; b < level.size() && structure.empty(); ++b)
                if (cubes_overlap(level[a]->cube, level[b]->cube, d)) structure = "overlap at level " + std::to_string(n);
    }
    out << "structure " << (structure.empty() ? "PASS" : "FAIL " + structure) << "\n";
    ok = ok && structure.empty();
    report["structure"] = structure.empty() ? "pass" : structure;

    const auto fr = frostman_check(tree, trials, seed);
    out << "frostman trials=" << fr.trials << " violations=" << fr.violations << " worst_ratio=" << fmt(fr.worst_ratio) << " "
        << (fr.passed() ? "PASS" : "FAIL") << "\n";
    ok = ok && fr.passed();
    report["frostman"] = Json{{"trials", fr.trials}, {"violations", fr.violations}, {"worst_ratio", fr.worst_ratio}};

    const auto leaf_cover = leaf_cube_cover(tree);
    if (tree.depth >= 1) {
        const auto cs = cover_sum_check(tree, leaf_cover);
        out << "cover_sum leaf_cubes sum=" << fmt(cs.sum) << " bound=" << fmt(cs.bound) << " t_sum=" << cs.t_sum
            << " t_bound=" << cs.t_bound << " " << (cs.passed ? "PASS" : "FAIL") << "\n";
        ok = ok && cs.passed;
        report["cover_sum_leaf"] = Json{{"sum", cs.sum}, {"bound", cs.bound}, {"passed", cs.passed}};
    }
    Rng rng(seed);
    int cover_failures = 0;
    double min_sum = std::numeric_limits<double>::infinity();
    for (int i = 0; i < covers; ++i) {
        const auto cover = random_cover(tree, rng);
        const auto cs = cover_sum_check(tree, cover);
        min_sum = std::min(min_sum, cs.sum);
        if (!cs.passed) ++cover_failures;
    }
    if (covers > 0) {
        out << "cover_sum random covers=" << covers << " failures=" << cover_failures << " min_sum=" << fmt(min_sum) << " "
            << (cover_failures == 0 ? "PASS" : "FAIL") << "\n";
        report["cover_sum_random"] = Json{{"covers", covers}, {"failures", cover_failures}, {"min_sum", min_sum}};
    }
    ok = ok && cover_failures == 0;
    report["passed"] = ok;
    if (!output.empty()) write_text_file(output, dump(report));
    return ok ? 0 : 1;
}

int cmd_render(const std::string& in, const std::string& pieces, const std::string& tree_path, int level,
               const std::string& curve, const std::string& output) {
    const auto K = load_continuum(in);
    SvgOverlays overlays;
    if (!pieces.empty()) {
        for (const auto& p : pieces_from_json(read_json_file(pieces))) overlays.cubes.push_back(p.cube);
    }
    if (!tree_path.empty()) {
        const auto tree = tree_from_json(read_json_file(tree_path));
        if (tree.resolution != K.resolution()) fail(ErrorKind::InvalidInput, "tree and continuum resolutions differ");
        const int n = level < 0 ? tree.depth : level;
        if (n > tree.depth) fail(ErrorKind::Domain, "--level exceeds the tree depth");
        for (const auto* node : tree.level(n)) overlays.cubes.push_back(node->cube);
    }
    if (!curve.empty()) overlays.curve = polyline_from_json(read_json_file(curve));
    write_text_file(output, render_svg(K, overlays));
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"carver: continua, Cantor sets and covering curves on grids"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* g = app.add_subcommand("gen", "rasterize a shape into a continuum");
    g->add_option("--shape", gen.shape, "segment|polyline|circle|koch|carpet|maze")->required();
    g->add_option("--res", gen.resolution, "cells per unit length")->required();
    g->add_option("--dim", gen.dim, "ambient dimension")->check(CLI::Range(1, kMaxDim));
    g->add_option("--depth", gen.depth, "koch/carpet depth")->check(CLI::Range(0, 12));
    g->add_option("--seed", gen.seed, "maze seed");
    g->add_option("--point", gen.points, "vertex as x,y[,...]; repeat for polylines");
    g->add_option("--center", gen.center, "circle centre x,y");
    g->add_option("--radius", gen.radius, "circle radius")->check(CLI::Range(0.0, 1.0));
    g->add_option("-o,--output", gen.output, "continuum JSON")->required();

    std::string in, output, aux, aux2, x;
    int N = 0, axis = 0, depth = -1, stages = 3, level = -1, base = -1, k_max = -1, covers = 100;
    double epsilon = 0.0;
    std::uint64_t seed = 1, trials = 10000;
    bool auto_stages = false;

    auto* sub = app.add_subcommand("subdivide", "split a spanning continuum into N spanning pieces");
    sub->add_option("-i,--input", in, "continuum JSON")->required();
    sub->add_option("-N", N, "number of pieces")->required()->check(CLI::Range(2, kMaxResolution));
    sub->add_option("--axis", axis, "spanned axis")->check(CLI::Range(0, kMaxDim - 1));
    sub->add_option("-o,--output", output, "pieces JSON")->required();

    auto* carve = app.add_subcommand("carve", "build the Cantor tree");
    carve->add_option("-i,--input", in, "continuum JSON")->required();
    carve->add_option("-N", N, "branching")->check(CLI::Range(2, kMaxResolution));
    carve->add_option("--epsilon", epsilon, "pick the smallest N with s >= 1 - epsilon")->check(CLI::Range(1e-6, 1.0));
    carve->add_option("--depth", depth, "levels (default: deepest the resolution allows)")->check(CLI::Range(0, 40));
    carve->add_option("--axis", axis, "spanned axis")->check(CLI::Range(0, kMaxDim - 1));
    carve->add_option("-o,--output", output, "tree JSON")->required();

    auto* cover = app.add_subcommand("cover", "covering curve through a Cantor tree's corners");
    cover->add_option("-i,--input", in, "tree JSON")->required();
    cover->add_option("-o,--output", output, "polyline JSON")->required();
    cover->add_option("--budget", aux, "budget JSON");

    auto* asmb = app.add_subcommand("assemble", "stage curves around a point, joined into one curve");
    asmb->add_option("-i,--input", in, "continuum JSON")->required();
    asmb->add_option("--stages", stages, "number of stages")->check(CLI::Range(1, 60));
    asmb->add_flag("--auto", auto_stages, "continue until the resolution runs out");
    asmb->add_option("--x", x, "centre cell i,j[,...] (default: smallest cell)");
    asmb->add_option("-o,--output", output, "polyline JSON")->required();
    asmb->add_option("--report", aux, "report JSON");

    auto* est = app.add_subcommand("estimate", "box counts and a dimension estimate");
    est->add_option("-i,--input", in, "continuum or tree JSON")->required();
    est->add_option("--level", level, "tree level (default: deepest)")->check(CLI::Range(0, 40));
    est->add_option("--base", base, "scale base (default: N for trees, 2 otherwise)")->check(CLI::Range(2, kMaxResolution));
    est->add_option("--kmax", k_max, "finest scale exponent")->check(CLI::Range(0, 40));
    est->add_option("-o,--output", output, "series JSON");

    auto* ver = app.add_subcommand("verify", "check tree invariants, the mass bound and cover sums");
    ver->add_option("-i,--input", in, "tree JSON")->required();
    ver->add_option("--trials", trials, "random boxes")->check(CLI::Range(std::uint64_t{0}, std::uint64_t{10000000}));
    ver->add_option("--covers", covers, "random covers")->check(CLI::Range(0, 100000));
    ver->add_option("--seed", seed, "sampling seed");
    ver->add_option("-o,--output", output, "report JSON");

    auto* ren = app.add_subcommand("render", "SVG of a planar continuum with overlays");
    ren->add_option("-i,--input", in, "continuum JSON")->required();
    ren->add_option("--pieces", aux, "pieces JSON");
    ren->add_option("--tree", aux2, "tree JSON");
    ren->add_option("--level", level, "tree level to outline (default: deepest)")->check(CLI::Range(0, 40));
    ren->add_option("--curve", x, "polyline JSON");
    ren->add_option("-o,--output", output, "SVG file")->required();

    std::vector<std::string> argv_store{"carver"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (g->parsed()) return cmd_gen(gen, out);
        if (sub->parsed()) return cmd_subdivide(in, N, axis, output, out);
        if (carve->parsed()) return cmd_carve(in, N, epsilon, depth, axis, output, out);
        if (cover->parsed()) return cmd_cover(in, output, aux, out);
        if (asmb->parsed()) return cmd_assemble(in, stages, auto_stages, x, output, aux, out);
        if (est->parsed()) return cmd_estimate(in, level, base, k_max, output, out);
        if (ver->parsed()) return cmd_verify(in, trials, covers, seed, output, out);
        if (ren->parsed()) return cmd_render(in, aux, aux2, level, x, output);
    } catch (const Error& e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace carver
