// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include "fixtures.h"
#include "min_cover_oracle.h"

#include "carver/assembly.h"
#include "carver/cantor.h"
#include "carver/cli.h"
#include "carver/curve_cover.h"
#include "carver/dimension.h"
#include "carver/errors.h"
#include "carver/generators.h"
#include "carver/io.h"
#include "carver/subdivision.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace carver;
using namespace carver::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

DiscreteContinuum shape(ShapeKind kind, int R, std::uint64_t seed = 0) {
    ShapeSpec spec = default_shape(kind, R);
    spec.seed = seed;
    return rasterize_shape(spec);
}

DiscreteContinuum staircase(int R) {
    ShapeSpec spec = default_shape(ShapeKind::Segment, R);
    spec.points = {make_point({0.0, 0.0}), make_point({1.0, 1.0})};
    return rasterize_shape(spec);
}

std::string fmt(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

struct NamedTree {
    std::string name;
    CantorTree tree;
};

std::vector<NamedTree> certificate_trees() {
    std::vector<NamedTree> out;
    out.push_back({"segment N=3", build_cantor_tree(shape(ShapeKind::Segment, 243), full_cube(243), 0, 3, 5)});
    out.push_back({"maze N=3", build_cantor_tree(shape(ShapeKind::Maze, 243, 1), full_cube(243), 0, 3, 5)});
    out.push_back({"segment N=10", build_cantor_tree(shape(ShapeKind::Segment, 100), full_cube(100), 0, 10, 2)});
    out.push_back({"maze N=10", build_cantor_tree(shape(ShapeKind::Maze, 100, 1), full_cube(100), 0, 10, 2)});
    return out;
}

Outcome subdivision_suite() {
    Outcome o;
    std::size_t runs = 0;
    for (int N : {2, 3, 5}) {
        // Largest resolution <= 243 that N divides. The carpet wants a high
        // power of 3 as well: 162, 243 and 225 give depths 4, 5 and 2.
        const int R = 243 / N * N;
        const int carpet_R = N == 2 ? 162 : N == 3 ? 243 : 225;
        std::vector<std::pair<std::string, DiscreteContinuum>> corpus;
        corpus.emplace_back("segment", shape(ShapeKind::Segment, R));
        corpus.emplace_back("staircase", staircase(R));
        corpus.emplace_back("koch", shape(ShapeKind::Koch, R));
        corpus.emplace_back("carpet", shape(ShapeKind::Carpet, carpet_R));
        for (std::uint64_t seed : {1, 2, 3}) corpus.emplace_back("maze" + std::to_string(seed), shape(ShapeKind::Maze, R, seed));
        for (const auto& [name, K] : corpus) {
            const std::string tag = name + " N=" + std::to_string(N);
            const int KR = K.resolution();
            if (KR % N != 0) {
                o.require(false, tag + ": resolution " + std::to_string(KR) + " not divisible");
                continue;
            }
            try {
                const auto pieces = spanning_subdivision(K.cells(), full_cube(KR), 0, N);
                o.require(pieces.size() == static_cast<std::size_t>(N), tag + ": wrong piece count");
                o.require(validate_pieces(pieces, K.cells(), full_cube(KR), N).empty(), tag + ": invariant violated");
                // Independent pairwise checks.
                for (std::size_t i = 0; i < pieces.size(); ++i) {
                    o.require(is_connected(pieces[i].piece), tag + ": piece disconnected");
                    o.require(pieces[i].piece.is_subset_of(K.cells()), tag + ": piece outside K");
                    o.require(full_cube(KR).contains(pieces[i].cube), tag + ": cube outside parent");
                    o.require(spans_opposite_faces(pieces[i].piece, pieces[i].cube, pieces[i].span_axis),
                              tag + ": piece does not span");
                    for (const auto& c : pieces[i].piece) o.require(pieces[i].cube.contains(c), tag + ": cell outside cube");
                    for (std::size_t j = i + 1; j < pieces.size(); ++j)
                        o.require(!cubes_overlap(pieces[i].cube, pieces[j].cube, 2), tag + ": cubes overlap");
                }
            } catch (const Error& e) {
                o.require(false, tag + ": " + e.what());
            }
            ++runs;
        }
    }
    if (o.pass) o.detail = std::to_string(runs) + " subdivisions";
    return o;
}

Outcome cantor_certificate() {
    Outcome o;
    std::string notes;
    for (std::uint64_t kind = 0; kind < 2; ++kind) {
        const auto K = kind == 0 ? shape(ShapeKind::Segment, 243) : shape(ShapeKind::Maze, 243, 1);
        const std::string name = kind == 0 ? "segment" : "maze";
        const auto t = build_cantor_tree(K, full_cube(243), 0, 3, 5);
        o.require(t.leaf_count() == 32, name + ": leaf count " + std::to_string(t.leaf_count()));
        const auto series = box_count_series(level_cells(t, 5), 243, 3, 5);
        notes += name + " counts";
        for (const auto& e : series.entries) notes += " " + std::to_string(e.count);
        notes += "; ";
        for (const auto& e : series.entries) {
            o.require(e.count <= (std::uint64_t{1} << e.k),
                      name + ": " + std::to_string(e.count) + " boxes at 3^-" + std::to_string(e.k) + " > 2^" +
                          std::to_string(e.k));
        }
        const double slope = estimate_upper_minkowski(series, default_window(series, 2)).slope;
        o.require(std::abs(slope - std::log(2.0) / std::log(3.0)) <= 0.05, name + ": slope " + fmt(slope));
        notes += name + " N=3 slope " + fmt(slope) + "; ";
    }
    for (std::uint64_t kind = 0; kind < 2; ++kind) {
        const auto K = kind == 0 ? shape(ShapeKind::Segment, 100) : shape(ShapeKind::Maze, 100, 1);
        const std::string name = kind == 0 ? "segment" : "maze";
        const auto t = build_cantor_tree(K, full_cube(100), 0, 10, 2);
        const auto series = box_count_series(level_cells(t, 2), 100, 10, 2);
        const double slope = estimate_upper_minkowski(series, default_window(series, 2)).slope;
        o.require(std::abs(slope - std::log(9.0) / std::log(10.0)) <= 0.1, name + " N=10: slope " + fmt(slope));
        notes += name + " N=10 slope " + fmt(slope) + "; ";
    }
    if (o.pass) o.detail = notes.substr(0, notes.size() - 2);
    else o.detail += " [" + notes.substr(0, notes.size() - 2) + "]";
    return o;
}

Outcome frostman_suite(const std::vector<NamedTree>& trees) {
    Outcome o;
    double worst = 0;
    for (const auto& [name, t] : trees) {
        const auto report = frostman_check(t, 10000, 2024);
        o.require(report.passed(), name + ": " + std::to_string(report.violations) + " mass-bound violations");
        worst = std::max(worst, report.worst_ratio);
        const auto leaf = cover_sum_check(t, leaf_cube_cover(t));
        o.require(leaf.passed && leaf.sum >= leaf.bound - 1e-9, name + ": leaf-cube cover sum " + fmt(leaf.sum, 6));
        Rng rng(77);
        for (int i = 0; i < 100; ++i) {
            const auto cs = cover_sum_check(t, random_cover(t, rng));
            o.require(cs.passed && cs.sum >= cs.bound - 1e-9, name + ": random cover " + std::to_string(i) + " sum " +
                                                                  fmt(cs.sum, 6) + " < " + fmt(cs.bound, 6));
        }
    }
    if (o.pass) o.detail = std::to_string(trees.size()) + " trees, worst mass ratio " + fmt(worst);
    return o;
}

Outcome covering_curve_suite(const std::vector<NamedTree>& trees) {
    Outcome o;
    for (const auto& [name, t] : trees) {
        const auto res = cover_curve(hierarchy_from_tree(t));
        const auto& g = res.deepest();
        const std::set<Point> verts(g.points.begin(), g.points.end());
        for (const auto* leaf : t.level(t.depth))
            o.require(verts.count(corner_point(leaf->cube, t.resolution, 2)) == 1, name + ": leaf corner missed");
        for (std::size_t n = 0; n < res.inserted_lengths.size(); ++n)
            o.require(res.inserted_lengths[n] <= res.budget.l[n] + 1e-12, name + ": insertion over budget at level " +
                                                                          std::to_string(n));
        for (std::size_t n = 1; n < res.curves.size(); ++n) {
            const double sup = matched_sup_distance(res.curves[n - 1], res.curves[n]);
            o.require(sup <= res.budget.l[n] + 1e-12, name + ": consecutive curves too far apart at level " +
                                                          std::to_string(n));
        }
        o.require(polyline_length(g) <= res.budget.L, name + ": length " + fmt(polyline_length(g)) + " > L");
    }
    if (o.pass) o.detail = std::to_string(trees.size()) + " trees";
    return o;
}

Outcome boundary_property_suite() {
    Outcome o;
    Rng rng(5);
    int checked = 0;
    while (checked < 1000) {
        const auto cells = random_connected(rng, 20, 2 + rng.below(200));
        const auto X = DiscreteContinuum::make(2, 20, cells);
        const double p = rng.uniform(0.05, 0.95);
        std::vector<CellIndex> a;
        for (const auto& c : cells) {
            if (rng.uniform() < p) a.push_back(c);
        }
        if (a.empty() || a.size() == cells.size()) continue;
        const auto A = CellSet::from_sorted(2, std::move(a));
        o.require(check_boundary_component_property(X, A), "property failed on a sample");
        ++checked;
    }
    if (o.pass) o.detail = std::to_string(checked) + " pairs";
    return o;
}

Outcome end_to_end() {
    Outcome o;
    const int R = 1944;
    std::string notes;
    for (int kind = 0; kind < 2; ++kind) {
        const auto K = kind == 0 ? shape(ShapeKind::Segment, R) : shape(ShapeKind::Maze, R, 7);
        const std::string name = kind == 0 ? "segment" : "maze";
        try {
            const auto r = assemble(K, {3, false, std::nullopt});
            double audit = 0;
            for (const auto& s : r.stages) audit += s.curve_length + s.join_length;
            o.require(std::abs(audit - r.total_length) <= 1e-9 * std::max(1.0, audit), name + ": length audit mismatch");
            o.require(r.total_length < 3.0, name + ": total length " + fmt(r.total_length));
            notes += name + " length " + fmt(r.total_length) + " slopes";
            for (const auto& s : r.stages) {
                const double need = 1.0 - 1.0 / s.n - 0.15;
                o.require(s.intersection_slope >= need, name + ": stage " + std::to_string(s.n) + " slope " +
                                                            fmt(s.intersection_slope) + " < " + fmt(need));
                notes += " " + fmt(s.intersection_slope, 3);
            }
            notes += "; ";
        } catch (const Error& e) {
            o.require(false, name + ": " + e.what());
        }
    }
    if (o.pass) o.detail = notes.substr(0, notes.size() - 2);
    return o;
}

Outcome box_count_oracle() {
    Outcome o;
    std::size_t compared = 0;
    auto compare = [&](const CellSet& cells, int R) {
        for (int k = 0; (1 << k) <= R; ++k) {
            const auto grid = box_count(cells, R, 2, k);
            const auto best = minimal_cover(cells, R >> k);
            const std::uint64_t factor = cells.dim() == 1 ? 3 : 9;
            o.require(best <= grid && grid <= factor * best, "grid count " + std::to_string(grid) + " vs minimal " +
                                                                 std::to_string(best));
            ++compared;
        }
    };
    for (int R : {1, 2, 4, 8, 16}) {
        for (std::uint32_t mask = 1; mask < (1u << R); ++mask) {
            std::vector<CellIndex> v;
            for (int i = 0; i < R; ++i) {
                if (mask >> i & 1u) v.push_back(make_cell({i}));
            }
            compare(CellSet::from_sorted(1, std::move(v)), R);
        }
    }
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int R = 1 << (1 + rng.below(4));
        const auto n = 1 + rng.below(std::min<std::uint64_t>(R * R, 40));
        std::vector<CellIndex> v;
        for (std::uint64_t i = 0; i < n; ++i)
            v.push_back(make_cell({static_cast<int>(rng.below(R)), static_cast<int>(rng.below(R))}));
        compare(CellSet::from_unsorted(2, std::move(v)), R);
    }
    if (o.pass) o.detail = std::to_string(compared) + " (set, scale) pairs";
    return o;
}

Outcome determinism() {
    Outcome o;
    const fs::path dir = fs::current_path() / "acceptance_scratch";
    fs::remove_all(dir);
    fs::create_directories(dir);
    auto p = [&](const std::string& name) { return (dir / name).string(); };
    // Each command writes its output to a file named by `out`; run twice.
    struct Step {
        std::string name;
        std::vector<std::string> args;
        std::vector<std::string> outputs;
    };
    const std::vector<Step> steps{
        {"gen", {"gen", "--shape", "maze", "--res", "81", "--seed", "3", "-o", p("K.json")}, {"K.json"}},
        {"subdivide", {"subdivide", "-i", p("K.json"), "-N", "3", "-o", p("pieces.json")}, {"pieces.json"}},
        {"carve", {"carve", "-i", p("K.json"), "-N", "3", "-o", p("tree.json")}, {"tree.json"}},
        {"cover", {"cover", "-i", p("tree.json"), "-o", p("curve.json"), "--budget", p("budget.json")}, {"curve.json", "budget.json"}},
        {"assemble", {"assemble", "-i", p("K.json"), "--stages", "2", "-o", p("gamma.json"), "--report", p("report.json")},
         {"gamma.json", "report.json"}},
        {"estimate", {"estimate", "-i", p("tree.json"), "-o", p("series.json")}, {"series.json"}},
        {"verify", {"verify", "-i", p("tree.json"), "--trials", "2000", "--covers", "20", "--seed", "9", "-o", p("verify.json")},
         {"verify.json"}},
        {"render", {"render", "-i", p("K.json"), "--tree", p("tree.json"), "--curve", p("curve.json"), "-o", p("pic.svg")},
         {"pic.svg"}},
    };
    for (const auto& step : steps) {
        std::string first;
        for (int run = 0; run < 2; ++run) {
            std::ostringstream out, err;
            const int code = run_cli(step.args, out, err);
            o.require(code == 0, step.name + " exited " + std::to_string(code) + ": " + err.str());
            std::string bytes = out.str();
            for (const auto& f : step.outputs) bytes += "\x1f" + read_text_file(p(f));
            if (run == 0) first = bytes;
            else o.require(bytes == first, step.name + ": outputs differ between runs");
        }
    }
    fs::remove_all(dir);
    if (o.pass) o.detail = std::to_string(steps.size()) + " subcommands";
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        std::string name;
        double budget_s;  // 0 = no runtime limit
        std::function<Outcome()> run;
    };
    std::vector<NamedTree> trees;
    auto shared_trees = [&]() -> const std::vector<NamedTree>& {
        if (trees.empty()) trees = certificate_trees();
        return trees;
    };
    const std::vector<Criterion> criteria{
        {1, "subdivision suite", 5.0, subdivision_suite},
        {2, "Cantor certificate", 0, cantor_certificate},
        {3, "mass bound and cover sums", 0, [&] { return frostman_suite(shared_trees()); }},
        {4, "covering curves", 0, [&] { return covering_curve_suite(shared_trees()); }},
        {5, "boundary-component property", 2.0, boundary_property_suite},
        {6, "end-to-end assembly", 30.0, end_to_end},
        {7, "box-count oracle", 0, box_count_oracle},
        {8, "determinism", 0, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_s > 0 && secs >= c.budget_s) {
            o.pass = false;
            o.detail += " (over the " + fmt(c.budget_s, 0) + " s budget)";
        }
        if (!o.pass) ++failed;
        std::printf("%s criterion %d: %s - %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
