#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_support.h"

#include "carver/assembly.h"
#include "carver/dimension.h"
#include "carver/generators.h"

#include <cmath>

using namespace carver;
using namespace carver::testing;

namespace {

DiscreteContinuum maze(int R, std::uint64_t seed) {
    ShapeSpec spec = default_shape(ShapeKind::Maze, R);
    spec.seed = seed;
    return rasterize_shape(spec);
}

Point centre_of(const CellIndex& x, int R, int d) {
    Point p{};
    for (int a = 0; a < d; ++a) p[a] = (x[a] + 0.5) / R;
    return p;
}

}  // namespace

TEST_CASE("stage region of a segment") {
    const auto K = rasterize_shape(default_shape(ShapeKind::Segment, 64));
    const auto x = make_cell({32, 32});
    const auto C1 = stage_region(K, x, 1);
    // Centres within 1/2 of (32.5/64): cells 0..64 clipped to the grid.
    CHECK(C1 == K.cells());
    const auto C2 = stage_region(K, x, 2);
    CHECK(C2.size() == 33);
    CHECK(C2[0] == make_cell({16, 32}));
    CHECK(C2.cells().back() == make_cell({48, 32}));
}

TEST_CASE("stage region below the resolution") {
    const auto K = rasterize_shape(default_shape(ShapeKind::Segment, 64));
    CHECK_NOTHROW(stage_region(K, make_cell({0, 32}), 5));
    CHECK(error_kind_of([&] { stage_region(K, make_cell({0, 32}), 6); }) == ErrorKind::Resolution);
    CHECK(error_kind_of([&] { stage_region(K, make_cell({0, 0}), 1); }) == ErrorKind::Domain);
}

TEST_CASE("stage regions are connected, contain x and lie in the ball") {
    const auto K = maze(64, 5);
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto x = K.cells()[rng.below(K.cells().size())];
        for (int n = 1; n <= 4; ++n) {
            CellSet C;
            try {
                C = stage_region(K, x, n);
            } catch (const Error& e) {
                CHECK(e.kind() == ErrorKind::Degeneracy);
                continue;
            }
            CHECK(C.contains(x));
            CHECK(is_connected(C));
            CHECK(C.is_subset_of(K.cells()));
            const auto cx = centre_of(x, 64, 2);
            for (const auto& c : C) CHECK(distance(centre_of(c, 64, 2), cx, 2) <= std::ldexp(1.0, -n) + 1e-12);
        }
    }
}

TEST_CASE("parameter ladder") {
    for (int n = 1; n <= 20; ++n) {
        const auto p = choose_stage_parameters(n, 1 << 20);
        CHECK(target_dimension(p.N) >= 1.0 - 1.0 / n);
        if (p.N > 2) CHECK(target_dimension(p.N - 1) < 1.0 - 1.0 / n);
        CHECK_FALSE(p.capped);
        CHECK(checked_pow(p.N, p.depth) <= (1u << 20));
        CHECK(checked_pow(p.N, p.depth + 1) > (1u << 20));
    }
    CHECK(choose_stage_parameters(1, 100).N == 2);
    CHECK(choose_stage_parameters(2, 100).N == 3);
    CHECK(choose_stage_parameters(3, 100).N == 4);
    const auto capped = choose_stage_parameters(10, 5);
    CHECK(capped.capped);
    CHECK(capped.N == 5);
    CHECK(capped.depth == 1);
    CHECK(error_kind_of([] { choose_stage_parameters(2, 1); }) == ErrorKind::Resolution);
}

TEST_CASE("split by length") {
    const Polyline p{2, {make_point({0, 0}), make_point({1, 0}), make_point({1, 1}), make_point({0, 1})}};
    for (double ell : {0.3, 0.5, 1.0, 2.9, 5.0}) {
        const auto parts = split_by_length(p, ell);
        double total = 0;
        for (const auto& part : parts) {
            CHECK(polyline_length(part) <= ell + 1e-12);
            total += polyline_length(part);
        }
        CHECK(total == doctest::Approx(3.0));
        CHECK(parts.front().points.front() == p.points.front());
        CHECK(parts.back().points.back() == p.points.back());
        for (std::size_t i = 1; i < parts.size(); ++i) CHECK(parts[i].points.front() == parts[i - 1].points.back());
    }
    CHECK(split_by_length(p, 1.0).size() == 3);
    CHECK(error_kind_of([&] { split_by_length(p, 0.0); }) == ErrorKind::Domain);
}

TEST_CASE("stage curves stay short and end on the carved set") {
    for (const auto& K : {rasterize_shape(default_shape(ShapeKind::Segment, 216)), maze(216, 2)}) {
        const auto x = K.cells()[K.cells().size() / 2];
        for (int n = 1; n <= 3; ++n) {
            const auto plan = stage_curve(K, x, n, stage_region(K, x, n));
            CHECK(plan.curve_length <= std::ldexp(1.0, -n) + 1e-9);
            CHECK(plan.curve_length == doctest::Approx(polyline_length(plan.curve)));
            REQUIRE_FALSE(plan.curve.points.empty());
            // Endpoints are corners of stage cells, each overlapping a region cell.
            const double slack = std::sqrt(2.0) * plan.frame.extent / (plan.stage_resolution * double(K.resolution()));
            for (const auto& p : {plan.curve.points.front(), plan.curve.points.back()}) {
                double best = 1e9;
                for (const auto& c : plan.region) {
                    double sq = 0;
                    for (int a = 0; a < 2; ++a) {
                        const double lo = double(c[a]) / K.resolution(), hi = double(c[a] + 1) / K.resolution();
                        const double gap = std::max({lo - p[a], 0.0, p[a] - hi});
                        sq += gap * gap;
                    }
                    best = std::min(best, std::sqrt(sq));
                }
                CHECK(best <= slack + 1e-12);
            }
        }
    }
}

TEST_CASE("one stage") {
    const auto K = maze(216, 4);
    const auto r = assemble(K, {1, false, std::nullopt});
    REQUIRE(r.stages.size() == 1);
    CHECK(r.gamma == r.stages[0].curve);
    CHECK(r.joins_length == 0.0);
    CHECK(r.x == K.cells()[0]);
}

TEST_CASE("length audit") {
    for (const auto& K : {rasterize_shape(default_shape(ShapeKind::Segment, 216)), maze(216, 9)}) {
        const auto r = assemble(K, {3, false, std::nullopt});
        REQUIRE(r.stages.size() == 3);
        double curves = 0, joins = 0;
        for (const auto& s : r.stages) {
            curves += s.curve_length;
            joins += s.join_length;
        }
        CHECK(r.curves_length == doctest::Approx(curves).epsilon(1e-12));
        CHECK(r.joins_length == doctest::Approx(joins).epsilon(1e-12));
        CHECK(r.total_length == doctest::Approx(curves + joins).epsilon(1e-12));
        CHECK(r.total_length < 3.0);
        for (const auto& p : r.gamma.points) {
            for (int a = 0; a < 2; ++a) {
                CHECK(p[a] >= 0.0);
                CHECK(p[a] <= 1.0);
            }
        }
        // Stage curves are consecutive in gamma.
        std::size_t offset = 0;
        for (const auto& s : r.stages) {
            for (std::size_t i = 0; i < s.curve.points.size(); ++i) CHECK(r.gamma.points[offset + i] == s.curve.points[i]);
            offset += s.curve.points.size();
        }
        CHECK(offset == r.gamma.points.size());
    }
}

TEST_CASE("automatic stages stop at the resolution") {
    const auto K = rasterize_shape(default_shape(ShapeKind::Segment, 64));
    const auto r = assemble(K, {1, true, make_cell({20, 32})});
    CHECK(r.stages.size() == 5);
    CHECK(r.total_length < 3.0);
}

TEST_CASE("bad centre") {
    const auto K = rasterize_shape(default_shape(ShapeKind::Segment, 64));
    CHECK(error_kind_of([&] { assemble(K, {2, false, make_cell({1, 1})}); }) == ErrorKind::Domain);
    CHECK(error_kind_of([&] { assemble(K, {0, false, std::nullopt}); }) == ErrorKind::Domain);
}

TEST_CASE("maze seed 7, four stages: intersection slopes follow the ladder") {
    const auto K = maze(1944, 7);
    const auto r = assemble(K, {4, false, std::nullopt});
    REQUIRE(r.stages.size() == 4);
    for (const auto& s : r.stages) {
        CHECK(s.intersection_slope >= 1.0 - 1.0 / s.n - 0.15);
        CHECK(s.s >= 1.0 - 1.0 / s.n);
        CHECK(s.curve_length <= std::ldexp(1.0, -s.n) + 1e-9);
    }
    CHECK(r.total_length < 3.0);
}
