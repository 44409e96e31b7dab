#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "ifccr/inner_bounds.hpp"
#include "ifccr/regions.hpp"
#include "test_util.hpp"

namespace ifccr {
namespace {

ParameterDomain interval(double lo, double hi, int n = 33) {
    ParameterDomain d;
    d.names = {"t"};
    d.lo = {lo};
    d.hi = {hi};
    d.grid_points = n;
    return d;
}

// Quarter disk of radius 1 realized as the union of boxes [0,cos t] x [0,sin t].
RegionEvaluator quarter_disk() {
    return polygon_evaluator(interval(0.0, std::numbers::pi / 2),
                             [](const Params& p) { return RatePolygon::box(std::cos(p[0]), std::sin(p[0])); });
}

TEST(Direction, AxesAreExact) {
    const auto dirs = equiangular(5);
    EXPECT_EQ(dirs.front().mu1, 1.0);
    EXPECT_EQ(dirs.front().mu2, 0.0);
    EXPECT_EQ(dirs.back().mu1, 0.0);
    EXPECT_EQ(dirs.back().mu2, 1.0);
    EXPECT_THROW((Direction{1.0, 1.0}).validate(), DomainError);
    EXPECT_THROW(equiangular(1), UsageError);
}

TEST(RatePolygon, PentagonVertices) {
    const RatePolygon p{{{1, 0, 2}, {0, 1, 2}, {1, 1, 3}}};
    const auto v = p.vertices();
    ASSERT_EQ(v.size(), 5u);
    EXPECT_NEAR(p.support({1, 0})->value, 2.0, 1e-15);
    const double s = std::sqrt(0.5);
    EXPECT_NEAR(p.support({s, s})->value, 3.0 * s, 1e-14);
}

TEST(RatePolygon, NegativeBoundIsEmpty) {
    const RatePolygon p{{{1, 0, 1}, {0, 1, 1}, {1, 1, -0.5}}};
    EXPECT_TRUE(p.vertices().empty());
    EXPECT_FALSE(p.support({1, 0}).has_value());
}

TEST(SupportValue, Square) {
    const auto ev = polygon_evaluator(interval(0, 1, 3), [](const Params&) { return RatePolygon::box(1, 1); });
    const auto w = support_value(ev, {1, 0});
    EXPECT_DOUBLE_EQ(w.value, 1.0);
    const Frontier f = frontier(ev, 16);
    for (const auto& s : f.samples) EXPECT_NEAR(s.value, s.mu.mu1 + s.mu.mu2, 1e-15);
}

TEST(SupportValue, PentagonSumDirection) {
    for (auto [a, b, s] : {std::tuple{1.0, 2.0, 2.5}, std::tuple{1.0, 1.0, 3.0}}) {
        const RatePolygon p{{{1, 0, a}, {0, 1, b}, {1, 1, s}}};
        const double r = std::sqrt(0.5);
        EXPECT_NEAR(p.support({r, r})->value / r, std::min(a + b, s), 1e-12);
    }
}

TEST(SupportValue, RefinementFindsInteriorOptimum) {
    const auto ev = quarter_disk();
    OptimizerOptions coarse;
    coarse.grid_points = 5;
    coarse.refine = false;
    OptimizerOptions refined = coarse;
    refined.refine = true;
    const Direction mu = Direction::from_angle(0.3);
    // The box at angle t has support cos(t) cos(0.3) + sin(t) sin(0.3) <= 1 with equality at t = 0.3.
    EXPECT_LT(support_value(ev, mu, coarse).value, 1.0 - 1e-3);
    EXPECT_NEAR(support_value(ev, mu, refined).value, 1.0, 1e-9);
}

TEST(SupportValue, DegenerateErrorsCarryParameters) {
    const auto ev = polygon_evaluator(interval(0, 1, 3), [](const Params& p) -> RatePolygon {
        if (p[0] > 0.9) throw DegenerateInputError("singular");
        return RatePolygon::box(1, 1);
    });
    try {
        support_value(ev, {1, 0});
        FAIL() << "expected DegenerateInputError";
    } catch (const DegenerateInputError& e) {
        EXPECT_NE(std::string(e.what()).find("at parameters (1)"), std::string::npos);
    }
}

// Nested grids: every 33-point grid value appears in the 65-point grid.
TEST(Frontier, FinerGridNeverLowersSupport) {
    const auto ev = quarter_disk();
    OptimizerOptions a, b;
    a.refine = b.refine = false;
    a.grid_points = 33;
    b.grid_points = 65;
    const Frontier fa = frontier(ev, 32, a);
    const Frontier fb = frontier(ev, 32, b);
    for (std::size_t i = 0; i < fa.samples.size(); ++i) EXPECT_GE(fb.samples[i].value, fa.samples[i].value - 1e-12);
}

TEST(Frontier, InvariantsHold) {
    const Frontier f = frontier(quarter_disk(), 24);
    EXPECT_LE(f.invariant_violation(), 1e-9);
}

TEST(Frontier, SymmetricChannelIsSymmetric) {
    const Channel ch = Channel::standard({1.0, 0.6, 0.6, 1.0, 0.8, 0.8});
    FrontierOptions opt;
    opt.directions = 17;
    const Frontier f = inner_frontier(ch, Scheme::all_common, opt);
    const std::size_t n = f.samples.size();
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(f.samples[i].value, f.samples[n - 1 - i].value, 1e-6);
}

// At a fixed beta the all-common frontier is the pentagon's support function.
TEST(Frontier, FixedParameterMatchesVertexEnumeration) {
    testing::Rng rng(21);
    for (int t = 0; t < 10; ++t) {
        const Channel ch = Channel::standard(testing::random_real_gains(rng, 2.0));
        const InputCoeffs c = testing::random_coeffs(rng);
        const AllCommonRegion r = region_all_common(ch, c);
        ParameterDomain fixed;
        const auto ev = polygon_evaluator(fixed, [&](const Params&) { return r.polygon(); });
        const Frontier f = frontier(ev, 16);
        for (const auto& s : f.samples) {
            // Brute force over the vertex candidates of min-of-bounds.
            const double x1 = std::min(r.r1, std::min(r.sum_rx1, r.sum_rx2));
            const double x2 = std::min(r.r2, std::min(r.sum_rx1, r.sum_rx2));
            const double sum = std::min({r.sum_rx1, r.sum_rx2, x1 + x2});
            double best = std::max(s.mu.mu1 * x1, s.mu.mu2 * x2);
            best = std::max(best, s.mu.mu1 * x1 + s.mu.mu2 * std::max(0.0, sum - x1));
            best = std::max(best, s.mu.mu2 * x2 + s.mu.mu1 * std::max(0.0, sum - x2));
            EXPECT_NEAR(s.value, best, 1e-12);
        }
    }
}

TEST(Contains, SelfAndHalfSquare) {
    const Frontier sq = convexify({{1, 1}}, 9);
    const Frontier half = convexify({{0.5, 1}}, 9);
    auto rep = contains(sq, sq, 0.0);
    EXPECT_TRUE(rep.contained);
    EXPECT_DOUBLE_EQ(rep.max_gap, 0.0);
    rep = contains(sq, half, 0.0);
    EXPECT_TRUE(rep.contained);
    EXPECT_DOUBLE_EQ(sq.value_at({1, 0}) - half.value_at({1, 0}), 0.5);
    EXPECT_FALSE(contains(half, sq, 0.1).contained);
}

TEST(Convexify, SegmentAndRectangle) {
    const Frontier seg = convexify({{1, 0}, {0, 1}}, 3);
    const double r = std::sqrt(0.5);
    EXPECT_NEAR(seg.samples[1].value, r, 1e-15);  // (0.5, 0.5) lies on the chord
    const Frontier rect = convexify({{2, 3}}, 3);
    EXPECT_DOUBLE_EQ(rect.samples.front().value, 2.0);
    EXPECT_DOUBLE_EQ(rect.samples.back().value, 3.0);
}

TEST(Convexify, Idempotent) {
    testing::Rng rng(4);
    std::vector<RatePoint> cloud;
    for (int i = 0; i < 40; ++i) cloud.push_back({testing::uniform(rng, 0, 2), testing::uniform(rng, 0, 2)});
    const Frontier once = convexify(cloud, 32);
    std::vector<RatePoint> witnesses;
    for (const auto& s : once.samples) witnesses.push_back(s.witness);
    const Frontier twice = convexify(witnesses, 32);
    EXPECT_LE(max_abs_gap(once, twice), 1e-15);
    const auto hull = upper_hull(cloud);
    for (std::size_t i = 1; i < hull.size(); ++i) {
        EXPECT_GT(hull[i].r1, hull[i - 1].r1);
        EXPECT_LT(hull[i].r2, hull[i - 1].r2);
    }
}

TEST(Csv, RoundTrip) {
    Frontier f = frontier(quarter_disk(), 9);
    f.source = "disk, \"unit\"";
    f.valid = true;
    std::stringstream ss;
    write_frontier_csv(ss, f);
    const Frontier g = read_frontier_csv(ss);
    ASSERT_EQ(g.samples.size(), f.samples.size());
    EXPECT_EQ(g.source, f.source);
    EXPECT_EQ(g.valid, f.valid);
    EXPECT_EQ(g.param_names, f.param_names);
    for (std::size_t i = 0; i < f.samples.size(); ++i) {
        EXPECT_NEAR(g.samples[i].value, f.samples[i].value, 1e-11);
        EXPECT_NEAR(g.samples[i].params[0], f.samples[i].params[0], 1e-11);
    }
}

TEST(Csv, NumberFormat) {
    EXPECT_EQ(csv::number(-0.0), "0");
    EXPECT_EQ(csv::number(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(csv::number(2.8000000000000007), "2.8");
    EXPECT_EQ(csv::quote("a,b"), "\"a,b\"");
    EXPECT_EQ(csv::split("\"x,\"\"y\"\"\",2"), (std::vector<std::string>{"x,\"y\"", "2"}));
}

TEST(Csv, Diagnostics) {
    std::stringstream bad_header("mu1,value_bits\n");
    EXPECT_THROW(read_frontier_csv(bad_header), UsageError);
    std::stringstream bad_cell("mu1,mu2,value_bits,witness_r1,witness_r2\n1,0,x,0,0\n");
    try {
        read_frontier_csv(bad_cell);
        FAIL();
    } catch (const UsageError& e) {
        EXPECT_NE(std::string(e.what()).find("row 2, column 'value_bits'"), std::string::npos);
    }
}

}  // namespace
}  // namespace ifccr
