#include <gtest/gtest.h>

#include <cmath>

#include "ifccr/outer_bounds.hpp"
#include "ifccr/regimes.hpp"
#include "test_util.hpp"

namespace ifccr {
namespace {

using testing::Rng;

const double kRoot2 = std::sqrt(0.5);

TEST(Sato, NoInterferenceIsUnitSquare) {
    const SatoBounds b = sato_polytope(ChannelGains{1, 0, 0, 1, 0, 0}, {});
    EXPECT_NEAR(b.r1, 1.0, 1e-12);
    EXPECT_NEAR(b.r2, 1.0, 1e-12);
    EXPECT_NEAR(b.sum_a, 2.0, 1e-12);
    EXPECT_NEAR(b.sum_b, 2.0, 1e-12);

    FrontierOptions opt;
    opt.directions = 9;
    const Frontier f = sato_frontier(Channel::standard({1, 0, 0, 1, 0, 0}), opt);
    for (const auto& s : f.samples) EXPECT_NEAR(s.value, s.mu.mu1 + s.mu.mu2, 1e-9);
}

// Conditioning on a noise copy correlated with Z1 helps Rx1 more as |r| grows.
TEST(Sato, ConditionalTermGrowsWithCorrelation) {
    const ChannelGains g{1.3, 0, 0, 0.8, 0, 0};
    double prev = -1.0;
    for (int i = 0; i <= 99; ++i) {
        const double r = i / 100.0;
        const double v = sato_polytope(g, {{}, {r}, {}}).sum_a;
        EXPECT_GE(v, prev - 1e-12);
        EXPECT_NEAR(v, std::log2(1.0 + 0.8 * 0.8) + std::log2(1.0 + 1.3 * 1.3 / (1.0 - r * r)), 1e-9);
        EXPECT_NEAR(v, sato_polytope(g, {{}, {-r}, {}}).sum_a, 1e-12);
        prev = v;
    }
}

TEST(Sato, SymmetricChannelSumBoundsCoincide) {
    Rng rng(40);
    for (int t = 0; t < 20; ++t) {
        ChannelGains g = testing::random_real_gains(rng, 2.0);
        g.h22 = g.h11;
        g.h21 = g.h12;
        g.h2c = g.h1c;
        const double b = testing::uniform(rng, -0.7, 0.7);
        const double r = testing::uniform(rng, -0.9, 0.9);
        const SatoBounds s = sato_polytope(g, {{b, b}, {r}, {r}});
        EXPECT_NEAR(s.sum_a, s.sum_b, 1e-12);
    }
}

// Without relays, h12 = h22 lets the surrogate Ytil1 reproduce Y2 given X1,
// so the second sum bound collapses to I(Y1; X1, X2) = log2 3.
TEST(Sato, MatchedCrossGainTightensSumBound) {
    FrontierOptions opt;
    opt.directions = 3;
    const Frontier f = sato_frontier(Channel::standard({1, 1.0, 0.7, 1, 0, 0}), opt);
    EXPECT_NEAR(f.samples[1].value / kRoot2, std::log2(3.0), 1e-6);
    const Frontier g = sato_frontier(Channel::standard({1, 2.0, 0.7, 1, 0, 0}), opt);
    EXPECT_GT(g.samples[1].value, f.samples[1].value + 0.1);
}

TEST(Sato, NoiseSearchFindsInteriorMinimum) {
    Rng rng(41);
    for (int t = 0; t < 10; ++t) {
        const ChannelGains g = testing::random_real_gains(rng, 2.0);
        const InputCoeffs c = testing::random_coeffs(rng);
        const LinearModel m = LinearModel::standard(g);
        const NoiseSearch s = minimize_sato_term(m, c, Rx::one, false);
        for (int i = 0; i <= 400; ++i) {
            const double r = -0.999 + 1.998 * i / 400;
            EXPECT_LE(s.value, sato_conditional_term(m, c, Rx::one, r) + 1e-9);
        }
    }
}

TEST(StrongOuter, ZeroCorrelation) {
    const ChannelGains g{1.2, cplx{0.5, -1}, 0.3, 0.7, 0.9, 1.4};
    const StrongOuter s = strong_rx1_outer(g, {});
    EXPECT_NEAR(s.r1, cap(1.44 + 0.81), 1e-14);
    EXPECT_NEAR(s.r2, cap(0.49 + 1.96), 1e-14);
    EXPECT_NEAR(s.sum, cap(1.44 + 1.25 + 0.81), 1e-14);
}

TEST(StrongOuter, WithoutRelayIsInterferenceChannelBound) {
    const ChannelGains g{1.5, 2.5, 0.1, 0.5, 0, 0};
    const StrongOuter s = strong_rx1_outer(g, {0.6, 0.3});
    EXPECT_NEAR(s.r1, cap(2.25), 1e-14);
    EXPECT_NEAR(s.r2, cap(0.25), 1e-14);
    EXPECT_NEAR(s.sum, cap(2.25 + 6.25), 1e-14);
}

TEST(StrongOuter, FullyCorrelatedRelay) {
    const StrongOuter s = strong_rx1_outer({1, 2, 0, 1, 1, 1}, {kRoot2, kRoot2});
    EXPECT_NEAR(s.r1, std::log2(1.0 + std::pow(1.0 + kRoot2, 2)), 1e-14);
    EXPECT_NEAR(s.r1, 1.968722, 1e-6);
}

TEST(StrongOuter, SwapTwinAndIntersection) {
    Rng rng(42);
    for (int t = 0; t < 30; ++t) {
        const ChannelGains g = testing::random_complex_gains(rng);
        const InputCoeffs c = testing::random_coeffs(rng, true);
        const StrongOuter a = strong_rx2_outer(g, c);
        const StrongOuter b = strong_rx1_outer(g.swapped(), c.swapped());
        EXPECT_DOUBLE_EQ(a.r1, b.r2);
        EXPECT_DOUBLE_EQ(a.r2, b.r1);
        EXPECT_DOUBLE_EQ(a.sum, b.sum);
        const StrongBothRegion both = strong_both_region(g, c);
        const StrongOuter s1 = strong_rx1_outer(g, c);
        EXPECT_DOUBLE_EQ(both.r1, s1.r1);
        EXPECT_DOUBLE_EQ(both.r1, a.r1);
        EXPECT_DOUBLE_EQ(both.r2, s1.r2);
        EXPECT_DOUBLE_EQ(both.sum_rx1, s1.sum);
        EXPECT_DOUBLE_EQ(both.sum_rx2, a.sum);
    }
}

// Closed forms against the log-det engine on a 21 x 21 real grid.
TEST(StrongOuter, MatchesLogDetEngine) {
    Rng rng(43);
    for (int t = 0; t < 5; ++t) {
        const ChannelGains g = testing::random_real_gains(rng);
        for (int i = 0; i < 21; ++i) {
            for (int j = 0; j < 21; ++j) {
                const InputCoeffs c{-1.0 + i / 10.0, -1.0 + j / 10.0};
                if (c.fresh_power() < 0) continue;
                const auto cov = build_joint_covariance(g, c);
                const StrongBothRegion s = strong_both_region(g, c);
                EXPECT_NEAR(s.r1, mutual_info(cov, {"Y1"}, {"X1", "Xc"}, {"X2"}), 1e-9);
                EXPECT_NEAR(s.r2, mutual_info(cov, {"Y2"}, {"X2", "Xc"}, {"X1"}), 1e-9);
                EXPECT_NEAR(s.sum_rx1, mutual_info(cov, {"Y1"}, {"X1", "X2", "Xc"}), 1e-9);
                EXPECT_NEAR(s.sum_rx2, mutual_info(cov, {"Y2"}, {"X1", "X2", "Xc"}), 1e-9);
            }
        }
    }
}

TEST(StrongOuter, SupportAlongRateOneAxis) {
    // max over beta of C(|1 + beta1|^2 + k) is C(4) at beta1 = 1.
    FrontierOptions opt;
    opt.directions = 3;
    const Frontier f = outer_frontier(Channel::standard({1, 0.5, 0.5, 1, 1, 1}), OuterBound::strong_rx1, opt);
    EXPECT_NEAR(f.samples.front().value, std::log2(5.0), 1e-9);
    EXPECT_FALSE(*f.valid);
}

TEST(WeakDegraded, AlphaZero) {
    const ChannelGains g{1, 0.3, 0.5, 1, 2, 1};
    const WeakParams p0{0.0, {0.6, 0.8}};
    const WeakOuter w0 = weak_degraded_outer(g, p0);
    EXPECT_DOUBLE_EQ(w0.r1, 0.0);
    for (double a : {0.1, 0.5, 1.0}) {
        const WeakOuter w = weak_degraded_outer(g, {a, {0.6, 0.8}});
        EXPECT_LE(w.r2_a, w0.r2_a + 1e-15);
    }
}

TEST(WeakDegraded, SecondRateNonincreasingInAlpha) {
    Rng rng(44);
    for (int t = 0; t < 20; ++t) {
        const double rho = testing::uniform(rng, 0, 1);
        ChannelGains g{testing::uniform(rng, 0.1, 3), testing::uniform(rng, -2, 2), 0, testing::uniform(rng, 0, 3),
                       testing::uniform(rng, 0.1, 3), 0};
        g.h21 = rho * g.h11;
        g.h2c = rho * g.h1c;
        const double th = testing::uniform(rng, -3, 3);
        double prev = 1e300;
        for (int i = 0; i <= 20; ++i) {
            const WeakOuter w = weak_degraded_outer(g, {i / 20.0, {std::cos(th), std::sin(th)}});
            EXPECT_LE(w.r2_a, prev + 1e-12);
            prev = w.r2_a;
        }
    }
}

TEST(WeakDegraded, RequiresDegradedChannel) {
    EXPECT_THROW(weak_degraded_outer({1, 0, 0.5, 1, 2, 1.5}, WeakParams{0.5, {1, 0}}), PreconditionError);
    EXPECT_THROW(weak_degraded_outer({1, 0, 0.5, 1, 2, 1}, WeakParams{0.5, {0.5, 0}}), DomainError);
    EXPECT_THROW(outer_frontier(Channel::standard({1, 0, 0.5, 1, 2, 1.5}), OuterBound::weak_degraded), PreconditionError);
}

// Pure broadcast: with alpha = 1 and |beta1|^2 = a, the bound is the
// superposition-coding region with power share a.
TEST(WeakDegraded, BroadcastReduction) {
    for (auto [h1c, h2c] : {std::pair{2.0, 1.0}, std::pair{1.5, 1.5}, std::pair{3.0, 0.4}}) {
        const ChannelGains g{0, 0, 0, 0, h1c, h2c};
        ASSERT_TRUE(broadcast_rho(g).has_value());
        for (int i = 0; i <= 10; ++i) {
            const double a = i / 10.0;
            const RatePolygon weak =
                weak_degraded_outer(g, *broadcast_rho(g), {1.0, {std::sqrt(a), std::sqrt(1 - a)}}).polygon();
            const RatePolygon bc = degraded_bc_region(h1c, h2c, a);
            for (const Direction& mu : equiangular(33)) {
                EXPECT_NEAR(weak.support(mu)->value, bc.support(mu)->value, 1e-9);
            }
        }
    }
}

// Cognitive shape (h11 = 0): the alpha-parameterized corner curve is concave.
TEST(WeakDegraded, CornerCurveConcave) {
    const ChannelGains g{0, 0.4, 0, 1.2, 2.0, 0};
    const double rho = 0.6;
    const WeakParams base{0, {kRoot2, kRoot2}};
    std::vector<RatePoint> pts;
    for (int i = 0; i <= 50; ++i) {
        WeakParams p = base;
        p.alpha = i / 50.0;
        const WeakOuter w = weak_degraded_outer(g, rho, p);
        pts.push_back({w.r1, std::min(w.r2_a, w.r2_b)});
    }
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
        const double s1 = (pts[i].r2 - pts[i - 1].r2) / (pts[i].r1 - pts[i - 1].r1);
        const double s2 = (pts[i + 1].r2 - pts[i].r2) / (pts[i + 1].r1 - pts[i].r1);
        EXPECT_LE(s2, s1 + 1e-9);
    }
}

TEST(OuterFrontier, ValidityFlags) {
    FrontierOptions opt;
    opt.directions = 5;
    const Channel fig6 = Channel::standard({1, -2, 1, 1, 1, 1});
    EXPECT_TRUE(*outer_frontier(fig6, OuterBound::strong_rx2, opt).valid);
    EXPECT_FALSE(*outer_frontier(fig6, OuterBound::strong_rx1, opt).valid);
    EXPECT_TRUE(*outer_frontier(fig6, OuterBound::sato, opt).valid);
    const Channel fig7 = Channel::standard({1, 0.5, 1, 1, 1, 1});
    const Frontier w = outer_frontier(fig7, OuterBound::weak_degraded, opt);
    EXPECT_TRUE(*w.valid);
    EXPECT_EQ(w.source, "weak_degraded");
    EXPECT_EQ(parse_outer_bound("strong_both"), OuterBound::strong_both);
    EXPECT_THROW(parse_outer_bound("etkin"), UsageError);
}

// Under very strong interference at Rx1 the strong bound sits inside Sato's.
TEST(OuterFrontier, StrongInsideSatoUnderVsi) {
    Rng rng(45);
    FrontierOptions opt;
    opt.directions = 9;
    int found = 0;
    while (found < 4) {
        const ChannelGains g = testing::random_real_gains(rng);
        if (!is_vsi_at_rx1(g)) continue;
        ++found;
        const Channel ch = Channel::standard(g);
        const auto rep = contains(sato_frontier(ch, opt), outer_frontier(ch, OuterBound::strong_rx1, opt), 1e-6);
        EXPECT_TRUE(rep.contained) << rep.max_gap;
    }
}

}  // namespace
}  // namespace ifccr
