#include <gtest/gtest.h>

#include <cmath>

#include "ifccr/gauss_core.hpp"
#include "ifccr/regimes.hpp"
#include "test_util.hpp"

namespace ifccr {
namespace {

using testing::Rng;

TEST(Cap, SmallValues) {
    EXPECT_DOUBLE_EQ(cap(0.0), 0.0);
    EXPECT_DOUBLE_EQ(cap(1.0), 1.0);
    EXPECT_DOUBLE_EQ(cap(3.0), 2.0);
    EXPECT_THROW(cap(-0.1), DomainError);
    EXPECT_THROW(cap(std::nan("")), DomainError);
}

TEST(StandardForm, IdentityForUnitRealChannel) {
    GeneralChannel ch;
    ch.g11 = 1.5;
    ch.g12 = 0.5;
    ch.g21 = 2.0;
    ch.g22 = 0.7;
    ch.g1c = 1.1;
    ch.g2c = 0.3;
    const ChannelGains g = to_standard_form(ch);
    EXPECT_EQ(g, (ChannelGains{1.5, 0.5, 2.0, 0.7, 1.1, 0.3}));
}

TEST(StandardForm, PowerScalesDirectGain) {
    GeneralChannel ch;
    ch.g11 = 1.0;
    ch.P1 = 4.0;
    EXPECT_DOUBLE_EQ(to_standard_form(ch).h11, 2.0);
}

TEST(StandardForm, NoiseVarianceDividesGains) {
    GeneralChannel ch;
    ch.s1sq = ch.s2sq = 4.0;
    ch.g11 = ch.g22 = 2.0;
    ch.g12 = ch.g21 = 1.0;
    const ChannelGains g = to_standard_form(ch);
    EXPECT_DOUBLE_EQ(g.h11, 1.0);
    EXPECT_DOUBLE_EQ(g.h22, 1.0);
    EXPECT_DOUBLE_EQ(std::abs(g.h12), 0.5);
    EXPECT_DOUBLE_EQ(std::abs(g.h21), 0.5);
}

TEST(StandardForm, RejectsNonPositivePower) {
    GeneralChannel ch;
    ch.P2 = 0.0;
    EXPECT_THROW(to_standard_form(ch), DomainError);
    ch.P2 = 1.0;
    ch.s1sq = -1.0;
    EXPECT_THROW(to_standard_form(ch), DomainError);
}

// Every mutual information computed on the physical model with mapped
// inputs equals its standard-form value.
TEST(StandardForm, MutualInformationInvariance) {
    Rng rng(11);
    for (int t = 0; t < 20; ++t) {
        const GeneralChannel gc = testing::random_general(rng);
        const Channel phys = Channel::general(gc);
        const LinearModel std_model = LinearModel::standard(phys.gains);
        const InputCoeffs c = testing::random_coeffs(rng, true);
        for (Rx rx : {Rx::one, Rx::two}) {
            for (unsigned given = 0; given < 8; ++given) {
                for (unsigned tgt = 1; tgt < 8; ++tgt) {
                    EXPECT_NEAR(rx_mutual_info(phys.model, c, rx, tgt, given), rx_mutual_info(std_model, c, rx, tgt, given),
                                1e-9);
                }
            }
        }
        const cplx r = testing::random_cplx(rng, 0.6);
        EXPECT_NEAR(sato_conditional_term(phys.model, c, Rx::one, r), sato_conditional_term(std_model, c, Rx::one, r), 1e-9);
        EXPECT_NEAR(sato_conditional_term(phys.model, c, Rx::two, r), sato_conditional_term(std_model, c, Rx::two, r), 1e-9);
    }
}

TEST(JointCovariance, IndependentRelay) {
    const auto cov = build_joint_covariance(ChannelGains{1, 0, 0, 1, 0, 0}, {}, {0.3}, false);
    EXPECT_NEAR(std::abs(cov.at("Xc", "Xc") - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(cov.at("Xc", "X1")), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(cov.at("Xc", "X2")), 0.0, 1e-15);
    EXPECT_NEAR(cov.at("Y1", "Y1").real(), 2.0, 1e-15);
    EXPECT_NEAR(std::abs(cov.at("Y1", "Y2") - cplx{0.3}), 0.0, 1e-15);
}

TEST(JointCovariance, RelayCopiesSource) {
    const auto cov = build_joint_covariance(ChannelGains{1, 0, 0, 1, 1, 1}, {1.0, 0.0});
    EXPECT_NEAR(std::abs(cov.at("X1", "Xc") - 1.0), 0.0, 1e-15);
    EXPECT_NO_THROW(cov.validate());
}

TEST(JointCovariance, RejectsExcessCorrelation) {
    EXPECT_THROW(build_joint_covariance(ChannelGains{1, 0, 0, 1, 1, 1}, {0.8, 0.8}), DomainError);
}

TEST(JointCovariance, SurrogateCorrelations) {
    const cplx r{0.4, -0.2};
    const auto cov = build_joint_covariance(ChannelGains{0, 0, 0, 0, 0, 0}, {}, {r}, true);
    EXPECT_NEAR(std::abs(cov.at("Y1", "Y2") - r), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(cov.at("Y1", "Ytil2") - r), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(cov.at("Y2", "Ytil1") - r), 0.0, 1e-14);
    EXPECT_NEAR(cov.at("Ytil1", "Ytil1").real(), 1.0, 1e-14);
    EXPECT_NEAR(cov.at("Ytil2", "Ytil2").real(), 1.0, 1e-14);
}

TEST(MutualInfo, SingleLink) {
    const auto cov = build_joint_covariance(ChannelGains{1, 0, 0, 0, 0, 0}, {});
    EXPECT_NEAR(mutual_info(cov, {"Y1"}, {"X1"}), 1.0, 1e-12);
}

TEST(MutualInfo, ConditioningRemovesInterference) {
    const auto cov = build_joint_covariance(ChannelGains{1, 1, 0, 0, 0, 0}, {});
    EXPECT_NEAR(mutual_info(cov, {"Y1"}, {"X1"}, {"X2"}), 1.0, 1e-12);
    EXPECT_NEAR(mutual_info(cov, {"Y1"}, {"X1"}), std::log2(3.0 / 2.0), 1e-12);
}

TEST(MutualInfo, CoherentRelay) {
    const auto cov = build_joint_covariance(ChannelGains{1, 0, 0, 0, 1, 0}, {1.0, 0.0});
    EXPECT_NEAR(mutual_info(cov, {"Y1"}, {"X1", "Xc"}), std::log2(5.0), 1e-12);
}

TEST(MutualInfo, Errors) {
    const auto cov = build_joint_covariance(ChannelGains{1, 0, 0, 0, 1, 0}, {});
    EXPECT_THROW(mutual_info(cov, {"Y3"}, {"X1"}), UsageError);
    EXPECT_THROW(mutual_info(cov, {"X1"}, {"X1"}), DegenerateInputError);
    // Xc = X1 exactly: I(Xc; X1) is infinite.
    const auto tied = build_joint_covariance(ChannelGains{1, 0, 0, 0, 1, 0}, {1.0, 0.0});
    EXPECT_THROW(mutual_info(tied, {"Xc"}, {"X1"}), DegenerateInputError);
    // ...but carries nothing once X1 is given.
    EXPECT_DOUBLE_EQ(mutual_info(tied, {"Y1"}, {"Xc"}, {"X1"}), 0.0);
}

TEST(MutualInfo, MatchesResidualVarianceRoute) {
    Rng rng(5);
    const char* names[] = {"X1", "X2", "Xc"};
    for (int t = 0; t < 30; ++t) {
        const ChannelGains g = testing::random_complex_gains(rng);
        const InputCoeffs c = testing::random_coeffs(rng, true);
        const auto cov = build_joint_covariance(g, c);
        const LinearModel m = LinearModel::standard(g);
        for (unsigned given = 0; given < 8; ++given) {
            for (unsigned tgt = 1; tgt < 8; ++tgt) {
                if (tgt & given) continue;
                LabelSet a, cset;
                for (int k = 0; k < 3; ++k) {
                    if (tgt & (1u << k)) a.push_back(names[k]);
                    if (given & (1u << k)) cset.push_back(names[k]);
                }
                EXPECT_NEAR(mutual_info(cov, {"Y1"}, a, cset), rx_mutual_info(m, c, Rx::one, tgt, given), 1e-9);
                EXPECT_NEAR(mutual_info(cov, {"Y2"}, a, cset), rx_mutual_info(m, c, Rx::two, tgt, given), 1e-9);
            }
        }
    }
}

TEST(MutualInfo, ChainRule) {
    Rng rng(6);
    for (int t = 0; t < 30; ++t) {
        const ChannelGains g = testing::random_complex_gains(rng);
        const auto cov = build_joint_covariance(g, testing::random_coeffs(rng, true));
        const double total = mutual_info(cov, {"Y1"}, {"X1", "X2", "Xc"});
        const double split = mutual_info(cov, {"Y1"}, {"X2"}) + mutual_info(cov, {"Y1"}, {"X1", "Xc"}, {"X2"});
        EXPECT_NEAR(total, split, 1e-9);
    }
}

TEST(MutualInfo, SatoTermMatchesSurrogateCovariance) {
    Rng rng(7);
    for (int t = 0; t < 30; ++t) {
        const ChannelGains g = testing::random_complex_gains(rng);
        const InputCoeffs c = testing::random_coeffs(rng, true);
        const cplx r = testing::random_cplx(rng, 0.65);
        const auto cov = build_joint_covariance(g, c, {r}, true);
        const LinearModel m = LinearModel::standard(g);
        EXPECT_NEAR(sato_conditional_term(m, c, Rx::one, r), mutual_info(cov, {"Y1"}, {"X1", "Xc"}, {"Ytil2", "X2"}),
                    1e-9);
        EXPECT_NEAR(sato_conditional_term(m, c, Rx::two, r), mutual_info(cov, {"Y2"}, {"X2", "Xc"}, {"Ytil1", "X1"}),
                    1e-9);
    }
}

// With Y2 a scaled noisy copy of Y1 given X2, nothing is learned better at Rx2.
TEST(MutualInfo, DataProcessingOnDegradedChannels) {
    Rng rng(8);
    for (int t = 0; t < 30; ++t) {
        const double rho = testing::uniform(rng, 0, 1);
        ChannelGains g{testing::uniform(rng, 0.1, 3), testing::uniform(rng, -3, 3), 0, testing::uniform(rng, 0, 3),
                       testing::uniform(rng, 0.1, 3), 0};
        g.h21 = rho * g.h11;
        g.h2c = rho * g.h1c;
        ASSERT_TRUE(degraded_rho(g).has_value());
        const auto cov = build_joint_covariance(g, testing::random_coeffs(rng));
        for (const LabelSet& a : {LabelSet{"X1"}, LabelSet{"Xc"}, LabelSet{"X1", "Xc"}}) {
            EXPECT_LE(mutual_info(cov, {"Y2"}, a, {"X2"}), mutual_info(cov, {"Y1"}, a, {"X2"}) + 1e-9);
        }
    }
}

TEST(GaussianSystem, CombinationsAndDuplicates) {
    GaussianSystem sys;
    const int a = sys.add_source();
    const int b = sys.add_source();
    sys.define("A", {{a, 1.0}});
    sys.define("B", {{b, 2.0}});
    sys.define("S", combine({{1.0, &sys.terms("A")}, {1.0, &sys.terms("B")}}));
    EXPECT_THROW(sys.define("A", {{a, 1.0}}), UsageError);
    const auto cov = sys.covariance();
    EXPECT_NEAR(cov.at("S", "S").real(), 5.0, 1e-15);
    EXPECT_NEAR(mutual_info(cov, {"S"}, {"A"}), std::log2(5.0 / 4.0), 1e-12);
}

}  // namespace
}  // namespace ifccr
