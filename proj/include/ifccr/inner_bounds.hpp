#pragma once

// Achievable schemes: closed-form Gaussian regions, their sub-rate LP
// counterparts, scheme frontiers and the capacity shortcut.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ifccr/errors.hpp"
#include "ifccr/gauss_core.hpp"
#include "ifccr/outer_bounds.hpp"
#include "ifccr/ratesplit_lp.hpp"
#include "ifccr/regimes.hpp"
#include "ifccr/regions.hpp"

namespace ifccr {

enum class Scheme { all_common, all_private, one_common_one_private, common_sources_private_relay, general, jiang };

inline std::string_view to_string(Scheme s) {
    switch (s) {
        case Scheme::all_common: return "all_common";
        case Scheme::all_private: return "all_private";
        case Scheme::one_common_one_private: return "one_common_one_private";
        case Scheme::common_sources_private_relay: return "common_sources_private_relay";
        case Scheme::general: return "general";
        case Scheme::jiang: return "jiang";
    }
    return "";
}

inline Scheme parse_scheme(std::string_view s) {
    for (Scheme x : {Scheme::all_common, Scheme::all_private, Scheme::one_common_one_private,
                     Scheme::common_sources_private_relay, Scheme::general, Scheme::jiang}) {
        if (s == to_string(x)) return x;
    }
    throw UsageError("unknown scheme '" + std::string(s) + "'");
}

inline constexpr std::array<Scheme, 4> kClosedFormSchemes{Scheme::all_common, Scheme::all_private,
                                                          Scheme::one_common_one_private,
                                                          Scheme::common_sources_private_relay};

// ---------------------------------------------------------------------------
// Gaussian assignment for the all-private scheme:
//   Xc = b1 X1 + b2 X2 + c1 V1 + c2 V2,  U1pb = c1 V1 + lam1 X2,  U2pb = c2 V2 + lam2 X1.

struct GaussAssign {
    double b1 = 0.0, b2 = 0.0;
    double c1 = 0.0, c2 = 0.0;
    cplx lam1{}, lam2{};

    double relay_power() const { return b1 * b1 + b2 * b2 + c1 * c1 + c2 * c2; }

    void validate() const {
        if (c1 < 0.0 || c2 < 0.0) throw DomainError("GaussAssign: c1, c2 must be nonnegative");
        if (relay_power() > 1.0 + 1e-12) throw DomainError("GaussAssign: relay power exceeds 1");
    }
};

/// Costa's coefficient for U1pb against (h12 + h1c b2) X2, with the other
/// fresh codeword as noise.
inline cplx mmse_lambda1(const ChannelGains& g, double b2, double c1, double c2) {
    const double den = g.h1c * g.h1c * (c1 * c1 + c2 * c2) + 1.0;
    return g.h1c * c1 * c1 * (g.h12 + g.h1c * b2) / den;
}

inline cplx mmse_lambda2(const ChannelGains& g, double b1, double c1, double c2) {
    return mmse_lambda1(g.swapped(), b1, c2, c1);
}

/// Assignment with MMSE dirty-paper coefficients.
inline GaussAssign mmse_assign(const ChannelGains& g, double b1, double b2, double c1, double c2) {
    return {b1, b2, c1, c2, mmse_lambda1(g, b2, c1, c2), mmse_lambda2(g, b1, c1, c2)};
}

/// Joint covariance of X1, X2, Xc, V1, V2, U1pb, U2pb, Y1, Y2.
inline JointCovariance all_private_covariance(const Channel& ch, const GaussAssign& a) {
    a.validate();
    const LinearModel& m = ch.model;
    // Standard-form X_j equals the physical input times conj(input_phase_j).
    const cplx p1 = std::conj(m.input_phase[0]);
    const cplx p2 = std::conj(m.input_phase[1]);
    GaussianSystem sys;
    const int x1 = sys.add_source();
    const int x2 = sys.add_source();
    const int v1 = sys.add_source();
    const int v2 = sys.add_source();
    sys.define("X1", {{x1, 1.0}});
    sys.define("X2", {{x2, 1.0}});
    sys.define("Xc", {{x1, a.b1 * p1}, {x2, a.b2 * p2}, {v1, a.c1}, {v2, a.c2}});
    sys.define("V1", {{v1, 1.0}});
    sys.define("V2", {{v2, 1.0}});
    sys.define("U1pb", {{v1, a.c1}, {x2, a.lam1 * p2}});
    sys.define("U2pb", {{v2, a.c2}, {x1, a.lam2 * p1}});
    add_channel_outputs(sys, m, 0.0, false);
    return sys.covariance();
}

// ---------------------------------------------------------------------------
// Closed-form regions.

struct AllCommonRegion {
    double r1 = 0.0, r2 = 0.0, sum_rx1 = 0.0, sum_rx2 = 0.0;

    RatePolygon polygon() const { return {{{1, 0, r1}, {0, 1, r2}, {1, 1, sum_rx1}, {1, 1, sum_rx2}}}; }
};

inline AllCommonRegion region_all_common(const Channel& ch, const InputCoeffs& c) {
    c.validate();
    const LinearModel& m = ch.model;
    return {rx_mutual_info(m, c, Rx::one, kX1 | kXc, kX2), rx_mutual_info(m, c, Rx::two, kX2 | kXc, kX1),
            rx_mutual_info(m, c, Rx::one, kAllInputs), rx_mutual_info(m, c, Rx::two, kAllInputs)};
}

inline AllCommonRegion region_all_common(const ChannelGains& g, const InputCoeffs& c) {
    return region_all_common(Channel::standard(g), c);
}

struct AllPrivateRegion {
    double r1 = 0.0, r2 = 0.0, sum = 0.0;

    // A negative bound leaves no nonnegative rate pair: the polygon is empty.
    RatePolygon polygon() const { return {{{1, 0, r1}, {0, 1, r2}, {1, 1, sum}}}; }
};

inline AllPrivateRegion region_all_private(const Channel& ch, const GaussAssign& a) {
    const JointCovariance cov = all_private_covariance(ch, a);
    const double i1 = mutual_info(cov, {"Y1"}, {"X1", "U1pb"});
    const double i2 = mutual_info(cov, {"Y2"}, {"X2", "U2pb"});
    const double bin1 = mutual_info(cov, {"X2"}, {"U1pb"}, {"X1"});
    const double bin2 = mutual_info(cov, {"X1"}, {"U2pb"}, {"X2"});
    const double cross = mutual_info(cov, {"U1pb"}, {"U2pb"}, {"X1", "X2"});
    return {i1 - bin1, i2 - bin2, i1 + i2 - bin1 - bin2 - cross};
}

inline AllPrivateRegion region_all_private(const ChannelGains& g, const GaussAssign& a) {
    return region_all_private(Channel::standard(g), a);
}

struct OneCommonOnePrivateRegion {
    double r1 = 0.0, r2_rx2 = 0.0, r2_rx1 = 0.0, sum = 0.0;

    RatePolygon polygon() const { return {{{1, 0, r1}, {0, 1, r2_rx2}, {0, 1, r2_rx1}, {1, 1, sum}}}; }
};

inline OneCommonOnePrivateRegion region_one_common_one_private(const Channel& ch, const InputCoeffs& c) {
    c.validate();
    const LinearModel& m = ch.model;
    return {rx_mutual_info(m, c, Rx::one, kX1 | kXc, kX2), rx_mutual_info(m, c, Rx::two, kX2),
            rx_mutual_info(m, c, Rx::one, kX2 | kXc, kX1), rx_mutual_info(m, c, Rx::one, kAllInputs)};
}

inline OneCommonOnePrivateRegion region_one_common_one_private(const ChannelGains& g, const InputCoeffs& c) {
    return region_one_common_one_private(Channel::standard(g), c);
}

/// Eight bounds, in order: R1, R1, R2, R2, R1+R2 (three), R1+2R2.
struct CommonSourcesPrivateRelayRegion {
    std::array<double, 8> b{};

    RatePolygon polygon() const {
        return {{{1, 0, b[0]}, {1, 0, b[1]}, {0, 1, b[2]}, {0, 1, b[3]}, {1, 1, b[4]}, {1, 1, b[5]}, {1, 1, b[6]},
                 {1, 2, b[7]}}};
    }
};

inline CommonSourcesPrivateRelayRegion region_common_sources_private_relay(const Channel& ch, const InputCoeffs& c) {
    c.validate();
    const LinearModel& m = ch.model;
    const double y1_own = rx_mutual_info(m, c, Rx::one, kX1 | kXc, kX2);
    const double y1_relay = rx_mutual_info(m, c, Rx::one, kXc, kX1 | kX2);
    const double y1_other = rx_mutual_info(m, c, Rx::one, kX2 | kXc, kX1);
    const double y1_all = rx_mutual_info(m, c, Rx::one, kAllInputs);
    const double y2_x1 = rx_mutual_info(m, c, Rx::two, kX1, kX2);
    const double y2_x2 = rx_mutual_info(m, c, Rx::two, kX2, kX1);
    const double y2_both = rx_mutual_info(m, c, Rx::two, kX1 | kX2);
    return {{y1_own, y1_relay + y2_x1, y1_other, y2_x2, y1_all, y1_other + y2_x1, y1_relay + y2_both,
             y1_other + y2_both}};
}

inline CommonSourcesPrivateRelayRegion region_common_sources_private_relay(const ChannelGains& g,
                                                                           const InputCoeffs& c) {
    return region_common_sources_private_relay(Channel::standard(g), c);
}

// ---------------------------------------------------------------------------
// MITerms from a Gaussian assignment of the auxiliaries.

struct AuxAssignment {
    LabelSet u1c, u2c, u0cb, u1pb, u2pb;
};

namespace detail {

inline LabelSet join(std::initializer_list<const LabelSet*> parts) {
    LabelSet out;
    for (const LabelSet* p : parts) out.insert(out.end(), p->begin(), p->end());
    return out;
}

inline DecodingTerms decoding_terms(const JointCovariance& cov, const std::string& y, const LabelSet& x_own,
                                    const LabelSet& own_c, const LabelSet& other_c, const LabelSet& u0,
                                    const LabelSet& own_pb) {
    DecodingTerms t;
    const LabelSet y_set{y};
    t.offset = mutual_info(cov, u0, x_own, join({&own_c, &other_c}));
    t.all = mutual_info(cov, y_set, join({&own_c, &other_c, &x_own, &u0, &own_pb}));
    t.own = mutual_info(cov, y_set, join({&own_c, &x_own, &u0, &own_pb}), other_c);
    t.own_private_other_common = mutual_info(cov, y_set, join({&other_c, &x_own, &u0, &own_pb}), own_c);
    t.own_private = mutual_info(cov, y_set, join({&x_own, &u0, &own_pb}), join({&own_c, &other_c}));
    t.other_common = mutual_info(cov, y_set, join({&other_c, &u0, &own_pb}), join({&own_c, &x_own}));
    t.relay_layers = mutual_info(cov, y_set, join({&u0, &own_pb}), join({&own_c, &other_c, &x_own}));
    t.private_layers = mutual_info(cov, y_set, join({&x_own, &own_pb}), join({&own_c, &other_c, &u0}));
    t.bin = mutual_info(cov, y_set, own_pb, join({&own_c, &other_c, &x_own, &u0}));
    return t;
}

}  // namespace detail

/// Every MITerms value by direct log-det queries. The mask pins the sub-rates
/// of absent auxiliaries.
inline MITerms mi_terms(const JointCovariance& cov, const AuxAssignment& a) {
    const LabelSet x1{"X1"}, x2{"X2"}, x12{"X1", "X2"};
    using detail::join;
    MITerms mi;
    mi.b0 = mutual_info(cov, x12, a.u0cb, join({&a.u1c, &a.u2c}));
    mi.b1 = mutual_info(cov, x2, a.u1pb, join({&a.u1c, &x1, &a.u2c, &a.u0cb}));
    mi.b2 = mutual_info(cov, x1, a.u2pb, join({&a.u1c, &x2, &a.u2c, &a.u0cb}));
    mi.b12 = mutual_info(cov, a.u1pb, a.u2pb, join({&a.u1c, &x1, &a.u2c, &x2, &a.u0cb}));
    mi.dest[0] = detail::decoding_terms(cov, "Y1", x1, a.u1c, a.u2c, a.u0cb, a.u1pb);
    mi.dest[1] = detail::decoding_terms(cov, "Y2", x2, a.u2c, a.u1c, a.u0cb, a.u2pb);
    auto pin = [&](bool absent, std::initializer_list<SubRate> rates) {
        if (!absent) return;
        for (SubRate r : rates) mi.pinned[r] = true;
    };
    pin(a.u1c.empty(), {R1c});
    pin(a.u2c.empty(), {R2c});
    pin(a.u0cb.empty(), {R1cb, R2cb, R0cbp});
    pin(a.u1pb.empty(), {R1pb, R1pbp});
    pin(a.u2pb.empty(), {R2pb, R2pbp});
    return mi;
}

namespace detail {

inline void pin_all_but(MITerms& mi, std::initializer_list<SubRate> free_rates) {
    mi.pinned.fill(true);
    for (SubRate r : free_rates) mi.pinned[r] = false;
}

}  // namespace detail

/// MITerms of a closed-form scheme at its parameters (beta for the
/// correlation-based schemes; b1, b2, c1, c2 for all-private). With
/// `structural_mask` only absent auxiliaries are pinned; otherwise the mask
/// matches the scheme's corollary.
inline MITerms mi_terms_for_scheme(const Channel& ch, Scheme s, const Params& p, bool structural_mask = false) {
    if (s == Scheme::all_private) {
        const GaussAssign a = mmse_assign(ch.gains, p.at(0), p.at(1), p.at(2), p.at(3));
        MITerms mi = mi_terms(all_private_covariance(ch, a), {{}, {}, {}, {"U1pb"}, {"U2pb"}});
        if (!structural_mask) detail::pin_all_but(mi, {R1p, R2p, R1pbp, R2pbp});
        return mi;
    }
    if (s == Scheme::general || s == Scheme::jiang) {
        throw UsageError("mi_terms_for_scheme: scheme has no fixed Gaussian assignment");
    }
    if (p.size() != 2 && p.size() != 4) throw UsageError("mi_terms_for_scheme: expected 2 or 4 parameters");
    const JointCovariance cov = build_joint_covariance(ch.model, coeffs_from(p), {}, false);
    switch (s) {
        case Scheme::all_common: {
            MITerms mi = mi_terms(cov, {{"X1"}, {"X2"}, {"Xc"}, {}, {}});
            if (!structural_mask) detail::pin_all_but(mi, {R1c, R2c});
            return mi;
        }
        case Scheme::one_common_one_private: {
            MITerms mi = mi_terms(cov, {{}, {"X2"}, {"X2"}, {"Xc"}, {}});
            if (!structural_mask) detail::pin_all_but(mi, {R1p, R1pb, R2c});
            return mi;
        }
        case Scheme::common_sources_private_relay: {
            MITerms mi = mi_terms(cov, {{"X1"}, {"X2"}, {"X2"}, {"Xc"}, {}});
            if (!structural_mask) {
                detail::pin_all_but(mi, {R1c, R2c, R1pb});
                // The corollary keeps the mirrored non-intended-common bound at Rx2.
                mi.drop = DropPolicy::keep_all;
            }
            return mi;
        }
        default: break;
    }
    return {};
}

inline MITerms mi_terms_for_scheme(const ChannelGains& g, Scheme s, const Params& p, bool structural_mask = false) {
    return mi_terms_for_scheme(Channel::standard(g), s, p, structural_mask);
}

// ---------------------------------------------------------------------------
// Frontiers.

/// (b1, b2, c1, c2) with c >= 0 inside the unit ball.
inline ParameterDomain assign_domain() {
    ParameterDomain d;
    d.names = {"b1", "b2", "c1", "c2"};
    d.lo = {-1.0, -1.0, 0.0, 0.0};
    d.hi = {1.0, 1.0, 1.0, 1.0};
    d.grid_points = 9;
    d.project = [](const Params& p) {
        Params q = p;
        q[2] = std::abs(q[2]);
        q[3] = std::abs(q[3]);
        double n2 = 0.0;
        for (double v : q) n2 += v * v;
        if (n2 > 1.0) {
            const double s = 1.0 / std::sqrt(n2);
            for (double& v : q) v *= s;
        }
        return q;
    };
    return d;
}

/// Closed-form polygon of a scheme at parameters p.
inline RatePolygon scheme_polygon(const Channel& ch, Scheme s, const Params& p) {
    switch (s) {
        case Scheme::all_common: return region_all_common(ch, coeffs_from(p)).polygon();
        case Scheme::all_private:
            return region_all_private(ch, mmse_assign(ch.gains, p.at(0), p.at(1), p.at(2), p.at(3))).polygon();
        case Scheme::one_common_one_private: return region_one_common_one_private(ch, coeffs_from(p)).polygon();
        case Scheme::common_sources_private_relay:
            return region_common_sources_private_relay(ch, coeffs_from(p)).polygon();
        default: break;
    }
    throw UsageError("scheme_polygon: not a closed-form scheme");
}

inline RegionEvaluator scheme_evaluator(const Channel& ch, Scheme s, bool complex_inputs) {
    ParameterDomain d = s == Scheme::all_private ? assign_domain() : beta_domain(complex_inputs);
    return polygon_evaluator(std::move(d), [ch, s](const Params& p) { return scheme_polygon(ch, s, p); });
}

/// Scheme frontier. The LP-based schemes take, per direction, the best of the
/// closed-form schemes and the sub-rate LP (all dropping patterns) evaluated
/// at every closed-form scheme's witness parameters; "jiang" disables the
/// relay's common layer in that LP.
inline Frontier inner_frontier(const Channel& ch, Scheme s, const FrontierOptions& opt = {}) {
    const bool cplx_in = opt.complex_for(ch);
    if (s != Scheme::general && s != Scheme::jiang) {
        Frontier f = frontier(scheme_evaluator(ch, s, cplx_in), opt.directions, opt.optimizer);
        f.source = std::string(to_string(s));
        return f;
    }
    std::vector<Frontier> parts;
    for (Scheme sub : kClosedFormSchemes) parts.push_back(inner_frontier(ch, sub, opt));
    Frontier out = s == Scheme::general ? frontier_max(parts, "general") : parts.front();
    out.source = std::string(to_string(s));
    out.param_names.clear();
    if (s == Scheme::jiang) {
        for (auto& smp : out.samples) smp = {smp.mu, 0.0, {}, {}};
    }
    parallel_for(out.samples.size(), [&](std::size_t i) {
        FrontierSample& smp = out.samples[i];
        smp.params.clear();
        for (std::size_t k = 0; k < parts.size(); ++k) {
            MITerms mi = mi_terms_for_scheme(ch, kClosedFormSchemes[k], parts[k].samples[i].params, true);
            if (s == Scheme::jiang) mi = jiang_mask(mi);
            const ProjectResult r = project_union(mi, smp.mu);
            if (r.status == ProjectStatus::optimal && r.value > smp.value) {
                smp.value = r.value;
                smp.witness = {r.witness.r1(), r.witness.r2()};
            }
        }
    });
    cleanup_witnesses(out);
    return out;
}

/// The outer bound that is tight by a capacity theorem: very strong
/// interference at either receiver, or strong interference at both.
inline std::optional<OuterBound> capacity_bound(const ChannelGains& g) {
    if (is_vsi_at_rx1(g)) return OuterBound::strong_rx1;
    if (is_vsi_at_rx2(g)) return OuterBound::strong_rx2;
    if (is_strong_both(g)) return OuterBound::strong_both;
    return std::nullopt;
}

/// Capacity region when a capacity theorem applies (see capacity_bound).
inline std::optional<Frontier> capacity_vsi(const Channel& ch, const FrontierOptions& opt = {}) {
    const std::optional<OuterBound> which = capacity_bound(ch.gains);
    if (!which) return std::nullopt;
    Frontier f = outer_frontier(ch, *which, opt);
    f.capacity = true;
    return f;
}

}  // namespace ifccr
