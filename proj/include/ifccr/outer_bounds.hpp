#pragma once

// Outer bounds: Sato type, strong interference at one or both receivers, and
// the degraded weak-interference bound.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "ifccr/errors.hpp"
#include "ifccr/gauss_core.hpp"
#include "ifccr/nelder_mead.hpp"
#include "ifccr/regimes.hpp"
#include "ifccr/regions.hpp"

namespace ifccr {

// ---------------------------------------------------------------------------
// Parameter domains shared by the outer and inner bounds.

/// (beta1, beta2) in the unit disk (real) or unit ball of C^2 (complex).
inline ParameterDomain beta_domain(bool complex_inputs) {
    ParameterDomain d;
    if (complex_inputs) {
        d.names = {"beta1_re", "beta1_im", "beta2_re", "beta2_im"};
        d.grid_points = 9;
    } else {
        d.names = {"beta1", "beta2"};
    }
    d.lo.assign(d.names.size(), -1.0);
    d.hi.assign(d.names.size(), 1.0);
    d.project = [](const Params& p) {
        double n2 = 0.0;
        for (double v : p) n2 += v * v;
        if (n2 <= 1.0) return p;
        Params q = p;
        const double s = 1.0 / std::sqrt(n2);
        for (double& v : q) v *= s;
        return q;
    };
    return d;
}

inline InputCoeffs coeffs_from(const Params& p) {
    if (p.size() == 4) return {cplx{p[0], p[1]}, cplx{p[2], p[3]}};
    return {p[0], p[1]};
}

// ---------------------------------------------------------------------------
// Sato-type bound.

struct SatoParams {
    InputCoeffs coeffs;
    NoiseCorr r12;  // Z1 with the surrogate of Z2
    NoiseCorr r21;  // Z2 with the surrogate of Z1
};

struct SatoBounds {
    double r1 = 0.0;
    double r2 = 0.0;
    double sum_a = 0.0;  // I(Y2; X1,X2,Xc) + I(Y1; X1,Xc | Ytil2, X2)
    double sum_b = 0.0;  // I(Y1; X1,X2,Xc) + I(Y2; X2,Xc | Ytil1, X1)

    RatePolygon polygon() const { return {{{1, 0, r1}, {0, 1, r2}, {1, 1, sum_a}, {1, 1, sum_b}}}; }
};

inline SatoBounds sato_polytope(const Channel& ch, const SatoParams& p) {
    p.coeffs.validate();
    p.r12.validate();
    p.r21.validate();
    const LinearModel& m = ch.model;
    SatoBounds b;
    b.r1 = rx_mutual_info(m, p.coeffs, Rx::one, kX1 | kXc, kX2);
    b.r2 = rx_mutual_info(m, p.coeffs, Rx::two, kX2 | kXc, kX1);
    b.sum_a = rx_mutual_info(m, p.coeffs, Rx::two, kAllInputs) + sato_conditional_term(m, p.coeffs, Rx::one, p.r12.r);
    b.sum_b = rx_mutual_info(m, p.coeffs, Rx::one, kAllInputs) + sato_conditional_term(m, p.coeffs, Rx::two, p.r21.r);
    return b;
}

inline SatoBounds sato_polytope(const ChannelGains& g, const SatoParams& p) {
    return sato_polytope(Channel::standard(g), p);
}

struct NoiseSearch {
    cplx r{};
    double value = 0.0;
};

/// Minimizes the conditional term of one Sato sum bound over the surrogate
/// correlation. Real mode: 41-point scan plus golden section on the real
/// segment. Complex mode: 8-phase x 5-radius polar grid, then Nelder-Mead on
/// the disk from the best grid point.
inline NoiseSearch minimize_sato_term(const LinearModel& m, const InputCoeffs& c, Rx rx, bool complex_mode) {
    constexpr double kEdge = 1.0 - 1e-6;
    auto term = [&](cplx r) { return sato_conditional_term(m, c, rx, r); };
    NoiseSearch best{0.0, term(0.0)};
    if (complex_mode) {
        for (int a = 0; a < 8; ++a) {
            for (int k = 1; k <= 5; ++k) {
                const cplx r = std::polar(kEdge * k / 5.0, 2.0 * std::numbers::pi * a / 8.0);
                const double v = term(r);
                if (v < best.value) best = {r, v};
            }
        }
        auto in_disk = [&](const std::vector<double>& x) {
            cplx r{x[0], x[1]};
            if (std::abs(r) > kEdge) r *= kEdge / std::abs(r);
            return r;
        };
        NelderMeadOptions nm;
        nm.initial_step = 0.1;
        nm.tolerance = 1e-12;
        const NelderMeadResult res =
            nelder_mead([&](const std::vector<double>& x) { return term(in_disk(x)); }, {best.r.real(), best.r.imag()}, nm);
        const cplx r = in_disk(res.x);
        const double v = term(r);
        if (v < best.value) best = {r, v};
        return best;
    }
    constexpr int kScan = 41;
    int best_i = kScan / 2;
    for (int i = 0; i < kScan; ++i) {
        const double r = -kEdge + 2.0 * kEdge * i / (kScan - 1);
        const double v = term(r);
        if (v < best.value) {
            best = {r, v};
            best_i = i;
        }
    }
    const double step = 2.0 * kEdge / (kScan - 1);
    double lo = std::max(-kEdge, -kEdge + step * (best_i - 1));
    double hi = std::min(kEdge, -kEdge + step * (best_i + 1));
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = term(x1), f2 = term(x2);
    while (hi - lo > 1e-10) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = term(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = term(x2);
        }
    }
    const double xm = 0.5 * (lo + hi);
    const double fm = term(xm);
    if (fm < best.value) best = {xm, fm};
    return best;
}

/// Sato bounds at the given inputs with each sum bound minimized over its own
/// noise correlation.
inline SatoBounds sato_minimized(const Channel& ch, const InputCoeffs& c, bool complex_mode) {
    const NoiseSearch a = minimize_sato_term(ch.model, c, Rx::one, complex_mode);
    const NoiseSearch b = minimize_sato_term(ch.model, c, Rx::two, complex_mode);
    return sato_polytope(ch, {c, {a.r}, {b.r}});
}

// ---------------------------------------------------------------------------
// Strong-interference bounds.

struct StrongOuter {
    double r1 = 0.0;
    double r2 = 0.0;
    double sum = 0.0;

    RatePolygon polygon() const { return {{{1, 0, r1}, {0, 1, r2}, {1, 1, sum}}}; }
};

struct StrongBothRegion {
    double r1 = 0.0;
    double r2 = 0.0;
    double sum_rx1 = 0.0;
    double sum_rx2 = 0.0;

    RatePolygon polygon() const { return {{{1, 0, r1}, {0, 1, r2}, {1, 1, sum_rx1}, {1, 1, sum_rx2}}}; }
};

/// Closed form of the strong-at-Rx1 outer region at fixed inputs. Evaluable
/// for any channel; it is an outer bound only when is_strong_at_rx1 holds.
inline StrongOuter strong_rx1_outer(const ChannelGains& g, const InputCoeffs& c) {
    g.validate();
    c.validate();
    const double k = std::max(0.0, c.fresh_power());
    const double d1 = std::norm(g.h11 + std::conj(c.beta1) * g.h1c);
    const double d2 = std::norm(g.h22 + std::conj(c.beta2) * g.h2c);
    const double x12 = std::norm(g.h12 + std::conj(c.beta2) * g.h1c);
    return {cap(d1 + g.h1c * g.h1c * k), cap(d2 + g.h2c * g.h2c * k), cap(d1 + x12 + g.h1c * g.h1c * k)};
}

inline StrongOuter strong_rx2_outer(const ChannelGains& g, const InputCoeffs& c) {
    const StrongOuter s = strong_rx1_outer(g.swapped(), c.swapped());
    return {s.r2, s.r1, s.sum};
}

inline StrongBothRegion strong_both_region(const ChannelGains& g, const InputCoeffs& c) {
    const StrongOuter a = strong_rx1_outer(g, c);
    const StrongOuter b = strong_rx2_outer(g, c);
    return {a.r1, a.r2, a.sum, b.sum};
}

// Same regions on a linear model via mutual informations.
inline StrongBothRegion strong_both_region(const Channel& ch, const InputCoeffs& c) {
    const LinearModel& m = ch.model;
    return {rx_mutual_info(m, c, Rx::one, kX1 | kXc, kX2), rx_mutual_info(m, c, Rx::two, kX2 | kXc, kX1),
            rx_mutual_info(m, c, Rx::one, kAllInputs), rx_mutual_info(m, c, Rx::two, kAllInputs)};
}

// ---------------------------------------------------------------------------
// Degraded weak-interference bound.

struct WeakParams {
    double alpha = 1.0;
    InputCoeffs coeffs;

    void validate() const {
        if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("WeakParams: alpha must lie in [0,1]");
        if (std::abs(std::norm(coeffs.beta1) + std::norm(coeffs.beta2) - 1.0) > 1e-9) {
            throw DomainError("WeakParams: |beta1|^2 + |beta2|^2 must equal 1");
        }
    }
};

struct WeakOuter {
    double r1 = 0.0;
    double r2_a = 0.0;  // difference-of-capacities bound
    double r2_b = 0.0;

    RatePolygon polygon() const { return {{{1, 0, r1}, {0, 1, r2_a}, {0, 1, r2_b}}}; }
};

/// The bound for an explicit degradation factor rho.
inline WeakOuter weak_degraded_outer(const ChannelGains& g, double rho, const WeakParams& p) {
    p.validate();
    const double a = std::norm(g.h11 + g.h1c * std::conj(p.coeffs.beta1));
    const double b = std::norm(g.h22 + rho * g.h1c * std::conj(p.coeffs.beta2));
    const double ra = rho * rho * a;
    return {cap(a * p.alpha), std::max(0.0, cap(ra + b) - cap(ra * p.alpha)), cap(b)};
}

inline WeakOuter weak_degraded_outer(const ChannelGains& g, const WeakParams& p) {
    const auto rho = degraded_rho(g);
    if (!rho) throw PreconditionError("weak_degraded_outer: channel is not degraded");
    return weak_degraded_outer(g, *rho, p);
}

/// Degradation factor of the pure broadcast sub-case h11 = h21 = h22 = 0 with
/// h2c <= h1c, where degraded_rho has no h11 to normalize by.
inline std::optional<double> broadcast_rho(const ChannelGains& g) {
    if (g.h11 != 0.0 || g.h21 != cplx{} || g.h22 != 0.0 || !(g.h1c > 0.0) || g.h2c > g.h1c) return std::nullopt;
    return g.h2c / g.h1c;
}

/// Superposition-coding capacity region of the scalar degraded broadcast
/// channel with gains h1c >= h2c: power share a for the stronger user.
inline RatePolygon degraded_bc_region(double h1c, double h2c, double a) {
    return {{{1, 0, cap(a * h1c * h1c)}, {0, 1, cap(h2c * h2c) - cap(a * h2c * h2c)}}};
}

// ---------------------------------------------------------------------------
// Frontiers.

enum class OuterBound { sato, strong_rx1, strong_rx2, strong_both, weak_degraded };

inline std::string_view to_string(OuterBound b) {
    switch (b) {
        case OuterBound::sato: return "sato";
        case OuterBound::strong_rx1: return "strong_rx1";
        case OuterBound::strong_rx2: return "strong_rx2";
        case OuterBound::strong_both: return "strong_both";
        case OuterBound::weak_degraded: return "weak_degraded";
    }
    return "";
}

inline OuterBound parse_outer_bound(std::string_view s) {
    for (OuterBound b : {OuterBound::sato, OuterBound::strong_rx1, OuterBound::strong_rx2, OuterBound::strong_both,
                         OuterBound::weak_degraded}) {
        if (s == to_string(b)) return b;
    }
    throw UsageError("unknown bound '" + std::string(s) + "'");
}

struct FrontierOptions {
    int directions = 64;
    OptimizerOptions optimizer;
    // Search complex input correlations; defaults to on exactly when the
    // standard-form cross gains are not real.
    std::optional<bool> complex_inputs;

    bool complex_for(const Channel& ch) const { return complex_inputs.value_or(!ch.real_valued()); }
};

/// (theta, alpha) or (theta, phi1, phi2, alpha) with beta1 = cos(theta) e^{i phi1},
/// beta2 = sin(theta) e^{i phi2}.
inline ParameterDomain weak_domain(bool complex_inputs) {
    ParameterDomain d;
    const double pi = std::numbers::pi;
    if (complex_inputs) {
        d.names = {"theta", "phi1", "phi2", "alpha"};
        d.lo = {0.0, -pi, -pi, 0.0};
        d.hi = {pi / 2, pi, pi, 1.0};
        d.grid_points = 9;
    } else {
        d.names = {"theta", "alpha"};
        d.lo = {-pi, 0.0};
        d.hi = {pi, 1.0};
    }
    d.project = [](const Params& p) {
        Params q = p;
        q.back() = std::clamp(q.back(), 0.0, 1.0);
        return q;
    };
    return d;
}

inline WeakParams weak_params_from(const Params& p) {
    if (p.size() == 4) {
        return {p[3], {std::polar(std::cos(p[0]), p[1]), std::polar(std::sin(p[0]), p[2])}};
    }
    return {p[1], {std::cos(p[0]), std::sin(p[0])}};
}

inline RegionEvaluator outer_evaluator(const Channel& ch, OuterBound bound, bool complex_inputs) {
    switch (bound) {
        case OuterBound::sato:
            return polygon_evaluator(beta_domain(complex_inputs), [ch, complex_inputs](const Params& p) {
                return sato_minimized(ch, coeffs_from(p), complex_inputs).polygon();
            });
        case OuterBound::strong_rx1:
            return polygon_evaluator(beta_domain(complex_inputs), [ch](const Params& p) {
                const StrongBothRegion s = strong_both_region(ch, coeffs_from(p));
                return StrongOuter{s.r1, s.r2, s.sum_rx1}.polygon();
            });
        case OuterBound::strong_rx2:
            return polygon_evaluator(beta_domain(complex_inputs), [ch](const Params& p) {
                const StrongBothRegion s = strong_both_region(ch, coeffs_from(p));
                return StrongOuter{s.r1, s.r2, s.sum_rx2}.polygon();
            });
        case OuterBound::strong_both:
            return polygon_evaluator(beta_domain(complex_inputs), [ch](const Params& p) {
                return strong_both_region(ch, coeffs_from(p)).polygon();
            });
        case OuterBound::weak_degraded: {
            std::optional<double> rho = degraded_rho(ch.gains);
            if (!rho) rho = broadcast_rho(ch.gains);
            if (!rho) throw PreconditionError("weak_degraded bound needs a degraded channel");
            const ChannelGains g = ch.gains;
            const double r = *rho;
            return polygon_evaluator(weak_domain(complex_inputs), [g, r](const Params& p) {
                return weak_degraded_outer(g, r, weak_params_from(p)).polygon();
            });
        }
    }
    throw UsageError("unknown outer bound");
}

/// Whether the bound's regime hypothesis holds for this channel.
inline bool outer_bound_valid(const ChannelGains& g, OuterBound bound) {
    switch (bound) {
        case OuterBound::sato: return true;
        case OuterBound::strong_rx1: return is_strong_at_rx1(g);
        case OuterBound::strong_rx2: return is_strong_at_rx2(g);
        case OuterBound::strong_both: return is_strong_both(g);
        case OuterBound::weak_degraded: return degraded_rho(g).has_value() || broadcast_rho(g).has_value();
    }
    return false;
}

inline Frontier outer_frontier(const Channel& ch, OuterBound bound, const FrontierOptions& opt = {}) {
    Frontier f = frontier(outer_evaluator(ch, bound, opt.complex_for(ch)), opt.directions, opt.optimizer);
    f.source = std::string(to_string(bound));
    f.valid = outer_bound_valid(ch.gains, bound);
    return f;
}

inline Frontier sato_frontier(const Channel& ch, const FrontierOptions& opt = {}) {
    return outer_frontier(ch, OuterBound::sato, opt);
}

}  // namespace ifccr
