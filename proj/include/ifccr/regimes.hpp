#pragma once

// Closed-form regime tests and a brute-force oracle over input correlations.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "ifccr/errors.hpp"
#include "ifccr/gauss_core.hpp"

namespace ifccr {

namespace detail {

inline double tie_tolerance(double x, double y) { return 1e-12 * std::max({1.0, std::abs(x), std::abs(y)}); }

// max over inputs of I(Y2; X2,Xc | X1) - I(Y1; X2,Xc | X1) reduces to
// max_x a x^2 + 2|b| x on x = |beta2| in [0,1].
struct StrongRx1Terms {
    double a = 0.0;
    cplx b{};
    double x = 0.0;
    double f = 0.0;
    double rhs = 0.0;  // |h12|^2 - h22^2
};

inline StrongRx1Terms strong_rx1_terms(const ChannelGains& g) {
    StrongRx1Terms t;
    t.a = g.h2c * g.h2c - g.h1c * g.h1c;
    t.b = g.h2c * g.h22 - g.h1c * g.h12;
    const double bm = std::abs(t.b);
    if (t.a >= 0.0) {
        t.x = 1.0;
    } else {
        t.x = std::min(1.0, bm / -t.a);
    }
    t.f = t.a * t.x * t.x + 2.0 * bm * t.x;
    t.rhs = std::norm(g.h12) - g.h22 * g.h22;
    return t;
}

}  // namespace detail

/// Optimal beta2 of the strong-interference-at-Rx1 test: magnitude x* and the
/// phase of b = h2c h22 - h1c h12.
inline cplx beta2_star(const ChannelGains& g) {
    g.validate();
    const auto t = detail::strong_rx1_terms(g);
    if (t.x == 0.0) return 0.0;
    return std::polar(t.x, t.b == cplx{} ? 0.0 : std::arg(t.b));
}

/// Signed margin of the Rx1 strong test: <= 0 inside the regime.
inline double strong_margin_rx1(const ChannelGains& g) {
    const auto t = detail::strong_rx1_terms(g);
    return t.f - t.rhs;
}

inline double strong_margin_rx2(const ChannelGains& g) { return strong_margin_rx1(g.swapped()); }

inline bool is_strong_at_rx1(const ChannelGains& g) {
    g.validate();
    const auto t = detail::strong_rx1_terms(g);
    return t.f <= t.rhs + detail::tie_tolerance(t.f, t.rhs);
}

inline bool is_strong_at_rx2(const ChannelGains& g) { return is_strong_at_rx1(g.swapped()); }

/// max over inputs of I(Y1; X1,X2,Xc) - I(Y2; X1,X2,Xc), up to the monotone
/// log map: <= 0 means the Rx1 total received power never exceeds Rx2's.
inline double vsi_extra_margin_rx1(const ChannelGains& g) {
    const double p1 = g.h11 * g.h11 + g.h1c * g.h1c + std::norm(g.h12);
    const double p2 = std::norm(g.h21) + g.h2c * g.h2c + g.h22 * g.h22;
    const cplx u = g.h11 * g.h1c - g.h21 * g.h2c;
    const cplx v = g.h12 * g.h1c - g.h22 * g.h2c;
    return p1 - p2 + 2.0 * std::sqrt(std::norm(u) + std::norm(v));
}

inline double vsi_extra_margin_rx2(const ChannelGains& g) { return vsi_extra_margin_rx1(g.swapped()); }

inline bool is_vsi_at_rx1(const ChannelGains& g) {
    if (!is_strong_at_rx1(g)) return false;
    const double m = vsi_extra_margin_rx1(g);
    const double scale = g.h11 * g.h11 + g.h1c * g.h1c + std::norm(g.h12);
    return m <= detail::tie_tolerance(m, scale);
}

inline bool is_vsi_at_rx2(const ChannelGains& g) { return is_vsi_at_rx1(g.swapped()); }

inline bool is_strong_both(const ChannelGains& g) { return is_strong_at_rx1(g) && is_strong_at_rx2(g); }

/// rho with h21 = rho h11 and h2c = rho h1c (Y2 a degraded version of Y1
/// given X2), or nullopt.
inline std::optional<double> degraded_rho(const ChannelGains& g, double rel_tol = 1e-9) {
    g.validate();
    if (!(g.h11 > 0.0) || !(g.h1c > 0.0)) return std::nullopt;
    if (g.h21.imag() != 0.0 || g.h21.real() < 0.0) return std::nullopt;
    const double ra = g.h21.real() / g.h11;
    const double rb = g.h2c / g.h1c;
    if (std::abs(ra - rb) > rel_tol * std::max({ra, rb, 1e-300})) return std::nullopt;
    if (ra > 1.0 + rel_tol) return std::nullopt;
    return std::min(ra, 1.0);
}

/// Degraded toward Rx1 (roles of the users swapped).
inline std::optional<double> degraded_rho_swapped(const ChannelGains& g, double rel_tol = 1e-9) {
    return degraded_rho(g.swapped(), rel_tol);
}

struct RegimeReport {
    bool strong_rx1 = false;
    bool strong_rx2 = false;
    bool vsi_rx1 = false;
    bool vsi_rx2 = false;
    bool strong_both = false;
    bool degraded = false;
    std::optional<double> rho;
    std::optional<double> rho_swapped;
    cplx beta2_star_rx1{};
    cplx beta2_star_rx2{};  // in the swapped labelling: the optimal beta1
};

inline RegimeReport classify(const ChannelGains& g) {
    RegimeReport r;
    r.strong_rx1 = is_strong_at_rx1(g);
    r.strong_rx2 = is_strong_at_rx2(g);
    r.vsi_rx1 = is_vsi_at_rx1(g);
    r.vsi_rx2 = is_vsi_at_rx2(g);
    r.strong_both = r.strong_rx1 && r.strong_rx2;
    r.rho = degraded_rho(g);
    r.rho_swapped = degraded_rho_swapped(g);
    r.degraded = r.rho.has_value();
    r.beta2_star_rx1 = beta2_star(g);
    r.beta2_star_rx2 = beta2_star(g.swapped());
    return r;
}

// ---------------------------------------------------------------------------

enum class Condition { strong_rx1, strong_rx2, vsi_rx1, vsi_rx2, strong_both };

inline Condition parse_condition(std::string_view s) {
    if (s == "strong_rx1") return Condition::strong_rx1;
    if (s == "strong_rx2") return Condition::strong_rx2;
    if (s == "vsi_rx1") return Condition::vsi_rx1;
    if (s == "vsi_rx2") return Condition::vsi_rx2;
    if (s == "strong_both") return Condition::strong_both;
    throw UsageError("unknown condition '" + std::string(s) + "'");
}

namespace detail {

// Inequalities that must hold at one input covariance.
inline bool holds_at(const LinearModel& m, const InputCoeffs& c, Condition which, double slack) {
    auto strong1 = [&] {
        return rx_mutual_info(m, c, Rx::two, kX2 | kXc, kX1) <= rx_mutual_info(m, c, Rx::one, kX2 | kXc, kX1) + slack;
    };
    auto strong2 = [&] {
        return rx_mutual_info(m, c, Rx::one, kX1 | kXc, kX2) <= rx_mutual_info(m, c, Rx::two, kX1 | kXc, kX2) + slack;
    };
    auto total1 = [&] {
        return rx_mutual_info(m, c, Rx::one, kAllInputs) <= rx_mutual_info(m, c, Rx::two, kAllInputs) + slack;
    };
    auto total2 = [&] {
        return rx_mutual_info(m, c, Rx::two, kAllInputs) <= rx_mutual_info(m, c, Rx::one, kAllInputs) + slack;
    };
    switch (which) {
        case Condition::strong_rx1: return strong1();
        case Condition::strong_rx2: return strong2();
        case Condition::vsi_rx1: return strong1() && total1();
        case Condition::vsi_rx2: return strong2() && total2();
        case Condition::strong_both: return strong1() && strong2();
    }
    return false;
}

}  // namespace detail

/// Brute-force check of a regime condition over a grid_n x grid_n grid of
/// real (beta1, beta2) in the unit disk plus 4*grid_n points on its boundary
/// circle; complex mode also rotates each coefficient through 8 phases.
inline bool condition_oracle(const ChannelGains& g, Condition which, int grid_n, bool complex_mode = false) {
    if (grid_n < 11) throw UsageError("condition_oracle: grid_n must be at least 11");
    constexpr double kSlack = 1e-9;
    const LinearModel m = LinearModel::standard(g);
    const int phases = complex_mode ? 8 : 1;
    auto check = [&](double x, double y) {
        for (int p = 0; p < phases; ++p) {
            for (int q = 0; q < phases; ++q) {
                const cplx b1 = x * std::polar(1.0, std::numbers::pi * p / 4.0);
                const cplx b2 = y * std::polar(1.0, std::numbers::pi * q / 4.0);
                if (!detail::holds_at(m, {b1, b2}, which, kSlack)) return false;
            }
        }
        return true;
    };
    for (int i = 0; i < grid_n; ++i) {
        const double x = -1.0 + 2.0 * i / (grid_n - 1);
        for (int j = 0; j < grid_n; ++j) {
            const double y = -1.0 + 2.0 * j / (grid_n - 1);
            if (x * x + y * y > 1.0) continue;
            if (!check(x, y)) return false;
        }
    }
    const int ring = 4 * grid_n;
    for (int i = 0; i < ring; ++i) {
        const double t = 2.0 * std::numbers::pi * i / ring;
        if (!check(std::cos(t), std::sin(t))) return false;
    }
    return true;
}

}  // namespace ifccr
