#pragma once

// The rate-splitting inner bound as a linear program over eleven sub-rates:
// binning lower bounds plus a decoding region per destination, projected on
// (R1, R2) one direction at a time.

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ifccr/errors.hpp"
#include "ifccr/regions.hpp"
#include "ifccr/simplex.hpp"

namespace ifccr {

enum SubRate : int { R1c, R2c, R1p, R2p, R1cb, R2cb, R1pb, R2pb, R0cbp, R1pbp, R2pbp, kSubRates };

inline constexpr std::array<std::string_view, kSubRates> kSubRateNames{
    "R1c", "R2c", "R1p", "R2p", "R1cb", "R2cb", "R1pb", "R2pb", "R0cb'", "R1pb'", "R2pb'"};

struct SubRateVector {
    std::array<double, kSubRates> v{};

    double& operator[](SubRate s) { return v[s]; }
    double operator[](SubRate s) const { return v[s]; }

    double r1() const { return v[R1c] + v[R1p] + v[R1cb] + v[R1pb]; }
    double r2() const { return v[R2c] + v[R2p] + v[R2cb] + v[R2pb]; }
    double l0() const { return v[R1cb] + v[R2cb] + v[R0cbp]; }
    double l1() const { return v[R1pb] + v[R1pbp]; }
    double l2() const { return v[R2pb] + v[R2pbp]; }
};

/// Right-hand sides of one destination's decoding region, written from that
/// destination's side: "own" is the intended source, "other" the interferer.
/// Every value except `bin` is added to `offset`.
struct DecodingTerms {
    double offset = 0.0;                    // I(U0cb; X_own | U1c, U2c)
    double all = 0.0;                       // own c + own p + other c + L0 + L_own
    double own = 0.0;                       // own c + own p + L0 + L_own
    double own_private_other_common = 0.0;  // own p + other c + L0 + L_own
    double own_private = 0.0;               // own p + L0 + L_own
    double other_common = 0.0;              // other c + L0 + L_own
    double relay_layers = 0.0;              // L0 + L_own
    double private_layers = 0.0;            // own p + L_own
    double bin = 0.0;                       // L_own, no offset
};

enum class DropPolicy { theorem, keep_all };

struct MITerms {
    double b0 = 0.0;   // R0cb' >=
    double b1 = 0.0;   // R1pb' >=
    double b2 = 0.0;   // R2pb' >=
    double b12 = 0.0;  // R1pb' + R2pb' >= b1 + b2 + b12
    std::array<DecodingTerms, 2> dest{};
    std::array<bool, kSubRates> pinned{};  // structurally zero sub-rates
    DropPolicy drop = DropPolicy::theorem;

    void validate() const {
        auto check = [](double x, const char* what) {
            if (!std::isfinite(x) || x < 0.0) throw DomainError(std::string("MITerms: ") + what + " must be finite and >= 0");
        };
        for (double x : {b0, b1, b2, b12}) check(x, "binning term");
        for (const auto& d : dest) {
            for (double x : {d.offset, d.all, d.own, d.own_private_other_common, d.own_private, d.other_common,
                             d.relay_layers, d.private_layers, d.bin}) {
                check(x, "decoding term");
            }
        }
    }
};

enum class ProjectStatus { optimal, empty };

struct ProjectResult {
    ProjectStatus status = ProjectStatus::empty;
    double value = 0.0;
    SubRateVector witness;
};

namespace detail {

struct Layout {
    SubRate own_c, own_p, own_cb, own_pb, own_pbp, other_c;
};

inline Layout layout(int d) {
    return d == 0 ? Layout{R1c, R1p, R1cb, R1pb, R1pbp, R2c} : Layout{R2c, R2p, R2cb, R2pb, R2pbp, R1c};
}

struct Row {
    std::array<double, kSubRates> a{};
    double b = 0.0;
};

inline bool pinned_all(const std::array<bool, kSubRates>& p, std::initializer_list<SubRate> s) {
    return std::all_of(s.begin(), s.end(), [&](SubRate r) { return p[r]; });
}

inline std::vector<Row> rows(const MITerms& mi, const std::array<bool, kSubRates>& pins) {
    std::vector<Row> out;
    auto geq = [&](std::initializer_list<SubRate> vars, double rhs) {
        Row r;
        for (SubRate v : vars) r.a[v] = -1.0;
        r.b = -rhs;
        out.push_back(r);
    };
    geq({R0cbp}, mi.b0);
    geq({R1pbp}, mi.b1);
    geq({R2pbp}, mi.b2);
    geq({R1pbp, R2pbp}, mi.b1 + mi.b2 + mi.b12);

    const bool keep = mi.drop == DropPolicy::keep_all;
    for (int d = 0; d < 2; ++d) {
        const Layout l = layout(d);
        const DecodingTerms& t = mi.dest[static_cast<std::size_t>(d)];
        auto leq = [&](bool with_c, bool with_p, bool with_other, bool with_l0, double rhs) {
            Row r;
            if (with_c) r.a[l.own_c] += 1.0;
            if (with_p) r.a[l.own_p] += 1.0;
            if (with_other) r.a[l.other_c] += 1.0;
            if (with_l0) {
                r.a[R1cb] += 1.0;
                r.a[R2cb] += 1.0;
                r.a[R0cbp] += 1.0;
            }
            r.a[l.own_pb] += 1.0;
            r.a[l.own_pbp] += 1.0;
            r.b = rhs;
            out.push_back(r);
        };
        const bool drop_12 = !keep && pinned_all(pins, {l.own_c, l.own_p, l.own_cb, l.own_pb});
        const bool drop_34 = !keep && pinned_all(pins, {l.own_p, l.own_cb, l.own_pb});
        const bool drop_75 = !keep && pinned_all(pins, {l.own_cb, l.own_pb});
        const bool drop_6 = !keep && pinned_all(pins, {l.own_p, l.own_pb});
        const bool drop_8 = !keep && pinned_all(pins, {l.own_pb});
        if (!drop_12) {
            leq(true, true, true, true, t.offset + t.all);
            leq(true, true, false, true, t.offset + t.own);
        }
        if (!drop_34) {
            leq(false, true, true, true, t.offset + t.own_private_other_common);
            leq(false, true, false, true, t.offset + t.own_private);
        }
        if (!drop_75) {
            leq(false, false, true, true, t.offset + t.other_common);
            leq(false, false, false, true, t.offset + t.relay_layers);
        }
        if (!drop_6) leq(false, true, false, false, t.offset + t.private_layers);
        if (!drop_8) leq(false, false, false, false, t.bin);
    }
    return out;
}

inline ProjectResult solve(const MITerms& mi, const std::array<bool, kSubRates>& pins, Direction mu) {
    // Free variables only; pinned ones are substituted by zero.
    std::vector<int> free_vars;
    for (int i = 0; i < kSubRates; ++i) {
        if (!pins[static_cast<std::size_t>(i)]) free_vars.push_back(i);
    }
    DenseLp lp;
    for (const Row& r : rows(mi, pins)) {
        std::vector<double> a;
        bool any = false;
        for (int v : free_vars) {
            a.push_back(r.a[static_cast<std::size_t>(v)]);
            any = any || r.a[static_cast<std::size_t>(v)] != 0.0;
        }
        if (!any) {
            // 0 <= b: infeasible only beyond the tolerance.
            if (r.b < -1e-9) return {};
            continue;
        }
        lp.a.push_back(std::move(a));
        lp.b.push_back(r.b);
    }
    for (int v : free_vars) {
        double c = 0.0;
        if (v == R1c || v == R1p || v == R1cb || v == R1pb) c = mu.mu1;
        if (v == R2c || v == R2p || v == R2cb || v == R2pb) c = mu.mu2;
        lp.c.push_back(c);
    }
    const LpSolution sol = solve_lp(lp);
    if (sol.status == LpStatus::infeasible) return {};
    if (sol.status == LpStatus::unbounded) throw DegenerateInputError("rate-split LP is unbounded");
    ProjectResult out;
    out.status = ProjectStatus::optimal;
    for (std::size_t k = 0; k < free_vars.size(); ++k) out.witness.v[static_cast<std::size_t>(free_vars[k])] = sol.x[k];
    out.value = std::max(0.0, sol.value);
    return out;
}

}  // namespace detail

/// max mu1 R1 + mu2 R2 over the sub-rate polytope fixed by `mi` and its mask.
/// An empty polytope reports status empty and value 0.
inline ProjectResult project(const MITerms& mi, Direction mu) {
    mi.validate();
    return detail::solve(mi, mi.pinned, mu);
}

/// Union semantics of the dropping rules: besides the mask, any of the
/// patterns that trigger a drop may be pinned; the best member is returned.
inline ProjectResult project_union(const MITerms& mi, Direction mu) {
    mi.validate();
    if (mi.drop == DropPolicy::keep_all) return detail::solve(mi, mi.pinned, mu);
    // Minimal pin sets for the five drop conditions, closed under union.
    auto patterns = [](int d) {
        const detail::Layout l = detail::layout(d);
        return std::vector<std::vector<SubRate>>{{},
                                                 {l.own_pb},
                                                 {l.own_p, l.own_pb},
                                                 {l.own_cb, l.own_pb},
                                                 {l.own_p, l.own_cb, l.own_pb},
                                                 {l.own_c, l.own_p, l.own_cb, l.own_pb}};
    };
    ProjectResult best;
    bool have = false;
    for (const auto& p1 : patterns(0)) {
        for (const auto& p2 : patterns(1)) {
            auto pins = mi.pinned;
            for (SubRate s : p1) pins[s] = true;
            for (SubRate s : p2) pins[s] = true;
            const ProjectResult r = detail::solve(mi, pins, mu);
            if (r.status == ProjectStatus::optimal && (!have || r.value > best.value)) {
                best = r;
                have = true;
            }
        }
    }
    return best;
}

inline Frontier project_frontier(const MITerms& mi, const std::vector<Direction>& dirs, bool union_semantics = false) {
    Frontier f;
    f.source = union_semantics ? "ratesplit_union" : "ratesplit";
    for (Direction mu : dirs) {
        const ProjectResult r = union_semantics ? project_union(mi, mu) : project(mi, mu);
        f.samples.push_back({mu, r.value, {r.witness.r1(), r.witness.r2()}, {}});
    }
    return f;
}

inline Frontier project_frontier(const MITerms& mi, int n_directions, bool union_semantics = false) {
    return project_frontier(mi, equiangular(n_directions), union_semantics);
}

/// Disables the relay's common layer U0cb: its binning term and the decoding
/// offsets vanish and its sub-rates are pinned to zero.
inline MITerms jiang_mask(const MITerms& mi) {
    MITerms out = mi;
    out.b0 = 0.0;
    for (auto& d : out.dest) d.offset = 0.0;
    out.pinned[R0cbp] = true;
    out.pinned[R1cb] = true;
    out.pinned[R2cb] = true;
    return out;
}

// ---------------------------------------------------------------------------
// Flat key-value serialization, one "key = value" per line.

inline void write_mi_terms(std::ostream& os, const MITerms& mi) {
    os << std::setprecision(17);
    os << "b0 = " << mi.b0 << "\nb1 = " << mi.b1 << "\nb2 = " << mi.b2 << "\nb12 = " << mi.b12 << '\n';
    for (int d = 0; d < 2; ++d) {
        const DecodingTerms& t = mi.dest[static_cast<std::size_t>(d)];
        const std::string p = "dest" + std::to_string(d + 1) + ".";
        os << p << "offset = " << t.offset << '\n'
           << p << "all = " << t.all << '\n'
           << p << "own = " << t.own << '\n'
           << p << "own_private_other_common = " << t.own_private_other_common << '\n'
           << p << "own_private = " << t.own_private << '\n'
           << p << "other_common = " << t.other_common << '\n'
           << p << "relay_layers = " << t.relay_layers << '\n'
           << p << "private_layers = " << t.private_layers << '\n'
           << p << "bin = " << t.bin << '\n';
    }
    os << "pinned =";
    for (int i = 0; i < kSubRates; ++i) {
        if (mi.pinned[static_cast<std::size_t>(i)]) os << ' ' << kSubRateNames[static_cast<std::size_t>(i)];
    }
    os << "\ndrop = " << (mi.drop == DropPolicy::theorem ? "theorem" : "keep_all") << '\n';
}

inline MITerms read_mi_terms(std::istream& is) {
    MITerms mi;
    std::map<std::string, double*> fields{{"b0", &mi.b0}, {"b1", &mi.b1}, {"b2", &mi.b2}, {"b12", &mi.b12}};
    for (int d = 0; d < 2; ++d) {
        DecodingTerms& t = mi.dest[static_cast<std::size_t>(d)];
        const std::string p = "dest" + std::to_string(d + 1) + ".";
        fields[p + "offset"] = &t.offset;
        fields[p + "all"] = &t.all;
        fields[p + "own"] = &t.own;
        fields[p + "own_private_other_common"] = &t.own_private_other_common;
        fields[p + "own_private"] = &t.own_private;
        fields[p + "other_common"] = &t.other_common;
        fields[p + "relay_layers"] = &t.relay_layers;
        fields[p + "private_layers"] = &t.private_layers;
        fields[p + "bin"] = &t.bin;
    }
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string line;
    int n = 0;
    while (std::getline(is, line)) {
        ++n;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError("MITerms line " + std::to_string(n) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "pinned") {
            std::istringstream names(val);
            std::string name;
            while (names >> name) {
                const auto it = std::find(kSubRateNames.begin(), kSubRateNames.end(), name);
                if (it == kSubRateNames.end()) {
                    throw UsageError("MITerms line " + std::to_string(n) + ": unknown sub-rate '" + name + "'");
                }
                mi.pinned[static_cast<std::size_t>(it - kSubRateNames.begin())] = true;
            }
        } else if (key == "drop") {
            if (val != "theorem" && val != "keep_all") {
                throw UsageError("MITerms line " + std::to_string(n) + ": drop must be theorem or keep_all");
            }
            mi.drop = val == "theorem" ? DropPolicy::theorem : DropPolicy::keep_all;
        } else {
            const auto it = fields.find(key);
            if (it == fields.end()) throw UsageError("MITerms line " + std::to_string(n) + ": unknown key '" + key + "'");
            try {
                *it->second = std::stod(val);
            } catch (const std::exception&) {
                throw UsageError("MITerms line " + std::to_string(n) + ": '" + val + "' is not a number");
            }
        }
    }
    mi.validate();
    return mi;
}

}  // namespace ifccr
