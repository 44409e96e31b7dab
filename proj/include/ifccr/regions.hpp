#pragma once

// Rate regions as support functions: polygons, frontiers, the multi-start
// support maximizer, containment and convexification.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <istream>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ifccr/errors.hpp"
#include "ifccr/nelder_mead.hpp"
#include "ifccr/parallel.hpp"

namespace ifccr {

struct RatePoint {
    double r1 = 0.0;
    double r2 = 0.0;
};

struct Direction {
    double mu1 = 1.0;
    double mu2 = 0.0;

    static Direction from_angle(double t) {
        // Exact axes so that mu = (1,0) and (0,1) carry no rounding residue.
        if (t <= 0.0) return {1.0, 0.0};
        if (t >= std::numbers::pi / 2) return {0.0, 1.0};
        return {std::cos(t), std::sin(t)};
    }

    double angle() const { return std::atan2(mu2, mu1); }

    double dot(const RatePoint& p) const { return mu1 * p.r1 + mu2 * p.r2; }

    void validate() const {
        if (!(mu1 >= 0.0) || !(mu2 >= 0.0) || std::abs(std::hypot(mu1, mu2) - 1.0) > 1e-9) {
            throw DomainError("Direction: need mu >= 0 and |mu| = 1");
        }
    }
};

/// n equiangular directions from (1,0) to (0,1) inclusive.
inline std::vector<Direction> equiangular(int n) {
    if (n < 2) throw UsageError("equiangular: need at least 2 directions");
    std::vector<Direction> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out.push_back(Direction::from_angle(std::numbers::pi / 2 * static_cast<double>(i) / (n - 1)));
    }
    return out;
}

/// a1 R1 + a2 R2 <= b.
struct HalfPlane {
    double a1 = 0.0;
    double a2 = 0.0;
    double b = 0.0;
};

struct SupportResult {
    double value = 0.0;
    RatePoint witness;
};

/// Intersection of half-planes with the nonnegative quadrant. Must be bounded
/// (every region here carries single-rate bounds).
struct RatePolygon {
    std::vector<HalfPlane> bounds;

    static RatePolygon box(double r1_max, double r2_max) {
        return {{{1.0, 0.0, r1_max}, {0.0, 1.0, r2_max}}};
    }

    bool contains(const RatePoint& p, double tol = 1e-9) const {
        if (p.r1 < -tol || p.r2 < -tol) return false;
        return std::all_of(bounds.begin(), bounds.end(),
                           [&](const HalfPlane& h) { return h.a1 * p.r1 + h.a2 * p.r2 <= h.b + tol; });
    }

    /// Vertices in counter-clockwise order starting on the R1 axis.
    std::vector<RatePoint> vertices() const {
        std::vector<HalfPlane> lines = bounds;
        lines.push_back({-1.0, 0.0, 0.0});
        lines.push_back({0.0, -1.0, 0.0});
        std::vector<RatePoint> pts;
        for (std::size_t i = 0; i < lines.size(); ++i) {
            for (std::size_t j = i + 1; j < lines.size(); ++j) {
                const HalfPlane& p = lines[i];
                const HalfPlane& q = lines[j];
                const double det = p.a1 * q.a2 - p.a2 * q.a1;
                if (std::abs(det) < 1e-14) continue;
                RatePoint v{(p.b * q.a2 - p.a2 * q.b) / det, (p.a1 * q.b - p.b * q.a1) / det};
                if (!feasible(v)) continue;
                v.r1 = std::max(v.r1, 0.0);
                v.r2 = std::max(v.r2, 0.0);
                pts.push_back(v);
            }
        }
        std::sort(pts.begin(), pts.end(), [](const RatePoint& a, const RatePoint& b) {
            const double ta = std::atan2(a.r2, a.r1), tb = std::atan2(b.r2, b.r1);
            if (ta != tb) return ta < tb;
            return a.r1 * a.r1 + a.r2 * a.r2 > b.r1 * b.r1 + b.r2 * b.r2;
        });
        std::vector<RatePoint> out;
        for (const auto& p : pts) {
            if (!out.empty() && std::abs(out.back().r1 - p.r1) < 1e-12 && std::abs(out.back().r2 - p.r2) < 1e-12) continue;
            out.push_back(p);
        }
        return out;
    }

    /// nullopt when the region is empty.
    std::optional<SupportResult> support(Direction mu) const {
        const auto vs = vertices();
        if (vs.empty()) return std::nullopt;
        SupportResult best{-std::numeric_limits<double>::infinity(), {}};
        for (const auto& v : vs) {
            const double val = mu.dot(v);
            if (val > best.value + 1e-15) best = {val, v};
        }
        return best;
    }

private:
    bool feasible(const RatePoint& v) const {
        const double tol = 1e-10 * (1.0 + std::abs(v.r1) + std::abs(v.r2));
        return contains(v, tol);
    }
};

// ---------------------------------------------------------------------------

struct FrontierSample {
    Direction mu;
    double value = 0.0;
    RatePoint witness;
    std::vector<double> params;
};

struct Frontier {
    std::vector<FrontierSample> samples;
    std::string source;
    std::vector<std::string> param_names;
    std::optional<bool> valid;  // outer bounds only: regime hypothesis satisfied
    bool capacity = false;

    std::vector<Direction> directions() const {
        std::vector<Direction> out;
        for (const auto& s : samples) out.push_back(s.mu);
        return out;
    }

    /// The outer approximation {R >= 0 : mu_i . R <= h_i for all samples}.
    RatePolygon polygon() const {
        RatePolygon p;
        for (const auto& s : samples) p.bounds.push_back({s.mu.mu1, s.mu.mu2, s.value});
        return p;
    }

    /// Support value of polygon() in an arbitrary direction.
    double value_at(Direction mu) const {
        for (const auto& s : samples) {
            if (std::abs(s.mu.mu1 - mu.mu1) < 1e-14 && std::abs(s.mu.mu2 - mu.mu2) < 1e-14) return s.value;
        }
        const auto r = polygon().support(mu);
        return r ? r->value : 0.0;
    }

    std::vector<RatePoint> outline() const { return polygon().vertices(); }

    /// Largest violation of the support-function invariants:
    /// h >= 0, strictly increasing angles, and witnesses inside every sampled half-plane.
    double invariant_violation() const {
        double worst = 0.0;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            worst = std::max(worst, -samples[i].value);
            if (i > 0 && !(samples[i].mu.angle() > samples[i - 1].mu.angle())) {
                worst = std::max(worst, 1.0);
            }
            for (const auto& other : samples) {
                worst = std::max(worst, other.mu.dot(samples[i].witness) - other.value);
            }
        }
        return worst;
    }
};

/// Raises every sample to the best witness seen in any direction.
inline void cleanup_witnesses(Frontier& f) {
    const std::vector<FrontierSample> snapshot = f.samples;
    for (auto& s : f.samples) {
        for (const auto& w : snapshot) {
            const double v = s.mu.dot(w.witness);
            if (v > s.value) {
                s.value = v;
                s.witness = w.witness;
                s.params = w.params;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Evaluators and the support maximizer.

using Params = std::vector<double>;

/// Support of one member of a parameterized family; nullopt for an empty member.
using RegionAt = std::function<std::optional<SupportResult>(Direction)>;

struct ParameterDomain {
    std::vector<std::string> names;
    std::vector<double> lo, hi;
    // Maps any point of R^dim onto the feasible set.
    std::function<Params(const Params&)> project = [](const Params& p) { return p; };
    int grid_points = 33;

    std::size_t dim() const { return names.size(); }
};

struct RegionEvaluator {
    ParameterDomain domain;
    std::function<RegionAt(const Params&)> region;
};

/// Wraps a polygon-valued family into a RegionEvaluator.
inline RegionEvaluator polygon_evaluator(ParameterDomain domain, std::function<RatePolygon(const Params&)> family) {
    RegionEvaluator ev;
    ev.domain = std::move(domain);
    ev.region = [family = std::move(family)](const Params& p) -> RegionAt {
        auto poly = std::make_shared<RatePolygon>(family(p));
        auto verts = std::make_shared<std::vector<RatePoint>>(poly->vertices());
        return [verts](Direction mu) -> std::optional<SupportResult> {
            if (verts->empty()) return std::nullopt;
            SupportResult best{-std::numeric_limits<double>::infinity(), {}};
            for (const auto& v : *verts) {
                const double val = mu.dot(v);
                if (val > best.value + 1e-15) best = {val, v};
            }
            return best;
        };
    };
    return ev;
}

struct OptimizerOptions {
    int grid_points = 0;  // per dimension; 0 = domain default
    bool refine = true;
    int starts = 3;
    int restarts = 30;  // per start, until `patience` in a row stop improving
    int patience = 2;
    NelderMeadOptions nm;
};

struct SupportWitness {
    double value = 0.0;
    RatePoint witness;
    Params params;
};

namespace detail {

inline std::string format_params(const Params& p) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
    os << ')';
    return os.str();
}

inline RegionAt evaluate_region(const RegionEvaluator& ev, const Params& p) {
    try {
        return ev.region(p);
    } catch (const DegenerateInputError& e) {
        throw DegenerateInputError(std::string(e.what()) + " at parameters " + format_params(p));
    }
}

inline SupportResult support_or_zero(const RegionAt& r, Direction mu) {
    const auto s = r(mu);
    return s ? *s : SupportResult{};
}

struct GridCache {
    std::vector<Params> params;
    std::vector<RegionAt> regions;
};

inline GridCache build_grid(const RegionEvaluator& ev, const OptimizerOptions& opt) {
    const ParameterDomain& d = ev.domain;
    const int n = opt.grid_points > 0 ? opt.grid_points : d.grid_points;
    const std::size_t dim = d.dim();
    std::size_t total = 1;
    for (std::size_t i = 0; i < dim; ++i) total *= static_cast<std::size_t>(n);
    GridCache cache;
    cache.params.resize(total);
    cache.regions.resize(total);
    parallel_for(total, [&](std::size_t idx) {
        Params p(dim);
        std::size_t rest = idx;
        for (std::size_t k = 0; k < dim; ++k) {
            const int i = static_cast<int>(rest % static_cast<std::size_t>(n));
            rest /= static_cast<std::size_t>(n);
            p[k] = n == 1 ? d.lo[k] : d.lo[k] + (d.hi[k] - d.lo[k]) * static_cast<double>(i) / (n - 1);
        }
        cache.params[idx] = d.project(p);
        cache.regions[idx] = evaluate_region(ev, cache.params[idx]);
    });
    return cache;
}

inline SupportWitness maximize_direction(const RegionEvaluator& ev, const GridCache& cache, Direction mu,
                                         const OptimizerOptions& opt) {
    std::vector<std::pair<double, std::size_t>> scored;
    scored.reserve(cache.params.size());
    SupportWitness best{-std::numeric_limits<double>::infinity(), {}, {}};
    for (std::size_t i = 0; i < cache.params.size(); ++i) {
        const SupportResult s = support_or_zero(cache.regions[i], mu);
        scored.emplace_back(s.value, i);
        if (s.value > best.value) best = {s.value, s.witness, cache.params[i]};
    }
    if (!opt.refine || ev.domain.dim() == 0) return best;

    std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<Params> starts;
    for (const auto& [v, i] : scored) {
        if (static_cast<int>(starts.size()) >= opt.starts) break;
        const Params& p = cache.params[i];
        const bool dup = std::any_of(starts.begin(), starts.end(), [&](const Params& q) {
            double d = 0.0;
            for (std::size_t k = 0; k < p.size(); ++k) d = std::max(d, std::abs(p[k] - q[k]));
            return d < 1e-9;
        });
        if (!dup) starts.push_back(p);
    }
    for (const Params& s : starts) {
        auto objective = [&](const Params& x) {
            return -support_or_zero(evaluate_region(ev, ev.domain.project(x)), mu).value;
        };
        NelderMeadResult r = nelder_mead(objective, s, opt.nm);
        // Min-of-bounds objectives have ridges where a collapsed simplex
        // stalls; a fresh simplex at the stall point resumes the climb.
        int idle = 0;
        for (int k = 0; k < opt.restarts && idle < opt.patience; ++k) {
            NelderMeadOptions nm = opt.nm;
            nm.seed += static_cast<std::uint64_t>(k) + 1;  // new simplex orientation
            NelderMeadResult again = nelder_mead(objective, r.x, nm);
            idle = again.value > r.value - opt.nm.tolerance ? idle + 1 : 0;
            if (again.value < r.value) r = std::move(again);
        }
        const Params p = ev.domain.project(r.x);
        const SupportResult sr = support_or_zero(evaluate_region(ev, p), mu);
        if (sr.value > best.value) best = {sr.value, sr.witness, p};
    }
    return best;
}

}  // namespace detail

/// max mu . R over the union of the evaluator's family: coarse grid, then
/// Nelder-Mead from the best grid points.
inline SupportWitness support_value(const RegionEvaluator& ev, Direction mu, const OptimizerOptions& opt = {}) {
    mu.validate();
    const detail::GridCache cache = detail::build_grid(ev, opt);
    return detail::maximize_direction(ev, cache, mu, opt);
}

inline Frontier frontier(const RegionEvaluator& ev, const std::vector<Direction>& dirs, const OptimizerOptions& opt = {}) {
    const detail::GridCache cache = detail::build_grid(ev, opt);
    Frontier f;
    f.param_names = ev.domain.names;
    f.samples.resize(dirs.size());
    parallel_for(dirs.size(), [&](std::size_t i) {
        const SupportWitness w = detail::maximize_direction(ev, cache, dirs[i], opt);
        f.samples[i] = {dirs[i], std::max(0.0, w.value), w.witness, w.params};
    });
    cleanup_witnesses(f);
    return f;
}

inline Frontier frontier(const RegionEvaluator& ev, int n_directions, const OptimizerOptions& opt = {}) {
    if (n_directions < 3) throw UsageError("frontier: need at least 3 directions");
    return frontier(ev, equiangular(n_directions), opt);
}

/// Pointwise maximum of frontiers sampled on the same directions.
inline Frontier frontier_max(const std::vector<Frontier>& parts, std::string source) {
    if (parts.empty()) throw UsageError("frontier_max: no frontiers");
    Frontier out = parts.front();
    out.source = std::move(source);
    out.valid.reset();
    for (std::size_t k = 1; k < parts.size(); ++k) {
        if (parts[k].samples.size() != out.samples.size()) throw UsageError("frontier_max: direction mismatch");
        for (std::size_t i = 0; i < out.samples.size(); ++i) {
            if (parts[k].samples[i].value > out.samples[i].value) {
                out.samples[i].value = parts[k].samples[i].value;
                out.samples[i].witness = parts[k].samples[i].witness;
                out.samples[i].params = parts[k].samples[i].params;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

struct ContainmentReport {
    bool contained = true;
    Direction worst;
    double max_gap = -std::numeric_limits<double>::infinity();  // max of inner - outer
};

/// inner.h(mu) <= outer.h(mu) + tol on every direction of `inner`; the outer
/// frontier is resampled through its polygon when direction sets differ.
inline ContainmentReport contains(const Frontier& outer, const Frontier& inner, double tol) {
    ContainmentReport rep;
    for (const auto& s : inner.samples) {
        const double gap = s.value - outer.value_at(s.mu);
        if (gap > rep.max_gap) {
            rep.max_gap = gap;
            rep.worst = s.mu;
        }
    }
    if (inner.samples.empty()) rep.max_gap = 0.0;
    rep.contained = rep.max_gap <= tol;
    return rep;
}

/// Largest |a - b| over the directions of a.
inline double max_abs_gap(const Frontier& a, const Frontier& b) {
    double worst = 0.0;
    for (const auto& s : a.samples) worst = std::max(worst, std::abs(s.value - b.value_at(s.mu)));
    return worst;
}

/// Time-sharing closure of a point cloud, sampled as a frontier.
inline Frontier convexify(const std::vector<RatePoint>& points, const std::vector<Direction>& dirs) {
    Frontier f;
    f.source = "convexify";
    for (Direction mu : dirs) {
        FrontierSample s{mu, 0.0, {}, {}};
        for (const auto& p : points) {
            if (p.r1 < 0.0 || p.r2 < 0.0) throw DomainError("convexify: rates must be nonnegative");
            const double v = mu.dot(p);
            if (v > s.value) {
                s.value = v;
                s.witness = p;
            }
        }
        f.samples.push_back(s);
    }
    return f;
}

inline Frontier convexify(const std::vector<RatePoint>& points, int n_directions = 64) {
    return convexify(points, equiangular(n_directions));
}

/// Vertices of the upper-right convex hull, ordered by increasing R1.
inline std::vector<RatePoint> upper_hull(std::vector<RatePoint> pts) {
    std::sort(pts.begin(), pts.end(), [](const RatePoint& a, const RatePoint& b) {
        return a.r1 != b.r1 ? a.r1 < b.r1 : a.r2 > b.r2;
    });
    // Keep Pareto-relevant points: drop those dominated by a later point.
    std::vector<RatePoint> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            const RatePoint& a = hull[hull.size() - 2];
            const RatePoint& b = hull.back();
            const double cross = (b.r1 - a.r1) * (p.r2 - a.r2) - (b.r2 - a.r2) * (p.r1 - a.r1);
            if (cross >= 0.0) {
                hull.pop_back();
            } else {
                break;
            }
        }
        hull.push_back(p);
    }
    // Trim the non-increasing head and the left part that is dominated vertically.
    std::size_t top = 0;
    for (std::size_t i = 1; i < hull.size(); ++i) {
        if (hull[i].r2 >= hull[top].r2) top = i;
    }
    return {hull.begin() + static_cast<std::ptrdiff_t>(top), hull.end()};
}

// ---------------------------------------------------------------------------
// CSV: mu1,mu2,value_bits,witness_r1,witness_r2,source,validity_flag,capacity,param_<name>...

namespace csv {

inline std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string number(double v) {
    if (v == 0.0) v = 0.0;  // no "-0"
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

/// Splits one RFC-4180 record; embedded newlines are not supported.
inline std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace csv

inline void write_frontier_csv(std::ostream& os, const Frontier& f) {
    os << "mu1,mu2,value_bits,witness_r1,witness_r2,source,validity_flag,capacity";
    for (const auto& n : f.param_names) os << ',' << csv::quote("param_" + n);
    os << '\n';
    const std::string flag = f.valid ? (*f.valid ? "1" : "0") : "";
    for (const auto& s : f.samples) {
        os << csv::number(s.mu.mu1) << ',' << csv::number(s.mu.mu2) << ',' << csv::number(s.value) << ','
           << csv::number(s.witness.r1) << ',' << csv::number(s.witness.r2) << ',' << csv::quote(f.source) << ','
           << flag << ',' << (f.capacity ? 1 : 0);
        for (std::size_t k = 0; k < f.param_names.size(); ++k) {
            os << ',' << (k < s.params.size() ? csv::number(s.params[k]) : std::string());
        }
        os << '\n';
    }
}

inline Frontier read_frontier_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw UsageError("frontier csv: missing header");
    const auto header = csv::split(line);
    const std::vector<std::string> fixed{"mu1", "mu2", "value_bits", "witness_r1", "witness_r2"};
    for (std::size_t i = 0; i < fixed.size(); ++i) {
        if (i >= header.size() || header[i] != fixed[i]) {
            throw UsageError("frontier csv: expected column '" + fixed[i] + "' at position " + std::to_string(i + 1));
        }
    }
    auto col = [&](const std::string& name) -> int {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) return static_cast<int>(i);
        }
        return -1;
    };
    const int c_source = col("source"), c_valid = col("validity_flag"), c_cap = col("capacity");
    std::vector<int> param_cols;
    Frontier f;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i].rfind("param_", 0) == 0) {
            param_cols.push_back(static_cast<int>(i));
            f.param_names.push_back(header[i].substr(6));
        }
    }
    int row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        const auto cells = csv::split(line);
        if (cells.size() != header.size()) {
            throw UsageError("frontier csv: row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                             " fields, header has " + std::to_string(header.size()));
        }
        auto num = [&](int c) {
            try {
                return std::stod(cells[static_cast<std::size_t>(c)]);
            } catch (const std::exception&) {
                throw UsageError("frontier csv: row " + std::to_string(row) + ", column '" +
                                 header[static_cast<std::size_t>(c)] + "' is not a number");
            }
        };
        FrontierSample s{{num(0), num(1)}, num(2), {num(3), num(4)}, {}};
        for (int c : param_cols) {
            s.params.push_back(cells[static_cast<std::size_t>(c)].empty() ? 0.0 : num(c));
        }
        if (c_source >= 0) f.source = cells[static_cast<std::size_t>(c_source)];
        if (c_valid >= 0 && !cells[static_cast<std::size_t>(c_valid)].empty()) {
            f.valid = cells[static_cast<std::size_t>(c_valid)] == "1";
        }
        if (c_cap >= 0) f.capacity = cells[static_cast<std::size_t>(c_cap)] == "1";
        f.samples.push_back(std::move(s));
    }
    return f;
}

}  // namespace ifccr
