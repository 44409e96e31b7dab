// ifccr: regime planes, rate-region frontiers, containment checks and
// regime-boundary loci for the Gaussian interference channel with a
// cognitive relay.
//
// Exit status: 0 success (or contained), 1 containment violation,
// 2 usage error, 3 numerically degenerate input.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ifccr/ifccr.hpp"

namespace fs = std::filesystem;
using namespace ifccr;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;
constexpr int kDegenerate = 3;

struct Settings {
    std::string config;
    std::string channel;
    std::string plane;
    std::vector<std::string> bounds;
    std::vector<std::string> schemes;
    std::optional<int> directions;
    std::optional<unsigned long> seed;
    double tol = 1e-6;
    std::string out;
    std::string inner, outer;
};

// Output goes to a file when a path is given, else to stdout.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (path.empty() || path == "-") return;
        if (const fs::path parent = fs::path(path).parent_path(); !parent.empty()) fs::create_directories(parent);
        file_.open(path, std::ios::binary);
        if (!file_) throw UsageError("cannot write '" + path + "'");
    }
    std::ostream& get() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

io::SweepConfig sweep_config(const Settings& s) {
    io::SweepConfig c = s.config.empty() ? io::SweepConfig{} : io::load_sweep_config(s.config);
    if (!s.channel.empty()) c.channel = s.channel;
    if (!s.plane.empty()) std::tie(c.x, c.y) = io::parse_plane(s.plane);
    if (s.directions) c.directions = *s.directions;
    if (s.seed) c.seed = *s.seed;
    if (!s.out.empty()) c.out = s.out;
    return c;
}

std::string flag(bool b) { return b ? "1" : "0"; }

// ---------------------------------------------------------------------------

int cmd_classify(const Settings& s) {
    const io::SweepConfig c = sweep_config(s);
    if (c.channel.empty()) throw UsageError("classify: a base channel is required (--channel or 'channel =')");
    const ChannelGains base = io::load_channel(c.channel).gains;
    const auto nx = static_cast<std::size_t>(c.x.steps), ny = static_cast<std::size_t>(c.y.steps);
    std::vector<std::string> rows(nx * ny);
    parallel_for(rows.size(), [&](std::size_t k) {
        ChannelGains g = base;
        const double x = c.x.at(static_cast<int>(k / ny)), y = c.y.at(static_cast<int>(k % ny));
        io::set_gain(g, c.x.name, x);
        io::set_gain(g, c.y.name, y);
        const RegimeReport r = classify(g);
        rows[k] = csv::number(x) + ',' + csv::number(y) + ',' + flag(r.strong_rx1) + ',' + flag(r.strong_rx2) + ',' +
                  flag(r.vsi_rx1) + ',' + flag(r.vsi_rx2) + ',' + flag(r.strong_both) + ',' + flag(r.degraded) + ',' +
                  (r.rho ? csv::number(*r.rho) : std::string());
    });
    const bool to_dir = s.out.empty() && !s.config.empty();
    Sink sink(to_dir ? (fs::path(c.out) / "plane.csv").string() : s.out);
    std::ostream& os = sink.get();
    os << c.x.name << ',' << c.y.name << ",strong_rx1,strong_rx2,vsi_rx1,vsi_rx2,strong_both,degraded,rho\n";
    for (const auto& row : rows) os << row << '\n';
    return kOk;
}

// ---------------------------------------------------------------------------

using Curve = std::variant<OuterBound, Scheme>;

Curve parse_curve(const std::string& name) {
    try {
        return parse_outer_bound(name);
    } catch (const UsageError&) {
    }
    try {
        return parse_scheme(name);
    } catch (const UsageError&) {
    }
    throw UsageError("'" + name + "' is neither an outer bound nor a scheme");
}

// Sato, every outer bound whose regime hypothesis holds, and the four
// closed-form schemes.
std::vector<Curve> default_curves(const ChannelGains& g) {
    std::vector<Curve> out{OuterBound::sato};
    for (OuterBound b : {OuterBound::strong_rx1, OuterBound::strong_rx2, OuterBound::strong_both, OuterBound::weak_degraded}) {
        if (outer_bound_valid(g, b)) out.emplace_back(b);
    }
    for (Scheme sc : kClosedFormSchemes) out.emplace_back(sc);
    return out;
}

Frontier compute(const Channel& ch, const Curve& curve, const FrontierOptions& opt) {
    Frontier f;
    if (const auto* b = std::get_if<OuterBound>(&curve)) {
        f = outer_frontier(ch, *b, opt);
        f.capacity = capacity_bound(ch.gains) == *b;
    } else {
        f = inner_frontier(ch, std::get<Scheme>(curve), opt);
    }
    for (const auto& smp : f.samples) {
        if (!std::isfinite(smp.value)) throw DegenerateInputError(f.source + ": non-finite support value");
    }
    return f;
}

int cmd_region(const Settings& s) {
    const io::SweepConfig c = sweep_config(s);
    if (c.channel.empty()) throw UsageError("region: a channel is required (--channel or 'channel =')");
    const Channel ch = io::load_channel(c.channel);

    std::vector<std::string> names = c.select;
    if (!s.bounds.empty() || !s.schemes.empty()) {
        names = s.bounds;
        names.insert(names.end(), s.schemes.begin(), s.schemes.end());
    }
    std::vector<Curve> curves;
    for (const auto& n : names) curves.push_back(parse_curve(n));
    if (curves.empty()) curves = default_curves(ch.gains);

    FrontierOptions opt;
    opt.directions = c.directions;
    if (opt.directions < 3) throw UsageError("region: at least 3 directions");
    if (c.seed != 0) opt.optimizer.nm.seed = c.seed;  // 0 keeps the library default

    const std::string out = !s.out.empty() ? s.out : s.config.empty() ? "" : c.out;
    const bool one_file = out.empty() || out == "-" || fs::path(out).extension() == ".csv";
    if (one_file && curves.size() != 1) throw UsageError("region: several curves need --out DIR");

    std::vector<Frontier> frontiers;
    for (const Curve& curve : curves) frontiers.push_back(compute(ch, curve, opt));
    if (one_file) {
        Sink sink(out);
        write_frontier_csv(sink.get(), frontiers.front());
        return kOk;
    }
    fs::create_directories(out);
    nlohmann::ordered_json summary;
    summary["channel"] = c.channel;
    summary["directions"] = opt.directions;
    summary["curves"] = nlohmann::ordered_json::array();
    for (const Frontier& f : frontiers) {
        const std::string file = f.source + ".csv";
        std::ofstream os(fs::path(out) / file, std::ios::binary);
        if (!os) throw UsageError("cannot write '" + (fs::path(out) / file).string() + "'");
        write_frontier_csv(os, f);
        nlohmann::ordered_json entry{{"source", f.source}, {"file", file}, {"kind", f.valid ? "outer" : "inner"}};
        if (f.valid) entry["valid"] = *f.valid;
        entry["capacity"] = f.capacity;
        summary["curves"].push_back(entry);
    }
    std::ofstream js(fs::path(out) / "region.json", std::ios::binary);
    js << summary.dump(2) << '\n';
    return kOk;
}

// ---------------------------------------------------------------------------

Frontier load_frontier(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw UsageError("cannot open '" + path + "'");
    try {
        Frontier f = read_frontier_csv(is);
        if (f.samples.empty()) throw UsageError("frontier csv: no rows");
        for (const auto& smp : f.samples) smp.mu.validate();
        return f;
    } catch (const std::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
}

int cmd_compare(const Settings& s) {
    const Frontier inner = load_frontier(s.inner);
    const Frontier outer = load_frontier(s.outer);
    if (!(s.tol >= 0.0)) throw UsageError("compare: --tol must be >= 0");
    const ContainmentReport rep = contains(outer, inner, s.tol);
    const double gap = rep.max_gap;  // max of inner - outer; negative means slack everywhere

    std::cout << (rep.contained ? "contained" : "violation") << ": max gap (inner - outer) " << csv::number(gap) << " bits at mu = ("
              << csv::number(rep.worst.mu1) << ", " << csv::number(rep.worst.mu2) << "), tol " << csv::number(s.tol)
              << '\n';
    if (!s.out.empty()) {
        nlohmann::ordered_json j{{"inner", s.inner},
                                 {"outer", s.outer},
                                 {"contained", rep.contained},
                                 {"max_gap_bits", gap},
                                 {"worst_direction", {rep.worst.mu1, rep.worst.mu2}},
                                 {"tol", s.tol}};
        Sink sink(s.out);
        sink.get() << j.dump(2) << '\n';
    }
    return rep.contained ? kOk : kViolation;
}

// ---------------------------------------------------------------------------

// The three loci that separate the regimes: equal total received information
// at both receivers, and the strong-interference equalities at Rx1 and Rx2.
struct Locus {
    const char* name;
    double (*margin)(const ChannelGains&);
};

constexpr Locus kLoci[] = {
    {"total", vsi_extra_margin_rx1},
    {"strong_rx1", strong_margin_rx1},
    {"strong_rx2", strong_margin_rx2},
};

int cmd_boundary_sweep(const Settings& s) {
    const io::SweepConfig c = sweep_config(s);
    if (c.hc.empty()) throw UsageError("boundary-sweep: the relay gain list 'hc' is empty");
    ChannelGains base{1, 0, 0, 1, 0, 0};
    if (!c.channel.empty()) base = io::load_channel(c.channel).gains;
    if (c.x.steps < 2 || c.y.steps < 2) throw UsageError("boundary-sweep: each axis needs at least 2 steps");

    // One task per (hc, locus, line); a line is a row (y fixed) or a column (x fixed).
    const std::size_t n_lines = static_cast<std::size_t>(c.x.steps + c.y.steps);
    const std::size_t n_loci = std::size(kLoci);
    std::vector<std::string> chunks(c.hc.size() * n_loci * n_lines);
    parallel_for(chunks.size(), [&](std::size_t k) {
        const double hc = c.hc[k / (n_loci * n_lines)];
        const Locus& locus = kLoci[(k / n_lines) % n_loci];
        const std::size_t line = k % n_lines;
        const bool along_x = line < static_cast<std::size_t>(c.y.steps);
        const io::Axis& run = along_x ? c.x : c.y;
        const double fixed = along_x ? c.y.at(static_cast<int>(line)) : c.x.at(static_cast<int>(line) - c.y.steps);
        auto margin = [&](double t) {
            ChannelGains g = base;
            g.h1c = g.h2c = hc;
            io::set_gain(g, c.x.name, along_x ? t : fixed);
            io::set_gain(g, c.y.name, along_x ? fixed : t);
            return locus.margin(g);
        };
        std::ostringstream os;
        auto emit = [&](double t) {
            const double x = along_x ? t : fixed, y = along_x ? fixed : t;
            os << csv::number(hc) << ',' << locus.name << ',' << (along_x ? "row" : "column") << ','
               << csv::number(x) << ',' << csv::number(y) << '\n';
        };
        double a = run.at(0), fa = margin(a);
        if (fa == 0.0) emit(a);
        for (int i = 1; i < run.steps; ++i) {
            const double b = run.at(i), fb = margin(b);
            if (fb == 0.0) {
                emit(b);
            } else if (fa != 0.0 && (fa < 0.0) != (fb < 0.0)) {
                double lo = a, hi = b;
                const bool lo_negative = fa < 0.0;
                for (int it = 0; it < 100 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo)); ++it) {
                    const double mid = 0.5 * (lo + hi);
                    ((margin(mid) < 0.0) == lo_negative ? lo : hi) = mid;
                }
                emit(0.5 * (lo + hi));
            }
            a = b;
            fa = fb;
        }
        chunks[k] = os.str();
    });

    const bool to_dir = s.out.empty() && !s.config.empty();
    Sink sink(to_dir ? (fs::path(c.out) / "boundaries.csv").string() : s.out);
    std::ostream& os = sink.get();
    os << "hc,condition,line," << c.x.name << ',' << c.y.name << '\n';
    for (const auto& chunk : chunks) os << chunk;
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Regimes, rate regions and boundaries of the Gaussian interference channel with a cognitive relay"};
    app.require_subcommand(1);
    Settings s;

    auto add_plane = [&](CLI::App* sub) {
        sub->add_option("config", s.config, "Sweep config file (key = value)");
        sub->add_option("--channel", s.channel, "Base channel file (overrides the config)");
        sub->add_option("--plane", s.plane, "Plane axes, e.g. h12:-10:10:101,h21:-10:10:101");
        sub->add_option("--out", s.out, "Output file (default stdout, or <config out>/ when a config is given)");
    };

    CLI::App* classify_cmd = app.add_subcommand("classify", "Regime flags over a gain plane (CSV)");
    add_plane(classify_cmd);

    CLI::App* region_cmd = app.add_subcommand("region", "Support-function frontiers of outer bounds and schemes (CSV)");
    region_cmd->add_option("config", s.config, "Sweep config file; 'select' lists the curves");
    region_cmd->add_option("--channel", s.channel, "Channel file");
    region_cmd->add_option("--bound", s.bounds, "Outer bound: sato strong_rx1 strong_rx2 strong_both weak_degraded");
    region_cmd->add_option("--scheme", s.schemes,
                           "Scheme: all_common all_private one_common_one_private common_sources_private_relay general jiang");
    region_cmd->add_option("--directions", s.directions, "Number of equiangular directions")->check(CLI::Range(3, 100000));
    region_cmd->add_option("--seed", s.seed, "Optimizer seed");
    region_cmd->add_option("--out", s.out, "Output .csv for one curve, or a directory");

    CLI::App* compare_cmd = app.add_subcommand("compare", "Check that an inner frontier lies inside an outer one");
    compare_cmd->add_option("inner", s.inner, "Inner frontier CSV")->required();
    compare_cmd->add_option("outer", s.outer, "Outer frontier CSV")->required();
    compare_cmd->add_option("--tol", s.tol, "Allowed excess in bits")->capture_default_str();
    compare_cmd->add_option("--out", s.out, "Write a JSON report here");

    CLI::App* boundary_cmd = app.add_subcommand("boundary-sweep", "Zero-level sets of the regime boundaries (CSV)");
    add_plane(boundary_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*classify_cmd) return cmd_classify(s);
        if (*region_cmd) return cmd_region(s);
        if (*compare_cmd) return cmd_compare(s);
        if (*boundary_cmd) return cmd_boundary_sweep(s);
    } catch (const DegenerateInputError& e) {
        std::cerr << "ifccr: degenerate: " << e.what() << '\n';
        return kDegenerate;
    } catch (const UsageError& e) {
        std::cerr << "ifccr: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "ifccr: " << e.what() << '\n';
        return kUsage;
    } catch (const PreconditionError& e) {
        std::cerr << "ifccr: " << e.what() << '\n';
        return kUsage;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "ifccr: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
