#pragma once

// Flat key-value text formats: channel files and sweep configs.
//
//   # comment
//   h11 = 1
//   h12 = -2+0.5i
//
// Channel files use either the standard-form keys h11 h12 h21 h22 h1c h2c or
// the general keys g11 .. g2c with P1 P2 Pc s1sq s2sq (any general key
// switches to the general form; unspecified powers and noises default to 1).

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ifccr/errors.hpp"
#include "ifccr/gauss_core.hpp"

namespace ifccr::io {

struct KeyValue {
    std::string key;
    std::string value;
    int line = 0;
};

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

inline std::vector<KeyValue> parse_key_values(std::istream& is, const std::string& origin) {
    std::vector<KeyValue> out;
    std::map<std::string, int> seen;
    std::string raw;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const std::string text = trim(raw);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw UsageError(origin + ":" + std::to_string(line) + ": expected 'key = value'");
        }
        KeyValue kv{trim(std::string_view(text).substr(0, eq)), trim(std::string_view(text).substr(eq + 1)), line};
        if (kv.key.empty()) throw UsageError(origin + ":" + std::to_string(line) + ": empty key");
        if (auto [it, fresh] = seen.emplace(kv.key, line); !fresh) {
            throw UsageError(origin + ":" + std::to_string(line) + ": duplicate key '" + kv.key + "' (first on line " +
                             std::to_string(it->second) + ")");
        }
        out.push_back(std::move(kv));
    }
    return out;
}

inline std::string where(const std::string& origin, const KeyValue& kv) {
    return origin + ":" + std::to_string(kv.line) + ": field '" + kv.key + "'";
}

inline std::optional<double> to_double(std::string_view s) {
    if (s.empty()) return std::nullopt;
    if (s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
    return v;
}

/// "1.5", "-2i", "0.3-1e-2i", "i".
inline std::optional<cplx> to_complex(std::string_view s) {
    std::string t;
    for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    }
    if (t.empty()) return std::nullopt;
    if (t.back() != 'i' && t.back() != 'j') {
        if (auto v = to_double(t)) return cplx{*v, 0.0};
        return std::nullopt;
    }
    t.pop_back();
    // Split at the last sign that is not part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t k = t.size(); k-- > 1;) {
        if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    const std::string re = split == std::string::npos ? "" : t.substr(0, split);
    std::string im = split == std::string::npos ? t : t.substr(split);
    if (im.empty() || im == "+") im = "1";
    if (im == "-") im = "-1";
    const auto vi = to_double(im);
    const auto vr = re.empty() ? std::optional<double>(0.0) : to_double(re);
    if (!vi || !vr) return std::nullopt;
    return cplx{*vr, *vi};
}

inline double require_double(const std::string& origin, const KeyValue& kv) {
    const auto v = to_double(kv.value);
    if (!v) throw UsageError(where(origin, kv) + ": expected a real number, got '" + kv.value + "'");
    return *v;
}

inline cplx require_complex(const std::string& origin, const KeyValue& kv) {
    const auto v = to_complex(kv.value);
    if (!v) throw UsageError(where(origin, kv) + ": expected a number like 1.5 or -2+0.5i, got '" + kv.value + "'");
    return *v;
}

inline long require_int(const std::string& origin, const KeyValue& kv) {
    long v = 0;
    const auto [p, ec] = std::from_chars(kv.value.data(), kv.value.data() + kv.value.size(), v);
    if (ec != std::errc{} || p != kv.value.data() + kv.value.size()) {
        throw UsageError(where(origin, kv) + ": expected an integer, got '" + kv.value + "'");
    }
    return v;
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s + ",") {
        if (c == ',') {
            if (auto t = trim(cur); !t.empty()) out.push_back(t);
            cur.clear();
        } else {
            cur += c;
        }
    }
    return out;
}

inline bool is_standard_gain_key(std::string_view k) {
    return k == "h11" || k == "h12" || k == "h21" || k == "h22" || k == "h1c" || k == "h2c";
}

// ---------------------------------------------------------------------------

inline Channel parse_channel(std::istream& is, const std::string& origin = "<channel>") {
    const auto kvs = parse_key_values(is, origin);
    ChannelGains g{0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    GeneralChannel gc{};
    bool standard = false, general = false;
    for (const auto& kv : kvs) {
        const std::string& k = kv.key;
        if (is_standard_gain_key(k)) {
            standard = true;
            const cplx v = require_complex(origin, kv);
            if (k == "h12") {
                g.h12 = v;
            } else if (k == "h21") {
                g.h21 = v;
            } else {
                if (v.imag() != 0.0 || v.real() < 0.0) {
                    throw UsageError(where(origin, kv) + ": standard-form direct and relay gains are real and >= 0");
                }
                (k == "h11" ? g.h11 : k == "h22" ? g.h22 : k == "h1c" ? g.h1c : g.h2c) = v.real();
            }
            continue;
        }
        cplx* gain = k == "g11" ? &gc.g11 : k == "g12" ? &gc.g12 : k == "g21" ? &gc.g21 : k == "g22" ? &gc.g22
                   : k == "g1c" ? &gc.g1c : k == "g2c" ? &gc.g2c : nullptr;
        double* param = k == "P1" ? &gc.P1 : k == "P2" ? &gc.P2 : k == "Pc" ? &gc.Pc : k == "s1sq" ? &gc.s1sq
                      : k == "s2sq" ? &gc.s2sq : nullptr;
        if (gain) {
            *gain = require_complex(origin, kv);
        } else if (param) {
            *param = require_double(origin, kv);
        } else {
            throw UsageError(where(origin, kv) + ": unknown key");
        }
        general = true;
    }
    if (standard && general) throw UsageError(origin + ": mixes standard-form (h..) and general (g.., P.., s..) keys");
    if (!standard && !general) throw UsageError(origin + ": no channel gains given");
    try {
        if (general) return Channel::general(gc);
        return Channel::standard(g);
    } catch (const DomainError& e) {
        throw UsageError(origin + ": " + e.what());
    }
}

inline Channel load_channel(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw UsageError("cannot open channel file '" + path + "'");
    return parse_channel(is, path);
}

inline void write_channel(std::ostream& os, const ChannelGains& g) {
    auto c = [](cplx v) {
        std::ostringstream s;
        s.precision(17);
        s << v.real();
        if (v.imag() != 0.0) s << (v.imag() < 0 ? "" : "+") << v.imag() << "i";
        return s.str();
    };
    os << "h11 = " << c(g.h11) << "\nh12 = " << c(g.h12) << "\nh21 = " << c(g.h21) << "\nh22 = " << c(g.h22)
       << "\nh1c = " << c(g.h1c) << "\nh2c = " << c(g.h2c) << "\n";
}

/// Sets one standard-form gain by name; direct and relay gains must be >= 0.
inline void set_gain(ChannelGains& g, std::string_view name, double v) {
    if (name == "h12") {
        g.h12 = v;
    } else if (name == "h21") {
        g.h21 = v;
    } else if (is_standard_gain_key(name)) {
        if (v < 0.0) throw DomainError("gain '" + std::string(name) + "' must be >= 0");
        (name == "h11" ? g.h11 : name == "h22" ? g.h22 : name == "h1c" ? g.h1c : g.h2c) = v;
    } else {
        throw UsageError("unknown gain '" + std::string(name) + "'");
    }
}

// ---------------------------------------------------------------------------

struct Axis {
    std::string name;
    double min = 0.0;
    double max = 0.0;
    int steps = 2;

    /// Grid value i of steps, computed as min + (max-min) i/(steps-1) so that
    /// exact grid values like integers are hit.
    double at(int i) const { return steps == 1 ? min : min + (max - min) * i / (steps - 1); }
};

/// "name:min:max:steps", e.g. "h12:-10:10:101".
inline Axis parse_axis(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text + ":") {
        if (c == ':') {
            parts.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (parts.size() != 4) throw UsageError("axis '" + text + "': expected name:min:max:steps");
    if (!is_standard_gain_key(parts[0])) throw UsageError("axis '" + text + "': name must be one of h11 h12 h21 h22 h1c h2c");
    const auto lo = to_double(parts[1]), hi = to_double(parts[2]);
    if (!lo || !hi) throw UsageError("axis '" + text + "': min and max must be numbers");
    long steps = 0;
    const auto [p, ec] = std::from_chars(parts[3].data(), parts[3].data() + parts[3].size(), steps);
    if (ec != std::errc{} || p != parts[3].data() + parts[3].size() || steps < 1 || steps > 100000) {
        throw UsageError("axis '" + text + "': steps must be an integer in [1, 100000]");
    }
    return {parts[0], *lo, *hi, static_cast<int>(steps)};
}

/// Two comma-separated axes.
inline std::pair<Axis, Axis> parse_plane(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw UsageError("plane '" + text + "': expected two axes separated by ','");
    std::pair<Axis, Axis> out{parse_axis(text.substr(0, comma)), parse_axis(text.substr(comma + 1))};
    if (out.first.name == out.second.name) throw UsageError("plane '" + text + "': axes must differ");
    return out;
}

struct SweepConfig {
    std::string channel;  // base channel file, resolved relative to the config
    Axis x{"h12", -10.0, 10.0, 101};
    Axis y{"h21", -10.0, 10.0, 101};
    std::vector<std::string> select;  // bounds and schemes; empty picks per channel
    int directions = 64;
    unsigned long seed = 0;
    std::string out = ".";
    std::vector<double> hc;  // relay gains for boundary sweeps
};

/// Keys: channel, plane.x, plane.x.min, plane.x.max, plane.x.steps (and the
/// same for plane.y), select (comma list), directions, seed, out, hc (comma
/// list of relay gains).
inline SweepConfig parse_sweep_config(std::istream& is, const std::string& origin = "<config>") {
    SweepConfig c;
    for (const auto& kv : parse_key_values(is, origin)) {
        const std::string& k = kv.key;
        auto axis_field = [&](Axis& a, std::string_view suffix) {
            if (suffix.empty()) {
                if (!is_standard_gain_key(kv.value)) {
                    throw UsageError(where(origin, kv) + ": axis must be one of h11 h12 h21 h22 h1c h2c");
                }
                a.name = kv.value;
            } else if (suffix == ".min") {
                a.min = require_double(origin, kv);
            } else if (suffix == ".max") {
                a.max = require_double(origin, kv);
            } else if (suffix == ".steps") {
                const long s = require_int(origin, kv);
                if (s < 1 || s > 100000) throw UsageError(where(origin, kv) + ": steps must be in [1, 100000]");
                a.steps = static_cast<int>(s);
            } else {
                throw UsageError(where(origin, kv) + ": unknown key");
            }
        };
        if (k == "channel") {
            c.channel = kv.value;
        } else if (k.rfind("plane.x", 0) == 0) {
            axis_field(c.x, std::string_view(k).substr(7));
        } else if (k.rfind("plane.y", 0) == 0) {
            axis_field(c.y, std::string_view(k).substr(7));
        } else if (k == "select") {
            c.select = split_list(kv.value);
            if (c.select.empty()) throw UsageError(where(origin, kv) + ": selection list is empty");
        } else if (k == "directions") {
            const long d = require_int(origin, kv);
            if (d < 3) throw UsageError(where(origin, kv) + ": at least 3 directions");
            c.directions = static_cast<int>(d);
        } else if (k == "seed") {
            const long s = require_int(origin, kv);
            if (s < 0) throw UsageError(where(origin, kv) + ": seed must be >= 0");
            c.seed = static_cast<unsigned long>(s);
        } else if (k == "out") {
            c.out = kv.value;
        } else if (k == "hc") {
            c.hc.clear();
            for (const auto& item : split_list(kv.value)) {
                KeyValue one{kv.key, item, kv.line};
                const double v = require_double(origin, one);
                if (v < 0.0) throw UsageError(where(origin, kv) + ": relay gains must be >= 0");
                c.hc.push_back(v);
            }
        } else {
            throw UsageError(where(origin, kv) + ": unknown key");
        }
    }
    if (c.x.name == c.y.name) throw UsageError(origin + ": plane axes must differ");
    return c;
}

inline SweepConfig load_sweep_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw UsageError("cannot open config file '" + path + "'");
    SweepConfig c = parse_sweep_config(is, path);
    if (!c.channel.empty() && c.channel.front() != '/') {
        const auto slash = path.find_last_of('/');
        if (slash != std::string::npos) c.channel = path.substr(0, slash + 1) + c.channel;
    }
    return c;
}

}  // namespace ifccr::io
