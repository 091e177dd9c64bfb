#pragma once

// Flat key=value run configuration shared by all commands.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "scchar/errors.hpp"
#include "scchar/padic.hpp"
#include "scchar/tori.hpp"

namespace scchar::cli {

struct SweepConfig {
    std::vector<std::int64_t> primes = {5, 7};
    int precision = 0;        // 0: derived from the depth ranges
    int r_min2 = 0;           // half-units
    int r_max2 = 2;           // half-units
    int gamma_depth_max2 = 4; // largest |d_plus| of sampled elements, half-units
    std::vector<std::string> classes;  // empty: every legal class
    std::uint64_t seed = 1;
    double tol = 1e-9;
    std::string out;          // empty: stdout
    double c1 = 1.0;
    int gamma_samples = 2;
    bool noncompact = true;
    bool dedupe_inverse = true;
    std::string gamma_class = "eps:1";  // asymptotics
    int gamma_depth2 = 2;               // asymptotics: target d_plus, half-units
    std::vector<std::string> types = {"A1", "A2", "A3", "B2", "B3", "C2", "C3", "D4", "E6", "E7", "E8", "F4", "G2"};
    std::string inject_fault;

    bool operator==(const SweepConfig&) const = default;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

template <class T>
std::string join(const std::vector<T>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

inline long long parse_int(const std::string& key, const std::string& value, const std::string& where) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(where + "field '" + key + "': expected an integer, got '" + value + "'");
    }
}

inline double parse_double(const std::string& key, const std::string& value, const std::string& where) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(where + "field '" + key + "': expected a number, got '" + value + "'");
    }
}

inline bool parse_bool(const std::string& key, const std::string& value, const std::string& where) {
    if (value == "1" || value == "true") return true;
    if (value == "0" || value == "false") return false;
    throw ConfigError(where + "field '" + key + "': expected true/false, got '" + value + "'");
}

inline std::string format_double(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

}  // namespace detail

/// Sets one field; `where` prefixes diagnostics (e.g. "run.cfg:3: ").
inline void set_field(SweepConfig& c, const std::string& key, const std::string& value, const std::string& where = "") {
    using namespace detail;
    if (key == "p") {
        c.primes.clear();
        for (const auto& s : split_list(value)) c.primes.push_back(parse_int(key, s, where));
    } else if (key == "prec") {
        c.precision = static_cast<int>(parse_int(key, value, where));
    } else if (key == "r_min") {
        c.r_min2 = static_cast<int>(parse_int(key, value, where));
    } else if (key == "r_max") {
        c.r_max2 = static_cast<int>(parse_int(key, value, where));
    } else if (key == "gamma_depth_max") {
        c.gamma_depth_max2 = static_cast<int>(parse_int(key, value, where));
    } else if (key == "classes") {
        c.classes = split_list(value);
    } else if (key == "seed") {
        c.seed = static_cast<std::uint64_t>(parse_int(key, value, where));
    } else if (key == "tol") {
        c.tol = parse_double(key, value, where);
    } else if (key == "out") {
        c.out = value;
    } else if (key == "c1") {
        c.c1 = parse_double(key, value, where);
    } else if (key == "gamma_samples") {
        c.gamma_samples = static_cast<int>(parse_int(key, value, where));
    } else if (key == "noncompact") {
        c.noncompact = parse_bool(key, value, where);
    } else if (key == "dedupe_inverse") {
        c.dedupe_inverse = parse_bool(key, value, where);
    } else if (key == "gamma_class") {
        c.gamma_class = value;
    } else if (key == "gamma_depth") {
        c.gamma_depth2 = static_cast<int>(parse_int(key, value, where));
    } else if (key == "types") {
        c.types = split_list(value);
    } else if (key == "inject_fault") {
        c.inject_fault = value;
    } else {
        throw ConfigError(where + "unknown field '" + key + "'");
    }
}

/// Parses key=value lines; '#' starts a comment.
inline SweepConfig parse_config(const std::string& text, const std::string& source = "config", SweepConfig base = {}) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const std::string where = source + ":" + std::to_string(lineno) + ": ";
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + "expected key=value");
        set_field(base, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)), where);
    }
    return base;
}

inline SweepConfig load_config(const std::string& path, SweepConfig base = {}) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path, std::move(base));
}

inline std::string serialize_config(const SweepConfig& c) {
    using detail::format_double;
    using detail::join;
    std::ostringstream os;
    os << "p=" << join(c.primes) << "\n"
       << "prec=" << c.precision << "\n"
       << "r_min=" << c.r_min2 << "\n"
       << "r_max=" << c.r_max2 << "\n"
       << "gamma_depth_max=" << c.gamma_depth_max2 << "\n"
       << "classes=" << join(c.classes) << "\n"
       << "seed=" << c.seed << "\n"
       << "tol=" << format_double(c.tol) << "\n"
       << "out=" << c.out << "\n"
       << "c1=" << format_double(c.c1) << "\n"
       << "gamma_samples=" << c.gamma_samples << "\n"
       << "noncompact=" << (c.noncompact ? "true" : "false") << "\n"
       << "dedupe_inverse=" << (c.dedupe_inverse ? "true" : "false") << "\n"
       << "gamma_class=" << c.gamma_class << "\n"
       << "gamma_depth=" << c.gamma_depth2 << "\n"
       << "types=" << join(c.types) << "\n"
       << "inject_fault=" << c.inject_fault << "\n";
    return os.str();
}

/// Working precision: 2 d_max + r_max + 4 digits, depths rounded up to
/// integers. FieldContext rejects it when p^N overflows.
inline int precision_for(const SweepConfig& c, int extra_r2 = 0) {
    const int d = (std::abs(c.gamma_depth_max2) + 1) / 2;
    const int r = (std::max(c.r_max2, extra_r2) + 1) / 2;
    const int need = 2 * d + r + 4;
    if (c.precision != 0) {
        if (c.precision < need)
            throw ConfigError("prec=" + std::to_string(c.precision) + " is below the required " + std::to_string(need) +
                              " digits for these depth ranges");
        return c.precision;
    }
    return need;
}

inline void validate(const SweepConfig& c) {
    if (c.primes.empty()) throw ConfigError("field 'p': at least one prime is required");
    for (auto p : c.primes) FieldContext(p, 1);
    if (c.r_min2 < 0 || c.r_max2 < c.r_min2) throw ConfigError("fields 'r_min'/'r_max': need 0 <= r_min <= r_max");
    if (c.gamma_depth_max2 < 0) throw ConfigError("field 'gamma_depth_max' must be >= 0");
    if (c.gamma_samples < 1) throw ConfigError("field 'gamma_samples' must be >= 1");
    if (!(c.tol >= 0)) throw ConfigError("field 'tol' must be >= 0");
    for (const auto& cls : c.classes) parse_class(cls);
    parse_class(c.gamma_class);
    if (!c.inject_fault.empty() && c.inject_fault != "wrong-legendre")
        throw ConfigError("field 'inject_fault': unknown fault '" + c.inject_fault + "'");
    for (auto p : c.primes) FieldContext(p, precision_for(c));
}

}  // namespace scchar::cli
