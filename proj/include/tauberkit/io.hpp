#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "json.hpp"

#include "tauberkit/errors.hpp"
#include "tauberkit/measures.hpp"
#include "tauberkit/tauber.hpp"
#include "tauberkit/trace.hpp"
#include "tauberkit/transforms.hpp"

namespace tauberkit::io {

using json = nlohmann::ordered_json;

namespace detail {

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::bad_input, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json parse(const std::string& path) {
    try {
        return json::parse(slurp(path));
    } catch (const nlohmann::json::exception& e) {
        fail(errc::bad_input, path + ": " + e.what());
    }
}

// Shortest round-trip decimal form; what every CSV cell uses so that equal
// doubles always print identically.
inline std::string fmt(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) fail(errc::bad_input, "number formatting failed");
    return std::string(buf, p);
}

inline double parse_double(const std::string& tok, const std::string& path) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        fail(errc::bad_input, path + ": bad number '" + tok + "'");
    return v;
}

} // namespace detail

// ---------------------------------------------------------------------------
// JSON inputs.

// {"probs": [p1, p2, ...], "span": 1.0, "p0": 0.0} -> normalized lattice.
inline LatticeDist read_lattice_json(const std::string& path) {
    json j = detail::parse(path);
    if (!j.contains("probs") || !j["probs"].is_array())
        fail(errc::bad_input, path + ": need a \"probs\" array");
    std::vector<double> probs = j["probs"].get<std::vector<double>>();
    double span = j.value("span", 1.0);
    double p0 = j.value("p0", 0.0);
    return normalize_lattice(span, probs, p0);
}

// {"g": {"2": 2.0, "3": 1.5, ...}} -> weight map keyed by integer n >= 2.
inline ArithWeights read_weights_json(const std::string& path) {
    json j = detail::parse(path);
    if (!j.contains("g") || !j["g"].is_object())
        fail(errc::bad_input, path + ": need a \"g\" object");
    std::map<std::uint64_t, double> g;
    for (const auto& [key, val] : j["g"].items()) {
        std::uint64_t n = 0;
        auto [p, ec] = std::from_chars(key.data(), key.data() + key.size(), n);
        if (ec != std::errc() || p != key.data() + key.size())
            fail(errc::bad_input, path + ": weight key '" + key + "' is not an integer");
        g[n] = val.get<double>();
    }
    double tol = j.value("sum_tol", 1e-12);
    return ArithWeights::make(std::move(g), tol);
}

// Bare array or {"coeffs": [...]}.
inline std::vector<double> read_coeffs_json(const std::string& path) {
    json j = detail::parse(path);
    const json* arr = j.is_array() ? &j : (j.contains("coeffs") ? &j["coeffs"] : nullptr);
    if (!arr || !arr->is_array()) fail(errc::bad_input, path + ": need a coefficient array");
    return arr->get<std::vector<double>>();
}

// ---------------------------------------------------------------------------
// CSV inputs: "x,<name>" header, x starting at 0 on a uniform grid.

namespace detail {

inline std::pair<double, std::vector<double>> read_xy_csv(const std::string& path,
                                                          const std::string& y_name) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::bad_input, "cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) fail(errc::bad_input, path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "x," + y_name)
        fail(errc::bad_input, path + ": expected header 'x," + y_name + "', got '" + line + "'");

    std::vector<double> xs, ys;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) fail(errc::bad_input, path + ": row without comma");
        xs.push_back(parse_double(line.substr(0, comma), path));
        ys.push_back(parse_double(line.substr(comma + 1), path));
    }
    if (xs.size() < 2) fail(errc::bad_input, path + ": need at least two rows");
    if (xs[0] != 0.0) fail(errc::bad_input, path + ": grid must start at x = 0");
    double step = xs[1] - xs[0];
    if (!(step > 0.0)) fail(errc::bad_input, path + ": grid must increase");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double expect = step * static_cast<double>(i);
        if (std::abs(xs[i] - expect) > 1e-9 * std::max(1.0, std::abs(expect)))
            fail(errc::bad_input, path + ": grid is not uniform at row " + std::to_string(i + 1));
    }
    return {step, std::move(ys)};
}

} // namespace detail

inline GridDensity read_density_csv(const std::string& path, double tail_mass = 0.0) {
    auto [step, values] = detail::read_xy_csv(path, "density");
    return GridDensity::make(step, std::move(values), tail_mass);
}

inline SampledFunction read_samples_csv(const std::string& path, double growth_exponent) {
    auto [step, values] = detail::read_xy_csv(path, "value");
    return SampledFunction::make(step, std::move(values), growth_exponent);
}

// ---------------------------------------------------------------------------
// Outputs. All text is LF-terminated and numbers print in shortest
// round-trip form, so identical inputs give byte-identical files.

inline void write_text(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(errc::bad_input, "cannot write " + path);
    out << body;
    if (!out) fail(errc::bad_input, "write failed for " + path);
}

inline void write_trace_csv(const std::string& path, const Trace& t) {
    std::ostringstream ss;
    ss << "x,value,target\n";
    for (std::size_t i = 0; i < t.x.size(); ++i)
        ss << detail::fmt(t.x[i]) << ',' << detail::fmt(t.value[i]) << ','
           << detail::fmt(t.target) << '\n';
    write_text(path, ss.str());
}

namespace detail {

// Serializer with pinned number formatting: floats always print with 17
// significant digits so equal values are byte-equal across runs, integers
// print as integers, keys keep insertion order.
inline void dump_pinned(const json& j, std::string& out, int indent) {
    auto pad = [&](int n) { out.append(static_cast<std::size_t>(2 * n), ' '); };
    if (j.is_object()) {
        if (j.empty()) { out += "{}"; return; }
        out += "{\n";
        bool first = true;
        for (const auto& [k, v] : j.items()) {
            if (!first) out += ",\n";
            first = false;
            pad(indent + 1);
            out += json(k).dump();
            out += ": ";
            dump_pinned(v, out, indent + 1);
        }
        out += "\n";
        pad(indent);
        out += "}";
    } else if (j.is_array()) {
        if (j.empty()) { out += "[]"; return; }
        out += "[\n";
        bool first = true;
        for (const auto& v : j) {
            if (!first) out += ",\n";
            first = false;
            pad(indent + 1);
            dump_pinned(v, out, indent + 1);
        }
        out += "\n";
        pad(indent);
        out += "]";
    } else if (j.is_number_float()) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", j.get<double>());
        out += buf;
    } else {
        out += j.dump();
    }
}

} // namespace detail

inline void write_json(const std::string& path, const json& j) {
    std::string body;
    detail::dump_pinned(j, body, 0);
    body += "\n";
    write_text(path, body);
}

inline json pairs_json(const std::vector<std::pair<std::string, double>>& kv) {
    json j = json::object();
    for (const auto& [k, v] : kv) j[k] = v;
    return j;
}

inline json report_json(const ConditionReport& r) {
    json j;
    j["condition"] = condition_name(r.condition);
    j["verdict"] = verdict_name(r.verdict);
    j["estimates"] = pairs_json(r.estimates);
    j["witness"] = r.witness ? pairs_json(*r.witness) : json(nullptr);
    j["resolution"] = pairs_json(r.resolution);
    return j;
}

inline json trace_summary_json(const Trace& t) {
    json j;
    j["points"] = t.x.size();
    j["target"] = t.target;
    j["window_lo"] = t.window_lo;
    j["window_hi"] = t.window_hi;
    j["sup_deviation_tail"] = t.sup_deviation_tail;
    return j;
}

inline json limit_json(const LimitEstimate& e) {
    json j;
    j["d"] = e.d;
    j["v"] = e.v;
    j["extrapolated"] = e.extrapolated;
    j["residual"] = e.residual;
    j["rounds"] = e.rounds;
    return j;
}

inline json grid_json(const BoundaryGrid& g) {
    json j;
    j["approach_variable"] = g.approach_variable;
    j["approach"] = g.approach;
    j["transverse"] = g.transverse;
    j["U"] = g.U;
    j["max_tail_bound"] = g.max_tail_bound;
    return j;
}

inline BoundaryGrid read_grid_json(const std::string& path) {
    json j = detail::parse(path);
    BoundaryGrid g;
    try {
        g.approach_variable = j.value("approach_variable", std::string("sigma_minus_1"));
        g.approach = j.at("approach").get<std::vector<double>>();
        g.transverse = j.at("transverse").get<std::vector<double>>();
        g.U = j.at("U").get<std::vector<std::vector<double>>>();
        g.max_tail_bound = j.value("max_tail_bound", 0.0);
    } catch (const nlohmann::json::exception& e) {
        fail(errc::bad_input, path + ": " + e.what());
    }
    return g;
}

} // namespace tauberkit::io
