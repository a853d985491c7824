#include "pittlab/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace pittlab::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

bool in_schema(const std::vector<ParamSpec>& schema, const std::string& key) {
    return std::any_of(schema.begin(), schema.end(), [&](const ParamSpec& p) { return p.name == key; });
}

}  // namespace

double parse_real(const std::string& text, const std::string& field) {
    const std::string t = trim(text);
    if (t == "inf" || t == "+inf") return INFINITY;
    if (t == "-inf") return -INFINITY;
    double v = 0.0;
    const auto* first = t.data();
    const auto* last = t.data() + t.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last || t.empty())
        throw ConfigError(field + ": not a number: '" + text + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& text, const std::string& field) {
    const std::string t = trim(text);
    std::uint64_t v = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size() || t.empty())
        throw ConfigError(field + ": not an unsigned integer: '" + text + "'");
    return v;
}

std::vector<std::string> expand_values(const std::string& text, const std::string& field) {
    const std::string t = trim(text);
    if (t.empty()) return {};
    if (t.find(':') != std::string::npos) {
        const auto parts = split(t, ':');
        if (parts.size() != 3) throw ConfigError(field + ": range must be lo:hi:count");
        const double lo = parse_real(parts[0], field), hi = parse_real(parts[1], field);
        const auto count = parse_u64(parts[2], field);
        if (count == 0 || count > max_grid_points) throw ConfigError(field + ": range count out of bounds");
        std::vector<std::string> out;
        for (std::uint64_t i = 0; i < count; ++i) {
            const double v = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
            char buf[64];
            const auto r = std::to_chars(buf, buf + sizeof buf, v);
            out.emplace_back(buf, r.ptr);
        }
        return out;
    }
    auto out = split(t, ',');
    for (const auto& v : out)
        if (v.empty()) throw ConfigError(field + ": empty list element");
    return out;
}

ExperimentConfig parse_config_text(const std::string& text, const std::vector<ParamSpec>& schema,
                                   const std::string& origin) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int number = 0;
    auto fail = [&](const std::string& msg) {
        throw ConfigError(origin + ":" + std::to_string(number) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail("unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "params" && section != "quadrature") fail("unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail("expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail("empty key");
        try {
            if (section == "params") {
                if (!in_schema(schema, key)) fail("unknown parameter '" + key + "'");
                cfg.grid[key] = expand_values(value, key);
            } else if (section == "quadrature") {
                if (key == "u_max")
                    cfg.quad.u_max = parse_real(value, key);
                else if (key == "panels")
                    cfg.quad.panels = static_cast<int>(parse_u64(value, key));
                else if (key == "grid_m")
                    cfg.quad.grid_m = static_cast<int>(parse_u64(value, key));
                else
                    fail("unknown quadrature key '" + key + "'");
            } else if (key == "command") {
                cfg.command = value;
            } else if (key == "seed") {
                cfg.seed = parse_u64(value, key);
            } else if (key == "out") {
                cfg.out = value;
            } else if (key == "format") {
                cfg.format = value;
            } else if (key == "jobs") {
                cfg.jobs = static_cast<unsigned>(std::max<std::uint64_t>(1, parse_u64(value, key)));
            } else if (key == "timestamp") {
                cfg.timestamp = value;
            } else if (key == "schedule") {
                cfg.schedule.clear();
                for (const auto& v : expand_values(value, key)) cfg.schedule.push_back(parse_real(v, key));
            } else {
                fail("unknown key '" + key + "'");
            }
        } catch (const ConfigError& e) {
            const std::string msg = e.what();
            if (msg.rfind(origin + ":", 0) == 0) throw;
            fail(msg);
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path, const std::vector<ParamSpec>& schema) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str(), schema, path);
}

std::vector<GridPoint> expand_grid(const ExperimentConfig& cfg, const std::vector<ParamSpec>& schema) {
    std::vector<std::pair<std::string, std::vector<std::string>>> axes;
    std::size_t total = 1;
    for (const auto& p : schema) {
        std::vector<std::string> values;
        if (auto it = cfg.grid.find(p.name); it != cfg.grid.end())
            values = it->second;
        else if (!p.fallback.empty())
            values = {p.fallback};
        else
            continue;
        if (values.empty()) return {};  // an explicitly empty axis empties the grid
        total *= values.size();
        if (total > max_grid_points)
            throw ConfigError("grid exceeds " + std::to_string(max_grid_points) + " points");
        axes.emplace_back(p.name, std::move(values));
    }
    for (const auto& [key, values] : cfg.grid)
        if (!in_schema(schema, key)) throw ConfigError("unknown parameter '" + key + "'");

    std::vector<GridPoint> out;
    out.reserve(total);
    std::vector<std::size_t> idx(axes.size(), 0);
    for (std::size_t n = 0; n < total; ++n) {
        GridPoint g;
        for (std::size_t a = 0; a < axes.size(); ++a) g[axes[a].first] = axes[a].second[idx[a]];
        out.push_back(std::move(g));
        for (std::size_t a = axes.size(); a-- > 0;) {
            if (++idx[a] < axes[a].second.size()) break;
            idx[a] = 0;
        }
    }
    return out;
}

}  // namespace pittlab::cli
