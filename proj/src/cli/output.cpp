#include "pittlab/cli/output.hpp"

#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "pittlab/growth_fit.hpp"

namespace pittlab::cli {

namespace {

void flatten(const json& node, const std::string& prefix, std::map<std::string, std::string>& out) {
    if (node.is_object()) {
        for (const auto& [key, value] : node.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, out);
        return;
    }
    out[prefix] = node.is_string() ? node.get<std::string>() : node.dump();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

void write_csv(std::ostream& out, const std::vector<json>& records, bool header) {
    std::vector<std::map<std::string, std::string>> rows;
    std::set<std::string> params, outputs;
    for (const auto& r : records) {
        std::map<std::string, std::string> row;
        flatten(r, "", row);
        for (const auto& [key, value] : row) {
            if (key.rfind("params.", 0) == 0) params.insert(key);
            if (key.rfind("outputs.", 0) == 0) outputs.insert(key);
        }
        rows.push_back(std::move(row));
    }
    std::vector<std::string> columns{"command", "tool_version", "seed", "timestamp"};
    columns.insert(columns.end(), params.begin(), params.end());
    columns.insert(columns.end(), outputs.begin(), outputs.end());
    if (header) {
        for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << csv_field(columns[i]);
        out << '\n';
    }
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            const auto it = row.find(columns[i]);
            out << (i ? "," : "") << csv_field(it == row.end() || it->second == "null" ? "" : it->second);
        }
        out << '\n';
    }
}

void write_plotdata(std::ostream& out, const std::vector<json>& records) {
    std::size_t index = 0;
    for (const auto& r : records) {
        const auto& o = r.at("outputs");
        if (!o.contains("series")) throw ConfigError("plotdata needs growth-series records, got '" +
                                                     r.at("command").get<std::string>() + "'");
        const auto n = o.at("series").at("N").get<std::vector<double>>();
        const auto lhs = o.at("series").at("lhs").get<std::vector<double>>();
        const auto rhs = o.at("series").at("rhs").get<std::vector<double>>();
        const auto& fit = o.at("fit");
        const auto fit_y = fitted_curve(n, lhs, fit.at("axis").get<std::string>(), fit.at("power").get<double>(),
                                        fit.at("t").get<double>());
        out << "# record " << index++ << " params " << r.at("params").dump() << '\n';
        out << "# axis " << fit.at("axis").get<std::string>() << " t " << json(fit.at("t")).dump() << '\n';
        out << "# x y fit_y rhs\n";
        for (std::size_t i = 0; i < n.size(); ++i)
            out << json(n[i]).dump() << ' ' << json(lhs[i]).dump() << ' ' << json(fit_y[i]).dump() << ' '
                << json(rhs[i]).dump() << '\n';
        out << '\n';
    }
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
    if (name == "jsonl") return OutputFormat::jsonl;
    if (name == "csv") return OutputFormat::csv;
    if (name == "plotdata") return OutputFormat::plotdata;
    throw ConfigError("format: expected csv|jsonl|plotdata, got '" + name + "'");
}

json make_record(const std::string& command, const GridPoint& params, json outputs, std::optional<std::uint64_t> seed,
                 const std::optional<std::string>& timestamp) {
    json r;
    r["command"] = command;
    r["params"] = params;
    r["outputs"] = std::move(outputs);
    r["seed"] = seed ? json(*seed) : json(nullptr);
    r["timestamp"] = timestamp ? json(*timestamp) : json(nullptr);
    r["tool_version"] = PITTLAB_VERSION;
    return r;
}

void require_homogeneous(const std::vector<json>& records) {
    for (const auto& r : records)
        if (r.at("command") != records.front().at("command"))
            throw ConfigError("mixed command types: '" + records.front().at("command").get<std::string>() + "' and '" +
                              r.at("command").get<std::string>() + "'");
}

void write_records(std::ostream& out, const std::vector<json>& records, OutputFormat format, bool header) {
    require_homogeneous(records);
    switch (format) {
        case OutputFormat::jsonl:
            for (const auto& r : records) out << r.dump() << '\n';
            break;
        case OutputFormat::csv: write_csv(out, records, header); break;
        case OutputFormat::plotdata: write_plotdata(out, records); break;
    }
}

std::vector<json> read_jsonl(std::istream& in, const std::string& origin) {
    std::vector<json> out;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(json::parse(line));
        } catch (const json::parse_error& e) {
            throw ConfigError(origin + ":" + std::to_string(number) + ": " + e.what());
        }
        const auto& r = out.back();
        if (!r.is_object() || !r.contains("command") || !r.contains("outputs"))
            throw ConfigError(origin + ":" + std::to_string(number) + ": not a result record");
    }
    return out;
}

std::vector<double> fitted_curve(const std::vector<double>& n, const std::vector<double>& values, const std::string& axis,
                                 double power, double t) {
    const GrowthAxis a = axis_from_string(axis);
    std::vector<double> x(n.size()), s(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) {
        const double X = axis_value(a, n[i]);
        x[i] = t == 0.0 ? std::log(X) : std::pow(X, t);
        s[i] = std::pow(values[i], power);
    }
    const LineFit line = least_squares(x, s);
    std::vector<double> out(n.size());
    for (std::size_t i = 0; i < n.size(); ++i)
        out[i] = std::pow(std::max(line.intercept + line.slope * x[i], 0.0), 1.0 / power);
    return out;
}

}  // namespace pittlab::cli
