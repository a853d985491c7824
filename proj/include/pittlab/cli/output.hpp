#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pittlab/cli/config.hpp"

namespace pittlab::cli {

using json = nlohmann::json;

enum class OutputFormat { jsonl, csv, plotdata };

OutputFormat parse_format(const std::string& name);

/// {command, params, outputs, seed, timestamp, tool_version}; seed and timestamp are null when unset.
json make_record(const std::string& command, const GridPoint& params, json outputs, std::optional<std::uint64_t> seed,
                 const std::optional<std::string>& timestamp);

/// Throws ConfigError unless every record carries the same command.
void require_homogeneous(const std::vector<json>& records);

/// jsonl: one compact record per line. csv: flattened columns, header only when `header` is set.
/// plotdata: per record with a growth series, a comment block then "x y fit_y rhs" rows.
void write_records(std::ostream& out, const std::vector<json>& records, OutputFormat format, bool header);

/// Reads one record per non-blank line.
std::vector<json> read_jsonl(std::istream& in, const std::string& origin);

/// Fitted curve value (A + B X^t)^{1/power} at each N, A and B by least squares on the levels.
std::vector<double> fitted_curve(const std::vector<double>& n, const std::vector<double>& values, const std::string& axis,
                                 double power, double t);

}  // namespace pittlab::cli
