#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pittlab/quadrature.hpp"

namespace pittlab::cli {

/// Malformed configuration or flags; maps to exit code 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter of a subcommand; every parameter may be given as a list or a range, forming a grid axis.
struct ParamSpec {
    std::string name;
    std::string fallback;  // empty: unset unless given
    std::string help;
};

/// One grid point: parameter name -> raw value text.
using GridPoint = std::map<std::string, std::string>;

struct ExperimentConfig {
    std::string command;
    std::map<std::string, std::vector<std::string>> grid;  // parameter -> values (already expanded)
    std::vector<double> schedule;
    QuadratureConfig quad;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::string format = "jsonl";
    unsigned jobs = 1;
    std::optional<std::string> timestamp;
};

inline constexpr std::size_t max_grid_points = 10000;

/// Parses a decimal number; the result is the nearest binary double.
double parse_real(const std::string& text, const std::string& field);
std::uint64_t parse_u64(const std::string& text, const std::string& field);

/// "a, b, c" or "lo:hi:count" (count >= 1 evenly spaced values, endpoints included) or a single value.
std::vector<std::string> expand_values(const std::string& text, const std::string& field);

/// Reads `key = value` lines. Top-level keys: command, seed, out, format, jobs, schedule, timestamp.
/// [params] holds grid axes, [quadrature] holds u_max, panels, grid_m. '#' starts a comment.
/// Unknown keys and sections are errors reported with their line number.
ExperimentConfig parse_config_text(const std::string& text, const std::vector<ParamSpec>& schema,
                                   const std::string& origin = "config");
ExperimentConfig load_config(const std::string& path, const std::vector<ParamSpec>& schema);

/// Cartesian product of the grid axes in schema order (last axis fastest); unset parameters take their fallback.
std::vector<GridPoint> expand_grid(const ExperimentConfig& cfg, const std::vector<ParamSpec>& schema);

}  // namespace pittlab::cli
