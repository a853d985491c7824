#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pittlab/cli/config.hpp"

namespace pittlab::cli {

using json = nlohmann::json;

/// Everything a grid point sees besides its own parameters.
struct RunContext {
    std::optional<std::uint64_t> seed;
    QuadratureConfig quad;
    std::vector<double> schedule;
    unsigned jobs = 1;
};

struct Command {
    std::string name;
    std::string theorem;  // shown by --help
    std::vector<ParamSpec> params;
    std::function<bool(const GridPoint&)> needs_seed;
    std::function<json(const GridPoint&, const RunContext&)> evaluate;
};

/// Grid commands; `report` is handled by the application separately.
const std::vector<Command>& commands();
const Command* find_command(const std::string& name);

/// Random stream of a grid point: a hash of its parameter text, so a point re-run alone draws the same numbers.
std::uint64_t point_stream(const GridPoint& point);

}  // namespace pittlab::cli
