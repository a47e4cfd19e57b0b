#pragma once

#include "run_config.hpp"

#include <string>

namespace rbmlab::cli {

struct Common {
    std::string out;
    Format format = Format::csv;
};

int cmd_simulate(RunConfig& cfg, const Common& common);
int cmd_density(RunConfig& cfg, const Common& common);
int cmd_moments(RunConfig& cfg, const Common& common);
int cmd_scgf(RunConfig& cfg, const Common& common);
int cmd_rate(RunConfig& cfg, const Common& common);
int cmd_variational(RunConfig& cfg, const Common& common);
int cmd_validate(RunConfig& cfg, const Common& common, bool list_only);

}  // namespace rbmlab::cli
