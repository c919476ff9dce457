#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "gencoord/kernel.hpp"
#include "gencoord/model.hpp"

namespace gencoord {

/// Command-line level options shared by every subcommand.
struct CliOptions {
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;  // overrides the config seed
    bool allow_blowup = false;
};

ModelSpec model_from_config(const nlohmann::json& cfg);
KernelSpec kernel_from_config(const nlohmann::json& cfg, int base_dim);

/// Each command validates its config, runs the scenario, writes CSV artifacts
/// (plus report.json) into opt.out_dir, and returns a process exit status.
int cmd_simulate(const nlohmann::json& cfg, const CliOptions& opt);
int cmd_least_action(const nlohmann::json& cfg, const CliOptions& opt);
int cmd_filter(const nlohmann::json& cfg, const CliOptions& opt);
int cmd_linear_analysis(const nlohmann::json& cfg, const CliOptions& opt);

}  // namespace gencoord
