#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gencoord/runner.hpp"

namespace {

nlohmann::json load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open config " << path << '\n';
        std::exit(1);
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        std::cerr << "error: config is not valid JSON: " << e.what() << '\n';
        std::exit(1);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized-coordinates SDE toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    gencoord::CliOptions opt;
    std::uint64_t seed_flag = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--out", opt.out_dir, "output directory");
        sub->add_option("--seed", seed_flag, "seed override");
        sub->add_flag("--allow-blowup", opt.allow_blowup,
                      "record blow-ups instead of failing");
    };

    CLI::App* simulate = app.add_subcommand("simulate", "integrate an SDE ensemble");
    CLI::App* least_action = app.add_subcommand("least-action", "Lagrangian descent sweep");
    CLI::App* filter = app.add_subcommand("filter", "generalized filtering");
    CLI::App* analysis =
        app.add_subcommand("linear-analysis", "closed-form linear SDE statistics");
    for (CLI::App* sub : {simulate, least_action, filter, analysis}) add_common(sub);

    CLI11_PARSE(app, argc, argv);

    for (CLI::App* sub : {simulate, least_action, filter, analysis})
        if (sub->parsed() && sub->count("--seed") > 0) opt.seed = seed_flag;

    const nlohmann::json cfg = load_config(config_path);
    if (simulate->parsed()) return gencoord::cmd_simulate(cfg, opt);
    if (least_action->parsed()) return gencoord::cmd_least_action(cfg, opt);
    if (filter->parsed()) return gencoord::cmd_filter(cfg, opt);
    return gencoord::cmd_linear_analysis(cfg, opt);
}
