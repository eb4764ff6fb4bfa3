#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kohn/cli.hpp"

namespace {

void add_output_flags(CLI::App* cmd, kohn::cli::RunConfig& config) {
    cmd->add_option("--out", config.output, "Write results to this path instead of standard output");
}

}  // namespace

int main(int argc, char** argv) {
    using kohn::cli::RunConfig;
    RunConfig config;

    CLI::App app{"Kohn Laplacian spectra on Reinhardt hypersurfaces"};
    app.require_subcommand(1);

    std::vector<int> window;
    std::string format = "json";

    auto* analyze = app.add_subcommand("analyze", "Estimate lambda1 for a curve file and check the upper bound");
    analyze->add_option("curve", config.input, "Curve JSON file")->required();
    analyze->add_option("--grid", config.grid, "Arc-length grid size (even, >= 64)");
    analyze->add_option("--window", window, "Mode window bounds M L")->expected(2);
    analyze->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    analyze->add_flag("--adaptive", config.adaptive, "Grow the mode window while the minimum sits near its edge");
    add_output_flags(analyze, config);

    auto* sweep = app.add_subcommand("wh-sweep", "Certify E >= 1 for Whittaker-Hill over a range of a");
    sweep->add_option("--a-min", config.a_min, "Smallest a");
    sweep->add_option("--a-max", config.a_max, "Largest a");
    sweep->add_option("--steps", config.steps, "Number of a values");
    sweep->add_option("--N", config.ince_size, "Size of the truncated Ince matrix");
    add_output_flags(sweep, config);

    auto* make = app.add_subcommand("make-curve", "Write a curve file for a preset");
    make->add_option("preset", config.input, "circle, ellipse or random")
        ->required()
        ->check(CLI::IsMember({"circle", "ellipse", "random"}));
    make->add_option("--radius", config.radius, "Circle radius of curvature");
    make->add_option("--eps", config.eps, "Ellipse-type deformation rho = 1 + eps cos 2phi");
    make->add_option("--seed", config.seed, "Seed for the random preset");
    make->add_option("--grid", config.grid, "Grid size recorded in the file");
    add_output_flags(make, config);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kohn::cli::kInputError;
    }

    for (auto* cmd : app.get_subcommands()) config.command = cmd->get_name();
    if (!window.empty()) config.window = {window[0], window[1]};
    config.format = format == "csv" ? kohn::ReportFormat::csv : kohn::ReportFormat::json;

    return kohn::cli::run(config, std::cout, std::cerr);
}
