// subweibull-lab: batch tail-classification and exponential-tilting analysis.
//
//   subweibull-lab analyze  --config cfg.json [--output DIR] [--no-csv]
//   subweibull-lab validate --config cfg.json
//
// Exit codes: 0 success, 2 config error, 3 I/O error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "subweibull/analysis.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

int read_file(const std::string& path, std::string& out) {
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        std::cerr << "error: cannot read " << path << "\n";
        return kExitIo;
    }
    std::ostringstream ss;
    ss << is.rdbuf();
    out = ss.str();
    return 0;
}

void print_violations(const subweibull::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    for (const auto& v : e.violations) std::cerr << "  - " << v << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"subweibull tail classification and exponential tilting toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_override;
    bool no_csv = false;

    auto* analyze = app.add_subcommand("analyze", "run the analysis pipeline");
    analyze->add_option("--config", config_path, "JSON config file")->required();
    analyze->add_option("--output", output_override, "output directory (overrides config)");
    analyze->add_flag("--no-csv", no_csv, "skip diagnostic CSV files");

    auto* validate = app.add_subcommand("validate", "check a config file");
    validate->add_option("--config", config_path, "JSON config file")->required();

    CLI11_PARSE(app, argc, argv);

    std::string raw;
    if (int rc = read_file(config_path, raw); rc != 0) return rc;

    if (validate->parsed()) {
        try {
            subweibull::validate_config(raw);
        } catch (const subweibull::ConfigError& e) {
            print_violations(e);
            return kExitConfig;
        }
        std::cout << "config ok\n";
        return 0;
    }

    try {
        subweibull::AnalysisConfig cfg = subweibull::validate_config(raw);
        const std::string out_dir = output_override.empty() ? cfg.output_dir : output_override;
        subweibull::run_analysis_to_files(cfg, out_dir,
                                          no_csv ? std::optional<bool>(false) : std::nullopt);
        std::cout << "report written to " << out_dir << "/report.json\n";
        return 0;
    } catch (const subweibull::ConfigError& e) {
        print_violations(e);
        return kExitConfig;
    } catch (const subweibull::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    }
}
