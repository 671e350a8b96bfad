#include <iostream>

#include <CLI11.hpp>

#include "fund/cli.hpp"
#include "fund/error.hpp"

namespace fund::cli {

int run(int argc, char** argv) {
    CLI::App app{"Regulatory-optimal funding: fit, optimize, calibrate and backtest roll strategies"};
    app.require_subcommand(1);

    std::string config_path;
    std::string currency;
    std::string date_text;
    std::string measure_text = "Q";

    auto* fit = app.add_subcommand("fit", "Linear-fit diagnostics per currency");
    auto* optimize = app.add_subcommand("optimize", "Optimal roll length for one curve under one measure");
    auto* calibrate = app.add_subcommand("calibrate", "Grid-calibrate the EWMA predictor");
    auto* backtest = app.add_subcommand("backtest", "Out-of-sample replay of Q, EWMA and perfect-information rolls");
    for (auto* sub : {fit, optimize, calibrate, backtest}) {
        sub->add_option("--config", config_path, "Path to the run configuration")->required();
    }
    optimize->add_option("--currency", currency, "Currency key from [data]")->required();
    optimize->add_option("--date", date_text, "Curve date, YYYY-MM-DD")->required();
    optimize->add_option("--measure", measure_text, "Q, P-CONST, P-EWMA or PI")
        ->check(CLI::IsMember({"Q", "P-CONST", "P-EWMA", "PI"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_code(ErrorCategory::Config);
    }

    try {
        const RunConfig config = load_config(config_path);
        if (*fit) {
            std::cout << fit_table_csv(cmd_fit(config));
        } else if (*optimize) {
            std::cout << cmd_optimize(config, currency, Date::parse(date_text), parse_measure(measure_text)).dump(2)
                      << "\n";
        } else if (*calibrate) {
            std::cout << calibration_json(cmd_calibrate(config)).dump(2) << "\n";
        } else if (*backtest) {
            std::cout << summary_json(cmd_backtest(config)).dump(2) << "\n";
        }
    } catch (const Error& e) {
        std::cerr << "fund: " << to_string(e.category()) << " error: " << e.what() << "\n";
        return exit_code(e.category());
    } catch (const std::exception& e) {
        std::cerr << "fund: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace fund::cli
