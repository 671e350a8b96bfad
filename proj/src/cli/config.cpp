#include <chrono>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "fund/cli.hpp"
#include "fund/error.hpp"
#include "fund/history_csv.hpp"

namespace fund::cli {

namespace pt = boost::property_tree;

namespace {

double to_double(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        fail(ErrorCategory::Config, key + ": expected a number, got '" + text + "'");
    }
}

std::string trimmed(std::string s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<double> to_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(key, trimmed(item)));
    if (out.empty()) fail(ErrorCategory::Config, key + ": empty list");
    return out;
}

bool to_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    fail(ErrorCategory::Config, key + ": expected true or false, got '" + text + "'");
}

void allow_only(const pt::ptree& section, const std::string& name, const std::set<std::string>& keys) {
    for (const auto& [key, _] : section) {
        if (!keys.contains(key)) fail(ErrorCategory::Config, "unknown key [" + name + "] " + key);
    }
}

std::optional<std::string> get(const pt::ptree& section, const std::string& key) {
    if (auto v = section.get_optional<std::string>(key)) return trimmed(*v);
    return std::nullopt;
}

double number_or(const pt::ptree& section, const std::string& key, double fallback) {
    const auto v = get(section, key);
    return v ? to_double(key, *v) : fallback;
}

}  // namespace

RunConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        fail(ErrorCategory::Config, e.what());
    }

    static const std::set<std::string> sections = {"setup", "data", "calibration", "params", "backtest", "output"};
    for (const auto& [name, _] : tree) {
        if (!sections.contains(name)) fail(ErrorCategory::Config, "unknown section [" + name + "]");
    }

    RunConfig config;
    const pt::ptree empty;
    const auto& setup = tree.get_child("setup", empty);
    allow_only(setup, "setup",
               {"horizon_years", "buffer_months", "buffer_years", "phi", "alpha_grid_step_days",
                "max_staleness_days"});
    if (get(setup, "buffer_months") && get(setup, "buffer_years")) {
        fail(ErrorCategory::Config, "[setup] give buffer_months or buffer_years, not both");
    }
    const double horizon = number_or(setup, "horizon_years", 1.0);
    double buffer = number_or(setup, "buffer_months", 1.0) / 12.0;
    if (auto v = get(setup, "buffer_years")) buffer = to_double("buffer_years", *v);
    config.setup = FundingSetup(horizon, buffer, number_or(setup, "phi", 0.75));
    config.alpha_step_days = number_or(setup, "alpha_grid_step_days", 1.0);
    if (!(config.alpha_step_days > 0.0)) fail(ErrorCategory::Config, "alpha_grid_step_days must be positive");
    config.max_staleness_days = static_cast<long>(number_or(setup, "max_staleness_days", 7.0));

    const auto data = tree.get_child_optional("data");
    if (!data || data->empty()) fail(ErrorCategory::Config, "[data] must list at least one currency = path");
    for (const auto& [currency, value] : *data) {
        std::filesystem::path p = trimmed(value.data());
        config.data_paths[currency] = p.is_absolute() ? p : base_dir / p;
    }

    const auto& cal = tree.get_child("calibration", empty);
    allow_only(cal, "calibration", {"years", "start", "end", "lambda_days", "theta_per_day", "omega"});
    config.calibration_years = static_cast<int>(number_or(cal, "years", 5.0));
    if (config.calibration_years <= 0) fail(ErrorCategory::Config, "[calibration] years must be positive");
    const auto start = get(cal, "start");
    const auto end = get(cal, "end");
    if (start.has_value() != end.has_value()) {
        fail(ErrorCategory::Config, "[calibration] start and end go together");
    }
    if (start) {
        try {
            config.calibration_window = DateRange{Date::parse(*start), Date::parse(*end)};
        } catch (const Error& e) {
            fail(ErrorCategory::Config, std::string("[calibration] ") + e.what());
        }
        if (config.calibration_window->last < config.calibration_window->first) {
            fail(ErrorCategory::Config, "[calibration] end precedes start");
        }
    }
    if (auto v = get(cal, "lambda_days")) config.grid.lambda_days = to_list("lambda_days", *v);
    if (auto v = get(cal, "theta_per_day")) config.grid.theta_per_day = to_list("theta_per_day", *v);
    if (auto v = get(cal, "omega")) config.grid.omega = to_list("omega", *v);
    config.grid.validate();

    if (const auto params = tree.get_child_optional("params")) {
        allow_only(*params, "params", {"lambda_days", "theta_per_day", "omega"});
        const PredictorParams defaults;
        config.params = PredictorParams::from_days(number_or(*params, "lambda_days", defaults.lambda_days()),
                                                   number_or(*params, "theta_per_day", defaults.theta_per_day),
                                                   number_or(*params, "omega", defaults.omega));
        config.params->validate();
    }

    const auto& bt = tree.get_child("backtest", empty);
    allow_only(bt, "backtest", {"robust_t_test", "hac_lags"});
    config.robust_t_test = to_bool("robust_t_test", get(bt, "robust_t_test").value_or("false"));
    config.hac_lags = static_cast<std::size_t>(number_or(bt, "hac_lags", 52.0));

    const auto& out = tree.get_child("output", empty);
    allow_only(out, "output", {"dir"});
    std::filesystem::path dir = get(out, "dir").value_or("out");
    config.output_dir = dir.is_absolute() ? dir : base_dir / dir;
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCategory::Config, path.string() + ": cannot open config file");
    return parse_config(in, path.parent_path());
}

Measure parse_measure(const std::string& text) {
    if (text == "Q") return Measure::Q;
    if (text == "P-CONST") return Measure::PConstant;
    if (text == "P-EWMA") return Measure::PEwma;
    if (text == "PI") return Measure::PerfectInformation;
    fail(ErrorCategory::Config, "unknown measure '" + text + "' (expected Q, P-CONST, P-EWMA or PI)");
}

std::map<std::string, CurveHistory> load_histories(const RunConfig& config) {
    std::map<std::string, CurveHistory> out;
    for (const auto& [currency, path] : config.data_paths) {
        out.emplace(currency, read_history_csv(path, config.max_staleness_days));
    }
    return out;
}

DateRange calibration_window(const RunConfig& config, const CurveHistory& history) {
    if (config.calibration_window) return *config.calibration_window;
    using namespace std::chrono;
    const Date first = history.first_date();
    year_month_day end{first.sys_days()};
    end += years{config.calibration_years};
    if (!end.ok()) end = end.year() / end.month() / last;  // 29 Feb
    return {first, Date(sys_days{end}).plus_days(-1)};
}

}  // namespace fund::cli
