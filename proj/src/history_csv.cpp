#include "fund/history_csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "fund/error.hpp"

namespace fund {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = line.find(',', pos);
        fields.push_back(trim(line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos)));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return fields;
}

[[noreturn]] void parse_error(const std::string& source, std::size_t line, const std::string& what) {
    fail(ErrorCategory::Parse, fmt::format("{}:{}: {}", source, line, what));
}

}  // namespace

CurveHistory parse_history_csv(std::istream& in, const std::string& source, long max_staleness_days) {
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::map<Date, std::map<int, double>> rows;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view text = trim(line);
        if (text.empty()) continue;
        if (!header_seen) {
            const auto cols = split(text);
            if (cols.size() != 3 || cols[0] != "date" || cols[1] != "tenor_months" || cols[2] != "rate_cc") {
                parse_error(source, line_no, "expected header 'date,tenor_months,rate_cc'");
            }
            header_seen = true;
            continue;
        }
        const auto cols = split(text);
        if (cols.size() != 3) parse_error(source, line_no, fmt::format("expected 3 fields, got {}", cols.size()));

        Date date;
        try {
            date = Date::parse(cols[0]);
        } catch (const Error& e) {
            parse_error(source, line_no, e.what());
        }
        int months = 0;
        if (auto [p, ec] = std::from_chars(cols[1].data(), cols[1].data() + cols[1].size(), months);
            ec != std::errc() || p != cols[1].data() + cols[1].size() || months <= 0) {
            parse_error(source, line_no, fmt::format("tenor_months must be a positive integer, got '{}'", cols[1]));
        }
        double rate = 0.0;
        if (auto [p, ec] = std::from_chars(cols[2].data(), cols[2].data() + cols[2].size(), rate);
            ec != std::errc() || p != cols[2].data() + cols[2].size() || !std::isfinite(rate)) {
            parse_error(source, line_no, fmt::format("rate_cc must be a finite decimal, got '{}'", cols[2]));
        }
        if (!rows[date].emplace(months, rate).second) {
            parse_error(source, line_no, fmt::format("duplicate {}M rate on {}", months, date.iso()));
        }
    }
    if (!header_seen) fail(ErrorCategory::Parse, source + ": empty file");
    if (rows.empty()) fail(ErrorCategory::Parse, source + ": no data rows");

    std::vector<SpotCurve> curves;
    curves.reserve(rows.size());
    const auto& grid = rows.begin()->second;
    for (const auto& [date, by_tenor] : rows) {
        if (by_tenor.size() != grid.size() ||
            !std::equal(by_tenor.begin(), by_tenor.end(), grid.begin(),
                        [](const auto& x, const auto& y) { return x.first == y.first; })) {
            fail(ErrorCategory::Parse,
                 fmt::format("{}: curve on {} does not share the tenor set of {}", source, date.iso(),
                             rows.begin()->first.iso()));
        }
        std::vector<double> tenors, rates;
        for (const auto& [months, rate] : by_tenor) {
            tenors.push_back(months / 12.0);
            rates.push_back(rate);
        }
        curves.emplace_back(date, std::move(tenors), std::move(rates));
    }
    try {
        return CurveHistory(std::move(curves), max_staleness_days);
    } catch (const Error& e) {
        fail(ErrorCategory::Parse, source + ": " + e.what());
    }
}

CurveHistory read_history_csv(const std::filesystem::path& path, long max_staleness_days) {
    std::ifstream in(path);
    if (!in) fail(ErrorCategory::Parse, path.string() + ": cannot open file");
    return parse_history_csv(in, path.string(), max_staleness_days);
}

void write_history_csv(std::ostream& out, const CurveHistory& history) {
    out << "date,tenor_months,rate_cc\n";
    for (const auto& curve : history.entries()) {
        const std::string date = curve.as_of().iso();
        for (std::size_t i = 0; i < curve.size(); ++i) {
            out << fmt::format("{},{},{:.10f}\n", date, std::lround(curve.tenors()[i] * 12.0), curve.rates()[i]);
        }
    }
}

}  // namespace fund
