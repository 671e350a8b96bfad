#include "fund/date.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "fund/error.hpp"

namespace fund {

namespace {

template <typename T>
bool parse_field(std::string_view s, T& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

Date Date::from_ymd(int year, unsigned month, unsigned day) {
    using namespace std::chrono;
    const year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                             std::chrono::day{day}};
    if (!ymd.ok()) {
        fail(ErrorCategory::Parse, "invalid calendar date " + std::to_string(year) + "-" +
                                       std::to_string(month) + "-" + std::to_string(day));
    }
    return Date(std::chrono::sys_days{ymd});
}

Date Date::parse(std::string_view iso) {
    int y = 0;
    unsigned m = 0, d = 0;
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-' || !parse_field(iso.substr(0, 4), y) ||
        !parse_field(iso.substr(5, 2), m) || !parse_field(iso.substr(8, 2), d)) {
        fail(ErrorCategory::Parse, "expected ISO-8601 date YYYY-MM-DD, got '" + std::string(iso) + "'");
    }
    return from_ymd(y, m, d);
}

std::string Date::iso() const {
    const std::chrono::year_month_day ymd{days_};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

long whole_days(double years) {
    // A roll at i*(alpha - delta) on the daily grid is an exact day count up to
    // rounding; the nudge keeps 29.999999999 from landing on day 29.
    return static_cast<long>(std::floor(years * kDaysPerYear + 1e-7));
}

Date offset_date(Date start, double years) { return start.plus_days(whole_days(years)); }

}  // namespace fund
