#pragma once

#include <chrono>
#include <compare>
#include <string>
#include <string_view>

namespace fund {

/// Day count used everywhere: one calendar day is 1/365 of a year.
inline constexpr double kDaysPerYear = 365.0;

/// Calendar date with day resolution.
class Date {
public:
    Date() = default;
    explicit Date(std::chrono::sys_days days) : days_(days) {}

    static Date from_ymd(int year, unsigned month, unsigned day);
    /// Parses `YYYY-MM-DD`; throws Error(Parse) on malformed or invalid dates.
    static Date parse(std::string_view iso);

    std::string iso() const;
    std::chrono::sys_days sys_days() const { return days_; }
    long serial() const { return days_.time_since_epoch().count(); }

    Date plus_days(long n) const { return Date(days_ + std::chrono::days(n)); }

    friend auto operator<=>(const Date&, const Date&) = default;

private:
    std::chrono::sys_days days_{};
};

inline long days_between(Date from, Date to) { return to.serial() - from.serial(); }

/// The calendar date a time offset (in years) after `start` falls on.
/// Offsets are floored to whole days, so a roll at 10.6 days uses day 10.
Date offset_date(Date start, double years);

/// Whole days spanned by a year fraction, floored.
long whole_days(double years);

/// Closed date interval.
struct DateRange {
    Date first;
    Date last;

    bool contains(Date d) const { return first <= d && d <= last; }
};

}  // namespace fund
