#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "fund/curves.hpp"

namespace fund {

/// Reads a curve history in the `date,tenor_months,rate_cc` layout: one row
/// per (date, tenor), ISO dates, integer month tenors, continuously
/// compounded decimal rates. Rows may come in any order; every date must
/// carry the same tenor set. Throws Error(Parse) with `source:line` context.
CurveHistory parse_history_csv(std::istream& in, const std::string& source,
                               long max_staleness_days = CurveHistory::kDefaultMaxStalenessDays);

CurveHistory read_history_csv(const std::filesystem::path& path,
                              long max_staleness_days = CurveHistory::kDefaultMaxStalenessDays);

/// Writes the same layout, rates with 10 decimals, sorted by date then tenor.
void write_history_csv(std::ostream& out, const CurveHistory& history);

}  // namespace fund
