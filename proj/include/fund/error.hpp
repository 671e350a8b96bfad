#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fund {

enum class ErrorCategory {
    Domain,            // argument outside the function's domain
    InsufficientData,  // too few observations / nodes
    BufferViolation,   // roll length cannot progress under the buffer
    DataGap,           // history does not cover a required date
    DegenerateSample,  // zero variance where a test statistic needs spread
    Config,            // invalid configuration or parameter grid
    Parse,             // malformed input file
    Measure,           // a curve provider could not answer a rate query
};

std::string_view to_string(ErrorCategory category);

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

[[noreturn]] inline void fail(ErrorCategory category, const std::string& what) {
    throw Error(category, what);
}

}  // namespace fund
