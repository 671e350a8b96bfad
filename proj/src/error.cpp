#include "fund/error.hpp"

namespace fund {

std::string_view to_string(ErrorCategory category) {
    switch (category) {
        case ErrorCategory::Domain: return "domain";
        case ErrorCategory::InsufficientData: return "insufficient-data";
        case ErrorCategory::BufferViolation: return "buffer-violation";
        case ErrorCategory::DataGap: return "data-gap";
        case ErrorCategory::DegenerateSample: return "degenerate-sample";
        case ErrorCategory::Config: return "config";
        case ErrorCategory::Parse: return "parse";
        case ErrorCategory::Measure: return "measure";
    }
    return "unknown";
}

}  // namespace fund
