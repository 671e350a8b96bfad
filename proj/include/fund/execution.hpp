#pragma once

namespace fund {

/// Whether a kernel may spread its independent work items over OpenMP threads.
/// Both paths produce bit-identical results; Serial is the reference.
enum class Execution { Serial, Parallel };

}  // namespace fund
