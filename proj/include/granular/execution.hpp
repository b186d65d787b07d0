#pragma once

namespace granular {

/// Selects how independent (alpha, mu) slices are evaluated.
/// `serial` is the reference path; `parallel` distributes slices over OpenMP threads
/// and must produce bitwise identical results.
enum class Execution { serial, parallel };

}  // namespace granular
