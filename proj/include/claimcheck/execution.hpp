#pragma once

namespace claimcheck {

// Selects between the OpenMP kernels and their serial reference versions.
// Both produce identical results; the serial path exists for testing and
// benchmarking.
enum class Execution { kSerial, kParallel };

}  // namespace claimcheck
