#pragma once

namespace skewrot {

// Kernels take an execution policy: `parallel` uses OpenMP worksharing,
// `serial` is the plain-loop reference the tests compare against.  Both paths
// must produce identical results (per-index output slots and max-reductions
// only, so thread scheduling cannot change any reported value).
enum class Exec { serial, parallel };

}  // namespace skewrot
