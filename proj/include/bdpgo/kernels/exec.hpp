#pragma once

namespace bdpgo {

/// Execution policy for data-parallel kernels. Both policies produce
/// bit-identical results; `serial` is the reference path.
enum class Exec { serial, parallel };

}  // namespace bdpgo
