#pragma once

#include <functional>

#include "phasectl/types.hpp"

namespace phasectl {

/// Adaptive Gauss-Kronrod (7-15) quadrature with bisection refinement.
/// Throws std::runtime_error if the tolerance cannot be met.
Scalar integrate_adaptive(const std::function<Scalar(Scalar)>& f, Scalar a, Scalar b,
                          Scalar abs_tol = 1e-10, int max_depth = 48);

}  // namespace phasectl
