#pragma once

#include <functional>
#include <vector>

#include "phasectl/types.hpp"

namespace phasectl {

/// Brent's method on a sign-changing bracket [a, b]. Throws if f(a) and f(b)
/// have the same sign.
Scalar brent(const std::function<Scalar(Scalar)>& f, Scalar a, Scalar b,
             Scalar tol = 1e-12, int max_iter = 200);

/// All roots of f in (a, b], located by sign-change scanning on a uniform
/// grid of `samples` points followed by Brent refinement. Grid points where
/// f is not finite are skipped.
std::vector<Scalar> scan_roots(const std::function<Scalar(Scalar)>& f, Scalar a, Scalar b,
                               int samples, Scalar tol = 1e-10);

}  // namespace phasectl
