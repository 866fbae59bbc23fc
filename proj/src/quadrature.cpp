#include "phasectl/quadrature.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace phasectl {

namespace {

// Kronrod-15 abscissae on [0,1] side (symmetric) and weights; Gauss-7 weights
// sit at the odd Kronrod indices.
constexpr std::array<double, 8> kXgk = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr std::array<double, 4> kWg = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
  Scalar value;
  Scalar error;
};

Panel gk15(const std::function<Scalar(Scalar)>& f, Scalar a, Scalar b) {
  const Scalar c = 0.5 * (a + b);
  const Scalar h = 0.5 * (b - a);
  Scalar resk = kWgk[7] * f(c);
  Scalar resg = kWg[3] * f(c);
  for (int j = 0; j < 7; ++j) {
    const Scalar x = h * kXgk[j];
    const Scalar fsum = f(c - x) + f(c + x);
    resk += kWgk[j] * fsum;
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
  }
  return {resk * h, std::abs((resk - resg) * h)};
}

Scalar adapt(const std::function<Scalar(Scalar)>& f, Scalar a, Scalar b, Scalar tol,
             int depth) {
  const Panel p = gk15(f, a, b);
  if (p.error <= tol || p.error <= 1e-16 * std::abs(p.value)) return p.value;
  if (depth <= 0) {
    throw std::runtime_error("integrate_adaptive: tolerance not met (integrand too rough)");
  }
  const Scalar c = 0.5 * (a + b);
  return adapt(f, a, c, 0.5 * tol, depth - 1) + adapt(f, c, b, 0.5 * tol, depth - 1);
}

}  // namespace

Scalar integrate_adaptive(const std::function<Scalar(Scalar)>& f, Scalar a, Scalar b,
                          Scalar abs_tol, int max_depth) {
  if (a == b) return 0.0;
  return adapt(f, a, b, abs_tol, max_depth);
}

}  // namespace phasectl
