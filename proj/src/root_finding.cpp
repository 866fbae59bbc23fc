#include "phasectl/root_finding.hpp"

#include <cmath>
#include <stdexcept>

namespace phasectl {

Scalar brent(const std::function<Scalar(Scalar)>& f, Scalar a, Scalar b, Scalar tol,
             int max_iter) {
  Scalar fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    throw std::invalid_argument("brent: root not bracketed");
  }
  Scalar c = a, fc = fa, d = b - a, e = d;
  for (int iter = 0; iter < max_iter; ++iter) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const Scalar tol1 = 2.0 * 1e-16 * std::abs(b) + 0.5 * tol;
    const Scalar xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      Scalar p, q;
      const Scalar s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const Scalar qq = fa / fc, r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
  }
  return b;
}

std::vector<Scalar> scan_roots(const std::function<Scalar(Scalar)>& f, Scalar a, Scalar b,
                               int samples, Scalar tol) {
  std::vector<Scalar> roots;
  if (samples < 2) return roots;
  const Scalar h = (b - a) / (samples - 1);
  Scalar x0 = a, f0 = f(a);
  for (int i = 1; i < samples; ++i) {
    const Scalar x1 = a + i * h;
    const Scalar f1 = f(x1);
    if (std::isfinite(f0) && std::isfinite(f1)) {
      if (f1 == 0.0) {
        roots.push_back(x1);
      } else if ((f0 > 0.0) != (f1 > 0.0) && f0 != 0.0) {
        roots.push_back(brent(f, x0, x1, tol));
      }
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

}  // namespace phasectl
