#pragma once

#include <string>
#include <vector>

#include "phasectl/phase_model.hpp"
#include "phasectl/types.hpp"

namespace phasectl {

/// Iterated bracket of the drift against the control field, evaluated at
/// theta from the closed-form per-model formulas. k = 0 returns Z itself.
/// All models must share the same kind.
Vector bracket_eval(const std::vector<PhaseModel>& models, const Vector& theta, int k);

struct RankReport {
  ModelKind kind;
  int n = 0;
  Vector theta;
  int rank = 0;
  bool spans = false;
  Vector singular_values;
  Scalar tol = 0.0;
  std::vector<std::string> warnings;
};

/// Numerical rank of the span {f, Z, ad_f Z, ..., ad_f^{2n} Z} at theta,
/// via singular values (sigma > tol * sigma_max).
RankReport rank_test(const std::vector<PhaseModel>& models, const Vector& theta,
                     Scalar tol = 1e-10);

std::string rank_report_json(const RankReport& report);

}  // namespace phasectl
