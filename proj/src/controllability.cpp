#include "phasectl/controllability.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

#include "phasectl/json_util.hpp"

namespace phasectl {

namespace {

void check_same_kind(const std::vector<PhaseModel>& models) {
  if (models.empty()) throw std::invalid_argument("bracket_eval: empty model list");
  for (const auto& m : models) {
    if (m.kind != models[0].kind) {
      throw std::invalid_argument("bracket_eval: mixed model kinds");
    }
  }
}

}  // namespace

Vector bracket_eval(const std::vector<PhaseModel>& models, const Vector& theta, int k) {
  check_same_kind(models);
  if (k < 0) throw std::invalid_argument("bracket_eval: k must be >= 0");
  const auto n = static_cast<Eigen::Index>(models.size());
  if (theta.size() != n) throw std::invalid_argument("bracket_eval: theta size mismatch");

  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const PhaseModel& m = models[i];
    const Scalar th = theta[i];
    if (k == 0) {
      v[i] = m.Z(th);
      continue;
    }
    const bool odd = (k % 2) == 1;
    const int j = odd ? (k + 1) / 2 : k / 2;  // ad_f^{2j-1} or ad_f^{2j}
    const Scalar sgn = (j % 2 == 1) ? 1.0 : -1.0;  // (-1)^{j-1}
    switch (m.kind) {
      case ModelKind::Theta: {
        const Scalar scale = sgn * std::pow(2.0, j) *
                             std::pow(m.alpha() - m.beta(), j - 1);
        v[i] = odd ? scale * std::sin(th)
                   : scale * (m.alpha() * std::cos(th) + m.beta());
        break;
      }
      case ModelKind::Sniper:
        v[i] = odd ? sgn * m.z * std::pow(m.omega, 2 * j - 1) * std::sin(th)
                   : sgn * m.z * std::pow(m.omega, 2 * j) * std::cos(th);
        break;
      case ModelKind::Sinusoidal:
        v[i] = odd ? sgn * m.z * std::pow(m.omega, 2 * j - 1) * std::cos(th)
                   : -sgn * m.z * std::pow(m.omega, 2 * j) * std::sin(th);
        break;
    }
  }
  return v;
}

RankReport rank_test(const std::vector<PhaseModel>& models, const Vector& theta,
                     Scalar tol) {
  check_same_kind(models);
  const auto n = static_cast<Eigen::Index>(models.size());

  RankReport report;
  report.kind = models[0].kind;
  report.n = static_cast<int>(n);
  report.theta = theta;
  report.tol = tol;

  // Stack f, Z, ad_f Z, ..., ad_f^{2n} Z as rows. At theta = 0 the odd
  // brackets are zero rows and the even ones carry the span.
  Matrix stack(2 * n + 2, n);
  for (Eigen::Index i = 0; i < n; ++i) stack(0, i) = models[i].f(theta[i]);
  for (int k = 0; k <= 2 * static_cast<int>(n); ++k) {
    stack.row(k + 1) = bracket_eval(models, theta, k);
  }

  Eigen::JacobiSVD<Matrix> svd(stack);
  report.singular_values = svd.singularValues();
  const Scalar smax = report.singular_values[0];
  int rank = 0;
  for (Eigen::Index i = 0; i < report.singular_values.size(); ++i) {
    if (report.singular_values[i] > tol * smax) ++rank;
  }
  report.rank = rank;
  report.spans = (rank == static_cast<int>(n));

  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::abs(models[i].omega - models[j].omega) < 1e-6) {
        report.warnings.push_back(
            "frequencies " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
            " are numerically close; the span condition requires distinctness");
      }
    }
  }
  // The bracket family is infinite; the stack is cut off at order 2n, which
  // suffices generically but is a finite truncation.
  report.warnings.push_back("bracket stack truncated at order 2n");
  return report;
}

std::string rank_report_json(const RankReport& report) {
  nlohmann::json j;
  j["kind"] = to_string(report.kind);
  j["n"] = report.n;
  j["theta"] = json_vec(report.theta);
  j["rank"] = report.rank;
  j["spans"] = report.spans;
  j["singular_values"] = json_vec(report.singular_values);
  j["tol"] = json_num(report.tol);
  j["warnings"] = report.warnings;
  return j.dump(2);
}

}  // namespace phasectl
