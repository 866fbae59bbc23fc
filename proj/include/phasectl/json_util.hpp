#pragma once

#include <cstdio>
#include <cstdlib>

#include <json.hpp>

#include "phasectl/types.hpp"

namespace phasectl {

/// Round a float to 9 significant digits before it enters a JSON document,
/// so serialized reports are byte-identical across runs.
inline nlohmann::json json_num(Scalar v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return nlohmann::json(std::strtod(buf, nullptr));
}

inline nlohmann::json json_vec(const Vector& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(json_num(v[i]));
  return a;
}

template <typename Range>
nlohmann::json json_range(const Range& r) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& v : r) a.push_back(json_num(v));
  return a;
}

}  // namespace phasectl
