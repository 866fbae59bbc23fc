#include "phasectl/control_signal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace phasectl {

Scalar field_sign(SwitchingSchedule::Field f) {
  return f == SwitchingSchedule::Field::Y ? 1.0 : -1.0;
}

std::string to_string(SwitchingSchedule::Field f) {
  return f == SwitchingSchedule::Field::Y ? "Y" : "X";
}

SwitchingSchedule::Field SwitchingSchedule::field_at(Scalar t) const {
  // Count switches at or before t; parity flips the field.
  const auto n = std::upper_bound(switch_times.begin(), switch_times.end(), t) -
                 switch_times.begin();
  const bool flipped = (n % 2) != 0;
  if (!flipped) return initial_field;
  return initial_field == Field::X ? Field::Y : Field::X;
}

Scalar SwitchingSchedule::value_at(Scalar t) const {
  return field_sign(field_at(t)) * M;
}

ControlSignal ControlSignal::zero() { return ControlSignal{}; }

ControlSignal ControlSignal::constant(Scalar level) {
  ControlSignal c;
  c.kind_ = Kind::Constant;
  c.level_ = level;
  return c;
}

ControlSignal ControlSignal::piecewise(SwitchingSchedule schedule) {
  ControlSignal c;
  c.kind_ = Kind::PiecewiseConstant;
  c.bound_ = schedule.M;
  c.schedule_ = std::move(schedule);
  return c;
}

ControlSignal ControlSignal::feedback(std::function<Scalar(Scalar)> law, Scalar bound) {
  ControlSignal c;
  c.kind_ = Kind::FeedbackLaw;
  c.law_ = std::move(law);
  c.bound_ = bound;
  return c;
}

ControlSignal ControlSignal::sampled(Vector times, Vector values, int order, Scalar bound) {
  if (times.size() != values.size() || times.size() < 2) {
    throw std::invalid_argument("sampled control: need matching times/values, >= 2 nodes");
  }
  ControlSignal c;
  c.kind_ = Kind::Sampled;
  c.times_ = std::move(times);
  c.values_ = std::move(values);
  c.order_ = order;
  c.bound_ = bound;
  if (order != 1) {
    // Barycentric weights for the given nodes, normalized to avoid overflow.
    const auto n = c.times_.size();
    c.bary_weights_.resize(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      Scalar w = 1.0;
      for (Eigen::Index k = 0; k < n; ++k) {
        if (k != j) w /= (c.times_[j] - c.times_[k]);
      }
      c.bary_weights_[j] = w;
    }
    c.bary_weights_ /= c.bary_weights_.cwiseAbs().maxCoeff();
  }
  return c;
}

Scalar ControlSignal::eval(Scalar t, Scalar theta) const {
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::Constant:
      return level_;
    case Kind::PiecewiseConstant:
      return schedule_.value_at(t);
    case Kind::FeedbackLaw: {
      const Scalar u = law_(theta);
      if (std::isfinite(bound_)) return std::clamp(u, -bound_, bound_);
      return u;
    }
    case Kind::Sampled: {
      const auto n = times_.size();
      Scalar u;
      if (order_ == 1) {
        if (t <= times_[0]) {
          u = values_[0];
        } else if (t >= times_[n - 1]) {
          u = values_[n - 1];
        } else {
          auto it = std::upper_bound(times_.data(), times_.data() + n, t);
          const auto i = it - times_.data();  // times_[i-1] < t <= times_[i]
          const Scalar w = (t - times_[i - 1]) / (times_[i] - times_[i - 1]);
          u = (1.0 - w) * values_[i - 1] + w * values_[i];
        }
      } else {
        Scalar num = 0.0, den = 0.0;
        bool hit = false;
        for (Eigen::Index j = 0; j < n; ++j) {
          const Scalar d = t - times_[j];
          if (std::abs(d) < 1e-14) {
            u = values_[j];
            hit = true;
            break;
          }
          const Scalar q = bary_weights_[j] / d;
          num += q * values_[j];
          den += q;
        }
        if (!hit) u = num / den;
      }
      if (std::isfinite(bound_)) return std::clamp(u, -bound_, bound_);
      return u;
    }
  }
  return 0.0;
}

std::vector<Scalar> ControlSignal::discontinuities() const {
  if (kind_ == Kind::PiecewiseConstant) return schedule_.switch_times;
  return {};
}

}  // namespace phasectl
